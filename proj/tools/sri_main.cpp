#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sri/dataset.hpp"
#include "sri/errors.hpp"
#include "sri/expr.hpp"
#include "sri/io.hpp"
#include "sri/log.hpp"
#include "sri/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  std::string out_dir = ".";
  std::vector<std::string> formats = {"csv", "json"};
  int workers = 1;
  std::uint64_t seed = sri::kDemoSeed;
};

sri::ArtifactOptions artifact_options(const std::vector<std::string>& formats) {
  sri::ArtifactOptions opts{false, false, false};
  for (const auto& f : formats) {
    if (f == "csv")
      opts.csv = true;
    else if (f == "json")
      opts.json = true;
    else if (f == "svg")
      opts.svg = true;
    else
      throw sri::Error("unknown output format '" + f + "' (expected csv, json, or svg)");
  }
  return opts;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-o,--out", opts.out_dir, "Output directory (created if its parent exists)")
      ->capture_default_str();
  cmd->add_option("--formats", opts.formats, "Output formats: csv, json, svg")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--workers", opts.workers, "Worker threads over observations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void print_report(std::size_t m, const sri::SriResult& result,
                  const std::vector<std::string>& names) {
  if (m < sri::kLowSampleThreshold) {
    std::cout << "warning: only " << m << " observation" << (m == 1 ? "" : "s")
              << "; synergy/redundancy/independence values are unstable below "
              << sri::kLowSampleThreshold << " observations\n\n";
  }
  std::cout << sri::io::format_sri_tables(result, names);
  if (!result.undefined_pairs.empty()) {
    std::cout << "undefined pairs (zero attribution vector):";
    for (const auto& [i, j] : result.undefined_pairs)
      std::cout << ' ' << names[i] << "->" << names[j];
    std::cout << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sri::IoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.pop_back();
  return text;
}

int cmd_demo(std::size_t m, const CommonOptions& common) {
  const auto artifacts = artifact_options(common.formats);
  sri::ensure_output_dir(common.out_dir);

  sri::log::info("demo: m=" + std::to_string(m) + " seed=" + std::to_string(common.seed) +
                 " workers=" + std::to_string(common.workers));
  std::cout << "model: " << sri::kDemoModelText << "\n"
            << "observations: " << m << ", seed: " << common.seed
            << ", background: full dataset\n\n";

  const auto result = sri::run_demo(m, common.seed, common.workers);
  sri::write_sri_artifacts(common.out_dir, result.sri, result.data.feature_names, artifacts);
  print_report(m, result.sri, result.data.feature_names);
  return kExitOk;
}

int cmd_compute(const std::string& model_text, const std::string& model_file,
                const std::string& data_path, bool has_header, std::size_t background_k,
                int limit, bool export_shap, const CommonOptions& common) {
  const auto artifacts = artifact_options(common.formats);
  sri::ensure_output_dir(common.out_dir);

  sri::Dataset data = sri::load_csv(data_path, has_header);
  const std::string text = model_file.empty() ? model_text : read_text_file(model_file);
  const auto model = sri::expr::parse_model(text, static_cast<int>(data.features()));

  sri::log::info("compute: m=" + std::to_string(data.observations()) +
                 " n=" + std::to_string(data.features()));
  const std::size_t m = data.observations();
  auto result = sri::run_pipeline(model, std::move(data), background_k, common.seed + 1,
                                  common.workers, limit);
  sri::write_sri_artifacts(common.out_dir, result.sri, result.data.feature_names, artifacts);
  if (export_shap) sri::write_explanation_exports(common.out_dir, result.explanation);
  print_report(m, result.sri, result.data.feature_names);
  return kExitOk;
}

int cmd_decompose(const std::string& shap_path, const std::string& interactions_path,
                  const CommonOptions& common) {
  const auto artifacts = artifact_options(common.formats);
  sri::ensure_output_dir(common.out_dir);

  const sri::Dataset shap = sri::load_csv(shap_path, false);
  const auto tensor = sri::io::read_interaction_csv(interactions_path, shap.observations(),
                                                    shap.features());
  const auto result = sri::decompose_all(shap.values, tensor);
  const auto names = sri::default_feature_names(shap.features());
  sri::write_sri_artifacts(common.out_dir, result, names, artifacts);
  print_report(shap.observations(), result, names);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Shapley attribution and synergy/redundancy/independence decomposition\n"
               "for explicit model functions over small feature sets."};
  app.require_subcommand(1);

  CommonOptions demo_common;
  std::size_t demo_m = sri::kDemoObservations;
  auto* demo = app.add_subcommand(
      "demo", "Generate the built-in synthetic dataset, explain it, and decompose it");
  demo->add_option("--m", demo_m, "Number of observations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  demo->add_option("--seed", demo_common.seed, "Dataset generator seed")->capture_default_str();
  add_common(demo, demo_common);

  CommonOptions compute_common;
  std::string model_text;
  std::string model_file;
  std::string data_path;
  bool has_header = false;
  std::size_t background_k = 0;
  int limit = sri::kMaxFeatures;
  bool export_shap = false;
  auto* compute = app.add_subcommand("compute", "Run the pipeline on a CSV dataset");
  auto* model_opt = compute->add_option("--model", model_text, "Model expression text");
  auto* model_file_opt =
      compute->add_option("--model-file", model_file, "File containing the model expression");
  model_opt->excludes(model_file_opt);
  compute->add_option("--data", data_path, "CSV dataset path")->required();
  compute->add_flag("--header", has_header, "First CSV row is a header with feature names");
  compute->add_option("--background", background_k,
                      "Background rows sampled without replacement (default: all rows)");
  compute->add_option("--seed", compute_common.seed, "Seed for background sampling")
      ->capture_default_str();
  compute->add_option("--limit", limit, "Feature-count limit for exhaustive enumeration")
      ->check(CLI::Range(1, sri::kMaxFeatures))
      ->capture_default_str();
  compute->add_flag("--export-shap", export_shap,
                    "Also write shap.csv and interactions.csv next to the results");
  add_common(compute, compute_common);

  CommonOptions decompose_common;
  std::string shap_path;
  std::string interactions_path;
  auto* decompose = app.add_subcommand(
      "decompose", "Decompose externally computed SHAP values and interaction values");
  decompose->add_option("--shap", shap_path, "SHAP matrix CSV (m rows, n columns)")->required();
  decompose->add_option("--interactions", interactions_path,
                        "Interaction tensor CSV in u,i,j,value long format")
      ->required();
  add_common(decompose, decompose_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (demo->parsed()) return cmd_demo(demo_m, demo_common);
    if (compute->parsed()) {
      if (model_text.empty() && model_file.empty()) {
        std::cerr << "error: either --model or --model-file is required\n";
        return kExitConfig;
      }
      return cmd_compute(model_text, model_file, data_path, has_header, background_k, limit,
                         export_shap, compute_common);
    }
    if (decompose->parsed()) return cmd_decompose(shap_path, interactions_path, decompose_common);
    std::cerr << "error: no command\n";
    return kExitConfig;
  } catch (const sri::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const sri::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const sri::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
