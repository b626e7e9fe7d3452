#include "sri/pipeline.hpp"

#include <chrono>
#include <string>
#include <utility>

#include "sri/errors.hpp"
#include "sri/io.hpp"
#include "sri/log.hpp"

namespace sri {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

PipelineResult run_pipeline(const expr::ModelExpr& model, Dataset data, std::size_t background_k,
                            RngSeed background_seed, int workers, int limit, bool keep_vectors) {
  PipelineResult result;
  result.data = std::move(data);

  const std::size_t m = result.data.observations();
  const std::size_t k = background_k == 0 ? m : background_k;
  result.background = sample_background(result.data, k, background_seed);
  log::info("background: " + std::to_string(k) + " of " + std::to_string(m) + " rows");

  const auto t0 = std::chrono::steady_clock::now();
  result.explanation = explain_dataset(model, result.data, result.background, workers, limit);
  log::info("attribution over " + std::to_string(m) + " observations took " +
            std::to_string(elapsed_ms(t0)) + " ms");

  const auto t1 = std::chrono::steady_clock::now();
  result.sri = decompose_all(result.explanation.shap, result.explanation.interactions,
                             keep_vectors);
  log::debug("pair decomposition took " + std::to_string(elapsed_ms(t1)) + " ms");
  return result;
}

PipelineResult run_demo(std::size_t m, RngSeed seed, int workers, bool keep_vectors) {
  const expr::ModelExpr model = expr::parse_model(kDemoModelText, kDemoFeatureCount);
  Dataset data = generate_demo_dataset(m, seed);
  return run_pipeline(model, std::move(data), 0, seed + 1, workers, kMaxFeatures, keep_vectors);
}

void ensure_output_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec))
      throw IoError("output path is not a directory: " + dir.string());
    return;
  }
  const fs::path parent = dir.has_parent_path() ? dir.parent_path() : fs::path(".");
  if (!fs::exists(parent, ec))
    throw IoError("parent of output directory does not exist: " + dir.string());
  if (!fs::create_directory(dir, ec) || ec)
    throw IoError("cannot create output directory: " + dir.string());
}

void write_sri_artifacts(const std::filesystem::path& dir, const SriResult& result,
                         const std::vector<std::string>& feature_names,
                         const ArtifactOptions& options) {
  ensure_output_dir(dir);
  if (options.csv) {
    io::write_sri_matrix_csv(dir / "S.csv", result.synergy);
    io::write_sri_matrix_csv(dir / "R.csv", result.redundancy);
    io::write_sri_matrix_csv(dir / "I.csv", result.independence);
    log::debug("wrote S.csv, R.csv, I.csv to " + dir.string());
  }
  if (options.json) {
    io::write_report_json(dir / "report.json", result, feature_names);
    log::debug("wrote report.json to " + dir.string());
  }
  if (options.svg) {
    io::write_heatmap_svg(dir / "S.svg", result.synergy, "Synergy S(i,j)", feature_names);
    io::write_heatmap_svg(dir / "R.svg", result.redundancy, "Redundancy R(i,j)", feature_names);
    io::write_heatmap_svg(dir / "I.svg", result.independence, "Independence I(i,j)",
                          feature_names);
    log::debug("wrote S.svg, R.svg, I.svg to " + dir.string());
  }
}

void write_explanation_exports(const std::filesystem::path& dir, const Explanation& explanation) {
  ensure_output_dir(dir);
  io::write_matrix_csv(dir / "shap.csv", explanation.shap);
  io::write_interaction_csv(dir / "interactions.csv", explanation.interactions);
  log::debug("wrote shap.csv and interactions.csv to " + dir.string());
}

}  // namespace sri
