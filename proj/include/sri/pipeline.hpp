#pragma once

#include <filesystem>
#include <string_view>

#include "sri/dataset.hpp"
#include "sri/expr.hpp"
#include "sri/shapley.hpp"
#include "sri/sri.hpp"

namespace sri {

// Built-in demo: a five-feature model with a synergistic sine pair, a
// duplicated feature, and two additive independent features.
inline constexpr std::string_view kDemoModelText =
    "sin(2*pi*x1) * sin(2*pi*(x2+x3)/2) + x4 + x5";
inline constexpr int kDemoFeatureCount = 5;
inline constexpr std::size_t kDemoObservations = 1000;
inline constexpr RngSeed kDemoSeed = 42;

// Below this many observations the sample-space geometry is unstable and
// reports carry a warning.
inline constexpr std::size_t kLowSampleThreshold = 30;

struct PipelineResult {
  Dataset data;
  BackgroundSet background;
  Explanation explanation;
  SriResult sri;
};

// Full pipeline on explicit inputs: background sampling (k = 0 selects the
// whole dataset), per-observation attribution, pairwise decomposition.
// Background sampling draws from `background_seed` when k < m.
PipelineResult run_pipeline(const expr::ModelExpr& model, Dataset data, std::size_t background_k,
                            RngSeed background_seed, int workers, int limit = kMaxFeatures,
                            bool keep_vectors = false);

// Generates the demo dataset with `seed` and runs the pipeline against the
// built-in model over the full-dataset background.
PipelineResult run_demo(std::size_t m = kDemoObservations, RngSeed seed = kDemoSeed,
                        int workers = 1, bool keep_vectors = false);

struct ArtifactOptions {
  bool csv = true;
  bool json = true;
  bool svg = false;
};

// Creates `dir` if missing (its parent must exist) and writes S/R/I
// matrices, the combined JSON report, and optional heatmaps.
void write_sri_artifacts(const std::filesystem::path& dir, const SriResult& result,
                         const std::vector<std::string>& feature_names,
                         const ArtifactOptions& options);

// shap.csv (plain m x n) and interactions.csv (long format) next to the
// decomposition artifacts.
void write_explanation_exports(const std::filesystem::path& dir, const Explanation& explanation);

// Validates and prepares the output directory.
void ensure_output_dir(const std::filesystem::path& dir);

}  // namespace sri
