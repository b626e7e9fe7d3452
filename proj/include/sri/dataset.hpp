#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sri/matrix.hpp"

namespace sri {

// Identical seed produces identical output across runs and platforms; all
// randomness in the library flows through std::mt19937_64, whose output
// sequence is fixed by the C++ standard.
using RngSeed = std::uint64_t;

// Observation matrix (m x n) with per-column feature names.
struct Dataset {
  Matrix values;
  std::vector<std::string> feature_names;

  std::size_t observations() const { return values.rows; }
  std::size_t features() const { return values.cols; }
};

// Reference rows (k x n) used for the marginal expectations that define
// coalition values. Rows are always full joint rows of a dataset, never
// shuffled column-wise, so duplicated features stay duplicated here.
struct BackgroundSet {
  Matrix values;

  std::size_t size() const { return values.rows; }
  std::size_t features() const { return values.cols; }
};

std::vector<std::string> default_feature_names(std::size_t n);

// Reads a rectangular numeric CSV (comma separated, '.' decimal point,
// optional single header row). Errors cite 1-based file line and column.
Dataset load_csv(const std::filesystem::path& path, bool has_header);

// Synthetic five-feature demo dataset: columns x1, x2, x4, x5 are i.i.d.
// Uniform[0,1]; column x3 is a bitwise copy of x2. Generator: one
// std::mt19937_64 seeded with `seed`; each uniform maps one 64-bit draw to
// [0,1) as (r >> 11) * 2^-53; draws advance row by row in column order
// x1, x2, x4, x5.
Dataset generate_demo_dataset(std::size_t m, RngSeed seed);

// k rows sampled without replacement (partial Fisher-Yates over row
// indices, unbiased bounded draws by rejection). k equal to the dataset
// size returns the dataset rows unchanged and in original order.
BackgroundSet sample_background(const Dataset& data, std::size_t k, RngSeed seed);

}  // namespace sri
