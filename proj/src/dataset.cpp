#include "sri/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

#include "sri/errors.hpp"

namespace sri {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased draw from [0, bound) by rejection; keeps sampling reproducible
// across standard library implementations.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::string strip_quotes(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

}  // namespace

std::vector<std::string> default_feature_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "x" + std::to_string(i + 1);
  return names;
}

Dataset load_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());

  std::vector<std::string> names;
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    const auto cells = split_cells(line);

    if (has_header && line_no == 1) {
      cols = cells.size();
      names.reserve(cols);
      for (const auto& c : cells) names.push_back(strip_quotes(c));
      continue;
    }

    if (rows == 0 && cols == 0) {
      cols = cells.size();
    } else if (cells.size() != cols) {
      throw IoError("ragged row at line " + std::to_string(line_no) + ": expected " +
                    std::to_string(cols) + " cells, found " + std::to_string(cells.size()));
    }

    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string_view cell = cells[c];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw IoError("non-numeric cell at line " + std::to_string(line_no) + ", column " +
                      std::to_string(c + 1) + ": '" + std::string(cell) + "'");
      if (!std::isfinite(v))
        throw IoError("non-finite value at line " + std::to_string(line_no) + ", column " +
                      std::to_string(c + 1));
      data.push_back(v);
    }
    ++rows;
  }

  if (rows == 0) {
    throw IoError(has_header && line_no > 0 ? "no data rows in file: " + path.string()
                                            : "no rows in file: " + path.string());
  }

  Dataset out;
  out.values.rows = rows;
  out.values.cols = cols;
  out.values.data = std::move(data);
  if (names.empty()) {
    out.feature_names = default_feature_names(cols);
  } else {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i].empty()) names[i] = "x" + std::to_string(i + 1);
    out.feature_names = std::move(names);
  }
  return out;
}

Dataset generate_demo_dataset(std::size_t m, RngSeed seed) {
  if (m < 1) throw Error("dataset size must be at least 1");
  constexpr std::size_t kFeatures = 5;
  Dataset out;
  out.values = Matrix(m, kFeatures);
  out.feature_names = default_feature_names(kFeatures);

  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < m; ++r) {
    double* row = out.values.data.data() + r * kFeatures;
    row[0] = uniform01(rng);
    row[1] = uniform01(rng);
    row[2] = row[1];  // duplicated feature
    row[3] = uniform01(rng);
    row[4] = uniform01(rng);
  }
  return out;
}

BackgroundSet sample_background(const Dataset& data, std::size_t k, RngSeed seed) {
  const std::size_t m = data.observations();
  if (k < 1 || k > m)
    throw Error("background size " + std::to_string(k) + " out of range [1, " +
                std::to_string(m) + "]");

  BackgroundSet out;
  if (k == m) {
    out.values = data.values;
    return out;
  }

  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(bounded_draw(rng, m - i));
    std::swap(idx[i], idx[j]);
  }

  const std::size_t n = data.features();
  out.values = Matrix(k, n);
  for (std::size_t r = 0; r < k; ++r) {
    const auto src = data.values.row(idx[r]);
    std::copy(src.begin(), src.end(), out.values.row(r).begin());
  }
  return out;
}

}  // namespace sri
