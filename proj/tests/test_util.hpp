#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "sri/dataset.hpp"
#include "sri/matrix.hpp"

namespace sri::test {

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                            double lo = 0.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (auto& v : m.data) v = uniform(rng, lo, hi);
  return m;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t len, double lo = -1.0,
                                         double hi = 1.0) {
  std::vector<double> v(len);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

inline BackgroundSet random_background(std::mt19937_64& rng, std::size_t k, std::size_t n) {
  BackgroundSet bg;
  bg.values = random_matrix(rng, k, n);
  return bg;
}

// Random expression text over the model grammar. safe_eval restricts to
// operations that are total on [0, 1]^n inputs so oracle comparisons never
// hit domain errors; with it off the full grammar (log, sqrt, /, ^) is
// exercised, which is what the parser round-trip tests want.
struct ExprGen {
  std::mt19937_64 rng;
  int n_features;
  bool safe_eval = true;

  ExprGen(std::uint64_t seed, int n, bool safe) : rng(seed), n_features(n), safe_eval(safe) {}

  std::string leaf() {
    if (rng() % 3 == 0) {
      const int numerator = static_cast<int>(rng() % 9);
      return std::to_string(numerator) + "." + std::to_string(rng() % 100);
    }
    if (!safe_eval && rng() % 7 == 0) return "pi";
    return "x" + std::to_string(1 + rng() % static_cast<std::uint64_t>(n_features));
  }

  std::string gen(int depth) {
    if (depth <= 0) return leaf();
    switch (rng() % (safe_eval ? 7 : 10)) {
      case 0:
        return "(" + gen(depth - 1) + " + " + gen(depth - 1) + ")";
      case 1:
        return "(" + gen(depth - 1) + " - " + gen(depth - 1) + ")";
      case 2:
        return "(" + gen(depth - 1) + " * " + gen(depth - 1) + ")";
      case 3:
        return "sin(" + gen(depth - 1) + ")";
      case 4:
        return "cos(" + gen(depth - 1) + ")";
      case 5:
        return "(-" + gen(depth - 1) + ")";
      case 6:
        return "abs(" + gen(depth - 1) + ")";
      case 7:
        return "(" + gen(depth - 1) + " / (2 + abs(" + gen(depth - 1) + ")))";
      case 8:
        return "exp(-abs(" + gen(depth - 1) + "))";
      default:
        return "(abs(" + gen(depth - 1) + ")^2)";
    }
  }
};

// Unique scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    path = std::filesystem::temp_directory_path() /
           ("sri_" + tag + "_" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

}  // namespace sri::test
