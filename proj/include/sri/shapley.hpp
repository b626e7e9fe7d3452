#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sri/dataset.hpp"
#include "sri/expr.hpp"
#include "sri/matrix.hpp"

namespace sri {

// Bit i set means feature i is in the coalition.
using CoalitionMask = std::uint32_t;

// Hard cap for exhaustive enumeration: one 2^n table per observation.
inline constexpr int kMaxFeatures = 20;

// Subset weight |S|!(n-|S|-1)!/n! by coalition size, evaluated as
// 1 / (n * C(n-1, s)) so the denominator is an exact integer for n <= 20.
std::vector<double> shapley_weights(int n);

// Pair weight |S|!(n-|S|-2)!/(2(n-1)!) by coalition size, as
// 1 / (2(n-1) * C(n-2, s)); requires n >= 2.
std::vector<double> interaction_weights(int n);

// Per-observation pairwise attribution values: entry (u, i, j) is the
// interaction value of features i and j for observation u; the diagonal
// holds main effects. Symmetric in (i, j) by construction.
struct InteractionTensor {
  std::size_t observations = 0;
  std::size_t features = 0;
  std::vector<double> data;  // [u][i][j]

  InteractionTensor() = default;
  InteractionTensor(std::size_t m, std::size_t n)
      : observations(m), features(n), data(m * n * n, 0.0) {}

  double& at(std::size_t u, std::size_t i, std::size_t j) {
    return data[(u * features + i) * features + j];
  }
  double at(std::size_t u, std::size_t i, std::size_t j) const {
    return data[(u * features + i) * features + j];
  }

  // Length-m vector of one (i, j) slot across observations.
  std::vector<double> pair_vector(std::size_t i, std::size_t j) const {
    std::vector<double> out(observations);
    for (std::size_t u = 0; u < observations; ++u) out[u] = at(u, i, j);
    return out;
  }
};

// Table of all 2^n coalition values for one observation: the restricted
// model under the marginal expectation, i.e. the mean of f over background
// rows spliced into the out-of-coalition features. The full mask holds
// f(x) exactly and the empty mask the background mean of f. Reusable
// across observations (one instance per worker thread).
class CoalitionValueCache {
 public:
  CoalitionValueCache(const expr::ModelExpr& model, const BackgroundSet& background);

  void fill(std::span<const double> x);

  double value(CoalitionMask mask) const { return values_[mask]; }
  std::span<const double> values() const { return values_; }
  int feature_count() const { return n_; }

 private:
  const BackgroundSet* background_;
  expr::Evaluator eval_;
  int n_;
  std::vector<double> values_;
  std::vector<double> point_;
};

// One coalition value without building the full table. Model domain errors
// are rethrown citing the offending background row.
double coalition_value(const expr::ModelExpr& model, std::span<const double> x, CoalitionMask coalition,
                       const BackgroundSet& background);

// Exact Shapley attribution of f(x) - E[f] over all 2^n coalitions.
std::vector<double> shap_values(const expr::ModelExpr& model, std::span<const double> x,
                                const BackgroundSet& background, int limit = kMaxFeatures);

// Exact pairwise interaction matrix; off-diagonal entries split the pair
// interaction evenly (symmetric), the diagonal is the main effect, and each
// row sums to that feature's Shapley value.
Matrix interaction_values(const expr::ModelExpr& model, std::span<const double> x,
                          const BackgroundSet& background, int limit = kMaxFeatures);

struct Explanation {
  Matrix shap;                    // m x n
  InteractionTensor interactions; // m x n x n
  double baseline = 0.0;          // mean of f over the background rows
};

// Per-observation attribution over a whole dataset. Coalition values are
// computed once per observation and shared by the Shapley and interaction
// passes. Observations are independent work units; with any worker count
// the output is bitwise identical because each observation's arithmetic is
// self-contained and results land in disjoint slots.
Explanation explain_dataset(const expr::ModelExpr& model, const Dataset& data,
                            const BackgroundSet& background, int workers = 1,
                            int limit = kMaxFeatures);

// Reductions from a filled coalition table; exposed for reuse by oracles
// and tests. Sums accumulate over masks in increasing integer order.
std::vector<double> shap_from_cache(std::span<const double> values, int n);
Matrix interactions_from_cache(std::span<const double> values, int n,
                               std::span<const double> shap);

}  // namespace sri
