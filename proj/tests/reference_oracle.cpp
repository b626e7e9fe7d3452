#include "reference_oracle.hpp"

#include <algorithm>
#include <numeric>

#include "sri/errors.hpp"
#include "sri/shapley.hpp"

namespace sri::reference {

std::vector<double> shapley_by_permutations(const expr::ModelExpr& model, std::span<const double> x,
                                            const BackgroundSet& background) {
  const int n = model.feature_count();
  if (n > 8) throw LimitError("permutation oracle supports at most 8 features");

  // All coalition values through the public one-shot operation.
  const CoalitionMask full = (CoalitionMask{1} << n) - 1;
  std::vector<double> values(static_cast<std::size_t>(full) + 1);
  for (CoalitionMask mask = 0; mask <= full; ++mask)
    values[mask] = coalition_value(model, x, mask, background);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  std::size_t permutations = 0;
  do {
    CoalitionMask prefix = 0;
    for (const int idx : order) {
      const CoalitionMask bit = CoalitionMask{1} << idx;
      phi[static_cast<std::size_t>(idx)] += values[prefix | bit] - values[prefix];
      prefix |= bit;
    }
    ++permutations;
  } while (std::next_permutation(order.begin(), order.end()));

  for (auto& p : phi) p /= static_cast<double>(permutations);
  return phi;
}

std::vector<double> linear_shap_closed_form(std::span<const double> coefficients, double intercept,
                                            std::span<const double> x,
                                            const BackgroundSet& background) {
  (void)intercept;  // a constant shifts every coalition value equally
  if (coefficients.size() != x.size() || coefficients.size() != background.features())
    throw DimensionError("linear_shap_closed_form: inconsistent dimensions");

  const std::size_t n = coefficients.size();
  const std::size_t k = background.size();
  std::vector<double> phi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    for (std::size_t r = 0; r < k; ++r) mean += background.values(r, i);
    mean /= static_cast<double>(k);
    phi[i] = coefficients[i] * (x[i] - mean);
  }
  return phi;
}

}  // namespace sri::reference
