#pragma once

#include <span>
#include <vector>

#include "sri/dataset.hpp"
#include "sri/expr.hpp"

// Brute-force oracles for validating the subset-weighted Shapley
// implementation. They deliberately use a different summation structure
// (averaging marginal contributions over all n! player orderings) so a
// shared bug with the production path is unlikely. Test-only; n <= 8.
namespace sri::reference {

std::vector<double> shapley_by_permutations(const expr::ModelExpr& model, std::span<const double> x,
                                            const BackgroundSet& background);

// Analytic attribution for f(x) = sum_i c_i x_i + b under a marginal
// background: phi_i = c_i * (x_i - mean of background column i).
std::vector<double> linear_shap_closed_form(std::span<const double> coefficients, double intercept,
                                            std::span<const double> x,
                                            const BackgroundSet& background);

}  // namespace sri::reference
