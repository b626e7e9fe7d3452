#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sri/matrix.hpp"
#include "sri/shapley.hpp"

namespace sri {

// One entry per observation; all vectors of one decomposition share the
// same length m.
using SampleVector = std::vector<double>;

// Uncentered inner product over observations; no mean subtraction. The
// squared-norm and correlation quantities below are all built from this.
double dot(std::span<const double> v, std::span<const double> w);

// Projection denominators whose norm falls below kZeroRelTol times the
// larger SHAP vector norm of the pair are taken as zero (synergy or
// redundancy zero by convention). Enumeration rounding noise in an exactly
// cancelling interaction sits far below this, while a genuine direction
// this small carries no usable information in double precision.
inline constexpr double kZeroRelTol = 1e-9;

// Eigenvalues of the 2x2 Gram system below this fraction of the dominant
// one are dropped: the system is solved in the minimum-norm least-squares
// sense for collinear or vanishing main-effect vectors.
inline constexpr double kGramRelTol = 1e-12;

struct OrthogonalizedInteraction {
  SampleVector corrected;
  double alpha = 0.0;
  double beta = 0.0;
};

// Removes the main-effect components from an interaction vector:
// corrected = phi_ij - alpha*phi_ii - beta*phi_jj with the result
// orthogonal to both phi_ii and phi_jj. (alpha, beta) solve the 2x2 Gram
// system; degenerate geometry falls back to the minimum-norm solution, and
// two zero main effects leave the vector untouched.
OrthogonalizedInteraction orthogonalize_interaction(std::span<const double> phi_ij,
                                                    std::span<const double> phi_ii,
                                                    std::span<const double> phi_jj);

// Ordered-pair decomposition of feature i's SHAP vector relative to
// feature j: phi_i = syn + red + ind with the three parts mutually
// orthogonal. syn is the projection of phi_i on the corrected interaction,
// aut = phi_i - syn, red the projection of aut on the reverse-pair
// autonomy, ind the remainder.
struct PairDecomposition {
  std::size_t i = 0;
  std::size_t j = 0;
  SampleVector syn, aut, red, ind;
  SampleVector corrected_interaction;
  double alpha = 0.0;
  double beta = 0.0;
};

// aut_j_given_i is the autonomy vector of the reverse-ordered pair:
// phi_j minus its projection on the same corrected interaction.
PairDecomposition decompose_pair(std::span<const double> phi_i, std::span<const double> phi_j,
                                 std::span<const double> phi_ij_corrected,
                                 std::span<const double> aut_j_given_i);

struct SriScalars {
  double synergy = 0.0;
  double redundancy = 0.0;
  double independence = 0.0;
};

// Squared-norm fractions of the decomposition parts relative to phi_i.
// Each lies in [0, 1] (checked to 1e-12 and clamped) and the three sum to
// one. Returns nullopt when phi_i has zero norm: the pair is undefined.
std::optional<SriScalars> sri_scalars(const PairDecomposition& d, std::span<const double> phi_i);

struct SriResult {
  std::size_t features = 0;
  Matrix synergy;      // n x n; diagonal and undefined pairs are NaN
  Matrix redundancy;
  Matrix independence;
  std::vector<std::pair<std::size_t, std::size_t>> undefined_pairs;  // 0-based (i, j)
  std::vector<PairDecomposition> pairs;  // filled only when keep_vectors

  bool defined(std::size_t i, std::size_t j) const;
  const PairDecomposition* pair(std::size_t i, std::size_t j) const;
};

// Runs the decomposition for every ordered pair (i, j), i != j. The
// orthogonality correction is computed once per unordered pair (the
// interaction vector is symmetric) and both autonomy vectors are formed
// before either redundancy projection. keep_vectors retains the full
// per-pair vectors (m doubles each) for diagnostics.
SriResult decompose_all(const Matrix& shap, const InteractionTensor& interactions,
                        bool keep_vectors = false);

}  // namespace sri
