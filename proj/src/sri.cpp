#include "sri/sri.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sri/errors.hpp"
#include "sri/numfmt.hpp"

namespace sri {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_same_length(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() != b.size())
    throw DimensionError(std::string(what) + ": lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
}

SampleVector projection(std::span<const double> v, std::span<const double> onto, double denom,
                        double zero_denom) {
  SampleVector out(v.size(), 0.0);
  if (denom <= zero_denom) return out;  // zero-direction convention
  const double coef = dot(v, onto) / denom;
  for (std::size_t u = 0; u < v.size(); ++u) out[u] = coef * onto[u];
  return out;
}

SampleVector subtract(std::span<const double> a, std::span<const double> b) {
  SampleVector out(a.size());
  for (std::size_t u = 0; u < a.size(); ++u) out[u] = a[u] - b[u];
  return out;
}

}  // namespace

double dot(std::span<const double> v, std::span<const double> w) {
  check_same_length(v, w, "dot");
  double acc = 0.0;
  for (std::size_t u = 0; u < v.size(); ++u) acc += v[u] * w[u];
  return acc;
}

OrthogonalizedInteraction orthogonalize_interaction(std::span<const double> phi_ij,
                                                    std::span<const double> phi_ii,
                                                    std::span<const double> phi_jj) {
  check_same_length(phi_ij, phi_ii, "orthogonalize_interaction");
  check_same_length(phi_ij, phi_jj, "orthogonalize_interaction");

  const double a = dot(phi_ii, phi_ii);
  const double b = dot(phi_jj, phi_jj);
  const double c = dot(phi_ii, phi_jj);
  const double r1 = dot(phi_ij, phi_ii);
  const double r2 = dot(phi_ij, phi_jj);

  OrthogonalizedInteraction out;
  if (a > 0.0 || b > 0.0) {
    // Eigendecomposition of the symmetric Gram matrix [[a, c], [c, b]];
    // spectrum inverted with small eigenvalues dropped, which is the
    // minimum-norm least-squares solution when the system is singular.
    const double theta = 0.5 * std::atan2(2.0 * c, a - b);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double l1 = a * ct * ct + 2.0 * c * ct * st + b * st * st;
    const double l2 = a * st * st - 2.0 * c * ct * st + b * ct * ct;
    const double cutoff = kGramRelTol * std::max(l1, l2);
    if (l1 > cutoff) {
      const double p = (ct * r1 + st * r2) / l1;
      out.alpha += ct * p;
      out.beta += st * p;
    }
    if (l2 > cutoff) {
      const double p = (-st * r1 + ct * r2) / l2;
      out.alpha += -st * p;
      out.beta += ct * p;
    }
  }

  out.corrected.resize(phi_ij.size());
  for (std::size_t u = 0; u < phi_ij.size(); ++u)
    out.corrected[u] = phi_ij[u] - out.alpha * phi_ii[u] - out.beta * phi_jj[u];
  return out;
}

PairDecomposition decompose_pair(std::span<const double> phi_i, std::span<const double> phi_j,
                                 std::span<const double> phi_ij_corrected,
                                 std::span<const double> aut_j_given_i) {
  check_same_length(phi_i, phi_j, "decompose_pair");
  check_same_length(phi_i, phi_ij_corrected, "decompose_pair");
  check_same_length(phi_i, aut_j_given_i, "decompose_pair");

  const double var_i = dot(phi_i, phi_i);
  const double var_j = dot(phi_j, phi_j);
  const double zero2 = kZeroRelTol * kZeroRelTol * std::max(var_i, var_j);

  PairDecomposition d;
  d.syn = projection(phi_i, phi_ij_corrected, dot(phi_ij_corrected, phi_ij_corrected), zero2);
  d.aut = subtract(phi_i, d.syn);
  d.red = projection(d.aut, aut_j_given_i, dot(aut_j_given_i, aut_j_given_i), zero2);
  d.ind = subtract(d.aut, d.red);
  d.corrected_interaction.assign(phi_ij_corrected.begin(), phi_ij_corrected.end());
  return d;
}

std::optional<SriScalars> sri_scalars(const PairDecomposition& d, std::span<const double> phi_i) {
  const double var_i = dot(phi_i, phi_i);
  if (var_i == 0.0) return std::nullopt;

  const auto fraction = [var_i](const SampleVector& v, const char* name) {
    const double r = dot(v, v) / var_i;
    if (r > 1.0 + 1e-12)
      throw NumericalError(std::string(name) + " fraction " + format_double(r) +
                           " exceeds 1; decomposition is numerically inconsistent");
    return std::min(r, 1.0);
  };

  SriScalars s;
  s.synergy = fraction(d.syn, "synergy");
  s.redundancy = fraction(d.red, "redundancy");
  s.independence = fraction(d.ind, "independence");
  return s;
}

bool SriResult::defined(std::size_t i, std::size_t j) const {
  return i != j && !std::isnan(synergy(i, j));
}

const PairDecomposition* SriResult::pair(std::size_t i, std::size_t j) const {
  for (const auto& p : pairs)
    if (p.i == i && p.j == j) return &p;
  return nullptr;
}

SriResult decompose_all(const Matrix& shap, const InteractionTensor& interactions,
                        bool keep_vectors) {
  if (interactions.observations != shap.rows || interactions.features != shap.cols)
    throw DimensionError("interaction tensor is " + std::to_string(interactions.observations) +
                         "x" + std::to_string(interactions.features) + "x" +
                         std::to_string(interactions.features) + ", SHAP matrix is " +
                         std::to_string(shap.rows) + "x" + std::to_string(shap.cols));
  const std::size_t n = shap.cols;
  if (n == 0) throw DimensionError("SHAP matrix has no columns");

  SriResult out;
  out.features = n;
  out.synergy = Matrix(n, n, kNaN);
  out.redundancy = Matrix(n, n, kNaN);
  out.independence = Matrix(n, n, kNaN);

  std::vector<SampleVector> phi(n), main_effect(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi[i] = shap.column(i);
    main_effect[i] = interactions.pair_vector(i, i);
  }

  auto store = [&](std::size_t i, std::size_t j, PairDecomposition&& d, double alpha,
                   double beta) {
    d.i = i;
    d.j = j;
    d.alpha = alpha;
    d.beta = beta;
    const auto scalars = sri_scalars(d, phi[i]);
    if (scalars) {
      out.synergy(i, j) = scalars->synergy;
      out.redundancy(i, j) = scalars->redundancy;
      out.independence(i, j) = scalars->independence;
    } else {
      out.undefined_pairs.emplace_back(i, j);
    }
    if (keep_vectors) out.pairs.push_back(std::move(d));
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const SampleVector phi_ij = interactions.pair_vector(i, j);
      auto orth = orthogonalize_interaction(phi_ij, main_effect[i], main_effect[j]);

      // Both autonomy vectors first: each redundancy projects onto the
      // autonomy of the reverse-ordered pair.
      const double var_i = dot(phi[i], phi[i]);
      const double var_j = dot(phi[j], phi[j]);
      const double zero2 = kZeroRelTol * kZeroRelTol * std::max(var_i, var_j);
      const double var_corr = dot(orth.corrected, orth.corrected);
      const SampleVector syn_i = projection(phi[i], orth.corrected, var_corr, zero2);
      const SampleVector syn_j = projection(phi[j], orth.corrected, var_corr, zero2);
      const SampleVector aut_i = subtract(phi[i], syn_i);
      const SampleVector aut_j = subtract(phi[j], syn_j);

      store(i, j, decompose_pair(phi[i], phi[j], orth.corrected, aut_j), orth.alpha, orth.beta);
      store(j, i, decompose_pair(phi[j], phi[i], orth.corrected, aut_i), orth.alpha, orth.beta);
    }
  }

  std::sort(out.undefined_pairs.begin(), out.undefined_pairs.end());
  return out;
}

}  // namespace sri
