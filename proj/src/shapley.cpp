#include "sri/shapley.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>
#include <utility>

#include "sri/errors.hpp"

namespace sri {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

void check_feature_limit(int n, int limit) {
  const int cap = std::min(limit, kMaxFeatures);
  if (n > cap)
    throw LimitError("model has " + std::to_string(n) + " features, enumeration limit is " +
                     std::to_string(cap));
}

void check_background(const expr::ModelExpr& model, const BackgroundSet& background) {
  if (background.size() == 0) throw DimensionError("background set is empty");
  if (background.features() != static_cast<std::size_t>(model.feature_count()))
    throw DimensionError("background has " + std::to_string(background.features()) +
                         " columns, model expects " + std::to_string(model.feature_count()));
}

double splice_mean(expr::Evaluator& eval, std::span<const double> x, CoalitionMask mask,
                   const Matrix& bg, std::vector<double>& point) {
  const std::size_t n = bg.cols;
  const std::size_t k = bg.rows;
  double acc = 0.0;
  std::size_t row = 0;
  try {
    for (; row < k; ++row) {
      const double* b = bg.data.data() + row * n;
      for (std::size_t i = 0; i < n; ++i)
        point[i] = (mask >> i) & 1u ? x[i] : b[i];
      acc += eval(point);
    }
  } catch (const DomainError& e) {
    throw DomainError(e.offset(), e.raw() + "; background row " + std::to_string(row + 1));
  }
  return acc / static_cast<double>(k);
}

}  // namespace

std::vector<double> shapley_weights(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    w[static_cast<std::size_t>(s)] =
        1.0 / (static_cast<double>(n) * static_cast<double>(binomial(n - 1, s)));
  return w;
}

std::vector<double> interaction_weights(int n) {
  if (n < 2) throw DimensionError("interaction weights require at least 2 features");
  std::vector<double> w(static_cast<std::size_t>(n - 1));
  for (int s = 0; s <= n - 2; ++s)
    w[static_cast<std::size_t>(s)] =
        1.0 / (2.0 * static_cast<double>(n - 1) * static_cast<double>(binomial(n - 2, s)));
  return w;
}

CoalitionValueCache::CoalitionValueCache(const expr::ModelExpr& model,
                                         const BackgroundSet& background)
    : background_(&background),
      eval_(model),
      n_(model.feature_count()),
      values_(std::size_t{1} << model.feature_count()),
      point_(static_cast<std::size_t>(model.feature_count())) {
  if (n_ > kMaxFeatures)
    throw LimitError("model has " + std::to_string(n_) + " features, hard limit is " +
                     std::to_string(kMaxFeatures));
  check_background(model, background);
}

void CoalitionValueCache::fill(std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(n_))
    throw DimensionError("observation has " + std::to_string(x.size()) +
                         " values, model expects " + std::to_string(n_));
  const CoalitionMask full = static_cast<CoalitionMask>(values_.size() - 1);
  for (CoalitionMask mask = 0; mask < full; ++mask)
    values_[mask] = splice_mean(eval_, x, mask, background_->values, point_);
  values_[full] = eval_(x);  // exact, not an average of k copies
}

double coalition_value(const expr::ModelExpr& model, std::span<const double> x,
                       CoalitionMask coalition, const BackgroundSet& background) {
  const int n = model.feature_count();
  check_feature_limit(n, kMaxFeatures);
  check_background(model, background);
  if (x.size() != static_cast<std::size_t>(n))
    throw DimensionError("observation has " + std::to_string(x.size()) +
                         " values, model expects " + std::to_string(n));
  const CoalitionMask full = (CoalitionMask{1} << n) - 1;
  if ((coalition & ~full) != 0)
    throw DimensionError("coalition mask has bits beyond feature " + std::to_string(n));

  expr::Evaluator eval(model);
  if (coalition == full) return eval(x);
  std::vector<double> point(static_cast<std::size_t>(n));
  return splice_mean(eval, x, coalition, background.values, point);
}

std::vector<double> shap_from_cache(std::span<const double> values, int n) {
  const auto weights = shapley_weights(n);
  const CoalitionMask full = static_cast<CoalitionMask>(values.size() - 1);
  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const CoalitionMask bit = CoalitionMask{1} << i;
    double acc = 0.0;
    for (CoalitionMask mask = 0; mask <= full; ++mask) {
      if (mask & bit) continue;
      acc += weights[static_cast<std::size_t>(std::popcount(mask))] *
             (values[mask | bit] - values[mask]);
    }
    phi[static_cast<std::size_t>(i)] = acc;
  }
  return phi;
}

Matrix interactions_from_cache(std::span<const double> values, int n,
                               std::span<const double> shap) {
  Matrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
  if (n >= 2) {
    const auto weights = interaction_weights(n);
    const CoalitionMask full = static_cast<CoalitionMask>(values.size() - 1);
    for (int i = 0; i < n; ++i) {
      const CoalitionMask bi = CoalitionMask{1} << i;
      for (int j = i + 1; j < n; ++j) {
        const CoalitionMask bj = CoalitionMask{1} << j;
        const CoalitionMask pair = bi | bj;
        double acc = 0.0;
        for (CoalitionMask mask = 0; mask <= full; ++mask) {
          if (mask & pair) continue;
          acc += weights[static_cast<std::size_t>(std::popcount(mask))] *
                 (values[mask | pair] - values[mask | bi] - values[mask | bj] + values[mask]);
        }
        out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
        out(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = acc;
      }
    }
  }
  // Main effects: whatever the pairwise terms leave of the Shapley value.
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      sum += out(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    out(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) =
        shap[static_cast<std::size_t>(i)] - sum;
  }
  return out;
}

std::vector<double> shap_values(const expr::ModelExpr& model, std::span<const double> x,
                                const BackgroundSet& background, int limit) {
  check_feature_limit(model.feature_count(), limit);
  CoalitionValueCache cache(model, background);
  cache.fill(x);
  return shap_from_cache(cache.values(), model.feature_count());
}

Matrix interaction_values(const expr::ModelExpr& model, std::span<const double> x,
                          const BackgroundSet& background, int limit) {
  check_feature_limit(model.feature_count(), limit);
  CoalitionValueCache cache(model, background);
  cache.fill(x);
  const auto phi = shap_from_cache(cache.values(), model.feature_count());
  return interactions_from_cache(cache.values(), model.feature_count(), phi);
}

Explanation explain_dataset(const expr::ModelExpr& model, const Dataset& data,
                            const BackgroundSet& background, int workers, int limit) {
  const int n = model.feature_count();
  check_feature_limit(n, limit);
  check_background(model, background);
  if (data.features() != static_cast<std::size_t>(n))
    throw DimensionError("dataset has " + std::to_string(data.features()) +
                         " columns, model expects " + std::to_string(n));
  const std::size_t m = data.observations();
  if (m == 0) throw DimensionError("dataset is empty");

  Explanation out;
  out.shap = Matrix(m, static_cast<std::size_t>(n));
  out.interactions = InteractionTensor(m, static_cast<std::size_t>(n));
  {
    expr::Evaluator eval(model);
    std::vector<double> point(static_cast<std::size_t>(n));
    out.baseline = splice_mean(eval, point, 0, background.values, point);
  }

  const std::size_t worker_count =
      std::min<std::size_t>(m, static_cast<std::size_t>(std::max(workers, 1)));
  std::vector<std::string> failures(worker_count);

  auto run_block = [&](std::size_t begin, std::size_t end, std::string& failure) {
    try {
      CoalitionValueCache cache(model, background);
      for (std::size_t u = begin; u < end; ++u) {
        try {
          cache.fill(data.values.row(u));
        } catch (const DomainError& e) {
          failure = "row " + std::to_string(u + 1) + ": " + e.what();
          return;
        }
        const auto phi = shap_from_cache(cache.values(), n);
        std::copy(phi.begin(), phi.end(), out.shap.row(u).begin());
        const Matrix inter = interactions_from_cache(cache.values(), n, phi);
        std::copy(inter.data.begin(), inter.data.end(),
                  out.interactions.data.begin() +
                      static_cast<std::ptrdiff_t>(u * static_cast<std::size_t>(n) *
                                                  static_cast<std::size_t>(n)));
      }
    } catch (const std::exception& e) {
      failure = std::string("worker failed: ") + e.what();
    }
  };

  if (worker_count <= 1) {
    run_block(0, m, failures[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
      const std::size_t begin = m * w / worker_count;
      const std::size_t end = m * (w + 1) / worker_count;
      pool.emplace_back(run_block, begin, end, std::ref(failures[w]));
    }
    for (auto& t : pool) t.join();
  }

  std::string combined;
  for (const auto& f : failures) {
    if (f.empty()) continue;
    if (!combined.empty()) combined += "; ";
    combined += f;
  }
  if (!combined.empty()) throw DomainError("explain_dataset: " + combined);

  return out;
}

}  // namespace sri
