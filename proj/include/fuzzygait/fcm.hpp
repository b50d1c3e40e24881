#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "fuzzygait/common.hpp"

namespace fuzzygait {

struct FcmConfig {
  std::size_t cluster_count = 2;
  double fuzzifier = 2.0;   // m > 1
  double tol = 1e-5;        // convergence threshold on center movement
  std::size_t max_iter = 300;
  std::uint64_t seed = 42;  // membership initialization
};

struct FcmResult {
  std::vector<std::vector<double>> centers;      // [cluster][dim]
  std::vector<std::vector<double>> memberships;  // [sample][cluster], rows sum to 1
  std::size_t iterations = 0;
  double final_objective = 0.0;
  std::vector<double> objective_history;  // one value per iteration
};

namespace detail {

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

}  // namespace detail

/// Fuzzy c-means with Euclidean distance. Alternates the standard center and
/// membership updates until the largest center displacement drops below tol
/// or max_iter is reached. A sample coinciding with a center gets crisp
/// membership 1 on the first such cluster. Deterministic for a fixed seed.
inline FcmResult fcm_cluster(const std::vector<std::vector<double>>& samples, const FcmConfig& cfg,
                             const std::vector<std::vector<double>>* initial_memberships = nullptr) {
  const std::size_t n = samples.size();
  const std::size_t r = cfg.cluster_count;
  if (r < 1) throw ConfigError("cluster count must be >= 1");
  if (r > n) throw ConfigError("cluster count " + std::to_string(r) + " exceeds sample count " +
                               std::to_string(n));
  if (!(cfg.fuzzifier > 1.0)) throw ConfigError("fuzzifier must be > 1");
  const std::size_t dim = samples.front().size();
  for (const auto& s : samples) {
    if (s.size() != dim) throw ContractError("samples have inconsistent dimension");
    for (double v : s)
      if (!std::isfinite(v)) throw ContractError("non-finite sample value");
  }

  FcmResult res;
  auto& u = res.memberships;
  if (initial_memberships) {
    if (initial_memberships->size() != n) throw ContractError("initial membership row count mismatch");
    u = *initial_memberships;
    for (auto& row : u) {
      if (row.size() != r) throw ContractError("initial membership column count mismatch");
      double s = 0.0;
      for (double v : row) s += v;
      if (!(s > 0.0)) throw ContractError("initial membership row sums to zero");
      for (double& v : row) v /= s;
    }
  } else {
    Rng rng(cfg.seed);
    u.assign(n, std::vector<double>(r, 0.0));
    for (auto& row : u) {
      double s = 0.0;
      for (double& v : row) {
        v = rng.uniform01();
        s += v;
      }
      if (s == 0.0) {
        row.assign(r, 1.0 / static_cast<double>(r));
      } else {
        for (double& v : row) v /= s;
      }
    }
  }

  const double m = cfg.fuzzifier;
  const double inv_exp = 1.0 / (m - 1.0);
  // m = 2 is the default; skip the pow calls there (they dominate otherwise).
  const auto weight = [m](double v) { return m == 2.0 ? v * v : std::pow(v, m); };
  const auto inv_dist_weight = [inv_exp](double v) {
    return inv_exp == 1.0 ? 1.0 / v : 1.0 / std::pow(v, inv_exp);
  };
  res.centers.assign(r, std::vector<double>(dim, 0.0));
  std::vector<std::vector<double>> prev_centers;
  std::vector<double> d2(r);

  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    // Centers: weighted means under u^m. A cluster that lost all weight
    // keeps its previous center.
    prev_centers = res.centers;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<double> num(dim, 0.0);
      double den = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double w = weight(u[k][i]);
        den += w;
        for (std::size_t j = 0; j < dim; ++j) num[j] += w * samples[k][j];
      }
      if (den > 1e-300)
        for (std::size_t j = 0; j < dim; ++j) res.centers[i][j] = num[j] / den;
    }

    // Memberships.
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t zero_at = r;
      for (std::size_t i = 0; i < r; ++i) {
        d2[i] = detail::squared_distance(samples[k], res.centers[i]);
        if (d2[i] == 0.0 && zero_at == r) zero_at = i;
      }
      if (zero_at < r) {
        for (std::size_t i = 0; i < r; ++i) u[k][i] = (i == zero_at) ? 1.0 : 0.0;
        continue;
      }
      double total = 0.0;
      for (std::size_t i = 0; i < r; ++i) {
        u[k][i] = inv_dist_weight(d2[i]);
        total += u[k][i];
      }
      for (std::size_t i = 0; i < r; ++i) u[k][i] /= total;
    }

    double objective = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < r; ++i)
        objective += weight(u[k][i]) * detail::squared_distance(samples[k], res.centers[i]);
    if (!std::isfinite(objective)) throw Error("fcm: non-finite objective");
    res.objective_history.push_back(objective);
    res.final_objective = objective;
    res.iterations = it + 1;

    if (it > 0) {
      double max_disp = 0.0;
      for (std::size_t i = 0; i < r; ++i)
        max_disp = std::max(max_disp, std::sqrt(detail::squared_distance(res.centers[i], prev_centers[i])));
      if (max_disp < cfg.tol) break;
    }
  }

  for (const auto& c : res.centers)
    for (double v : c)
      if (!std::isfinite(v)) throw Error("fcm: non-finite center");
  return res;
}

}  // namespace fuzzygait
