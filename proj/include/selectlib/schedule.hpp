#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "selectlib/core.hpp"

namespace selectlib {

// Sample-size schedule s_1 < ... < s_{l_bar+1} = n.
struct Schedule {
  long n = 0;
  std::vector<long> sizes;  // sizes[l-1] = s_l, sizes[l_bar] = n
  int l_bar = 0;
};

// Rank gap g_l. The last level (l = l_bar + 1) always has gap 0.
inline double gap(int l, int l_bar, long s_l, long n, double theta,
                  GapMode mode, double beta) {
  if (l == l_bar + 1) return 0.0;
  const double s = static_cast<double>(s_l);
  switch (mode) {
    case GapMode::SqrtN:
      return std::sqrt(beta * s * std::log(static_cast<double>(n)));
    case GapMode::SqrtS:
      if (s_l < 2) throw std::invalid_argument("sqrt-s gap needs s_l >= 2");
      return std::sqrt(beta * s * std::log(s));
    case GapMode::Knuth:
      if (s_l < 2) throw std::invalid_argument("knuth gap needs s_l >= 2");
      return std::sqrt(std::min(theta, 1.0 - theta) * s * std::log(s));
  }
  return 0.0;
}

struct RankPair {
  long i_u = 0;
  long i_v = 0;
};

// i_u = max{ceil(theta*s - g), 1}, i_v = min{ceil(theta*s + g), s}
inline RankPair pivot_ranks(double theta, long s, double g) {
  const double ts = theta * static_cast<double>(s);
  RankPair out;
  out.i_u = std::max<long>(static_cast<long>(std::ceil(ts - g)), 1);
  out.i_v = std::min<long>(static_cast<long>(std::ceil(ts + g)), s);
  return out;
}

// ceil(num/den + delta) with the rational part kept exact; num >= 0, den > 0.
// Avoids the off-by-one that ceil(theta*s) hits when theta*s is an integer
// but theta = k/n rounded up in the last bit.
inline long ceil_ratio_plus(long num, long den, double delta) {
  const long q = num / den;
  const long rem = num - q * den;
  return q + static_cast<long>(std::ceil(
                 static_cast<double>(rem) / static_cast<double>(den) + delta));
}

// pivot_ranks with theta = k/n evaluated exactly: ceil(k*s/n -+ g).
inline RankPair pivot_ranks_exact(long k, long n, long s, double g) {
  RankPair out;
  out.i_u = std::max<long>(ceil_ratio_plus(k * s, n, -g), 1);
  out.i_v = std::min<long>(ceil_ratio_plus(k * s, n, g), s);
  return out;
}

struct BoundingPair {
  long j_u = 0;
  long j_v = 0;
};

// j_u = max{ceil(theta*s+ - 2g*s+/s), 1}, j_v = min{ceil(theta*s+ + 2g*s+/s), s+}
inline BoundingPair bounding_ranks(double theta, long s, long s_plus, double g) {
  const double spread = 2.0 * g * static_cast<double>(s_plus) / static_cast<double>(s);
  const double ts = theta * static_cast<double>(s_plus);
  BoundingPair out;
  out.j_u = std::max<long>(static_cast<long>(std::ceil(ts - spread)), 1);
  out.j_v = std::min<long>(static_cast<long>(std::ceil(ts + spread)), s_plus);
  return out;
}

// s_1 = min{ceil(n^alpha), n-1}; s_{l+1} = min{r2*s_l, n}.
inline Schedule schedule_plain(long n, double alpha, long r2) {
  if (n < 2) throw std::invalid_argument("schedule needs n >= 2");
  Schedule sch;
  sch.n = n;
  long s1 = static_cast<long>(std::ceil(std::pow(static_cast<double>(n), alpha)));
  s1 = std::min(s1, n - 1);
  s1 = std::max(s1, 1L);
  long s = s1;
  sch.sizes.push_back(s);
  while (s < n) {
    long next = (s > n / r2) ? n : std::min(r2 * s, n);
    sch.sizes.push_back(next);
    s = next;
  }
  sch.l_bar = static_cast<int>(sch.sizes.size()) - 1;
  return sch;
}

// Eligibility test for the capped schedule: n >= max{[r2/(eta_bar*r2-1)]^(1/alpha), 3}.
inline bool capped_schedule_applies(long n, double alpha, long r2, double eta_bar) {
  const double denom = eta_bar * static_cast<double>(r2) - 1.0;
  if (!(denom > 0.0)) return false;
  const double threshold =
      std::pow(static_cast<double>(r2) / denom, 1.0 / alpha);
  return static_cast<double>(n) >= threshold && n >= 3;
}

// l_bar = ceil((1-alpha) ln n / ln r2); s_1 = ceil(n / r2^l_bar).
// Guarantees s_{l_bar} < eta*n with eta = r^-2 + n^-alpha <= eta_bar.
// Falls back to the plain schedule when the eligibility test fails.
inline Schedule schedule_capped(long n, double alpha, long r2, double eta_bar) {
  if (n < 2) throw std::invalid_argument("schedule needs n >= 2");
  if (!capped_schedule_applies(n, alpha, r2, eta_bar))
    return schedule_plain(n, alpha, r2);
  const double ln_n = std::log(static_cast<double>(n));
  const double ln_r2 = std::log(static_cast<double>(r2));
  const int l_bar = static_cast<int>(std::ceil((1.0 - alpha) * ln_n / ln_r2));
  double denom = 1.0;
  for (int i = 0; i < l_bar; ++i) denom *= static_cast<double>(r2);
  long s1 = static_cast<long>(std::ceil(static_cast<double>(n) / denom));
  s1 = std::max(s1, 1L);
  Schedule sch;
  sch.n = n;
  long s = s1;
  sch.sizes.push_back(s);
  while (s < n) {
    long next = (s > n / r2) ? n : std::min(r2 * s, n);
    sch.sizes.push_back(next);
    s = next;
  }
  sch.l_bar = static_cast<int>(sch.sizes.size()) - 1;
  return sch;
}

inline Schedule make_schedule(long n, const Params& p) {
  return p.schedule_mode == ScheduleMode::Capped
             ? schedule_capped(n, p.alpha, p.r2, p.eta_bar)
             : schedule_plain(n, p.alpha, p.r2);
}

enum class PfailMode { SqrtN, SqrtS };

// psi(s) = [1 - kappa(1 + ln r2 / ln s)^(1/2)]^2, used by the sqrt-s bound.
inline double psi_factor(double kappa, long s) {
  const double r2 = 1.0 / (kappa * kappa);
  const double t = 1.0 + std::log(r2) / std::log(static_cast<double>(s));
  const double base = 1.0 - kappa * std::sqrt(t);
  return base * base;
}

// Closed-form failure-probability bound, clamped to <= 1.
//   sqrt-n: 2n^(-2beta) + 2n^(-2(1-kappa)^2 beta)
//   sqrt-s: 2s^(-2beta) + 2s^(-2beta psi(s))
inline double p_fail(double beta, double kappa, long n_or_s, PfailMode mode) {
  const double x = static_cast<double>(n_or_s);
  double bound;
  if (mode == PfailMode::SqrtN) {
    const double w = (1.0 - kappa) * (1.0 - kappa);
    bound = 2.0 * std::pow(x, -2.0 * beta) + 2.0 * std::pow(x, -2.0 * w * beta);
  } else {
    bound = 2.0 * std::pow(x, -2.0 * beta) +
            2.0 * std::pow(x, -2.0 * beta * psi_factor(kappa, n_or_s));
  }
  return std::min(bound, 1.0);
}

// c_bar = (1 + min{theta, 1-theta})(s+ - s) + 3g*s+/s
inline double partition_cost_bound(double theta, long s, long s_plus, double g) {
  const double theta_bar = std::min(theta, 1.0 - theta);
  return (1.0 + theta_bar) * static_cast<double>(s_plus - s) +
         3.0 * g * static_cast<double>(s_plus) / static_cast<double>(s);
}

}  // namespace selectlib
