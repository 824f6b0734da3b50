#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "selectlib/core.hpp"
#include "selectlib/engine.hpp"
#include "selectlib/schedule.hpp"

namespace selectlib {

enum class Family { Random, Onezero, Sorted, Organpipe };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Random: return "random";
    case Family::Onezero: return "onezero";
    case Family::Sorted: return "sorted";
    case Family::Organpipe: return "organpipe";
  }
  return "?";
}

inline long median_rank(long n) { return (n + 1) / 2; }  // ceil(n/2)

// Input generators.
//   random:    a random permutation of 1..n
//   onezero:   a random permutation of ceil(n/2) ones and floor(n/2) zeros
//   sorted:    1..n ascending
//   organpipe: (1, 2, ..., n/2, n/2, ..., 2, 1); odd n mirrors around a
//              single center value ceil(n/2)
inline std::vector<std::int64_t> generate(Family family, long n,
                                          RngStream& rng) {
  if (n < 1) throw std::invalid_argument("generator needs n >= 1");
  std::vector<std::int64_t> x(static_cast<std::size_t>(n));
  switch (family) {
    case Family::Random:
      for (long i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = i + 1;
      break;
    case Family::Onezero: {
      const long ones = (n + 1) / 2;
      for (long i = 0; i < n; ++i)
        x[static_cast<std::size_t>(i)] = i < ones ? 1 : 0;
      break;
    }
    case Family::Sorted:
      for (long i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = i + 1;
      return x;
    case Family::Organpipe: {
      const long up = (n + 1) / 2;
      for (long i = 0; i < up; ++i) x[static_cast<std::size_t>(i)] = i + 1;
      for (long i = up; i < n; ++i) x[static_cast<std::size_t>(i)] = n - i;
      return x;
    }
  }
  // Fisher-Yates for the randomized families
  for (long i = n - 1; i > 0; --i) {
    const long j = static_cast<long>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
  }
  return x;
}

// Closed-form k-th smallest for the generated families (the sort oracle in
// closed form; the test suites additionally check against literal sorting).
inline std::int64_t oracle_kth(Family family, long n, long k) {
  switch (family) {
    case Family::Random:
    case Family::Sorted:
      return k;
    case Family::Onezero:
      return k <= n / 2 ? 0 : 1;
    case Family::Organpipe:
      return (k + 1) / 2;
  }
  return 0;
}

struct TrialRecord {
  Metrics metrics;
  double ms = 0.0;
  std::int64_t value = 0;
};

struct TrialReport {
  Family family = Family::Random;
  long n = 0;
  long k = 0;
  std::vector<TrialRecord> records;

  double c_over_n(const TrialRecord& r) const {
    return static_cast<double>(r.metrics.comparisons) / static_cast<double>(n);
  }
  double c_avg_n() const { return avg([&](const TrialRecord& r) { return c_over_n(r); }); }
  double c_max_n() const { return maxv([&](const TrialRecord& r) { return c_over_n(r); }); }
  double c_min_n() const { return minv([&](const TrialRecord& r) { return c_over_n(r); }); }
  double time_avg() const { return avg([](const TrialRecord& r) { return r.ms; }); }
  double time_max() const { return maxv([](const TrialRecord& r) { return r.ms; }); }
  double time_min() const { return minv([](const TrialRecord& r) { return r.ms; }); }
  double gamma_avg() const {
    const double c_avg = avg([](const TrialRecord& r) {
      return static_cast<double>(r.metrics.comparisons);
    });
    return (c_avg - 1.5 * static_cast<double>(n)) /
           comparison_scale(static_cast<double>(n));
  }
  double l_avg_n() const {
    return avg([&](const TrialRecord& r) {
      return static_cast<double>(r.metrics.partition_mass) /
             static_cast<double>(n);
    });
  }
  double p_avg_lnn() const {
    return avg([&](const TrialRecord& r) {
      return static_cast<double>(r.metrics.select_partitions) /
             std::log(static_cast<double>(n));
    });
  }
  double n_avg_lnn() const {
    return avg([&](const TrialRecord& r) {
      return static_cast<double>(r.metrics.sselect_calls) /
             std::log(static_cast<double>(n));
    });
  }
  double p_small_avg() const {
    std::uint64_t parts = 0, calls = 0;
    for (const TrialRecord& r : records) {
      parts += r.metrics.sselect_partitions;
      calls += r.metrics.sselect_calls;
    }
    return calls == 0 ? 0.0
                      : static_cast<double>(parts) / static_cast<double>(calls);
  }
  double s_avg_pct() const {
    return avg([&](const TrialRecord& r) {
      return 100.0 * static_cast<double>(r.metrics.sampled_elements) /
             static_cast<double>(n);
    });
  }

 private:
  template <class F>
  double avg(F f) const {
    double s = 0.0;
    for (const TrialRecord& r : records) s += f(r);
    return records.empty() ? 0.0 : s / static_cast<double>(records.size());
  }
  template <class F>
  double maxv(F f) const {
    double s = f(records.front());
    for (const TrialRecord& r : records) s = std::max(s, f(r));
    return s;
  }
  template <class F>
  double minv(F f) const {
    double s = f(records.front());
    for (const TrialRecord& r : records) s = std::min(s, f(r));
    return s;
  }
};

inline int threads_from_env() {
  if (const char* env = std::getenv("SELECTBENCH_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

// Runs `trials` seeded selections, oracle-checks every answer, and collects
// metrics. Trials are independent (rng keyed by trial index), so the result
// does not depend on execution order or thread count.
inline TrialReport run_experiment(
    Family family, long n, long k, const Params& params, long trials,
    std::uint64_t master_seed, int threads = threads_from_env(),
    std::vector<std::vector<IterationTrace>>* traces = nullptr) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  TrialReport report;
  report.family = family;
  report.n = n;
  report.k = k;
  report.records.resize(static_cast<std::size_t>(trials));
  if (traces) traces->resize(static_cast<std::size_t>(trials));

  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::string error = "oracle mismatch: a trial returned a wrong value";
  std::mutex error_mu;
  auto worker = [&]() {
    for (;;) {
      const long t = next.fetch_add(1);
      if (t >= trials || failed.load()) return;
      try {
      RngStream rng(master_seed, static_cast<std::uint64_t>(t));
      std::vector<std::int64_t> data = generate(family, n, rng);
      CountingComparator<std::int64_t> cmp;
      Metrics metrics;
      std::vector<IterationTrace> trace;
      const auto t0 = std::chrono::steady_clock::now();
      const FatRange fr =
          select(std::span<std::int64_t>(data), k, params, rng, cmp, metrics,
                 traces ? &trace : nullptr);
      const auto t1 = std::chrono::steady_clock::now();
      TrialRecord& rec = report.records[static_cast<std::size_t>(t)];
      rec.metrics = metrics;
      rec.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      rec.value = data[fr.lo];
      if (rec.value != oracle_kth(family, n, k)) failed.store(true);
      if (traces) (*traces)[static_cast<std::size_t>(t)] = std::move(trace);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(error_mu);
        error = e.what();
        failed.store(true);
        return;
      }
    }
  };

  const int nthreads =
      static_cast<int>(std::max<long>(1, std::min<long>(threads, trials)));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error(error);
  return report;
}

// ---- bound validation ----------------------------------------------------

struct BoundCheck {
  std::string name;
  long applicable = 0;
  long hits = 0;
  double bound = 1.0;
  double sigma = 0.0;
  bool pass = true;

  double frequency() const {
    return applicable == 0
               ? 0.0
               : static_cast<double>(hits) / static_cast<double>(applicable);
  }
};

struct LevelBounds {
  int level = 0;
  long s_l = 0;
  long s_next = 0;
  std::vector<BoundCheck> checks;
};

struct BoundReport {
  std::vector<LevelBounds> levels;
  bool zones_sound = true;
  bool all_pass() const {
    if (!zones_sound) return false;
    for (const LevelBounds& lb : levels)
      for (const BoundCheck& c : lb.checks)
        if (!c.pass) return false;
    return true;
  }
};

// Empirical event frequencies per iteration level vs. their closed-form
// bounds, at 3-sigma Monte-Carlo slack.
inline BoundReport validate_bounds(Family family, long n, long k,
                                   const Params& params, long trials,
                                   std::uint64_t master_seed,
                                   int threads = threads_from_env()) {
  if (params.gap_mode == GapMode::Knuth)
    throw std::invalid_argument("bound validation needs sqrt-n or sqrt-s gaps");
  std::vector<std::vector<IterationTrace>> traces;
  (void)run_experiment(family, n, k, params, trials, master_seed, threads,
                       &traces);

  const double kappa = params.kappa();
  BoundReport report;
  // group by level
  std::size_t max_levels = 0;
  for (const auto& tr : traces) max_levels = std::max(max_levels, tr.size());
  for (std::size_t li = 0; li < max_levels; ++li) {
    LevelBounds lb;
    std::vector<const IterationTrace*> entries;
    for (const auto& tr : traces)
      if (li < tr.size()) entries.push_back(&tr[li]);
    if (entries.empty()) continue;
    const IterationTrace& first = *entries.front();
    lb.level = first.level;
    lb.s_l = first.s_l;
    lb.s_next = first.s_next;
    for (const IterationTrace* e : entries)
      if (!e->zones_sound) report.zones_sound = false;

    const double g = first.g;
    const double s = static_cast<double>(first.s_l);
    const double factor = params.gap_mode == GapMode::SqrtN
                              ? (1.0 - kappa) * (1.0 - kappa)
                              : psi_factor(kappa, first.s_l);
    const double bound_ac = std::min(1.0, std::exp(-2.0 * factor * g * g / s));
    const double bound_bd = std::min(1.0, std::exp(-2.0 * g * g / s));
    const double bound_fail =
        params.gap_mode == GapMode::SqrtN
            ? p_fail(params.beta, kappa, n, PfailMode::SqrtN)
            : p_fail(params.beta, kappa, first.s_l, PfailMode::SqrtS);

    auto add = [&](const char* name, double bound, auto applies, auto hit) {
      BoundCheck c;
      c.name = name;
      c.bound = bound;
      for (const IterationTrace* e : entries) {
        if (!applies(*e)) continue;
        ++c.applicable;
        if (hit(*e)) ++c.hits;
      }
      if (c.applicable > 0 && bound < 1.0) {
        c.sigma = std::sqrt(bound * (1.0 - bound) /
                            static_cast<double>(c.applicable));
        c.pass = c.frequency() <= bound + 3.0 * c.sigma;
      }
      lb.checks.push_back(std::move(c));
    };

    auto always = [](const IterationTrace&) { return true; };
    add("u_plus<u", bound_ac,
        [](const IterationTrace& e) { return !e.clamp_u; },
        [](const IterationTrace& e) { return e.ev_u_plus_lt_u; });
    add("v<v_plus", bound_ac,
        [](const IterationTrace& e) { return !e.clamp_v; },
        [](const IterationTrace& e) { return e.ev_v_lt_v_plus; });
    add("u<z*_ju", bound_bd, always,
        [](const IterationTrace& e) { return e.ev_u_lt_z_ju; });
    add("z*_jv<v", bound_bd, always,
        [](const IterationTrace& e) { return e.ev_z_jv_lt_v; });
    add("shat>=4gs+/s", bound_fail, always,
        [](const IterationTrace& e) { return e.ev_shat_large; });
    add("c>=cbar or shat large", bound_fail, always,
        [](const IterationTrace& e) { return e.ev_cost_large; });
    report.levels.push_back(std::move(lb));
  }
  return report;
}

struct HypergeomCheck {
  double empirical = 0.0;
  double bound = 1.0;
  double sigma = 0.0;
  bool pass = true;
};

// Monte-Carlo check of the hypergeometric tail bound
// P[rho' >= p*s + g] <= exp(-2 g^2 / s).
inline HypergeomCheck hypergeometric_tail_check(long s_plus, long red, long s,
                                                double g, long resamples,
                                                std::uint64_t seed) {
  RngStream rng(seed);
  const double p = static_cast<double>(red) / static_cast<double>(s_plus);
  const double threshold = p * static_cast<double>(s) + g;
  std::vector<int> balls(static_cast<std::size_t>(s_plus));
  long hits = 0;
  for (long t = 0; t < resamples; ++t) {
    for (long i = 0; i < s_plus; ++i)
      balls[static_cast<std::size_t>(i)] = i < red ? 1 : 0;
    long drawn_red = 0;
    for (long i = 0; i < s; ++i) {
      const long j =
          i + static_cast<long>(rng.below(static_cast<std::uint64_t>(s_plus - i)));
      std::swap(balls[static_cast<std::size_t>(i)],
                balls[static_cast<std::size_t>(j)]);
      drawn_red += balls[static_cast<std::size_t>(i)];
    }
    if (static_cast<double>(drawn_red) >= threshold) ++hits;
  }
  HypergeomCheck out;
  out.empirical = static_cast<double>(hits) / static_cast<double>(resamples);
  out.bound = std::exp(-2.0 * g * g / static_cast<double>(s));
  out.sigma =
      std::sqrt(out.bound * (1.0 - out.bound) / static_cast<double>(resamples));
  out.pass = out.empirical <= out.bound + 3.0 * out.sigma;
  return out;
}

// ---- table emission ------------------------------------------------------

enum class TableFormat { Csv, Table };

// CSV is the machine contract: header row, period decimal separator, LF.
inline std::string emit_table(const std::vector<TrialReport>& reports,
                              TableFormat format, bool include_time = true) {
  std::string out;
  char buf[512];
  if (format == TableFormat::Csv) {
    out +=
        "input,n,time_avg_ms,time_max_ms,time_min_ms,c_avg_n,c_max_n,c_min_n,"
        "gamma_avg,l_avg_n,p_avg_lnn,n_avg_lnn,p_avg,s_avg_pct\n";
    for (const TrialReport& r : reports) {
      std::snprintf(
          buf, sizeof buf,
          "%s,%ld,%.2f,%.2f,%.2f,%.4f,%.4f,%.4f,%.2f,%.2f,%.2f,%.2f,%.2f,"
          "%.2f\n",
          family_name(r.family), r.n, include_time ? r.time_avg() : 0.0,
          include_time ? r.time_max() : 0.0, include_time ? r.time_min() : 0.0,
          r.c_avg_n(), r.c_max_n(), r.c_min_n(), r.gamma_avg(), r.l_avg_n(),
          r.p_avg_lnn(), r.n_avg_lnn(), r.p_small_avg(), r.s_avg_pct());
      out += buf;
    }
    return out;
  }
  std::snprintf(buf, sizeof buf,
                "%-10s %10s %8s %8s %8s %6s %6s %6s %7s %6s %6s %6s %6s %6s\n",
                "input", "n", "t_avg", "t_max", "t_min", "Cavg/n", "Cmax/n",
                "Cmin/n", "gamma", "L[n]", "P[lnn]", "N[lnn]", "p", "s[%n]");
  out += buf;
  for (const TrialReport& r : reports) {
    std::snprintf(
        buf, sizeof buf,
        "%-10s %10ld %8.1f %8.1f %8.1f %6.2f %6.2f %6.2f %7.2f %6.2f %6.2f "
        "%6.2f %6.2f %6.2f\n",
        family_name(r.family), r.n, include_time ? r.time_avg() : 0.0,
        include_time ? r.time_max() : 0.0, include_time ? r.time_min() : 0.0,
        r.c_avg_n(), r.c_max_n(), r.c_min_n(), r.gamma_avg(), r.l_avg_n(),
        r.p_avg_lnn(), r.n_avg_lnn(), r.p_small_avg(), r.s_avg_pct());
    out += buf;
  }
  return out;
}

}  // namespace selectlib
