#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace selectlib {

enum class Ordering { less, equal, greater };

// Three-way comparator. Every call through operator() counts as exactly one
// comparison; raw() is for oracles and validators and leaves the count alone.
template <class T, class Less = std::less<T>>
class CountingComparator {
 public:
  explicit CountingComparator(Less less = {}) : less_(std::move(less)) {}

  Ordering operator()(const T& a, const T& b) {
    ++count_;
    return order(a, b);
  }

  Ordering raw(const T& a, const T& b) const { return order(a, b); }
  bool raw_less(const T& a, const T& b) const { return less_(a, b); }

  std::uint64_t count() const { return count_; }
  void reset() { count_ = 0; }

 private:
  Ordering order(const T& a, const T& b) const {
    if (less_(a, b)) return Ordering::less;
    if (less_(b, a)) return Ordering::greater;
    return Ordering::equal;
  }

  Less less_;
  std::uint64_t count_ = 0;
};

// SplitMix64 stream, keyed by (master_seed, trial_index) so trials are
// reproducible independent of execution order.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t trial_index = 0) {
    state_ = mix(master_seed ^ mix(trial_index + kGamma));
  }

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform in [0, bound) via rejection sampling; no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t rem =
        (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    if (rem == 0) return next() % bound;
    const std::uint64_t cutoff = std::numeric_limits<std::uint64_t>::max() - rem;
    for (;;) {
      const std::uint64_t x = next();
      if (x <= cutoff) return x % bound;
    }
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

enum class GapMode { SqrtN, SqrtS, Knuth };
enum class ScheduleMode { Plain, Capped };
enum class Variant { Recursive, NonrecPick, NonrecSort, Quickselect };

struct Params {
  double alpha = 0.5;
  double beta = 0.3;
  long r2 = 144;  // r squared; r = sqrt(r2), kappa = 1/r
  double eta_bar = 2.0 / 144.0;
  long n_cut = 600;
  GapMode gap_mode = GapMode::SqrtS;
  ScheduleMode schedule_mode = ScheduleMode::Capped;
  Variant variant = Variant::Recursive;
  bool single_pivot_reset = true;
  bool restart_on_large_shat = false;
  bool randomized_sampling = true;
  bool independent_initial_selects = false;

  double r() const { return std::sqrt(static_cast<double>(r2)); }
  double kappa() const { return 1.0 / r(); }
};

// Returns all violated constraints; empty means ok.
inline std::vector<std::string> validate_params(const Params& p) {
  std::vector<std::string> v;
  if (!(p.alpha > 0.0 && p.alpha <= 0.5))
    v.push_back("alpha must lie in (0, 1/2]");
  if (p.r2 < 2) v.push_back("r2 must be an integer >= 2");
  if (p.n_cut < 1) v.push_back("n_cut must be positive");
  if (!(p.beta > 0.0)) v.push_back("beta must be positive");
  if (p.r2 >= 2) {
    const double floor_beta = 0.25 / ((1.0 - p.kappa()) * (1.0 - p.kappa()));
    if (p.gap_mode == GapMode::SqrtN && p.beta < floor_beta)
      v.push_back("beta must satisfy beta >= (1/4)(1-kappa)^-2 in sqrt-n gap mode");
    if (p.gap_mode == GapMode::SqrtS && !(p.beta > floor_beta))
      v.push_back("beta must satisfy beta > (1/4)(1-kappa)^-2 in sqrt-s gap mode");
    if (!(p.eta_bar > 1.0 / static_cast<double>(p.r2) && p.eta_bar <= 1.0))
      v.push_back("eta_bar must lie in (1/r2, 1]");
  }
  return v;
}

struct Metrics {
  std::uint64_t comparisons = 0;       // C
  std::uint64_t partition_mass = 0;    // L: sum of sizes of partitioned arrays
  std::uint64_t select_partitions = 0; // P: number of Step-4 executions
  std::uint64_t sselect_calls = 0;     // N
  std::uint64_t sselect_partitions = 0;
  std::uint64_t sampled_elements = 0;  // s
  std::uint64_t restarts = 0;
  int max_depth = 0;
};

// f(t) = (t ln t)^(1/2)
inline double comparison_scale(double t) { return std::sqrt(t * std::log(t)); }

}  // namespace selectlib
