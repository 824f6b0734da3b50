#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "selectlib/core.hpp"

namespace selectlib {

// Half-open index range [lo, hi) of elements equal to a selected value.
// Selection routines here satisfy the "fat" contract: after the call the
// range holds strictly smaller elements before lo, the equal run in
// [lo, hi), and strictly larger elements from hi on.
struct FatRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

namespace detail {

inline void check_rank(std::size_t n, long k) {
  if (n == 0 || k < 1 || static_cast<std::size_t>(k) > n)
    throw std::out_of_range("selection rank out of range");
}

// Dutch-national-flag pass: one three-way comparison per element.
template <class T, class Less>
FatRange three_way_partition(std::span<T> x, const T& pivot,
                             CountingComparator<T, Less>& cmp) {
  std::size_t lt = 0, i = 0, gt = x.size();
  while (i < gt) {
    switch (cmp(x[i], pivot)) {
      case Ordering::less:
        std::swap(x[i], x[lt]);
        ++lt;
        ++i;
        break;
      case Ordering::equal:
        ++i;
        break;
      case Ordering::greater:
        --gt;
        std::swap(x[i], x[gt]);
        break;
    }
  }
  return {lt, gt};
}

template <class T, class Less>
void counting_insertion_sort(std::span<T> x, CountingComparator<T, Less>& cmp) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      if (cmp(x[j - 1], x[j]) != Ordering::greater) break;
      std::swap(x[j - 1], x[j]);
    }
  }
}

// Equal range around position k-1 of a sorted span, found by counted scans.
template <class T, class Less>
FatRange equal_range_sorted(std::span<T> x, long k,
                            CountingComparator<T, Less>& cmp) {
  std::size_t lo = static_cast<std::size_t>(k - 1);
  std::size_t hi = lo + 1;
  while (lo > 0 && cmp(x[lo - 1], x[lo]) == Ordering::equal) --lo;
  while (hi < x.size() && cmp(x[hi], x[hi - 1]) == Ordering::equal) ++hi;
  return {lo, hi};
}

}  // namespace detail

// Median-of-3 three-way quickselect. Deterministic pivot positions when
// rng is null (the small-file routine), randomized sampling otherwise.
template <class T, class Less>
FatRange fat_quickselect(std::span<T> x, long k, RngStream* rng,
                         CountingComparator<T, Less>& cmp, Metrics& metrics,
                         std::uint64_t Metrics::*pass_counter) {
  detail::check_rank(x.size(), k);
  const std::size_t target = static_cast<std::size_t>(k - 1);
  std::size_t lo = 0, hi = x.size();
  for (;;) {
    const std::size_t m = hi - lo;
    if (m == 1) return {lo, lo + 1};
    std::span<T> sub = x.subspan(lo, m);
    std::size_t pi;
    if (m == 2) {
      pi = 0;
    } else {
      std::size_t a = 0, b = m / 2, c = m - 1;
      if (rng) {
        a = rng->below(m);
        b = rng->below(m);
        c = rng->below(m);
      }
      // median of three positions
      if (cmp(sub[a], sub[b]) == Ordering::greater) std::swap(a, b);
      if (cmp(sub[b], sub[c]) == Ordering::greater) {
        std::swap(b, c);
        if (cmp(sub[a], sub[b]) == Ordering::greater) std::swap(a, b);
      }
      pi = b;
    }
    const T pivot = sub[pi];
    const FatRange fr = detail::three_way_partition(sub, pivot, cmp);
    metrics.partition_mass += m;
    if (pass_counter) ++(metrics.*pass_counter);
    const std::size_t a = lo + fr.lo, b = lo + fr.hi;
    if (target < a) {
      hi = a;
    } else if (target >= b) {
      lo = b;
    } else {
      return {a, b};
    }
  }
}

// sSelect: the cutoff routine for subfiles of size <= n_cut.
template <class T, class Less>
FatRange small_select(std::span<T> x, long k, CountingComparator<T, Less>& cmp,
                      Metrics& metrics) {
  ++metrics.sselect_calls;
  return fat_quickselect(x, k, nullptr, cmp, metrics,
                         &Metrics::sselect_partitions);
}

// Deterministic linear-time selection: median of medians, groups of 5,
// fat-pivot partitioning.
template <class T, class Less>
FatRange pick_select(std::span<T> x, long k, CountingComparator<T, Less>& cmp,
                     Metrics& metrics) {
  detail::check_rank(x.size(), k);
  const std::size_t target = static_cast<std::size_t>(k - 1);
  std::size_t lo = 0, hi = x.size();
  for (;;) {
    const std::size_t m = hi - lo;
    std::span<T> sub = x.subspan(lo, m);
    if (m <= 10) {
      detail::counting_insertion_sort(sub, cmp);
      const FatRange fr =
          detail::equal_range_sorted(sub, static_cast<long>(target - lo) + 1, cmp);
      return {lo + fr.lo, lo + fr.hi};
    }
    // group medians gathered at the front of the working range
    std::size_t groups = 0;
    for (std::size_t g = 0; g < m; g += 5) {
      const std::size_t len = std::min<std::size_t>(5, m - g);
      detail::counting_insertion_sort(sub.subspan(g, len), cmp);
      std::swap(sub[groups], sub[g + len / 2]);
      ++groups;
    }
    const FatRange med = pick_select(sub.subspan(0, groups),
                                     static_cast<long>((groups + 1) / 2), cmp,
                                     metrics);
    const T pivot = sub[med.lo];
    const FatRange fr = detail::three_way_partition(sub, pivot, cmp);
    metrics.partition_mass += m;
    const std::size_t a = lo + fr.lo, b = lo + fr.hi;
    if (target < a) {
      hi = a;
    } else if (target >= b) {
      lo = b;
    } else {
      return {a, b};
    }
  }
}

namespace detail {

template <class T, class Less>
void merge_sort_rec(std::span<T> x, std::span<T> scratch,
                    CountingComparator<T, Less>& cmp) {
  const std::size_t m = x.size();
  if (m < 2) return;
  const std::size_t half = m / 2;
  merge_sort_rec(x.subspan(0, half), scratch.subspan(0, half), cmp);
  merge_sort_rec(x.subspan(half), scratch.subspan(half), cmp);
  std::size_t i = 0, j = half, o = 0;
  while (i < half && j < m) {
    if (cmp(x[j], x[i]) == Ordering::less)
      scratch[o++] = x[j++];
    else
      scratch[o++] = x[i++];
  }
  while (i < half) scratch[o++] = x[i++];
  while (j < m) scratch[o++] = x[j++];
  for (std::size_t t = 0; t < m; ++t) x[t] = scratch[t];
}

}  // namespace detail

// Comparison-counting mergesort; at most m*ceil(log2 m) comparisons.
template <class T, class Less>
void counting_merge_sort(std::span<T> x, CountingComparator<T, Less>& cmp) {
  std::vector<T> scratch(x.size());
  detail::merge_sort_rec(x, std::span<T>(scratch), cmp);
}

// Selection by full sort.
template <class T, class Less>
T sort_select(std::span<T> x, long k, CountingComparator<T, Less>& cmp) {
  detail::check_rank(x.size(), k);
  counting_merge_sort(x, cmp);
  return x[static_cast<std::size_t>(k - 1)];
}

// Randomized baseline (FIND / quickselect with median-of-3 sampled pivots).
template <class T, class Less>
FatRange quickselect(std::span<T> x, long k, RngStream& rng,
                     CountingComparator<T, Less>& cmp, Metrics& metrics) {
  return fat_quickselect(x, k, &rng, cmp, metrics, &Metrics::select_partitions);
}

}  // namespace selectlib
