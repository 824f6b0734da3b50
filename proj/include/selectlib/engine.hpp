#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "selectlib/core.hpp"
#include "selectlib/fallbacks.hpp"
#include "selectlib/schedule.hpp"

namespace selectlib {

// Per-iteration record for the bound validator. Collected only for the
// outermost invocation; oracle work (z* order statistics, zone audits)
// uses uncounted comparisons.
struct IterationTrace {
  int level = 0;  // l, 1-based within the invocation
  long s_l = 0;
  long s_next = 0;
  double theta = 0.0;
  double g = 0.0;       // gap at level l
  double g_next = 0.0;  // gap at level l+1
  long i_u = 0, i_v = 0;            // effective ranks at level l
  long i_u_plus = 0, i_v_plus = 0;  // effective ranks at level l+1
  long j_u = 0, j_v = 0;
  std::uint64_t c_l = 0;  // Step-4 comparisons at this iteration
  long s_hat = 0;         // |S_hat_u  union  S_hat_v|
  bool clamp_u = false;   // i_u != ceil(theta*s - g) at level l
  bool clamp_v = false;   // i_v != ceil(theta*s + g) at level l
  bool ev_u_plus_lt_u = false;
  bool ev_v_lt_v_plus = false;
  bool ev_u_lt_z_ju = false;
  bool ev_z_jv_lt_v = false;
  bool ev_shat_large = false;  // s_hat >= 4 g s+/s
  bool ev_cost_large = false;  // c_l >= c_bar
  bool zones_sound = true;
};

namespace detail {

// Zone codes for the contiguous layout L | U | M | V | R.
enum ZoneCode : std::uint8_t { kL = 0, kU = 1, kM = 2, kV = 3, kR = 4 };

struct ZoneLoc {
  ZoneCode kind;
  long rel;  // 1-based rank within the zone when kind is L, M or R
};

// Step-5 case analysis over zone cardinalities. b0..b3 are the zone
// boundaries: L=[0,b0) U=[b0,b1) M=[b1,b2) V=[b2,b3) R=[b3,s).
inline ZoneLoc locate_rank(long i, long b0, long b1, long b2, long b3, long s) {
  assert(i >= 1 && i <= s);
  if (i <= b0) return {kL, i};
  if (i <= b1) return {kU, 0};
  if (i <= b2) return {kM, i - b1};
  if (i <= b3) return {kV, 0};
  return {kR, i - b3};
}

// The Step-4 comparison rule: compare to v first when theta < 1/2, to u
// first otherwise; one comparison when u == v. Returns the zone code.
template <class T, class Less>
std::uint8_t classify_element(const T& x, const T& u, const T& v, bool single,
                              double theta, CountingComparator<T, Less>& cmp) {
  if (single) {
    switch (cmp(x, u)) {
      case Ordering::less: return kL;
      case Ordering::equal: return kU;
      case Ordering::greater: return kR;
    }
  } else if (theta < 0.5) {
    switch (cmp(x, v)) {
      case Ordering::equal: return kV;
      case Ordering::greater: return kR;
      case Ordering::less:
        switch (cmp(x, u)) {
          case Ordering::less: return kL;
          case Ordering::equal: return kU;
          case Ordering::greater: return kM;
        }
    }
  } else {
    switch (cmp(x, u)) {
      case Ordering::equal: return kU;
      case Ordering::less: return kL;
      case Ordering::greater:
        switch (cmp(x, v)) {
          case Ordering::less: return kM;
          case Ordering::equal: return kV;
          case Ordering::greater: return kR;
        }
    }
  }
  return kL;  // unreachable
}

struct EngineTestAccess;

template <class T, class Less>
class SelectEngine {
 public:
  SelectEngine(const Params& params, RngStream& rng,
               CountingComparator<T, Less>& cmp, Metrics& metrics,
               std::vector<IterationTrace>* trace)
      : p_(params), rng_(rng), cmp_(cmp), m_(metrics), trace_(trace) {}

  FatRange fat_select(std::span<T> x, long k) {
    check_rank(x.size(), k);
    ++depth_;
    m_.max_depth = std::max(m_.max_depth, depth_);
    FatRange out;
    if (depth_ > 64) {
      // pathological pivot sequences (deterministic sampling on adversarial
      // input) can recurse slowly; hand off to the deterministic linear
      // selector instead of growing the stack
      out = pick_select(x, k, cmp_, m_);
    } else if (static_cast<long>(x.size()) <= p_.n_cut) {
      out = small_select(x, k, cmp_, m_);
    } else {
      out = select_body(x, k, depth_ == 1);
    }
    --depth_;
    return out;
  }

 private:
  static constexpr int kMaxRestarts = 64;

  // Algorithm state for one invocation.
  struct Zones {
    long b0 = 0, b1 = 0, b2 = 0, b3 = 0;  // boundaries within [0, s_cur)
    bool single = false;                  // u == v
  };

  FatRange select_body(std::span<T> x, long k, bool top) {
    const long n = static_cast<long>(x.size());
    const double theta = static_cast<double>(k) / static_cast<double>(n);
    const bool tracing = top && trace_ != nullptr;
    int restarts_here = 0;

  restart:
    const Schedule sch = make_schedule(n, p_);
    const long s1 = sch.sizes[0];
    const int l_bar = sch.l_bar;
    assert(s1 >= 1 && s1 < n);

    // Step 2: initial sample and pivots.
    if (p_.randomized_sampling) partial_shuffle(x, 0, static_cast<std::size_t>(s1));
    m_.sampled_elements += static_cast<std::uint64_t>(s1);
    double g_cur = gap_at(1, l_bar, s1, n, theta);
    long i_u = 0, i_v = 0;
    bool clamp_u = false, clamp_v = false;
    effective_ranks(k, n, s1, g_cur, i_u, i_v, clamp_u, clamp_v);

    Zones z;
    T u_val, v_val;
    init_zones(x.subspan(0, static_cast<std::size_t>(s1)), i_u, i_v, z, u_val,
               v_val);

    long s_cur = s1;
    for (int l = 1; l <= l_bar; ++l) {
      const long s_next = sch.sizes[static_cast<std::size_t>(l)];

      // Step 3: extend the sample with s_next - s_cur staged elements.
      if (p_.randomized_sampling && s_next < n)
        partial_shuffle(x, static_cast<std::size_t>(s_cur),
                        static_cast<std::size_t>(s_next));
      if (s_next < n)
        m_.sampled_elements += static_cast<std::uint64_t>(s_next - s_cur);

      // Step 4: classify staged elements against u, v.
      const std::uint64_t c_before = cmp_.count();
      partition_staged(x, z, u_val, v_val, theta, s_cur, s_next);
      const std::uint64_t c_l = cmp_.count() - c_before;
      ++m_.select_partitions;
      m_.partition_mass += static_cast<std::uint64_t>(s_next - s_cur);

      // Step 5: next ranks and pivots.
      const double g_next = gap_at(l + 1, l_bar, s_next, n, theta);
      long iu_plus = 0, iv_plus = 0;
      bool clamp_u_next = false, clamp_v_next = false;
      effective_ranks(k, n, s_next, g_next, iu_plus, iv_plus, clamp_u_next,
                      clamp_v_next);

      const ZoneLoc lu = locate_rank(iu_plus, z.b0, z.b1, z.b2, z.b3, s_next);
      const ZoneLoc lv = locate_rank(iv_plus, z.b0, z.b1, z.b2, z.b3, s_next);
      long s_hat = 0;
      if (lu.kind == kL || lu.kind == kM || lu.kind == kR)
        s_hat += zone_size(z, lu.kind, s_next);
      if ((lv.kind == kL || lv.kind == kM || lv.kind == kR) &&
          lv.kind != lu.kind)
        s_hat += zone_size(z, lv.kind, s_next);

      const double shat_threshold = 4.0 * g_cur *
                                    static_cast<double>(s_next) /
                                    static_cast<double>(s_cur);
      if (p_.restart_on_large_shat && p_.randomized_sampling &&
          static_cast<double>(s_hat) >= shat_threshold &&
          restarts_here < kMaxRestarts) {
        ++restarts_here;
        ++m_.restarts;
        goto restart;
      }

      IterationTrace tr;
      if (tracing) {
        tr.level = l;
        tr.s_l = s_cur;
        tr.s_next = s_next;
        tr.theta = theta;
        tr.g = g_cur;
        tr.g_next = g_next;
        tr.i_u = i_u;
        tr.i_v = i_v;
        tr.i_u_plus = iu_plus;
        tr.i_v_plus = iv_plus;
        const BoundingPair jp = bounding_ranks(theta, s_cur, s_next, g_cur);
        tr.j_u = jp.j_u;
        tr.j_v = jp.j_v;
        tr.c_l = c_l;
        tr.s_hat = s_hat;
        tr.clamp_u = clamp_u;
        tr.clamp_v = clamp_v;
        tr.ev_shat_large = static_cast<double>(s_hat) >= shat_threshold;
        const double c_bar = partition_cost_bound(theta, s_cur, s_next, g_cur);
        tr.ev_cost_large =
            static_cast<double>(c_l) >= c_bar || tr.ev_shat_large;
        // z* order statistics of S_{l+1}, via an uncounted oracle
        std::vector<T> probe(x.begin(), x.begin() + s_next);
        auto raw_less = [this](const T& a, const T& b) {
          return cmp_.raw_less(a, b);
        };
        std::nth_element(probe.begin(), probe.begin() + (jp.j_u - 1),
                         probe.end(), raw_less);
        const T z_ju = probe[static_cast<std::size_t>(jp.j_u - 1)];
        std::nth_element(probe.begin(), probe.begin() + (jp.j_v - 1),
                         probe.end(), raw_less);
        const T z_jv = probe[static_cast<std::size_t>(jp.j_v - 1)];
        tr.ev_u_lt_z_ju = cmp_.raw(u_val, z_ju) == Ordering::less;
        tr.ev_z_jv_lt_v = cmp_.raw(z_jv, v_val) == Ordering::less;
      }
      const T u_old = u_val;
      const T v_old = v_val;

      resolve_pivots(x, z, lu, lv, iu_plus, iv_plus, s_next, u_val, v_val);

      if (tracing) {
        tr.ev_u_plus_lt_u = cmp_.raw(u_val, u_old) == Ordering::less;
        tr.ev_v_lt_v_plus = cmp_.raw(v_old, v_val) == Ordering::less;
        tr.zones_sound = audit_zones(x, z, u_val, v_val, s_next);
        trace_->push_back(tr);
      }

      i_u = iu_plus;
      i_v = iv_plus;
      clamp_u = clamp_u_next;
      clamp_v = clamp_v_next;
      g_cur = g_next;
      s_cur = s_next;
    }

    // Step 6: the sample is X; the answer is the (collapsed) pivot.
    assert(s_cur == n);
    assert(z.single);
    assert(z.b0 < k && k <= z.b1);
    return {static_cast<std::size_t>(z.b0), static_cast<std::size_t>(z.b1)};
  }

  // Ranks from pivot_ranks plus the optional single-pivot collapse:
  // i_u := i_v when theta <= g/s, i_v := i_u when 1 < theta + g/s.
  // theta = k/n is evaluated as an exact rational in the ceil arguments.
  void effective_ranks(long k, long n, long s, double g, long& i_u, long& i_v,
                       bool& clamp_u, bool& clamp_v) const {
    const RankPair rp = pivot_ranks_exact(k, n, s, g);
    i_u = rp.i_u;
    i_v = rp.i_v;
    const double theta = static_cast<double>(k) / static_cast<double>(n);
    if (p_.single_pivot_reset && s >= 1) {
      const double gs = g / static_cast<double>(s);
      if (theta <= gs)
        i_u = i_v;
      else if (1.0 < theta + gs)
        i_v = i_u;
    }
    clamp_u = i_u != ceil_ratio_plus(k * s, n, -g);
    clamp_v = i_v != ceil_ratio_plus(k * s, n, g);
  }

  double gap_at(int l, int l_bar, long s_l, long n, double theta) const {
    if (l == l_bar + 1) return 0.0;
    if (s_l < 2) return 0.0;  // degenerate sample, exact bracketing anyway
    return gap(l, l_bar, s_l, n, theta, p_.gap_mode, p_.beta);
  }

  // Draw [from, to) uniformly without replacement from [from, |x|).
  void partial_shuffle(std::span<T> x, std::size_t from, std::size_t to) {
    const std::size_t n = x.size();
    for (std::size_t i = from; i < to; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng_.below(n - i));
      if (j != i) std::swap(x[i], x[j]);
    }
  }

  static long zone_size(const Zones& z, ZoneCode c, long s) {
    switch (c) {
      case kL: return z.b0;
      case kU: return z.b1 - z.b0;
      case kM: return z.b2 - z.b1;
      case kV: return z.b3 - z.b2;
      case kR: return s - z.b3;
    }
    return 0;
  }

  // Step 2: select u1 and v1 within the initial sample and set up zones.
  void init_zones(std::span<T> s1, long i_u, long i_v, Zones& z, T& u_val,
                  T& v_val) {
    FatRange fu, fv;
    if (p_.independent_initial_selects && i_u < i_v) {
      // Literal reading: two selections over the whole sample. The second
      // pass destroys the first arrangement, so u's equal range is
      // re-established in the prefix below v afterwards.
      (void)zone_single(s1, i_u);
      fv = zone_single(s1, i_v);
      if (static_cast<std::size_t>(i_u) > fv.lo) {
        fu = fv;
      } else {
        fu = zone_single(s1.subspan(0, fv.lo), i_u);
      }
    } else {
      zone_pair(s1, i_u, i_v, fu, fv);
    }
    z.b0 = static_cast<long>(fu.lo);
    z.b1 = static_cast<long>(fu.hi);
    z.single = fu.lo == fv.lo;
    z.b2 = z.single ? z.b1 : static_cast<long>(fv.lo);
    z.b3 = z.single ? z.b1 : static_cast<long>(fv.hi);
    u_val = s1[fu.lo];
    v_val = s1[fv.lo];
  }

  // Fat-select one rank within a zone, dispatching on the variant.
  FatRange zone_single(std::span<T> zone, long rank) {
    switch (p_.variant) {
      case Variant::Recursive:
        return fat_select(zone, rank);
      case Variant::NonrecPick:
        return pick_select(zone, rank, cmp_, m_);
      case Variant::NonrecSort: {
        counting_merge_sort(zone, cmp_);
        return equal_range_sorted(zone, rank, cmp_);
      }
      case Variant::Quickselect:
        break;  // never reaches the engine
    }
    assert(false);
    return {};
  }

  // Fat-select two ranks r1 <= r2 within one zone. The sort variant sorts
  // the zone once and reads both off; the others select r1, then r2 in the
  // suffix above r1's equal range.
  void zone_pair(std::span<T> zone, long r1, long r2, FatRange& f1,
                 FatRange& f2) {
    if (p_.variant == Variant::NonrecSort) {
      counting_merge_sort(zone, cmp_);
      f1 = equal_range_sorted(zone, r1, cmp_);
      f2 = (static_cast<std::size_t>(r2) <= f1.hi)
               ? f1
               : equal_range_sorted(zone, r2, cmp_);
      return;
    }
    f1 = zone_single(zone, r1);
    if (static_cast<std::size_t>(r2) <= f1.hi) {
      f2 = f1;
      return;
    }
    const FatRange fs =
        zone_single(zone.subspan(f1.hi), r2 - static_cast<long>(f1.hi));
    f2 = {f1.hi + fs.lo, f1.hi + fs.hi};
  }

  // Step 4: one or two counted comparisons per staged element, then an
  // in-place counting permutation restoring zone contiguity.
  void partition_staged(std::span<T> x, Zones& z, const T& u, const T& v,
                        double theta, long s_cur, long s_next) {
    const std::size_t total = static_cast<std::size_t>(s_next);
    codes_.resize(total);
    std::array<std::size_t, 5> count{};
    auto fill = [&](std::size_t a, std::size_t b, std::uint8_t c) {
      std::fill(codes_.begin() + a, codes_.begin() + b, c);
      count[c] += b - a;
    };
    fill(0, static_cast<std::size_t>(z.b0), kL);
    fill(static_cast<std::size_t>(z.b0), static_cast<std::size_t>(z.b1), kU);
    fill(static_cast<std::size_t>(z.b1), static_cast<std::size_t>(z.b2), kM);
    fill(static_cast<std::size_t>(z.b2), static_cast<std::size_t>(z.b3), kV);
    fill(static_cast<std::size_t>(z.b3), static_cast<std::size_t>(s_cur), kR);

    for (std::size_t i = static_cast<std::size_t>(s_cur); i < total; ++i) {
      const std::uint8_t c = classify(x[i], u, v, z.single, theta);
      codes_[i] = c;
      ++count[c];
    }

    std::array<std::size_t, 6> start{};
    for (int c = 0; c < 5; ++c) start[c + 1] = start[c] + count[c];
    std::array<std::size_t, 5> cur{};
    for (int c = 0; c < 5; ++c) cur[c] = start[c];
    for (int c = 0; c < 5; ++c) {
      for (std::size_t i = start[c]; i < start[c + 1]; ++i) {
        while (codes_[i] != c) {
          const std::uint8_t d = codes_[i];
          std::size_t j = cur[d];
          while (codes_[j] == d) ++j;  // skip already-placed entries
          std::swap(x[i], x[j]);
          std::swap(codes_[i], codes_[j]);
          cur[d] = j + 1;
        }
      }
      cur[c] = start[c + 1];
    }

    z.b0 = static_cast<long>(start[1]);
    z.b1 = static_cast<long>(start[2]);
    z.b2 = static_cast<long>(start[3]);
    z.b3 = static_cast<long>(start[4]);
  }

  std::uint8_t classify(const T& x, const T& u, const T& v, bool single,
                        double theta) {
    return classify_element(x, u, v, single, theta, cmp_);
  }

  // Step 5(b)-(c): reuse a pivot or select inside exactly one zone per rank.
  void resolve_pivots(std::span<T> x, Zones& z, ZoneLoc lu, ZoneLoc lv,
                      long iu_plus, long iv_plus, long s_next, T& u_val,
                      T& v_val) {
    (void)iu_plus;
    (void)iv_plus;
    FatRange gu, gv;
    bool gu_done = false;
    switch (lu.kind) {
      case kU:
        gu = {static_cast<std::size_t>(z.b0), static_cast<std::size_t>(z.b1)};
        gu_done = true;
        break;
      case kV:
        gu = {static_cast<std::size_t>(z.b2), static_cast<std::size_t>(z.b3)};
        gu_done = true;
        break;
      default:
        break;
    }

    const auto zone_span = [&](ZoneCode c) -> std::pair<std::size_t, std::size_t> {
      switch (c) {
        case kL: return {0, static_cast<std::size_t>(z.b0)};
        case kM: return {static_cast<std::size_t>(z.b1),
                         static_cast<std::size_t>(z.b2)};
        case kR: return {static_cast<std::size_t>(z.b3),
                         static_cast<std::size_t>(s_next)};
        default: return {0, 0};
      }
    };

    bool gv_done = false;
    if (!gu_done) {
      const auto [zl, zr] = zone_span(lu.kind);
      std::span<T> zs = x.subspan(zl, zr - zl);
      if (lv.kind == lu.kind) {
        FatRange f1, f2;
        zone_pair(zs, lu.rel, lv.rel, f1, f2);
        gu = {zl + f1.lo, zl + f1.hi};
        gv = {zl + f2.lo, zl + f2.hi};
        gv_done = true;
      } else {
        const FatRange f = zone_single(zs, lu.rel);
        gu = {zl + f.lo, zl + f.hi};
      }
    }
    if (!gv_done) {
      switch (lv.kind) {
        case kU:
          gv = {static_cast<std::size_t>(z.b0), static_cast<std::size_t>(z.b1)};
          break;
        case kV:
          gv = {static_cast<std::size_t>(z.b2), static_cast<std::size_t>(z.b3)};
          break;
        default: {
          const auto [zl, zr] = zone_span(lv.kind);
          std::span<T> zs = x.subspan(zl, zr - zl);
          const FatRange f = zone_single(zs, lv.rel);
          gv = {zl + f.lo, zl + f.hi};
          break;
        }
      }
    }

    assert(gu.lo == gv.lo || gu.hi <= gv.lo);
    z.b0 = static_cast<long>(gu.lo);
    z.b1 = static_cast<long>(gu.hi);
    z.single = gu.lo == gv.lo;
    z.b2 = z.single ? z.b1 : static_cast<long>(gv.lo);
    z.b3 = z.single ? z.b1 : static_cast<long>(gv.hi);
    u_val = x[gu.lo];
    v_val = x[gv.lo];
  }

  // Oracle scan confirming the Step-4 zone definitions (uncounted).
  bool audit_zones(std::span<T> x, const Zones& z, const T& u, const T& v,
                   long s_next) const {
    for (long i = 0; i < s_next; ++i) {
      const Ordering ou = cmp_.raw(x[static_cast<std::size_t>(i)], u);
      const Ordering ov = cmp_.raw(x[static_cast<std::size_t>(i)], v);
      bool ok;
      if (i < z.b0)
        ok = ou == Ordering::less;
      else if (i < z.b1)
        ok = ou == Ordering::equal;
      else if (i < z.b2)
        ok = ou == Ordering::greater && ov == Ordering::less;
      else if (i < z.b3)
        ok = ov == Ordering::equal;
      else
        ok = ov == Ordering::greater;
      if (!ok) return false;
    }
    return true;
  }

  static void check_rank(std::size_t n, long k) {
    if (n == 0 || k < 1 || static_cast<std::size_t>(k) > n)
      throw std::out_of_range("selection rank out of range");
  }

  const Params& p_;
  RngStream& rng_;
  CountingComparator<T, Less>& cmp_;
  Metrics& m_;
  std::vector<IterationTrace>* trace_;
  int depth_ = 0;
  std::vector<std::uint8_t> codes_;

  friend struct EngineTestAccess;
};

// White-box hooks for the unit tests: drive single algorithm steps without
// replicating their logic.
struct EngineTestAccess {
  template <class T, class Less>
  struct InitResult {
    long b0, b1, b2, b3;
    bool single;
    T u, v;
  };

  // Step 2 on an explicit sample.
  template <class T, class Less>
  static InitResult<T, Less> init_zones(SelectEngine<T, Less>& e,
                                        std::span<T> sample, long i_u,
                                        long i_v) {
    typename SelectEngine<T, Less>::Zones z;
    T u{}, v{};
    e.init_zones(sample, i_u, i_v, z, u, v);
    return {z.b0, z.b1, z.b2, z.b3, z.single, u, v};
  }

  // Step 4 on a prepared zone layout; x = zones [0, s_cur) ++ staged
  // [s_cur, s_next). Returns the new boundaries.
  template <class T, class Less>
  static InitResult<T, Less> partition_staged(
      SelectEngine<T, Less>& e, std::span<T> x, long b0, long b1, long b2,
      long b3, bool single, const T& u, const T& v, double theta, long s_cur,
      long s_next) {
    typename SelectEngine<T, Less>::Zones z;
    z.b0 = b0;
    z.b1 = b1;
    z.b2 = b2;
    z.b3 = b3;
    z.single = single;
    e.partition_staged(x, z, u, v, theta, s_cur, s_next);
    return {z.b0, z.b1, z.b2, z.b3, z.single, u, v};
  }
};

}  // namespace detail

// Selects the k-th smallest (1-based) of x in place. On return the equal
// range [lo, hi) of the answer is in position, with strictly smaller
// elements before it and strictly larger ones after it.
template <class T, class Less = std::less<T>>
FatRange select(std::span<T> x, long k, const Params& params, RngStream& rng,
                CountingComparator<T, Less>& cmp, Metrics& metrics,
                std::vector<IterationTrace>* trace = nullptr) {
  const std::vector<std::string> violations = validate_params(params);
  if (!violations.empty()) {
    std::string msg = "invalid parameters:";
    for (const std::string& v : violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
  const std::uint64_t before = cmp.count();
  FatRange fr;
  if (params.variant == Variant::Quickselect) {
    detail::check_rank(x.size(), k);
    fr = quickselect(x, k, rng, cmp, metrics);
  } else {
    detail::SelectEngine<T, Less> engine(params, rng, cmp, metrics, trace);
    fr = engine.fat_select(x, k);
  }
  metrics.comparisons += cmp.count() - before;
  return fr;
}

// Convenience wrapper owning the rng, comparator and metrics.
template <class T, class Less = std::less<T>>
struct SelectOutcome {
  T value;
  FatRange range;
  Metrics metrics;
  std::vector<IterationTrace> trace;
};

template <class T, class Less = std::less<T>>
SelectOutcome<T, Less> select_seeded(std::span<T> x, long k,
                                     const Params& params, std::uint64_t seed,
                                     bool collect_trace = false) {
  RngStream rng(seed);
  CountingComparator<T, Less> cmp;
  Metrics metrics;
  std::vector<IterationTrace> trace;
  const FatRange fr =
      select(x, k, params, rng, cmp, metrics, collect_trace ? &trace : nullptr);
  return {x[fr.lo], fr, metrics, std::move(trace)};
}

}  // namespace selectlib
