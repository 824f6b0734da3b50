#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "selectlib/schedule.hpp"

using namespace selectlib;

TEST_CASE("gap formulas") {
  // sqrt-s: (0.3 * 49 * ln 49)^(1/2)
  CHECK(gap(1, 2, 49, 1000000, 0.5, GapMode::SqrtS, 0.3) ==
        doctest::Approx(7.563713266790737));
  // sqrt-n uses ln n instead of ln s
  CHECK(gap(1, 2, 49, 1000000, 0.5, GapMode::SqrtN, 0.3) ==
        doctest::Approx(std::sqrt(0.3 * 49 * std::log(1e6))));
  // knuth: (min{theta,1-theta} * s * ln s)^(1/2)
  CHECK(gap(1, 2, 100, 1000000, 0.5, GapMode::Knuth, 0.3) ==
        doctest::Approx(15.174271293851463));
  CHECK(gap(1, 2, 100, 1000000, 0.9, GapMode::Knuth, 0.3) ==
        doctest::Approx(std::sqrt(0.1 * 100 * std::log(100.0))));
}

TEST_CASE("gap is exactly zero at the last level") {
  for (GapMode m : {GapMode::SqrtN, GapMode::SqrtS, GapMode::Knuth})
    CHECK(gap(3, 2, 1000000, 1000000, 0.5, m, 0.3) == 0.0);
}

TEST_CASE("gap rejects degenerate samples where ln s is meaningless") {
  CHECK_THROWS_AS(gap(1, 2, 1, 100, 0.5, GapMode::SqrtS, 0.3),
                  std::invalid_argument);
  CHECK_THROWS_AS(gap(1, 2, 1, 100, 0.5, GapMode::Knuth, 0.3),
                  std::invalid_argument);
}

TEST_CASE("pivot ranks") {
  const RankPair a = pivot_ranks(0.5, 49, 7.563713266790737);
  CHECK(a.i_u == 17);  // ceil(24.5 - 7.5637)
  CHECK(a.i_v == 33);  // ceil(24.5 + 7.5637)

  const RankPair lo = pivot_ranks(0.01, 100, 10.0);
  CHECK(lo.i_u == 1);  // lower clamp
  CHECK(lo.i_v == 11);

  const RankPair hi = pivot_ranks(1.0, 10, 2.0);
  CHECK(hi.i_u == 8);
  CHECK(hi.i_v == 10);  // upper clamp
}

TEST_CASE("pivot rank ordering and zero-gap collapse") {
  for (long s : {1L, 2L, 7L, 100L, 7056L}) {
    for (double theta : {0.001, 0.1, 0.5, 0.9, 1.0}) {
      for (double g : {0.0, 0.5, 3.0, 1000.0}) {
        const RankPair rp = pivot_ranks(theta, s, g);
        CHECK(rp.i_u >= 1);
        CHECK(rp.i_u <= rp.i_v);
        CHECK(rp.i_v <= s);
        if (g == 0.0) CHECK(rp.i_u == rp.i_v);
      }
    }
  }
}

TEST_CASE("exact rational ranks avoid the integer-boundary off-by-one") {
  // theta = 251/700 rounds so that ceil(theta*700) = 252 in binary64
  CHECK(static_cast<long>(std::ceil((251.0 / 700.0) * 700.0)) == 252);
  const RankPair rp = pivot_ranks_exact(251, 700, 700, 0.0);
  CHECK(rp.i_u == 251);
  CHECK(rp.i_v == 251);
  // and it agrees with the double version away from boundaries
  const RankPair a = pivot_ranks_exact(500000, 1000000, 49, 7.563713266790737);
  CHECK(a.i_u == 17);
  CHECK(a.i_v == 33);
}

TEST_CASE("ceil_ratio_plus is exact on rationals") {
  CHECK(ceil_ratio_plus(10, 5, 0.0) == 2);
  CHECK(ceil_ratio_plus(11, 5, 0.0) == 3);
  CHECK(ceil_ratio_plus(0, 5, 0.0) == 0);
  CHECK(ceil_ratio_plus(10, 5, 0.25) == 3);
  CHECK(ceil_ratio_plus(10, 5, -0.25) == 2);
}

TEST_CASE("bounding ranks") {
  const BoundingPair b = bounding_ranks(0.5, 49, 7056, 7.563713266790737);
  CHECK(b.j_u == 1350);  // ceil(3528 - 2*7.5637*144)
  CHECK(b.j_v == 5707);  // ceil(3528 + 2*7.5637*144)

  const BoundingPair z = bounding_ranks(0.5, 10, 100, 0.0);
  CHECK(z.j_u == 50);
  CHECK(z.j_v == 50);

  const BoundingPair c = bounding_ranks(0.001, 10, 100, 5.0);
  CHECK(c.j_u == 1);  // clamp at 1
}

TEST_CASE("plain schedule") {
  const Schedule a = schedule_plain(10000, 0.5, 144);
  CHECK(a.l_bar == 1);
  REQUIRE(a.sizes.size() == 2);
  CHECK(a.sizes[0] == 100);
  CHECK(a.sizes[1] == 10000);

  const Schedule b = schedule_plain(2, 0.5, 144);
  CHECK(b.sizes.front() == 1);
  CHECK(b.sizes.back() == 2);

  const Schedule c = schedule_plain(1000000, 0.5, 144);
  CHECK(c.l_bar == 2);
  REQUIRE(c.sizes.size() == 3);
  CHECK(c.sizes[0] == 1000);
  CHECK(c.sizes[1] == 144000);
  CHECK(c.sizes[2] == 1000000);
}

TEST_CASE("capped schedule") {
  const Schedule a = schedule_capped(1000000, 0.5, 144, 2.0 / 144.0);
  CHECK(a.l_bar == 2);
  REQUIRE(a.sizes.size() == 3);
  CHECK(a.sizes[0] == 49);  // ceil(1e6 / 144^2)
  CHECK(a.sizes[1] == 7056);
  CHECK(a.sizes[2] == 1000000);

  // below the default-preset threshold r^4 = 20736: plain fallback
  CHECK_FALSE(capped_schedule_applies(20735, 0.5, 144, 2.0 / 144.0));
  const Schedule b = schedule_capped(20735, 0.5, 144, 2.0 / 144.0);
  CHECK(b.sizes[0] == 144);  // ceil(sqrt(20735))

  // at the threshold the capped path is active
  CHECK(capped_schedule_applies(20736, 0.5, 144, 2.0 / 144.0));
}

TEST_CASE("schedule invariants: growth, last size, cap guarantee") {
  for (long n : {2L, 3L, 100L, 601L, 20735L, 20736L, 50000L, 1000000L}) {
    for (bool capped : {false, true}) {
      const Schedule sch = capped ? schedule_capped(n, 0.5, 144, 2.0 / 144.0)
                                  : schedule_plain(n, 0.5, 144);
      REQUIRE(!sch.sizes.empty());
      CHECK(sch.sizes.back() == n);
      CHECK(sch.l_bar == static_cast<int>(sch.sizes.size()) - 1);
      CHECK(sch.sizes.front() >= 1);
      if (n >= 2) CHECK(sch.sizes.front() < n);
      for (std::size_t i = 0; i + 1 < sch.sizes.size(); ++i)
        CHECK(sch.sizes[i + 1] == std::min(144 * sch.sizes[i], n));
      if (capped && capped_schedule_applies(n, 0.5, 144, 2.0 / 144.0) &&
          sch.sizes.size() >= 2) {
        const double eta =
            1.0 / 144.0 + std::pow(static_cast<double>(n), -0.5);
        const long s_lbar = sch.sizes[sch.sizes.size() - 2];
        CHECK(static_cast<double>(s_lbar) <
              eta * static_cast<double>(n) + 1e-9);
        CHECK(static_cast<double>(s_lbar) <=
              (2.0 / 144.0) * static_cast<double>(n));
      }
    }
  }
}

TEST_CASE("failure probability bounds") {
  // sqrt-n at n = 1e6: 2n^-0.6 + 2n^(-2(11/12)^2 * 0.3)
  CHECK(p_fail(0.3, 1.0 / 12.0, 1000000, PfailMode::SqrtN) ==
        doctest::Approx(0.002390499038873766).epsilon(1e-9));
  // sqrt-s at s = 7056 via psi(7056) = 0.8026175...
  CHECK(psi_factor(1.0 / 12.0, 7056) ==
        doctest::Approx(0.8026175091443118).epsilon(1e-9));
  CHECK(p_fail(0.3, 1.0 / 12.0, 7056, PfailMode::SqrtS) ==
        doctest::Approx(0.037848627040381104).epsilon(1e-9));
  // tiny beta clamps to 1
  CHECK(p_fail(1e-9, 1.0 / 12.0, 100, PfailMode::SqrtN) == 1.0);
}

TEST_CASE("p_fail is nonincreasing in size and in beta") {
  for (PfailMode m : {PfailMode::SqrtN, PfailMode::SqrtS}) {
    double prev = 2.0;
    for (long s : {10L, 100L, 1000L, 100000L}) {
      const double v = p_fail(0.3, 1.0 / 12.0, s, m);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
    CHECK(p_fail(0.4, 1.0 / 12.0, 1000, m) <=
          p_fail(0.3, 1.0 / 12.0, 1000, m));
  }
}

TEST_CASE("partition cost bound") {
  CHECK(partition_cost_bound(0.5, 49, 7056, 7.563713266790737) ==
        doctest::Approx(13778.024131253598).epsilon(1e-9));
  CHECK(partition_cost_bound(0.5, 10, 10, 2.0) == doctest::Approx(6.0));
  CHECK(partition_cost_bound(0.0, 10, 25, 0.0) == doctest::Approx(15.0));
}

TEST_CASE("sqrt-n gap telescoping: g_l - g_{l+1} s_l/s_{l+1} = (1-kappa) g_l") {
  const double beta = 0.3;
  const long n = 1000000;
  const Schedule sch = schedule_plain(n, 0.5, 144);
  for (int l = 1; l < sch.l_bar; ++l) {
    const long s_l = sch.sizes[static_cast<std::size_t>(l - 1)];
    const long s_n = sch.sizes[static_cast<std::size_t>(l)];
    if (s_n != 144 * s_l) continue;  // identity needs the uncapped step
    const double g_l = gap(l, sch.l_bar, s_l, n, 0.5, GapMode::SqrtN, beta);
    const double g_n = gap(l + 1, sch.l_bar, s_n, n, 0.5, GapMode::SqrtN, beta);
    const double lhs = g_l - g_n * static_cast<double>(s_l) /
                                 static_cast<double>(s_n);
    const double rhs = (1.0 - 1.0 / 12.0) * g_l;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("schedules reject n < 2") {
  CHECK_THROWS_AS(schedule_plain(1, 0.5, 144), std::invalid_argument);
  CHECK_THROWS_AS(schedule_capped(1, 0.5, 144, 2.0 / 144.0),
                  std::invalid_argument);
}
