#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "unif/ergodic.hpp"
#include "unif/generators.hpp"
#include "unif/spec_parse.hpp"

using namespace unif;

namespace {
const double kAlpha = std::sqrt(2.0) - 1;
}

TEST_CASE("system orbits") {
  const DynSystem rot = DynSystem::rotation(kAlpha);
  const DynSystem skew = DynSystem::skew(kAlpha);
  const Point x0{0.3, 0.6, 0.0};
  Point pr = x0;
  Point ps = x0;
  for (index_t n = 1; n <= 5000; ++n) {
    pr = rot.step(pr);
    ps = skew.step(ps);
    if (n % 500 == 0) {
      const Point cr = rot.orbit(x0, n);
      const Point cs = skew.orbit(x0, n);
      CHECK(std::abs(oracle::e(cr.x) - oracle::e(pr.x)) <= 1e-9);
      CHECK(std::abs(oracle::e(cs.x) - oracle::e(ps.x)) <= 1e-9);
      CHECK(std::abs(oracle::e(cs.y) - oracle::e(ps.y)) <= 1e-9);
      // Skew closed form (x + n alpha, y + 2 n x + n^2 alpha).
      const double y = x0.y + oracle::frac_times_int(2 * x0.x, n) + oracle::frac_times_int(kAlpha, n * n);
      CHECK(std::abs(oracle::e(cs.y) - oracle::e(y)) <= 1e-9);
    }
  }
  const Point r0 = rot.orbit(x0, 0);
  CHECK(r0.x == doctest::Approx(0.3));
}

TEST_CASE("weighted averages") {
  const DynSystem rot = DynSystem::rotation(kAlpha);
  const Point x0{0.3, 0.0, 0.0};
  const std::vector<Observable> ex{observable_ex()};

  // Unweighted: the geometric-sum bound.
  for (index_t N : {100, 1000, 10000}) {
    const cplx v = weighted_multiple_average(Sequence::constant(1.0), rot, ex, x0, N);
    const double dist = std::min(kAlpha, 1 - kAlpha);
    CHECK(std::abs(v) <= 2.0 / (N * 2 * dist));
  }

  // Cancelling weight: exactly e(x0).
  for (index_t N : {1, 7, 1000, 65536}) {
    const cplx v = weighted_multiple_average(exp_seq(-kAlpha), rot, ex, x0, N);
    CHECK(std::abs(v - oracle::e(0.3)) <= 1e-9);
  }

  // Brute force with k = 2 and a nontrivial weight.
  const Sequence tm = thue_morse_seq(ThueMorseForm::PlusMinus);
  const std::vector<Observable> two{observable_ex(), observable_ex()};
  const index_t N = 3000;
  oracle::C s = 0.0;
  for (index_t n = 0; n < N; ++n) {
    s += tm(n) * oracle::e(0.3 + oracle::frac_times_int(kAlpha, n)) * oracle::e(0.3 + oracle::frac_times_int(kAlpha, 2 * n));
  }
  CHECK(std::abs(weighted_multiple_average(tm, rot, two, x0, N) - s / static_cast<double>(N)) <= 1e-10);

  // Closed form equals iteration. The Heisenberg step compounds rounding in
  // z, so its tolerance is looser.
  const std::vector<Observable> fs{observable_ex(), observable_ey(), observable_ez()};
  for (const DynSystem& sys : {rot, DynSystem::skew(kAlpha)}) {
    const cplx a = weighted_multiple_average(tm, sys, fs, {0.1, 0.2, 0.3}, 100000);
    const cplx b = weighted_multiple_average_iterated(tm, sys, fs, {0.1, 0.2, 0.3}, 100000);
    CHECK(std::abs(a - b) <= 1e-9);
  }
  const DynSystem heis = DynSystem::heis({kAlpha, 0.5, 0.25});
  CHECK(std::abs(weighted_multiple_average(tm, heis, fs, {0.1, 0.2, 0.3}, 100000) -
                 weighted_multiple_average_iterated(tm, heis, fs, {0.1, 0.2, 0.3}, 100000)) <= 1e-6);

  // Bounded by the sup norms.
  const cplx big = weighted_multiple_average(rademacher_seq(1), rot, {observable_const(0.5), observable_ex()}, x0, 500);
  CHECK(std::abs(big) <= 0.5);
}

TEST_CASE("quadratic weight kills rotation averages") {
  const Sequence q = poly_phase_seq({0.0, 0.0, std::sqrt(2.0) / 2});
  const cplx v = weighted_multiple_average(q, DynSystem::rotation(kAlpha), {observable_ex()}, {}, 1 << 16);
  CHECK(std::abs(v) <= 0.05);
}

TEST_CASE("cauchy_scan") {
  const auto grid = doubling_grid(1024, 7);
  REQUIRE(grid.size() == 7);
  CHECK(grid.front() == 1024);
  CHECK(grid.back() == 65536);

  const CauchyReport c = cauchy_scan(Sequence::constant(1.0), DynSystem::rotation(kAlpha), {observable_const(0.7)},
                                     {}, grid);
  for (const double d : c.deltas) CHECK(d <= 1e-12);
  CHECK(c.converged);

  const Sequence rad = rademacher_seq(5);
  const CauchyReport r = cauchy_scan(rad, DynSystem::rotation(kAlpha), {observable_ex()}, {}, grid);
  REQUIRE(r.values.size() == 7);
  REQUIRE(r.deltas.size() == 6);
  for (std::size_t i = 0; i < r.deltas.size(); ++i) {
    CHECK(r.deltas[i] == std::abs(r.values[i + 1] - r.values[i]));
    CHECK(r.values[i] == weighted_multiple_average(rad, DynSystem::rotation(kAlpha), {observable_ex()}, {}, grid[i]));
  }
  CHECK(std::abs(r.values.back()) <= 5.0 / std::sqrt(65536.0));
  CHECK(r.converged == (r.deltas.back() < 0.01));

  CHECK_THROWS_AS(cauchy_scan(rad, DynSystem::rotation(kAlpha), {observable_ex()}, {}, {10, 10}), PreconditionError);

  CauchyReport m;
  m.deltas = {0.3, 0.2, 0.1};
  CHECK(m.deltas_decreasing());
  m.deltas = {0.3, 0.3, 0.1};
  CHECK_FALSE(m.deltas_decreasing());
}

TEST_CASE("wiener_wintner_scan") {
  const index_t N = 1024;
  const auto peak = wiener_wintner_scan(exp_seq(-37.0 / N), N);
  REQUIRE(peak.size() == static_cast<std::size_t>(N));
  for (index_t j = 0; j < N; ++j) CHECK(std::abs(peak[static_cast<std::size_t>(j)] - (j == 37 ? 1.0 : 0.0)) <= 1e-12);

  const Sequence r = random_periodic_seq(1, 0, 100);
  const auto scan = wiener_wintner_scan(r, 256);
  for (index_t j = 0; j < 256; j += 17) {
    oracle::C s = 0.0;
    for (index_t n = 0; n < 256; ++n) s += r(n) * oracle::e_ratio(n * j, 256);
    CHECK(scan[static_cast<std::size_t>(j)] == doctest::Approx(std::abs(s) / 256).epsilon(1e-12));
  }

  double mr = 0.0;
  for (double v : wiener_wintner_scan(rademacher_seq(2), 1 << 16)) mr = std::max(mr, v);
  CHECK(mr <= 0.1);
  double mq = 0.0;
  for (double v : wiener_wintner_scan(poly_phase_seq({0.0, 0.0, std::sqrt(2.0) / 2}), 1 << 16)) mq = std::max(mq, v);
  CHECK(mq <= 0.1);
}

TEST_CASE("system and observable strings") {
  CHECK(parse_system("rot:sqrt2-1").kind == DynSystem::Kind::Rotation);
  CHECK(parse_system("skew:0.3").alpha == doctest::Approx(0.3));
  CHECK(parse_system("heis:0.1,0.2,0.3").tau == HeisElem{0.1, 0.2, 0.3});
  CHECK(std::abs(parse_observable("e3z")({0.0, 0.0, 0.1}) - oracle::e(0.3)) <= 1e-15);
  CHECK(parse_observable("const:2")({}) == cplx{2.0, 0.0});
  const Point p = parse_point("0.5,0.25");
  CHECK(p.x == 0.5);
  CHECK(p.y == 0.25);
  CHECK(p.z == 0.0);
  CHECK_THROWS_AS(parse_system("flow:1"), PreconditionError);
  CHECK_THROWS_AS(parse_observable("ew"), PreconditionError);
}
