#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "unif/generators.hpp"
#include "unif/harness.hpp"
#include "unif/uniformity.hpp"

using namespace unif;

namespace {

oracle::Fn fn(const Sequence& s) {
  return [s](std::int64_t n) { return s(n); };
}

double oracle_norm(const Sequence& a, int k, index_t H, index_t lo, index_t len, index_t N = 0) {
  const double powered = oracle::box_average(fn(a), k, H, lo, len, N).real();
  return std::pow(std::max(powered, 0.0), 1.0 / (1 << k));
}

}  // namespace

TEST_CASE("box_correlation") {
  const BoxParams p2 = BoxParams::interval(2, 8, {0, 100});
  const BoxParams p3 = BoxParams::interval(3, 8, {0, 100});
  CHECK(box_correlation(Sequence::constant(1.0), {3, 5}, p2) == cplx{1.0, 0.0});
  CHECK(box_correlation(Sequence::constant(1.0), {3, 5, 7}, p3) == cplx{1.0, 0.0});

  const Sequence e = exp_seq(0.1234567);
  for (index_t h1 = 0; h1 < 8; ++h1)
    for (index_t h2 = 0; h2 < 8; ++h2) CHECK(std::abs(box_correlation(e, {h1, h2}, p2) - 1.0) <= 1e-12);

  const double alpha = std::sqrt(2.0) / 2;
  const Sequence q = poly_phase_seq({0.0, 0.0, alpha});
  for (index_t h1 = 0; h1 < 8; ++h1) {
    for (index_t h2 = 0; h2 < 8; ++h2) {
      CHECK(std::abs(box_correlation(q, {h1, h2}, p2) - oracle::e(oracle::frac_times_int(2 * alpha, h1 * h2))) <=
            1e-12);
    }
  }

  const Sequence r = random_periodic_seq(9, 0, 50);
  for (std::vector<index_t> h : {std::vector<index_t>{1, 4}, std::vector<index_t>{0, 7}, std::vector<index_t>{5, 5}}) {
    CHECK(std::abs(box_correlation(r, h, p2) - oracle::correlation(std::vector<oracle::Fn>(4, fn(r)), h, 0, 100)) <=
          1e-12);
  }
  CHECK_THROWS_AS(box_correlation(r, {1}, p2), PreconditionError);
  CHECK_THROWS_AS(box_correlation(Sequence::from_samples(std::vector<cplx>(100, 1.0), 0), {1, 1}, p2), RangeError);
}

TEST_CASE("box_norm basics") {
  for (int k = 1; k <= 3; ++k) {
    for (index_t H : {1, 4, 9}) {
      CHECK(box_norm(Sequence::constant(1.0), BoxParams::interval(k, H, {-7, 40})).value == doctest::Approx(1.0));
      CHECK(box_norm(Sequence::constant(1.0), BoxParams::cyclic(k, H, 32)).value == doctest::Approx(1.0));
    }
  }
  const NormReport r = box_norm(exp_seq(177.0 / 4096), BoxParams::cyclic(2, 4096, 4096));
  CHECK(std::abs(r.value - 1.0) <= 1e-9);
  CHECK(r.value == doctest::Approx(std::pow(r.powered, 0.25)));
  CHECK_THROWS_AS(box_norm(Sequence::constant(1.0), BoxParams::interval(0, 4, {0, 10})), PreconditionError);
  CHECK_THROWS_AS(box_norm(Sequence::constant(1.0), BoxParams::interval(2, 0, {0, 10})), PreconditionError);
}

TEST_CASE("box_norm against the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Sequence a = random_periodic_seq(seed, 0, 37);
    for (int k = 1; k <= 3; ++k) {
      const index_t H = 5;
      const NormReport iv = box_norm(a, BoxParams::interval(k, H, {-3, 29}));
      const cplx raw = oracle::box_average(fn(a), k, H, -3, 29);
      CHECK(std::abs(iv.raw - raw) <= 1e-12);
      CHECK(iv.value == doctest::Approx(oracle_norm(a, k, H, -3, 29)).epsilon(1e-12));

      const NormReport cy = box_norm(a, BoxParams::cyclic(k, H, 37));
      CHECK(std::abs(cy.raw - oracle::box_average(fn(a), k, H, 0, 37, 37)) <= 1e-12);
    }
  }
}

TEST_CASE("quadratic phase norm decreases with H") {
  const double alpha = std::sqrt(2.0) / 2;
  const Sequence q = poly_phase_seq({0.0, 0.0, alpha});
  const double v256 = box_norm(q, BoxParams::cyclic(2, 256, 65536)).value;
  const double v16 = box_norm(q, BoxParams::cyclic(2, 16, 65536)).value;
  CHECK(v256 <= 0.6);
  CHECK(v256 < v16);
  // The h-average of e(2 alpha h1 h2) is a sum of row geometric series.
  cplx s = 0.0;
  for (index_t h1 = 0; h1 < 256; ++h1) s += oracle::geometric_sum(0, 256, std::fmod(2 * alpha * h1, 1.0));
  s /= 256.0;
  CHECK(std::abs(std::pow(box_norm(q, BoxParams::interval(2, 256, {0, 4096})).powered, 1.0) - s.real()) <= 1e-9);
}

TEST_CASE("negative finite averages are clamped and flagged") {
  const NormReport r = box_norm(exp_seq(0.3), BoxParams::interval(1, 3, {0, 1000}));
  CHECK(r.raw_powered < 0.0);
  CHECK(r.clamped);
  CHECK(r.powered == 0.0);
  CHECK(r.value == 0.0);
}

TEST_CASE("FFT path matches direct path") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const index_t N = 32 + static_cast<index_t>(seed % 7) * 13;
    const index_t H = 1 + static_cast<index_t>(seed * 7 % static_cast<std::uint64_t>(2 * N));
    const Sequence a = random_periodic_seq(seed, 3, N);
    const BoxParams p = BoxParams::cyclic(2, H, N);
    const NormReport d = box_norm(a, p, BoxMethod::Direct);
    const NormReport f = box_norm(a, p, BoxMethod::Fft);
    CHECK(std::abs(d.raw_powered - f.raw_powered) <= 1e-9);
    CHECK(std::abs(d.value - f.value) <= 1e-9);
    CHECK(std::abs(d.h_tail - f.h_tail) <= 1e-9);
  }
  CHECK_THROWS_AS(box_norm(Sequence::constant(1.0), BoxParams::cyclic(3, 4, 16), BoxMethod::Fft), PreconditionError);
}

TEST_CASE("h_tail is the outer-shell average") {
  const Sequence a = random_periodic_seq(5, 0, 24);
  const index_t H = 6;
  const NormReport r = box_norm(a, BoxParams::cyclic(2, H, 24), BoxMethod::Direct);
  cplx s = 0.0;
  int count = 0;
  oracle::for_each_h(2, H, [&](const std::vector<std::int64_t>& h) {
    if (std::max(h[0], h[1]) != H - 1) return;
    s += oracle::correlation(std::vector<oracle::Fn>(4, fn(a)), h, 0, 24, 24);
    ++count;
  });
  CHECK(r.h_tail == doctest::Approx(std::abs(s / static_cast<double>(count))));
}

TEST_CASE("cyclic norm invariances") {
  const index_t N = 64;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Sequence a = random_periodic_seq(seed, 0, N);
    for (int k = 1; k <= 3; ++k) {
      const index_t H = k == 3 ? 8 : 16;
      const BoxParams p = BoxParams::cyclic(k, H, N);
      const double base = box_norm(a, p).value;
      CHECK(std::abs(box_norm(shift(a, 5), p).value - base) <= 1e-12);
      const cplx c{0.6, -1.3};
      CHECK(std::abs(box_norm(c * a, p).value - std::abs(c) * base) <= 1e-12);
    }
    const BoxParams p2 = BoxParams::cyclic(2, 20, N);
    CHECK(std::abs(box_norm(a * exp_seq(7.0 / N), p2).value - box_norm(a, p2).value) <= 1e-9);
  }
}

TEST_CASE("box_norm_samples matches box_norm") {
  const Sequence a = random_periodic_seq(2, 0, 40);
  const BoxParams p = BoxParams::interval(2, 7, {0, 50});
  CHECK(box_norm_samples(cube_samples(a, p), p).value == doctest::Approx(box_norm(a, p).value).epsilon(1e-14));
  CHECK(cube_samples(a, p).size() == 50 + 2 * 6);
}

TEST_CASE("u1_norm") {
  CHECK(u1_norm(Sequence::constant(1.0), {0, 100}, 10) == doctest::Approx(1.0));
  CHECK(std::abs(u1_norm(exp_seq(0.5), {0, 1000}, 10)) <= 1e-12);
  CHECK(u1_norm(rademacher_seq(3), {0, 1 << 16}, 64) <= 0.15);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Sequence a = random_periodic_seq(seed, 0, 33);
    const double u = u1_norm(a, {-4, 91}, 12);
    CHECK(std::abs(u - box_norm(a, BoxParams::interval(1, 12, {-4, 91})).value) <= 1e-12);
  }
}

TEST_CASE("uniformity_norm_proxy") {
  CHECK(uniformity_norm_proxy(Sequence::constant(1.0), {0, 1000}, 100, 50, 2, 8).best.value ==
        doctest::Approx(1.0));
  const ProxyReport r =
      uniformity_norm_proxy(rademacher_seq(7), {0, 1 << 16}, 4096, 1024, 2, 64, WindowMode::Cyclic);
  CHECK(r.windows == 61);
  // The h1 = 0 and h2 = 0 rows give c_h = 1 for +-1 sequences, so the
  // powered norm cannot drop below (2H - 1) / H^2.
  CHECK(r.best.powered >= (2.0 * 64 - 1) / (64.0 * 64) - 1e-12);
  CHECK(r.best.value <= 0.45);
  const double theta = (std::sqrt(5.0) - 1) / 2;
  const ProxyReport g = uniformity_norm_proxy(exp_seq(theta), {0, 16384}, 4096, 4096, 1, 256);
  CHECK(g.best.value <= 0.05);
  CHECK(g.best.powered == doctest::Approx(oracle::geometric_sum(0, 256, 1.0 - theta).real()).epsilon(1e-9));

  // The argmax window reproduces the best value and nothing beats it.
  const Sequence a = random_periodic_seq(8, 0, 300) * exp_seq(0.01);
  const ProxyReport s = uniformity_norm_proxy(a, {0, 2000}, 200, 100, 2, 8);
  CHECK(box_norm(a, BoxParams::interval(2, 8, s.argmax)).value == s.best.value);
  for (index_t M = 0; M + 200 + 2 * 8 <= 2000; M += 100) {
    CHECK(box_norm(a, BoxParams::interval(2, 8, {M, 200})).value <= s.best.value);
  }
}

TEST_CASE("van der Corput") {
  const VdcResult one = vdc_bound(Sequence::constant(1.0), {0, 500}, 10);
  CHECK(one.lhs == doctest::Approx(1.0));
  CHECK(one.rhs == doctest::Approx(4.0 * 10 / 500 + 1.0));

  for (double t = 0.0; t < 1.0; t += 0.0137) {
    const VdcResult r = vdc_bound(exp_seq(t), {0, 300}, 7);
    CHECK(r.holds());
    CHECK(r.lhs == doctest::Approx(std::norm(oracle::geometric_sum(0, 300, t))));
  }

  // Right side against a direct double sum.
  const Sequence a = rademacher_seq(4);
  const Interval I{100, 256};
  const index_t H = 9;
  const VdcResult r = vdc_bound(a, I, H);
  oracle::C s = 0.0;
  for (index_t h = -H; h <= H; ++h) {
    oracle::C c = 0.0;
    for (index_t n = I.lo; n < I.hi(); ++n) c += a(n + h) * std::conj(a(n));
    s += (static_cast<double>(H - std::abs(h)) / (H * H)) * c / static_cast<double>(I.len);
  }
  CHECK(r.rhs == doctest::Approx(4.0 * H / I.len + std::abs(s)).epsilon(1e-12));

  CHECK_THROWS_AS(vdc_bound(Sequence::constant(2.0), {0, 10}, 2), SupBoundViolation);
  CHECK_THROWS_AS(vdc_bound(Sequence::from_samples(std::vector<cplx>(20, 1.0), 0), {0, 20}, 2), RangeError);
}

TEST_CASE("Cauchy-Schwarz-Gowers") {
  const Sequence a = random_periodic_seq(6, 0, 64);
  for (int k = 2; k <= 3; ++k) {
    // Equality needs the full group: for H < N the average is complex.
    const BoxParams p = BoxParams::cyclic(k, 64, 64);
    const CsgResult eq = csg_check(std::vector<Sequence>(std::size_t{1} << k, a), p);
    CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-10));
    CHECK(eq.lhs == doctest::Approx(box_norm(a, p).powered).epsilon(1e-10));

    std::vector<Sequence> seqs;
    for (int e = 0; e < (1 << k); ++e) seqs.push_back(random_periodic_seq(6, static_cast<std::uint64_t>(e + 1), 64));
    seqs[1] = Sequence::constant(0.0);
    CHECK(csg_check(seqs, BoxParams::cyclic(k, 16, 64)).lhs == 0.0);
  }
  // Pairing against the oracle with distinct members.
  std::vector<Sequence> seqs;
  std::vector<oracle::Fn> fns;
  for (int e = 0; e < 4; ++e) {
    seqs.push_back(random_periodic_seq(12, static_cast<std::uint64_t>(e), 20));
    fns.push_back(fn(seqs.back()));
  }
  CHECK(std::abs(cube_pairing(seqs, BoxParams::cyclic(2, 6, 20)) - oracle::box_average(fns, 2, 6, 0, 20, 20)) <= 1e-12);
  CHECK_FALSE(csg_check(seqs, BoxParams::interval(2, 6, {0, 20})).exact);
}

TEST_CASE("harness checks on small instances") {
  HarnessConfig cfg;
  cfg.trials = 30;
  cfg.N = 32;
  cfg.H = 32;
  cfg.ks = {1, 2};
  CHECK(verify_subadditivity(cfg).ok());
  CHECK(verify_monotonicity(cfg).ok());
  CHECK(verify_recursion(cfg).ok());
  CHECK(verify_pairing(cfg).ok());
  cfg.ks = {2, 3};
  cfg.H = 8;
  CHECK(verify_csg(cfg).ok());
  const TrialSummary v = verify_vdc(
      [](index_t t) { return std::pair{rademacher_seq(static_cast<std::uint64_t>(t)), Interval{0, 512}}; }, 20, 16);
  CHECK(v.ok());
  CHECK(v.trials == 20);
}
