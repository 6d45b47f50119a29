#include <cmath>
#include <cstring>

#include "doctest.h"
#include "oracles.hpp"
#include "unif/generators.hpp"
#include "unif/sequence.hpp"

using namespace unif;

namespace {
Sequence alternating() {
  return {[](index_t n) { return cplx{n % 2 == 0 ? 1.0 : -1.0, 0.0}; }, std::nullopt, 1.0, "alt"};
}
}  // namespace

TEST_CASE("interval_average of simple sequences") {
  CHECK(interval_average(Sequence::constant(1.0), {0, 100}).value == cplx{1.0, 0.0});
  CHECK(interval_average(alternating(), {0, 100}).value == cplx{0.0, 0.0});
  CHECK(std::abs(interval_average(exp_seq(1.0 / 8.0), {0, 64}).value) <= 1e-12);

  const AvgReport r = interval_average(Sequence::constant(2.0), {5, 7});
  CHECK(r.count == 7);
  CHECK_FALSE(r.mode.is_cyclic());
}

TEST_CASE("interval_average range checking") {
  const Sequence s = Sequence::from_samples({1.0, 2.0, 3.0}, 10);
  CHECK(interval_average(s, {10, 3}).value == cplx{2.0, 0.0});
  CHECK_THROWS_AS(interval_average(s, {9, 3}), RangeError);
  CHECK_THROWS_AS(interval_average(s, {10, 0}), PreconditionError);
  // Cyclic mode only needs the residue window.
  CHECK(interval_average(s, {10, 6}, DomainMode::cyclic(3, 10)).value == cplx{2.0, 0.0});
}

TEST_CASE("interval_average is linear and bounded") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Sequence a = random_periodic_seq(seed, 0, 97);
    const Sequence b = random_periodic_seq(seed, 1, 97);
    const cplx alpha{0.3, -1.2};
    const cplx beta{-0.7, 0.4};
    const Interval I{-13, 300};
    const cplx lhs = interval_average(alpha * a + beta * b, I).value;
    const cplx rhs = alpha * interval_average(a, I).value + beta * interval_average(b, I).value;
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    CHECK(std::abs(interval_average(a, I).value) <= a.sup_bound());
  }
}

TEST_CASE("cyclic average is shift invariant") {
  const Sequence a = random_periodic_seq(4, 0, 128);
  const DomainMode mode = DomainMode::cyclic(128);
  const cplx base = interval_average(a, {0, 128}, mode).value;
  for (index_t h : {1, 5, 127, 128, 1000, -3}) {
    CHECK(std::abs(interval_average(shift(a, h), {0, 128}, mode).value - base) <= 1e-12);
  }
}

TEST_CASE("sup_window_average") {
  CHECK(sup_window_average(Sequence::constant(1.0), {0, 200}, 50) == doctest::Approx(1.0));
  CHECK(sup_window_average(alternating(), {0, 200}, 2) == 0.0);

  const Sequence r = rademacher_seq(42);
  const double sup = sup_window_average(r, {0, 1 << 16}, 1024);
  CHECK(sup <= 0.2);

  // Brute force over a shorter range.
  const Interval R{0, 2000};
  double brute = 0.0;
  for (index_t M = R.lo; M < R.hi(); ++M) {
    oracle::C s = 0.0;
    for (index_t n = M; n < M + 128; ++n) s += r(n);
    brute = std::max(brute, std::abs(s) / 128.0);
  }
  CHECK(sup_window_average(r, R, 128) == doctest::Approx(brute).epsilon(1e-12));

  // Dominates every single window.
  for (index_t M : {0, 17, 1999}) {
    CHECK(sup_window_average(r, R, 128) >= std::abs(interval_average(r, {M, 128}).value) - 1e-15);
  }
}

TEST_CASE("sequence algebra") {
  const Sequence r = rademacher_seq(9);
  CHECK(shift(r, 0)(123) == r(123));
  CHECK(shift(r, 0).valid_range() == r.valid_range());

  const cplx v = conjugate(exp_seq(0.25))(1);
  CHECK(std::abs(v - cplx{0.0, -1.0}) <= 1e-15);

  const Sequence one = r * conjugate(r);
  for (index_t n = -50; n < 50; ++n) CHECK(one(n) == cplx{1.0, 0.0});

  const Sequence s = Sequence::from_samples({1.0, 2.0, 3.0, 4.0}, 0);
  const Sequence t = shift(s, 2);
  REQUIRE(t.valid_range().has_value());
  CHECK(*t.valid_range() == Interval{-2, 4});
  CHECK(t.at(-2) == cplx{1.0, 0.0});
  CHECK_THROWS_AS((void)t.at(2), RangeError);

  // Product ranges intersect; disjoint ranges are rejected.
  CHECK(*(s * t).valid_range() == Interval{0, 2});
  CHECK_THROWS_AS(s * shift(s, 10), RangeError);
  CHECK((s + s)(3) == cplx{8.0, 0.0});
  CHECK(scale(s, {0.0, 1.0})(0) == cplx{0.0, 1.0});
}

TEST_CASE("evaluation is deterministic") {
  const Sequence q = poly_phase_seq({0.1, 0.2, std::sqrt(2.0) / 2});
  for (index_t n = -1000; n < 1000; n += 37) {
    const cplx a = q(n);
    const cplx b = q(n);
    CHECK(std::memcmp(&a, &b, sizeof(cplx)) == 0);
  }
}
