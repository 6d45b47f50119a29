#include "unif/heisenberg.hpp"

#include <cmath>
#include <utility>

namespace unif {

HeisElem heis_mul(const HeisElem& g, const HeisElem& h) {
  return {g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y};
}

HeisElem heis_inv(const HeisElem& g) { return {-g.x, -g.y, g.x * g.y - g.z}; }

HeisElem heis_pow(const HeisElem& tau, index_t n) {
  const auto nd = static_cast<double>(n);
  // n(n-1)/2 is exact in integers for |n| < 2^31.
  const auto pairs = static_cast<double>(n % 2 == 0 ? (n / 2) * (n - 1) : n * ((n - 1) / 2));
  return {nd * tau.x, nd * tau.y, nd * tau.z + pairs * tau.x * tau.y};
}

Reduction heis_reduce(const HeisElem& g) {
  double x = g.x;
  double y = g.y;
  double z = g.z;

  const double qf = -std::floor(y);
  y += qf;
  z += x * qf;
  // y may round up to exactly 1.0 when it was a tiny negative number.
  if (y >= 1.0) y = 0.0;

  const double pf = -std::floor(x);
  x += pf;
  if (x >= 1.0) x = 0.0;

  const double rf = -std::floor(z);
  z += rf;
  if (z >= 1.0) z = 0.0;

  return {{x, y, z}, {static_cast<index_t>(pf), static_cast<index_t>(qf), static_cast<index_t>(rf)}};
}

HeisPoint heis_step(const HeisElem& tau, const HeisPoint& x) { return heis_reduce(heis_mul(tau, lift(x))).point; }

HeisPoint heis_orbit_point(const HeisElem& tau, const HeisPoint& x0, index_t n) {
  return heis_reduce(heis_mul(heis_pow(tau, n), lift(x0))).point;
}

HeisPoint heis_closed_form(const HeisElem& tau, const HeisPoint& x0, index_t n) {
  const auto F = static_cast<index_t>(std::floor(static_cast<double>(n) * tau.y + x0.y));
  const index_t pairs = n % 2 == 0 ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
  double z = frac(x0.z) + frac_mul(tau.z, n) + frac_mul(tau.x * tau.y, pairs) + frac_mul(tau.x * x0.y, n);
  z -= frac_mul(tau.x, n * F) + frac_mul(x0.x, F);
  return {frac(frac_mul(tau.x, n) + x0.x), frac(frac_mul(tau.y, n) + x0.y), frac(z)};
}

NilFunction character_ez(int j) {
  return [j](const HeisPoint& p) { return expi(frac(static_cast<double>(j) * p.z)); };
}

NilFunction character_ex() {
  return [](const HeisPoint& p) { return expi(p.x); };
}

NilFunction character_ey() {
  return [](const HeisPoint& p) { return expi(p.y); };
}

Sequence nilsequence(const HeisElem& tau, const HeisPoint& x0, NilFunction f, std::optional<Interval> range,
                     double sup_f) {
  return {[tau, x0, f = std::move(f)](index_t n) { return f(heis_orbit_point(tau, x0, n)); }, range, sup_f, "heis"};
}

std::vector<HeisPoint> cube_orbit(const HeisPoint& x, const HeisElem& tau, const std::vector<index_t>& h) {
  if (h.empty()) throw PreconditionError("cube_orbit: k must be >= 1");
  if (h.size() > 20) throw PreconditionError("cube_orbit: k too large");
  const std::size_t count = std::size_t{1} << h.size();
  std::vector<HeisPoint> out(count);
  for (std::size_t e = 0; e < count; ++e) {
    index_t offset = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if ((e >> i) & 1U) offset += h[i];
    }
    out[e] = heis_orbit_point(tau, x, offset);
  }
  return out;
}

}  // namespace unif
