#include "unif/ergodic.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace unif {

Point DynSystem::orbit(const Point& x0, index_t n) const {
  switch (kind) {
    case Kind::Rotation:
      return {frac(x0.x + frac_mul(alpha, n)), 0.0, 0.0};
    case Kind::Skew:
      return {frac(x0.x + frac_mul(alpha, n)), frac(x0.y + frac_mul(2.0 * x0.x, n) + frac_mul(alpha, n * n)), 0.0};
    case Kind::Heis: {
      const HeisPoint p = heis_orbit_point(tau, heis_reduce({x0.x, x0.y, x0.z}).point, n);
      return {p.x, p.y, p.z};
    }
  }
  return x0;
}

Point DynSystem::step(const Point& p) const {
  switch (kind) {
    case Kind::Rotation:
      return {frac(p.x + alpha), 0.0, 0.0};
    case Kind::Skew:
      return {frac(p.x + alpha), frac(p.y + 2.0 * p.x + alpha), 0.0};
    case Kind::Heis: {
      const HeisPoint q = heis_step(tau, heis_reduce({p.x, p.y, p.z}).point);
      return {q.x, q.y, q.z};
    }
  }
  return p;
}

Observable observable_ex() {
  return [](const Point& p) { return expi(p.x); };
}

Observable observable_ey() {
  return [](const Point& p) { return expi(p.y); };
}

Observable observable_ez(int j) {
  return [j](const Point& p) { return expi(frac(static_cast<double>(j) * p.z)); };
}

Observable observable_const(cplx c) {
  return [c](const Point&) { return c; };
}

namespace {

void check(const std::vector<Observable>& fs, index_t N) {
  if (fs.empty()) throw PreconditionError("weighted average: need at least one observable");
  if (N < 1) throw PreconditionError("weighted average: N must be >= 1");
}

}  // namespace

cplx weighted_multiple_average(const Sequence& w, const DynSystem& sys, const std::vector<Observable>& fs,
                               const Point& x0, index_t N) {
  check(fs, N);
  w.require(Interval{0, N}, "weighted average");
  cplx acc;
  for (index_t n = 0; n < N; ++n) {
    cplx term = w(n);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      term *= fs[i](sys.orbit(x0, static_cast<index_t>(i + 1) * n));
    }
    acc += term;
  }
  return acc / static_cast<double>(N);
}

cplx weighted_multiple_average_iterated(const Sequence& w, const DynSystem& sys, const std::vector<Observable>& fs,
                                        const Point& x0, index_t N) {
  check(fs, N);
  w.require(Interval{0, N}, "weighted average");
  std::vector<Point> pts(fs.size(), sys.orbit(x0, 0));
  cplx acc;
  for (index_t n = 0; n < N; ++n) {
    cplx term = w(n);
    for (std::size_t i = 0; i < fs.size(); ++i) term *= fs[i](pts[i]);
    acc += term;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      for (std::size_t s = 0; s <= i; ++s) pts[i] = sys.step(pts[i]);
    }
  }
  return acc / static_cast<double>(N);
}

bool CauchyReport::deltas_decreasing() const {
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] < deltas[i - 1])) return false;
  }
  return true;
}

CauchyReport cauchy_scan(const Sequence& w, const DynSystem& sys, const std::vector<Observable>& fs,
                         const Point& x0, const std::vector<index_t>& Ns, double threshold) {
  if (Ns.empty()) throw PreconditionError("cauchy_scan: empty N grid");
  for (std::size_t i = 1; i < Ns.size(); ++i) {
    if (Ns[i] <= Ns[i - 1]) throw PreconditionError("cauchy_scan: N grid must be strictly increasing");
  }
  CauchyReport r;
  r.Ns = Ns;
  r.threshold = threshold;
  for (const index_t N : Ns) r.values.push_back(weighted_multiple_average(w, sys, fs, x0, N));
  for (std::size_t i = 1; i < r.values.size(); ++i) r.deltas.push_back(std::abs(r.values[i] - r.values[i - 1]));
  r.converged = !r.deltas.empty() && r.deltas.back() < threshold;
  return r;
}

std::vector<index_t> doubling_grid(index_t N0, int count) {
  if (N0 < 1 || count < 1) throw PreconditionError("doubling_grid: need N0 >= 1 and count >= 1");
  std::vector<index_t> out;
  for (int i = 0; i < count; ++i) out.push_back(N0 << i);
  return out;
}

std::vector<double> wiener_wintner_scan(const Sequence& phi, index_t N) {
  if (N < 1) throw PreconditionError("wiener_wintner_scan: N must be >= 1");
  const std::vector<cplx> x = phi.sample(Interval{0, N});
  const auto Nz = static_cast<std::size_t>(N);
  const detail::Dft dft(Nz, detail::Dft::Direction::Backward);
  detail::FftBuffer in(Nz);
  detail::FftBuffer out(Nz);
  std::copy(x.begin(), x.end(), in.data());
  dft.execute(in, out);
  std::vector<double> mags(Nz);
  for (std::size_t j = 0; j < Nz; ++j) mags[j] = std::abs(out[j]) / static_cast<double>(N);
  return mags;
}

}  // namespace unif
