#include "unif/duality.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "cube_kernel.hpp"
#include "fft.hpp"
#include "unif/heisenberg.hpp"

namespace unif {

namespace {

constexpr double kGridTolerance = 1e-12;

// Unnormalized forward DFT of `values`.
std::vector<cplx> forward_dft(const std::vector<cplx>& values) {
  const detail::Dft dft(values.size(), detail::Dft::Direction::Forward);
  detail::FftBuffer in(values.size());
  detail::FftBuffer out(values.size());
  std::copy(values.begin(), values.end(), in.data());
  dft.execute(in, out);
  return {out.data(), out.data() + out.size()};
}

// e(m / N) from the exact residue of m.
cplx grid_phase(index_t m, index_t N) {
  index_t r = m % N;
  if (r < 0) r += N;
  const double angle = kTwoPi * static_cast<double>(r) / static_cast<double>(N);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return {buf, res.ptr};
}

SpectrumReport spectrum_of_samples(const std::vector<cplx>& values) {
  if (values.empty()) throw PreconditionError("spectrum: need N >= 1 samples");
  const auto N = static_cast<index_t>(values.size());
  const std::vector<cplx> X = forward_dft(values);

  SpectrumReport r;
  r.N = N;
  r.coefficients.terms.reserve(values.size());
  const double inv_n = 1.0 / static_cast<double>(N);
  for (index_t j = 0; j < N; ++j) {
    const cplx lambda = X[static_cast<std::size_t>(j)] * inv_n;
    r.coefficients.terms.push_back({static_cast<double>(j) / static_cast<double>(N), lambda});
    r.parseval_spectrum += std::norm(lambda);
  }
  for (const cplx& v : values) r.parseval_samples += std::norm(v);
  r.parseval_samples *= inv_n;
  r.hk2 = hk_norm_k2(r.coefficients);
  r.dual2 = dual_norm_k2(r.coefficients);
  return r;
}

SpectrumReport dft_coefficients(const Sequence& a, index_t N) {
  if (N < 1) throw PreconditionError("dft_coefficients: N must be >= 1");
  return spectrum_of_samples(a.sample(Interval{0, N}));
}

double dual_norm_k2(const TrigPoly& p) {
  double s = 0.0;
  for (const TrigTerm& t : p.terms) s += std::pow(std::abs(t.coeff), 4.0 / 3.0);
  return std::pow(s, 0.75);
}

double hk_norm_k2(const TrigPoly& p) {
  double s = 0.0;
  for (const TrigTerm& t : p.terms) {
    const double m2 = std::norm(t.coeff);
    s += m2 * m2;
  }
  return std::pow(s, 0.25);
}

Sequence dual_function(const Sequence& a, const BoxParams& p) {
  const std::vector<cplx> values = cube_samples(a, p);
  const std::vector<const cplx*> slots(std::size_t{1} << p.k, values.data());
  std::vector<cplx> out = detail::cube_pointwise(slots, p.I.len, p.k, p.H);
  const std::string label = "dual(" + a.label() + ")";
  if (p.mode.is_cyclic()) return Sequence::periodic(std::move(out), p.mode.origin, label);
  return Sequence::from_samples(std::move(out), p.I.lo, label);
}

index_t grid_bin(double t, index_t N) {
  if (N < 1) throw PreconditionError("grid_bin: N must be >= 1");
  const double f = frac(t);
  const auto j = static_cast<index_t>(std::llround(f * static_cast<double>(N)));
  const double diff = std::abs(f - static_cast<double>(j) / static_cast<double>(N));
  if (diff > kGridTolerance) {
    throw PreconditionError("frequency " + format_double(t) + " is not a multiple of 1/" + std::to_string(N) +
                            " (off by " + format_double(diff) + ")");
  }
  return j % N;
}

DirectBound direct_bound_check(const Sequence& a, const TrigPoly& b, index_t N) {
  TrigPoly poly = b;
  poly.validate();
  std::vector<index_t> bins;
  bins.reserve(poly.terms.size());
  for (const TrigTerm& t : poly.terms) bins.push_back(grid_bin(t.freq, N));

  const std::vector<cplx> x = a.sample(Interval{0, N});
  cplx acc;
  for (index_t n = 0; n < N; ++n) {
    cplx bn;
    for (std::size_t m = 0; m < bins.size(); ++m) bn += poly.terms[m].coeff * grid_phase(n * bins[m], N);
    acc += x[static_cast<std::size_t>(n)] * std::conj(bn);
  }
  DirectBound r;
  r.corr = std::abs(acc / static_cast<double>(N));
  r.bound = box_norm(a, BoxParams::cyclic(2, N, N)).value * dual_norm_k2(poly);
  return r;
}

std::vector<SearchHit> inverse_search(const Sequence& a, index_t N, const std::vector<Dictionary>& dictionaries) {
  if (N < 1) throw PreconditionError("inverse_search: N must be >= 1");
  const std::vector<cplx> x = a.sample(Interval{0, N});
  const double inv_n = 1.0 / static_cast<double>(N);
  std::vector<SearchHit> hits;

  for (const Dictionary& d : dictionaries) {
    switch (d.kind) {
      case Dictionary::Kind::Fourier: {
        const std::vector<cplx> X = forward_dft(x);
        for (index_t j = 0; j < N; ++j) {
          hits.push_back({"exp:" + format_double(static_cast<double>(j) * inv_n),
                          std::abs(X[static_cast<std::size_t>(j)]) * inv_n});
        }
        break;
      }
      case Dictionary::Kind::QuadPhase: {
        for (const double alpha : d.grid) {
          std::vector<cplx> c(x.size());
          const std::vector<double> coeffs{0.0, 0.0, alpha};
          for (index_t n = 0; n < N; ++n) {
            c[static_cast<std::size_t>(n)] =
                x[static_cast<std::size_t>(n)] * std::conj(expi(poly_phase_frac(coeffs, n)));
          }
          const std::vector<cplx> C = forward_dft(c);
          std::size_t best = 0;
          for (std::size_t j = 1; j < C.size(); ++j) {
            if (std::abs(C[j]) > std::abs(C[best])) best = j;
          }
          const std::string spec =
              best == 0 ? "quad:" + format_double(alpha)
                        : "poly:0," + format_double(static_cast<double>(best) * inv_n) + "," + format_double(alpha);
          hits.push_back({spec, std::abs(C[best]) * inv_n});
        }
        break;
      }
      case Dictionary::Kind::Heis: {
        for (const double alpha : d.grid) {
          const HeisElem tau{alpha, 1.0, 0.0};
          cplx acc;
          for (index_t n = 0; n < N; ++n) {
            const HeisPoint pt = heis_orbit_point(tau, {}, n);
            acc += x[static_cast<std::size_t>(n)] * std::conj(expi(pt.z));
          }
          hits.push_back({"heis:tau=(" + format_double(alpha) + ",1,0);x0=(0,0,0);f=ez",
                          std::abs(acc) * inv_n});
        }
        break;
      }
    }
  }
  std::stable_sort(hits.begin(), hits.end(), [](const SearchHit& l, const SearchHit& r) { return l.corr > r.corr; });
  return hits;
}

}  // namespace unif
