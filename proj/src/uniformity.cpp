#include "unif/uniformity.hpp"

#include <algorithm>
#include <cmath>

#include "cube_kernel.hpp"
#include "fft.hpp"
#include "unif/parallel.hpp"

namespace unif {

namespace {

constexpr double kNegativityTolerance = 1e-9;
constexpr double kSupSlack = 1e-12;

NormReport finalize(cplx raw, double h_tail, const BoxParams& p, std::string method) {
  NormReport r;
  r.raw = raw;
  r.raw_powered = raw.real();
  r.params = p;
  r.h_tail = h_tail;
  r.method = std::move(method);
  if (r.raw_powered < 0.0) {
    if (r.raw_powered < -kNegativityTolerance && p.full_group()) {
      throw NegativityViolation("box_norm: powered norm " + std::to_string(r.raw_powered) +
                                " is negative although it is a sum of squares");
    }
    r.clamped = true;
    r.powered = 0.0;
  } else {
    r.powered = r.raw_powered;
  }
  r.value = std::pow(r.powered, 1.0 / std::ldexp(1.0, p.k));
  return r;
}

// |z|^2 without the hypot call std::norm makes.
inline double sq_abs(cplx z) { return z.real() * z.real() + z.imag() * z.imag(); }

struct FftResult {
  cplx raw;
  double h_tail = 0.0;
};

// H a multiple of N: the h-average covers Z/N twice over, so
// powered = sum_j |a^(j)|^4. The shell max(h1, h2) = H - 1 sits on the
// residue -1 and reduces to a row sum |u|^2 / N per copy of Z/N.
FftResult fft_full_group(const std::vector<cplx>& x, index_t H) {
  const auto N = static_cast<index_t>(x.size());
  const detail::Dft dft(x.size(), detail::Dft::Direction::Forward);
  detail::FftBuffer in(x.size());
  detail::FftBuffer out(x.size());
  std::copy(x.begin(), x.end(), in.data());
  dft.execute(in, out);
  const double inv_n2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  double sum4 = 0.0;
  for (index_t j = 0; j < N; ++j) {
    const double m2 = sq_abs(out[static_cast<std::size_t>(j)]) * inv_n2;
    sum4 += m2 * m2;
  }

  auto at = [&](index_t n) { return x[static_cast<std::size_t>(((n % N) + N) % N)]; };
  cplx u;
  cplx corner;
  for (index_t n = 0; n < N; ++n) {
    const cplx d = at(n) * std::conj(at(n - 1));
    u += d;
    corner += d * std::conj(at(n - 1)) * at(n - 2);
  }
  const double copies = static_cast<double>(H / N);
  const cplx shell = 2.0 * copies * std::norm(u) / static_cast<double>(N) - corner / static_cast<double>(N);
  return {{sum4, 0.0}, std::abs(shell) / static_cast<double>(2 * H - 1)};
}

// General H: for each h1 the row sum over h2 < H of c_(h1,h2) is a weighted
// power spectrum of b_n = x_n conj(x_{n+h1}):
//   sum_{h2<H} c = (1/N^2) sum_j |B_j|^2 K(j),  K(j) = sum_{m<H} e(-mj/N).
FftResult fft_rows(const std::vector<cplx>& x, index_t H) {
  const auto N = static_cast<index_t>(x.size());
  const auto Nz = x.size();
  std::vector<cplx> w(Nz);
  for (index_t r = 0; r < N; ++r) {
    const double angle = kTwoPi * static_cast<double>(r) / static_cast<double>(N);
    w[static_cast<std::size_t>(r)] = {std::cos(angle), -std::sin(angle)};
  }

  // K(j) by the geometric series, with exact residues for H j and (H - 1) j.
  std::vector<cplx> K(Nz);
  std::vector<cplx> E(Nz);
  const index_t Hr = H % N;
  const index_t Hl = (H - 1) % N;
  for (index_t j = 0; j < N; ++j) {
    const auto jz = static_cast<std::size_t>(j);
    if (j == 0) {
      K[jz] = {static_cast<double>(H), 0.0};
    } else {
      const cplx num = cplx{1.0, 0.0} - w[static_cast<std::size_t>((Hr * j) % N)];
      K[jz] = num / (cplx{1.0, 0.0} - w[jz]);
    }
    E[jz] = w[static_cast<std::size_t>((Hl * j) % N)];
  }

  const detail::Dft dft(Nz, detail::Dft::Direction::Forward);
  const double inv_n2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  std::vector<cplx> rows(static_cast<std::size_t>(H));
  std::vector<cplx> last_col(static_cast<std::size_t>(H));
  // Fixed chunks of h1 share scratch buffers; each row is still computed on
  // its own, so the chunking never changes a result.
  constexpr index_t kChunks = 16;
  const index_t chunks = std::min(H, kChunks);
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    detail::FftBuffer b(Nz);
    detail::FftBuffer B(Nz);
    const index_t begin = H * static_cast<index_t>(c) / chunks;
    const index_t end = H * static_cast<index_t>(c + 1) / chunks;
    for (index_t h1 = begin; h1 < end; ++h1) {
      const index_t shift = h1 % N;
      for (index_t n = 0; n < N; ++n) {
        const index_t m = n + shift < N ? n + shift : n + shift - N;
        const cplx u = x[static_cast<std::size_t>(n)];
        const cplx v = x[static_cast<std::size_t>(m)];
        b[static_cast<std::size_t>(n)] = {u.real() * v.real() + u.imag() * v.imag(),
                                          u.imag() * v.real() - u.real() * v.imag()};
      }
      dft.execute(b, B);
      double sr = 0.0;
      double si = 0.0;
      double rr = 0.0;
      double ri = 0.0;
      for (std::size_t j = 0; j < Nz; ++j) {
        const double p = sq_abs(B[j]);
        sr += p * K[j].real();
        si += p * K[j].imag();
        rr += p * E[j].real();
        ri += p * E[j].imag();
      }
      const auto i = static_cast<std::size_t>(h1);
      rows[i] = cplx{sr, si} * inv_n2;
      last_col[i] = cplx{rr, ri} * inv_n2;
    }
  });

  cplx total;
  for (const cplx& s : rows) total += s;
  cplx shell = rows[static_cast<std::size_t>(H - 1)];
  for (index_t h1 = 0; h1 + 1 < H; ++h1) shell += last_col[static_cast<std::size_t>(h1)];
  const double cells = static_cast<double>(H) * static_cast<double>(H);
  return {total / cells, std::abs(shell) / static_cast<double>(2 * H - 1)};
}

}  // namespace

BoxParams BoxParams::interval(int k, index_t H, Interval I) {
  BoxParams p{k, H, I, DomainMode::interval()};
  p.validate();
  return p;
}

BoxParams BoxParams::cyclic(int k, index_t H, index_t N, index_t origin) {
  BoxParams p{k, H, Interval{origin, N}, DomainMode::cyclic(N, origin)};
  p.validate();
  return p;
}

void BoxParams::validate() const {
  if (k < 1 || k > 20) throw PreconditionError("box parameters: k must be in [1, 20], got " + std::to_string(k));
  if (H < 1) throw PreconditionError("box parameters: H must be >= 1, got " + std::to_string(H));
  I.validate();
  if (mode.is_cyclic()) {
    if (mode.N < 1) throw PreconditionError("box parameters: cyclic N must be >= 1");
    if (I != Interval{mode.origin, mode.N}) {
      throw PreconditionError("box parameters: cyclic mode averages over [origin, origin + N), got I = " + I.str());
    }
  }
}

Interval BoxParams::margin() const {
  if (mode.is_cyclic()) return {mode.origin, mode.N};
  return I.extended(static_cast<index_t>(k) * H);
}

bool BoxParams::full_group() const { return mode.is_cyclic() && H % mode.N == 0; }

std::vector<cplx> cube_samples(const Sequence& a, const BoxParams& p) {
  p.validate();
  a.require(p.margin(), "box margin");
  return a.sample(p.I.lo, p.I.len + static_cast<index_t>(p.k) * (p.H - 1), p.mode);
}

cplx box_correlation(const Sequence& a, const std::vector<index_t>& h, const BoxParams& p) {
  p.validate();
  if (h.size() != static_cast<std::size_t>(p.k)) throw PreconditionError("box_correlation: h must have k entries");
  if (!p.mode.is_cyclic()) {
    index_t reach = 0;
    for (const index_t v : h) {
      if (v < 0) throw PreconditionError("box_correlation: h entries must be >= 0");
      reach += v;
    }
    a.require(p.I.extended(std::max(reach + 1, static_cast<index_t>(p.k) * p.H)), "box_correlation margin");
  } else {
    a.require(p.margin(), "box_correlation margin");
  }

  const std::size_t corners = std::size_t{1} << p.k;
  std::vector<index_t> offset(corners, 0);
  std::vector<bool> odd(corners, false);
  for (std::size_t e = 0; e < corners; ++e) {
    for (int i = 0; i < p.k; ++i) {
      if ((e >> i) & 1U) {
        offset[e] += h[static_cast<std::size_t>(i)];
        odd[e] = !odd[e];
      }
    }
  }
  cplx total;
  for (index_t n = p.I.lo; n < p.I.hi(); ++n) {
    cplx prod{1.0, 0.0};
    for (std::size_t e = 0; e < corners; ++e) {
      const cplx v = a(p.mode.reduce(n + offset[e]));
      prod *= odd[e] ? std::conj(v) : v;
    }
    total += prod;
  }
  return total / static_cast<double>(p.I.len);
}

NormReport box_norm_samples(const std::vector<cplx>& values, const BoxParams& p) {
  p.validate();
  const auto need = static_cast<std::size_t>(p.I.len + static_cast<index_t>(p.k) * (p.H - 1));
  if (values.size() < need) throw PreconditionError("box_norm_samples: not enough samples for the margin");
  const std::vector<const cplx*> slots(std::size_t{1} << p.k, values.data());
  const auto sum = detail::cube_average(slots, p.I.len, p.k, p.H);
  return finalize(sum.average, std::abs(sum.shell_average), p, "direct");
}

NormReport box_norm(const Sequence& a, const BoxParams& p, BoxMethod method) {
  p.validate();
  const bool fft_ok = p.mode.is_cyclic() && p.k == 2;
  if (method == BoxMethod::Fft && !fft_ok) {
    throw PreconditionError("box_norm: the DFT path needs k = 2 in cyclic mode");
  }
  if (fft_ok && method != BoxMethod::Direct) {
    a.require(p.margin(), "box margin");
    const std::vector<cplx> x = a.sample(Interval{p.mode.origin, p.mode.N});
    const FftResult r = p.full_group() ? fft_full_group(x, p.H) : fft_rows(x, p.H);
    return finalize(r.raw, r.h_tail, p, "fft");
  }
  return box_norm_samples(cube_samples(a, p), p);
}

ProxyReport uniformity_norm_proxy(const Sequence& a, const Interval& search_range, index_t window_len,
                                  index_t stride, int k, index_t H, WindowMode mode) {
  search_range.validate();
  if (window_len < 1) throw PreconditionError("uniformity_norm_proxy: window length must be >= 1");
  if (stride < 1) throw PreconditionError("uniformity_norm_proxy: stride must be >= 1");
  if (window_len > search_range.len) {
    throw PreconditionError("uniformity_norm_proxy: window longer than the search range");
  }

  ProxyReport out;
  bool first = true;
  for (index_t M = search_range.lo; M + window_len <= search_range.hi(); M += stride) {
    const BoxParams p = mode == WindowMode::Cyclic ? BoxParams::cyclic(k, H, window_len, M)
                                                   : BoxParams::interval(k, H, Interval{M, window_len});
    NormReport r = box_norm(a, p);
    ++out.windows;
    if (first || r.value > out.best.value) {
      out.best = std::move(r);
      out.argmax = p.I;
      first = false;
    }
  }
  return out;
}

double u1_norm(const Sequence& a, const Interval& I, index_t H) {
  I.validate();
  if (H < 1) throw PreconditionError("u1_norm: H must be >= 1");
  a.require(I.extended(H), "u1_norm margin");
  const std::vector<cplx> v = a.sample(Interval{I.lo, I.len + H - 1});
  double acc = 0.0;
  for (index_t h = 0; h < H; ++h) {
    double c = 0.0;
    for (index_t n = 0; n < I.len; ++n) {
      const cplx x = v[static_cast<std::size_t>(n)];
      const cplx y = v[static_cast<std::size_t>(n + h)];
      c += x.real() * y.real() + x.imag() * y.imag();
    }
    acc += c / static_cast<double>(I.len);
  }
  return std::sqrt(std::max(acc / static_cast<double>(H), 0.0));
}

VdcResult vdc_bound(const Sequence& a, const Interval& I, index_t H) {
  I.validate();
  if (H < 1) throw PreconditionError("vdc_bound: H must be >= 1");
  if (a.sup_bound() > 1.0 + kSupSlack) {
    throw SupBoundViolation("vdc_bound: sequence declares sup |a_n| = " + std::to_string(a.sup_bound()) +
                            " > 1; rescale it first");
  }
  const Interval window{I.lo - H, I.len + 2 * H};
  a.require(window, "vdc_bound margin");
  const std::vector<cplx> v = a.sample(window);
  const cplx* base = v.data() + H;
  const double len = static_cast<double>(I.len);

  cplx mean;
  for (index_t n = 0; n < I.len; ++n) mean += base[n];
  mean /= len;

  const double h2 = static_cast<double>(H) * static_cast<double>(H);
  cplx corr;
  for (index_t h = -H; h <= H; ++h) {
    const double weight = static_cast<double>(H - std::abs(h)) / h2;
    if (weight == 0.0) continue;
    corr += weight * (detail::dot_conj(base + h, base, I.len) / len);
  }
  return {std::norm(mean), 4.0 * static_cast<double>(H) / len + std::abs(corr)};
}

cplx cube_pairing(const std::vector<Sequence>& seqs, const BoxParams& p) {
  p.validate();
  if (seqs.size() != (std::size_t{1} << p.k)) throw PreconditionError("cube pairing: need 2^k sequences");
  std::vector<std::vector<cplx>> samples;
  samples.reserve(seqs.size());
  for (const Sequence& s : seqs) samples.push_back(cube_samples(s, p));
  std::vector<const cplx*> slots;
  slots.reserve(samples.size());
  for (const auto& s : samples) slots.push_back(s.data());
  return detail::cube_average(slots, p.I.len, p.k, p.H).average;
}

CsgResult csg_check(const std::vector<Sequence>& seqs, const BoxParams& p) {
  CsgResult out;
  out.lhs = std::abs(cube_pairing(seqs, p));
  out.rhs = 1.0;
  for (const Sequence& s : seqs) out.rhs *= box_norm(s, p).value;
  if (!p.mode.is_cyclic()) {
    out.exact = false;
    out.note = "interval mode: edge effects may break the inequality; reported, not asserted";
  }
  return out;
}

}  // namespace unif
