#pragma once

// Brute-force reference implementations. They share no code with the
// library: every average is a plain nested loop over the literal formula.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Fn = std::function<C(std::int64_t)>;

inline C e(double x) {
  const double f = x - std::floor(x);
  return std::polar(1.0, 2.0 * std::numbers::pi * f);
}

/// e(p/q) from an exact integer residue.
inline C e_ratio(std::int64_t p, std::int64_t q) {
  std::int64_t r = p % q;
  if (r < 0) r += q;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q));
}

inline std::int64_t wrap(std::int64_t n, std::int64_t N) {
  std::int64_t r = n % N;
  return r < 0 ? r + N : r;
}

/// Product over eps in {0,1}^k of C^{|eps|} f_eps(n + eps.h); fs[e] has bit
/// i of e equal to eps_{i+1}. `N` > 0 wraps indices into [0, N).
inline C cube_product(const std::vector<Fn>& fs, std::int64_t n, const std::vector<std::int64_t>& h,
                      std::int64_t N, bool skip_zero = false) {
  const int k = static_cast<int>(h.size());
  C prod = 1.0;
  for (int e = skip_zero ? 1 : 0; e < (1 << k); ++e) {
    std::int64_t m = n;
    int weight = 0;
    for (int i = 0; i < k; ++i) {
      if ((e >> i) & 1) {
        m += h[static_cast<std::size_t>(i)];
        ++weight;
      }
    }
    if (N > 0) m = wrap(m, N);
    const C v = fs[static_cast<std::size_t>(e)](m);
    prod *= (weight % 2 == 1) ? std::conj(v) : v;
  }
  return prod;
}

/// (1/|I|) sum_{n in [lo, lo+len)} cube product at h.
inline C correlation(const std::vector<Fn>& fs, const std::vector<std::int64_t>& h, std::int64_t lo,
                     std::int64_t len, std::int64_t N = 0) {
  C s = 0.0;
  for (std::int64_t n = lo; n < lo + len; ++n) s += cube_product(fs, n, h, N);
  return s / static_cast<double>(len);
}

/// Calls f(h) for every h in [0,H)^k in lexicographic order.
inline void for_each_h(int k, std::int64_t H, const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> h(static_cast<std::size_t>(k), 0);
  for (;;) {
    f(h);
    int i = k - 1;
    while (i >= 0 && ++h[static_cast<std::size_t>(i)] == H) h[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

/// (1/H^k) sum_h correlation(h), complex and unclamped.
inline C box_average(const std::vector<Fn>& fs, int k, std::int64_t H, std::int64_t lo, std::int64_t len,
                     std::int64_t N = 0) {
  C s = 0.0;
  for_each_h(k, H, [&](const std::vector<std::int64_t>& h) { s += correlation(fs, h, lo, len, N); });
  return s / std::pow(static_cast<double>(H), k);
}

inline C box_average(const Fn& f, int k, std::int64_t H, std::int64_t lo, std::int64_t len, std::int64_t N = 0) {
  return box_average(std::vector<Fn>(std::size_t{1} << k, f), k, H, lo, len, N);
}

/// Dual function value at n: (1/H^k) sum_h prod_{eps != 0}.
inline C dual_value(const Fn& f, int k, std::int64_t H, std::int64_t n, std::int64_t N = 0) {
  const std::vector<Fn> fs(std::size_t{1} << k, f);
  C s = 0.0;
  for_each_h(k, H, [&](const std::vector<std::int64_t>& h) { s += cube_product(fs, n, h, N, true); });
  return s / std::pow(static_cast<double>(H), k);
}

/// lambda_j = (1/N) sum_n x_n e(-nj/N), O(N^2).
inline std::vector<C> dft(const std::vector<C>& x) {
  const auto N = static_cast<std::int64_t>(x.size());
  std::vector<C> out(x.size());
  for (std::int64_t j = 0; j < N; ++j) {
    C s = 0.0;
    for (std::int64_t n = 0; n < N; ++n) s += x[static_cast<std::size_t>(n)] * e_ratio(-n * j, N);
    out[static_cast<std::size_t>(j)] = s / static_cast<double>(N);
  }
  return out;
}

/// Exact fractional part of c * m for |c| < 1, using the binary expansion
/// of c and 128-bit integer arithmetic.
inline double frac_times_int(double c, std::int64_t m) {
  int ex = 0;
  const double f = std::frexp(c, &ex);  // c = f 2^ex, 0.5 <= |f| < 1
  const int shift = 53 - ex;            // c = mant / 2^shift
  const auto mant = static_cast<__int128>(std::ldexp(f, 53));
  const __int128 mod = static_cast<__int128>(1) << shift;
  __int128 r = (mant * static_cast<__int128>(m)) % mod;
  if (r < 0) r += mod;
  // r < 2^shift; split so the conversion to double rounds only once.
  const auto hi = static_cast<std::uint64_t>(r >> 64);
  const auto lo = static_cast<std::uint64_t>(r);
  return std::ldexp(std::ldexp(static_cast<double>(hi), 64) + static_cast<double>(lo), -shift);
}

/// Binary digit sum of |n|.
inline int digit_sum(std::int64_t n) {
  std::uint64_t m = static_cast<std::uint64_t>(n < 0 ? -n : n);
  int s = 0;
  while (m != 0) {
    s += static_cast<int>(m % 2);
    m /= 2;
  }
  return s;
}

/// Fractional part of -n(n+1) alpha / 2, exact.
inline double quadratic_heis_phase(double alpha, std::int64_t n) {
  const double v = frac_times_int(alpha, (n * (n + 1)) / 2);
  return v == 0.0 ? 0.0 : 1.0 - v;
}

/// Term-by-term sum (1/L) sum_{n=A}^{A+L-1} e(n theta), with e(n theta)
/// computed as e(frac(n theta)).
inline C geometric_sum(std::int64_t A, std::int64_t L, double theta) {
  C s = 0.0;
  for (std::int64_t n = A; n < A + L; ++n) s += e(std::fmod(static_cast<double>(n) * theta, 1.0));
  return s / static_cast<double>(L);
}

}  // namespace oracle
