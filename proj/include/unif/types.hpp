#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace unif {

using cplx = std::complex<double>;
using index_t = std::int64_t;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested index window is not covered by a sequence's valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed argument: bad parameters, grammar errors, grid mismatches.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Numeric-contract violations. The CLI maps these to exit code 3.
class NumericContractError : public Error {
 public:
  using Error::Error;
};

/// A quantity that is provably a sum of squares came out negative.
class NegativityViolation : public NumericContractError {
 public:
  using NumericContractError::NumericContractError;
};

/// An operation that needs |a_n| <= 1 received a sequence declaring more.
class SupBoundViolation : public NumericContractError {
 public:
  using NumericContractError::NumericContractError;
};

// ---------------------------------------------------------------------------
// Index windows and domain modes
// ---------------------------------------------------------------------------

/// Half-open integer interval [lo, lo + len).
struct Interval {
  index_t lo = 0;
  index_t len = 1;

  [[nodiscard]] index_t hi() const { return lo + len; }
  [[nodiscard]] bool contains(index_t n) const { return n >= lo && n < hi(); }
  [[nodiscard]] bool contains(const Interval& other) const {
    return other.lo >= lo && other.hi() <= hi();
  }
  /// Grow the right end by `extra` indices.
  [[nodiscard]] Interval extended(index_t extra) const { return {lo, len + extra}; }
  [[nodiscard]] std::string str() const {
    return "[" + std::to_string(lo) + "," + std::to_string(hi()) + ")";
  }
  void validate() const {
    if (len < 1) throw PreconditionError("interval length must be >= 1, got " + std::to_string(len));
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// How indices are interpreted by averaging operations.
///
/// In Cyclic(N) mode indices are reduced modulo N into the residue window
/// [origin, origin + N) before the sequence is evaluated, so every average
/// is taken over the finite group Z/NZ.
struct DomainMode {
  enum class Kind { Interval, Cyclic };

  Kind kind = Kind::Interval;
  index_t N = 0;
  index_t origin = 0;

  static DomainMode interval() { return {}; }
  static DomainMode cyclic(index_t n, index_t origin = 0) {
    if (n < 1) throw PreconditionError("cyclic modulus N must be >= 1");
    return {Kind::Cyclic, n, origin};
  }

  [[nodiscard]] bool is_cyclic() const { return kind == Kind::Cyclic; }
  [[nodiscard]] index_t reduce(index_t n) const {
    if (!is_cyclic()) return n;
    index_t r = (n - origin) % N;
    if (r < 0) r += N;
    return origin + r;
  }
  [[nodiscard]] std::string name() const { return is_cyclic() ? "cyclic" : "interval"; }
  friend bool operator==(const DomainMode&, const DomainMode&) = default;
};

// ---------------------------------------------------------------------------
// Phase helpers
// ---------------------------------------------------------------------------

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Fractional part in [0, 1).
inline double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

/// Fractional part of c * m for an integer m, accurate to about one ulp of
/// the fractional result as long as |m| < 2^53.
///
/// The product is split into its rounded value and the exact rounding error
/// (via fma) so the integer part cancels before any precision is lost.
inline double frac_mul(double c, index_t m) {
  const double md = static_cast<double>(m);
  const double p = c * md;
  const double err = std::fma(c, md, -p);
  return frac(frac(p) + err);
}

/// e(x) = exp(2 pi i x), reduced mod 1 first.
inline cplx expi(double x) {
  const double f = frac(x);
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

}  // namespace unif
