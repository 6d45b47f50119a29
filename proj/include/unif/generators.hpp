#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unif/sequence.hpp"

namespace unif {

// ---------------------------------------------------------------------------
// Trigonometric polynomials
// ---------------------------------------------------------------------------

struct TrigTerm {
  double freq = 0.0;  // in [0, 1)
  cplx coeff;
};

/// Finite sum of complex exponentials with pairwise distinct frequencies.
struct TrigPoly {
  std::vector<TrigTerm> terms;

  /// Reduces frequencies mod 1 and rejects duplicates (within 1e-15).
  void validate();
  [[nodiscard]] double coeff_l1() const;
};

/// a_n = e(n t).
Sequence exp_seq(double t);

/// a_n = sum_m lambda_m e(n t_m); sup bound = sum |lambda_m|.
Sequence trig_poly_seq(TrigPoly p);

/// a_n = e(p(n)), p(n) = sum_j c_j n^j.
///
/// Horner's rule is run modulo 1: the running value is reduced to its
/// fractional part before each multiplication by the integer n, and the
/// product's rounding error is recovered with fma. This keeps the phase
/// accurate to ~1e-16 even when p(n) itself is ~1e12.
Sequence poly_phase_seq(std::vector<double> coeffs);

/// {p(n)} evaluated exactly as poly_phase_seq does, in [0, 1).
double poly_phase_frac(const std::vector<double>& coeffs, index_t n);

// ---------------------------------------------------------------------------
// Generalized (bracket) polynomials
// ---------------------------------------------------------------------------

/// Expression tree over {Const, Var, Add, Mul, Floor}.
class GenPoly {
 public:
  enum class Op { Const, Var, Add, Mul, Floor };

  static GenPoly constant(double c);
  static GenPoly var();
  static GenPoly add(GenPoly l, GenPoly r);
  static GenPoly mul(GenPoly l, GenPoly r);
  static GenPoly floor(GenPoly child);

  /// Plain double evaluation; floor() is decided by raw comparison, with no
  /// snapping near integers.
  [[nodiscard]] double eval(index_t n) const;
  [[nodiscard]] Op op() const;
  [[nodiscard]] bool has_var() const;
  [[nodiscard]] std::string str() const;

  /// Parse the expression micro-grammar (see README):
  ///   expr  := term (('+'|'-') term)*
  ///   term  := unary (('*'|'/') unary)*
  ///   unary := '-' unary | atom
  ///   atom  := number | 'n' | 'pi' | 'phi' | 'sqrt2' | 'sqrt3' | 'sqrt5'
  ///          | 'sqrt(' number ')' | 'floor(' expr ')' | '(' expr ')'
  /// Division is only allowed by a constant subexpression.
  static GenPoly parse(std::string_view text);

 private:
  struct Node;
  explicit GenPoly(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

enum class GenPolyForm { FracPart, ExpPhase };

/// FracPart: a_n = {p(n)} (real, embedded in C). ExpPhase: a_n = e(p(n)).
Sequence genpoly_seq(GenPoly p, GenPolyForm form);

// ---------------------------------------------------------------------------
// Thue-Morse and random signs
// ---------------------------------------------------------------------------

enum class ThueMorseForm { ZeroOne, PlusMinus };

/// Digit-sum parity of |n|: ZeroOne gives 1 when odd, PlusMinus gives
/// (-1)^{digit sum}.
Sequence thue_morse_seq(ThueMorseForm form);

/// Default declared window for Rademacher sequences.
inline constexpr Interval kRademacherWindow{-(index_t{1} << 40), index_t{1} << 41};

/// Counter-based random signs: a_n = +1 or -1 from the top bit of
/// splitmix64(splitmix64(seed) ^ n). Random access in O(1).
Sequence rademacher_seq(std::uint64_t seed, Interval window = kRademacherWindow);
double rademacher_value(std::uint64_t seed, index_t n);

/// Counter-based uniform double in [0, 1) for stream `stream`, position n.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, index_t n);

/// Seeded test instances: `count` points uniform in the closed unit disk,
/// drawn from counter_uniform streams 2 stream and 2 stream + 1.
std::vector<cplx> random_disk_samples(std::uint64_t seed, std::uint64_t stream, index_t count);

/// N-periodic sequence over random_disk_samples (origin 0).
Sequence random_periodic_seq(std::uint64_t seed, std::uint64_t stream, index_t N);

/// `terms` distinct frequencies j/N with coefficients uniform in the unit disk.
TrigPoly random_grid_trig(std::uint64_t seed, index_t N, int terms);

// ---------------------------------------------------------------------------
// Block counterexample
// ---------------------------------------------------------------------------

struct GeometricGrowth {
  index_t ratio = 4;
};
struct CustomGrowth {
  std::vector<index_t> starts;  // N_1 < N_2 < ...; N_1 must be 0
};

/// Block starts N_1 = 0 < N_2 < ... . Geometric(r) uses N_j = r^j for j >= 2,
/// so block j >= 2 is [r^j, r^{j+1}) of length (r - 1) r^j.
struct BlockSpec {
  std::variant<GeometricGrowth, CustomGrowth> growth = GeometricGrowth{};
  int block_count = 20;
};

/// a_n = e(n / j) whenever N_j <= |n| < N_{j+1}.
class BlockCounterexample {
 public:
  explicit BlockCounterexample(BlockSpec spec);

  [[nodiscard]] const Sequence& sequence() const { return seq_; }
  [[nodiscard]] int block_count() const { return static_cast<int>(starts_.size()) - 1; }
  /// Block I_j = [N_j, N_{j+1}), j = 1..block_count().
  [[nodiscard]] Interval block(int j) const;
  /// The block index of n (uses |n|); throws RangeError past the last block.
  [[nodiscard]] int block_of(index_t n) const;

  /// Exact average of a_n e(n t) over block j via the geometric-series
  /// closed form. Works for blocks far too long to sum term by term.
  [[nodiscard]] cplx modulated_block_average(int j, double t) const;

 private:
  std::vector<index_t> starts_;  // N_1 .. N_{J+1}
  Sequence seq_;
};

/// Closed-form (1/L) sum_{n=A}^{A+L-1} e(n theta).
cplx geometric_average(index_t A, index_t L, double theta);

}  // namespace unif
