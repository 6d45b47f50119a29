#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unif/types.hpp"

namespace unif {

/// A bounded two-sided sequence a: Z -> C.
///
/// The evaluator is a total function of the index, but values are only
/// meaningful on `valid_range()` (std::nullopt means unbounded, which is what
/// closed-form generators declare). `sup_bound()` is the declared bound on
/// |a_n| over the valid range. Instances are immutable and cheap to copy;
/// the evaluator is shared.
class Sequence {
 public:
  using Fn = std::function<cplx(index_t)>;

  Sequence(Fn fn, std::optional<Interval> valid_range, double sup_bound, std::string label = {});

  /// Constant sequence, unbounded range.
  static Sequence constant(cplx c, std::string label = {});
  /// Sequence backed by stored samples, valid on [lo, lo + size).
  static Sequence from_samples(std::vector<cplx> samples, index_t lo, std::string label = {});
  /// Periodic extension of `samples`: a_n = samples[(n - origin) mod size].
  static Sequence periodic(std::vector<cplx> samples, index_t origin = 0, std::string label = {});

  /// Unchecked evaluation.
  cplx operator()(index_t n) const { return (*fn_)(n); }
  /// Evaluation that throws RangeError outside the valid range.
  [[nodiscard]] cplx at(index_t n) const;

  [[nodiscard]] const std::optional<Interval>& valid_range() const { return valid_; }
  [[nodiscard]] bool unbounded() const { return !valid_.has_value(); }
  [[nodiscard]] double sup_bound() const { return sup_bound_; }
  [[nodiscard]] const std::string& label() const { return label_; }

  [[nodiscard]] bool covers(const Interval& window) const;
  /// Throws RangeError naming `context` when `window` is not covered.
  void require(const Interval& window, const std::string& context) const;

  /// Values on `window`, left to right. Range-checked.
  [[nodiscard]] std::vector<cplx> sample(const Interval& window) const;
  /// Values a_{mode.reduce(n)} for n in [start, start + count). In Interval
  /// mode this is `sample`; in Cyclic mode only the residue window must be
  /// covered.
  [[nodiscard]] std::vector<cplx> sample(index_t start, index_t count, const DomainMode& mode) const;

 private:
  std::shared_ptr<const Fn> fn_;
  std::optional<Interval> valid_;
  double sup_bound_;
  std::string label_;
};

// ---------------------------------------------------------------------------
// Averages
// ---------------------------------------------------------------------------

struct AvgReport {
  cplx value;
  index_t count = 0;
  DomainMode mode;
};

/// (1/|I|) sum_{n in I} a_n, summed left to right. In Cyclic mode each n is
/// reduced into the residue window first.
AvgReport interval_average(const Sequence& a, const Interval& I,
                           const DomainMode& mode = DomainMode::interval());

/// Largest |(1/N) sum_{n=M}^{M+N-1} a_n| over window starts M in
/// `search_range`, using prefix sums (O(range + N)).
double sup_window_average(const Sequence& a, const Interval& search_range, index_t N);

// ---------------------------------------------------------------------------
// Pointwise algebra
// ---------------------------------------------------------------------------

/// shift(a, h)(n) = a(n + h). The valid range moves left by h.
Sequence shift(const Sequence& a, index_t h);
Sequence conjugate(const Sequence& a);
/// Pointwise product; the valid range is the intersection of the operands'.
Sequence product(const Sequence& a, const Sequence& b);
Sequence sum(const Sequence& a, const Sequence& b);
Sequence scale(const Sequence& a, cplx c);

inline Sequence operator*(const Sequence& a, const Sequence& b) { return product(a, b); }
inline Sequence operator+(const Sequence& a, const Sequence& b) { return sum(a, b); }
inline Sequence operator*(cplx c, const Sequence& a) { return scale(a, c); }

}  // namespace unif
