#include "unif/sequence.hpp"

#include <algorithm>
#include <utility>

namespace unif {

namespace {

std::optional<Interval> intersect(const std::optional<Interval>& a, const std::optional<Interval>& b) {
  if (!a) return b;
  if (!b) return a;
  const index_t lo = std::max(a->lo, b->lo);
  const index_t hi = std::min(a->hi(), b->hi());
  if (hi <= lo) throw RangeError("incompatible ranges: " + a->str() + " and " + b->str() + " do not overlap");
  return Interval{lo, hi - lo};
}

std::string binary_label(const char* op, const Sequence& a, const Sequence& b) {
  return std::string(op) + "(" + a.label() + "," + b.label() + ")";
}

}  // namespace

Sequence::Sequence(Fn fn, std::optional<Interval> valid_range, double sup_bound, std::string label)
    : fn_(std::make_shared<const Fn>(std::move(fn))),
      valid_(valid_range),
      sup_bound_(sup_bound),
      label_(std::move(label)) {
  if (valid_) valid_->validate();
  if (!(sup_bound_ >= 0.0)) throw PreconditionError("sup_bound must be >= 0");
}

Sequence Sequence::constant(cplx c, std::string label) {
  if (label.empty()) label = "const";
  return {[c](index_t) { return c; }, std::nullopt, std::abs(c), std::move(label)};
}

Sequence Sequence::from_samples(std::vector<cplx> samples, index_t lo, std::string label) {
  if (samples.empty()) throw PreconditionError("from_samples: empty sample vector");
  double bound = 0.0;
  for (const cplx& v : samples) bound = std::max(bound, std::abs(v));
  const auto len = static_cast<index_t>(samples.size());
  auto data = std::make_shared<const std::vector<cplx>>(std::move(samples));
  return {[data, lo](index_t n) { return (*data)[static_cast<std::size_t>(n - lo)]; },
          Interval{lo, len}, bound, label.empty() ? "samples" : std::move(label)};
}

Sequence Sequence::periodic(std::vector<cplx> samples, index_t origin, std::string label) {
  if (samples.empty()) throw PreconditionError("periodic: empty sample vector");
  double bound = 0.0;
  for (const cplx& v : samples) bound = std::max(bound, std::abs(v));
  const auto period = static_cast<index_t>(samples.size());
  auto data = std::make_shared<const std::vector<cplx>>(std::move(samples));
  return {[data, origin, period](index_t n) {
            index_t r = (n - origin) % period;
            if (r < 0) r += period;
            return (*data)[static_cast<std::size_t>(r)];
          },
          std::nullopt, bound, label.empty() ? "periodic" : std::move(label)};
}

cplx Sequence::at(index_t n) const {
  if (valid_ && !valid_->contains(n)) {
    throw RangeError("index " + std::to_string(n) + " outside valid range " + valid_->str() + " of " + label_);
  }
  return (*fn_)(n);
}

bool Sequence::covers(const Interval& window) const { return !valid_ || valid_->contains(window); }

void Sequence::require(const Interval& window, const std::string& context) const {
  if (!covers(window)) {
    throw RangeError(context + ": needs " + window.str() + " but " + (label_.empty() ? "sequence" : label_) +
                     " is valid on " + valid_->str());
  }
}

std::vector<cplx> Sequence::sample(const Interval& window) const {
  window.validate();
  require(window, "sample");
  std::vector<cplx> out(static_cast<std::size_t>(window.len));
  for (index_t i = 0; i < window.len; ++i) out[static_cast<std::size_t>(i)] = (*fn_)(window.lo + i);
  return out;
}

std::vector<cplx> Sequence::sample(index_t start, index_t count, const DomainMode& mode) const {
  if (!mode.is_cyclic()) return sample(Interval{start, count});
  require(Interval{mode.origin, mode.N}, "cyclic sample");
  // Evaluate one period, then index into it.
  const std::vector<cplx> period = sample(Interval{mode.origin, mode.N});
  std::vector<cplx> out(static_cast<std::size_t>(count));
  for (index_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = period[static_cast<std::size_t>(mode.reduce(start + i) - mode.origin)];
  }
  return out;
}

AvgReport interval_average(const Sequence& a, const Interval& I, const DomainMode& mode) {
  I.validate();
  const std::vector<cplx> values = a.sample(I.lo, I.len, mode);
  cplx acc{0.0, 0.0};
  for (const cplx& v : values) acc += v;
  return {acc / static_cast<double>(I.len), I.len, mode};
}

double sup_window_average(const Sequence& a, const Interval& search_range, index_t N) {
  search_range.validate();
  if (N < 1) throw PreconditionError("sup_window_average: window length must be >= 1");
  const Interval needed{search_range.lo, search_range.len + N - 1};
  const std::vector<cplx> values = a.sample(needed);

  std::vector<cplx> prefix(values.size() + 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < values.size(); ++i) prefix[i + 1] = prefix[i] + values[i];

  double best = 0.0;
  const auto n = static_cast<std::size_t>(N);
  for (std::size_t m = 0; m < static_cast<std::size_t>(search_range.len); ++m) {
    best = std::max(best, std::abs(prefix[m + n] - prefix[m]) / static_cast<double>(N));
  }
  return best;
}

Sequence shift(const Sequence& a, index_t h) {
  std::optional<Interval> range = a.valid_range();
  if (range) range->lo -= h;
  return {[a, h](index_t n) { return a(n + h); }, range, a.sup_bound(),
          h == 0 ? a.label() : "shift(" + a.label() + "," + std::to_string(h) + ")"};
}

Sequence conjugate(const Sequence& a) {
  return {[a](index_t n) { return std::conj(a(n)); }, a.valid_range(), a.sup_bound(), "conj(" + a.label() + ")"};
}

Sequence product(const Sequence& a, const Sequence& b) {
  return {[a, b](index_t n) { return a(n) * b(n); }, intersect(a.valid_range(), b.valid_range()),
          a.sup_bound() * b.sup_bound(), binary_label("mul", a, b)};
}

Sequence sum(const Sequence& a, const Sequence& b) {
  return {[a, b](index_t n) { return a(n) + b(n); }, intersect(a.valid_range(), b.valid_range()),
          a.sup_bound() + b.sup_bound(), binary_label("add", a, b)};
}

Sequence scale(const Sequence& a, cplx c) {
  return {[a, c](index_t n) { return c * a(n); }, a.valid_range(), std::abs(c) * a.sup_bound(),
          "scale(" + a.label() + ")"};
}

}  // namespace unif
