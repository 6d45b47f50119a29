#include "unif/generators.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <utility>

namespace unif {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// e(p / q) for integers, exact argument reduction.
cplx expi_ratio(index_t p, index_t q) {
  index_t r = p % q;
  if (r < 0) r += q;
  return expi(static_cast<double>(r) / static_cast<double>(q));
}

}  // namespace

// ---------------------------------------------------------------------------
// Trigonometric polynomials
// ---------------------------------------------------------------------------

void TrigPoly::validate() {
  for (TrigTerm& term : terms) term.freq = frac(term.freq);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      double d = std::abs(terms[i].freq - terms[j].freq);
      d = std::min(d, 1.0 - d);
      if (d < 1e-15) {
        throw PreconditionError("trig poly: duplicate frequency " + std::to_string(terms[i].freq));
      }
    }
  }
}

double TrigPoly::coeff_l1() const {
  double s = 0.0;
  for (const TrigTerm& term : terms) s += std::abs(term.coeff);
  return s;
}

Sequence exp_seq(double t) {
  const double f = frac(t);
  return {[f](index_t n) { return expi(frac_mul(f, n)); }, std::nullopt, 1.0, "exp:" + std::to_string(f)};
}

Sequence trig_poly_seq(TrigPoly p) {
  p.validate();
  const double bound = p.coeff_l1();
  auto terms = std::make_shared<const std::vector<TrigTerm>>(std::move(p.terms));
  return {[terms](index_t n) {
            cplx acc{0.0, 0.0};
            for (const TrigTerm& term : *terms) acc += term.coeff * expi(frac_mul(term.freq, n));
            return acc;
          },
          std::nullopt, bound, "trig"};
}

double poly_phase_frac(const std::vector<double>& coeffs, index_t n) {
  if (coeffs.empty()) return 0.0;
  // Horner mod 1: (r + m) * n = r * n + m * n, and m * n is an integer.
  double r = frac(coeffs.back());
  for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
    r = frac(frac_mul(r, n) + frac(coeffs[j]));
  }
  return r;
}

Sequence poly_phase_seq(std::vector<double> coeffs) {
  if (coeffs.empty()) throw PreconditionError("poly_phase_seq: need at least c_0");
  auto c = std::make_shared<const std::vector<double>>(std::move(coeffs));
  return {[c](index_t n) { return expi(poly_phase_frac(*c, n)); }, std::nullopt, 1.0, "poly"};
}

// ---------------------------------------------------------------------------
// Generalized polynomials
// ---------------------------------------------------------------------------

struct GenPoly::Node {
  Op op = Op::Const;
  double value = 0.0;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
  bool has_var = false;
};

GenPoly::GenPoly(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

GenPoly GenPoly::constant(double c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  return GenPoly(std::move(n));
}

GenPoly GenPoly::var() {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->has_var = true;
  return GenPoly(std::move(n));
}

GenPoly GenPoly::add(GenPoly l, GenPoly r) {
  auto n = std::make_shared<Node>();
  n->op = Op::Add;
  n->has_var = l.has_var() || r.has_var();
  n->left = std::move(l.node_);
  n->right = std::move(r.node_);
  return GenPoly(std::move(n));
}

GenPoly GenPoly::mul(GenPoly l, GenPoly r) {
  auto n = std::make_shared<Node>();
  n->op = Op::Mul;
  n->has_var = l.has_var() || r.has_var();
  n->left = std::move(l.node_);
  n->right = std::move(r.node_);
  return GenPoly(std::move(n));
}

GenPoly GenPoly::floor(GenPoly child) {
  auto n = std::make_shared<Node>();
  n->op = Op::Floor;
  n->has_var = child.has_var();
  n->left = std::move(child.node_);
  return GenPoly(std::move(n));
}

GenPoly::Op GenPoly::op() const { return node_->op; }
bool GenPoly::has_var() const { return node_->has_var; }

double GenPoly::eval(index_t n) const {
  const Node& node = *node_;
  switch (node.op) {
    case Op::Const:
      return node.value;
    case Op::Var:
      return static_cast<double>(n);
    case Op::Add:
      return GenPoly(node.left).eval(n) + GenPoly(node.right).eval(n);
    case Op::Mul:
      return GenPoly(node.left).eval(n) * GenPoly(node.right).eval(n);
    case Op::Floor:
      return std::floor(GenPoly(node.left).eval(n));
  }
  return 0.0;
}

std::string GenPoly::str() const {
  const Node& node = *node_;
  switch (node.op) {
    case Op::Const: {
      std::string s = std::to_string(node.value);
      return s;
    }
    case Op::Var:
      return "n";
    case Op::Add:
      return "(" + GenPoly(node.left).str() + "+" + GenPoly(node.right).str() + ")";
    case Op::Mul:
      return GenPoly(node.left).str() + "*" + GenPoly(node.right).str();
    case Op::Floor:
      return "floor(" + GenPoly(node.left).str() + ")";
  }
  return {};
}

namespace {

class GenPolyParser {
 public:
  explicit GenPolyParser(std::string_view text) : text_(text) {}

  GenPoly parse_all() {
    GenPoly e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw PreconditionError("genpoly: " + what + " at position " + std::to_string(pos_) + " in '" +
                            std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      return false;
    }
    pos_ = end;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  GenPoly expr() {
    GenPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc = GenPoly::add(std::move(acc), term());
      } else if (accept('-')) {
        acc = GenPoly::add(std::move(acc), GenPoly::mul(GenPoly::constant(-1.0), term()));
      } else {
        return acc;
      }
    }
  }

  GenPoly term() {
    GenPoly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = GenPoly::mul(std::move(acc), unary());
      } else if (accept('/')) {
        GenPoly d = unary();
        if (d.has_var()) fail("division by a non-constant expression");
        const double v = d.eval(0);
        if (v == 0.0) fail("division by zero");
        acc = GenPoly::mul(std::move(acc), GenPoly::constant(1.0 / v));
      } else {
        return acc;
      }
    }
  }

  GenPoly unary() {
    if (accept('-')) return GenPoly::mul(GenPoly::constant(-1.0), unary());
    return atom();
  }

  double number() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const std::string buf(begin, text_.size() - pos_);
    const double v = std::strtod(buf.c_str(), &end);
    const auto used = static_cast<std::size_t>(end - buf.c_str());
    if (used == 0) fail("expected a number");
    pos_ += used;
    return v;
  }

  GenPoly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      GenPoly e = expr();
      expect(')');
      return e;
    }
    if (accept_word("floor")) {
      expect('(');
      GenPoly e = expr();
      expect(')');
      return GenPoly::floor(std::move(e));
    }
    if (accept_word("sqrt2")) return GenPoly::constant(std::numbers::sqrt2);
    if (accept_word("sqrt3")) return GenPoly::constant(std::numbers::sqrt3);
    if (accept_word("sqrt5")) return GenPoly::constant(std::sqrt(5.0));
    if (accept_word("pi")) return GenPoly::constant(std::numbers::pi);
    if (accept_word("phi")) return GenPoly::constant(std::numbers::phi);
    if (accept_word("sqrt")) {
      expect('(');
      const double v = number();
      expect(')');
      if (v < 0.0) fail("sqrt of a negative number");
      return GenPoly::constant(std::sqrt(v));
    }
    if (accept_word("n")) return GenPoly::var();
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return GenPoly::constant(number());
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

GenPoly GenPoly::parse(std::string_view text) { return GenPolyParser(text).parse_all(); }

Sequence genpoly_seq(GenPoly p, GenPolyForm form) {
  const std::string label = (form == GenPolyForm::FracPart ? "frac(" : "e(") + p.str() + ")";
  if (form == GenPolyForm::FracPart) {
    return {[p](index_t n) { return cplx{frac(p.eval(n)), 0.0}; }, std::nullopt, 1.0, label};
  }
  return {[p](index_t n) { return expi(p.eval(n)); }, std::nullopt, 1.0, label};
}

// ---------------------------------------------------------------------------
// Thue-Morse and random signs
// ---------------------------------------------------------------------------

Sequence thue_morse_seq(ThueMorseForm form) {
  auto parity = [](index_t n) {
    const std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    return std::popcount(m) & 1;
  };
  if (form == ThueMorseForm::ZeroOne) {
    return {[parity](index_t n) { return cplx{static_cast<double>(parity(n)), 0.0}; }, std::nullopt, 1.0, "tm:01"};
  }
  return {[parity](index_t n) { return cplx{parity(n) ? -1.0 : 1.0, 0.0}; }, std::nullopt, 1.0, "tm:pm"};
}

double rademacher_value(std::uint64_t seed, index_t n) {
  const std::uint64_t x = splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(n));
  return (x >> 63) ? -1.0 : 1.0;
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, index_t n) {
  const std::uint64_t key = splitmix64(splitmix64(seed) + 0x632BE59BD9B4E019ULL * (stream + 1));
  const std::uint64_t x = splitmix64(key ^ static_cast<std::uint64_t>(n));
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

std::vector<cplx> random_disk_samples(std::uint64_t seed, std::uint64_t stream, index_t count) {
  if (count < 1) throw PreconditionError("random_disk_samples: count must be >= 1");
  std::vector<cplx> out(static_cast<std::size_t>(count));
  for (index_t n = 0; n < count; ++n) {
    const double r = std::sqrt(counter_uniform(seed, 2 * stream, n));
    out[static_cast<std::size_t>(n)] = r * expi(counter_uniform(seed, 2 * stream + 1, n));
  }
  return out;
}

Sequence random_periodic_seq(std::uint64_t seed, std::uint64_t stream, index_t N) {
  return Sequence::periodic(random_disk_samples(seed, stream, N), 0,
                            "random:" + std::to_string(seed) + "/" + std::to_string(stream));
}

TrigPoly random_grid_trig(std::uint64_t seed, index_t N, int terms) {
  if (terms < 1 || terms > N) throw PreconditionError("random_grid_trig: need 1 <= terms <= N");
  TrigPoly p;
  std::vector<index_t> bins;
  const std::vector<cplx> coeffs = random_disk_samples(seed, 1, terms);
  for (index_t draw = 0; static_cast<int>(bins.size()) < terms; ++draw) {
    const auto j = static_cast<index_t>(counter_uniform(seed, 0, draw) * static_cast<double>(N));
    if (std::find(bins.begin(), bins.end(), j) != bins.end()) continue;
    p.terms.push_back({static_cast<double>(j) / static_cast<double>(N), coeffs[bins.size()]});
    bins.push_back(j);
  }
  p.validate();
  return p;
}

Sequence rademacher_seq(std::uint64_t seed, Interval window) {
  window.validate();
  return {[seed](index_t n) { return cplx{rademacher_value(seed, n), 0.0}; }, window, 1.0,
          "rad:" + std::to_string(seed)};
}

// ---------------------------------------------------------------------------
// Block counterexample
// ---------------------------------------------------------------------------

cplx geometric_average(index_t A, index_t L, double theta) {
  if (L < 1) throw PreconditionError("geometric_average: L must be >= 1");
  const double th = frac(theta);
  if (th == 0.0) return {1.0, 0.0};
  const cplx lead = expi(frac_mul(th, A));
  const cplx num = cplx{1.0, 0.0} - expi(frac_mul(th, L));
  const cplx den = cplx{1.0, 0.0} - expi(th);
  return lead * num / (den * static_cast<double>(L));
}

BlockCounterexample::BlockCounterexample(BlockSpec spec)
    : seq_(Sequence::constant(0.0)) {
  if (spec.block_count < 1) throw PreconditionError("block spec: block_count must be >= 1");
  if (const auto* geo = std::get_if<GeometricGrowth>(&spec.growth)) {
    if (geo->ratio < 2) throw PreconditionError("block spec: geometric ratio must be >= 2");
    starts_.push_back(0);
    index_t power = geo->ratio;  // r^1
    for (int j = 2; j <= spec.block_count + 1; ++j) {
      if (power > std::numeric_limits<index_t>::max() / geo->ratio) {
        throw PreconditionError("block spec: block starts overflow 64-bit indices");
      }
      power *= geo->ratio;  // r^j
      starts_.push_back(power);
    }
  } else {
    const auto& custom = std::get<CustomGrowth>(spec.growth);
    if (custom.starts.size() < 2) throw PreconditionError("block spec: need at least two block starts");
    if (custom.starts.front() != 0) throw PreconditionError("block spec: N_1 must be 0");
    for (std::size_t i = 1; i < custom.starts.size(); ++i) {
      if (custom.starts[i] <= custom.starts[i - 1]) throw PreconditionError("block spec: starts must increase");
    }
    starts_ = custom.starts;
  }

  const index_t end = starts_.back();
  auto starts = std::make_shared<const std::vector<index_t>>(starts_);
  seq_ = Sequence(
      [starts](index_t n) {
        const index_t m = n < 0 ? -n : n;
        const auto it = std::upper_bound(starts->begin(), starts->end(), m);
        const auto j = static_cast<index_t>(it - starts->begin());  // 1-based block index
        return expi_ratio(n, j);
      },
      Interval{-(end - 1), 2 * end - 1}, 1.0, "block");
}

Interval BlockCounterexample::block(int j) const {
  if (j < 1 || j > block_count()) throw RangeError("block index " + std::to_string(j) + " out of range");
  const auto i = static_cast<std::size_t>(j - 1);
  return {starts_[i], starts_[i + 1] - starts_[i]};
}

int BlockCounterexample::block_of(index_t n) const {
  const index_t m = n < 0 ? -n : n;
  if (m >= starts_.back()) throw RangeError("index " + std::to_string(n) + " beyond the last block");
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), m);
  return static_cast<int>(it - starts_.begin());
}

cplx BlockCounterexample::modulated_block_average(int j, double t) const {
  const Interval I = block(j);
  // theta = 1/j + t; split the phase so A/j and L/j are reduced exactly.
  const double tf = frac(t);
  const double theta = frac(1.0 / static_cast<double>(j) + tf);
  if (theta == 0.0) return {1.0, 0.0};
  auto phase = [&](index_t m) {
    index_t r = m % j;
    return frac(static_cast<double>(r) / static_cast<double>(j) + frac_mul(tf, m));
  };
  const cplx lead = expi(phase(I.lo));
  const cplx num = cplx{1.0, 0.0} - expi(phase(I.len));
  const cplx den = cplx{1.0, 0.0} - expi(theta);
  return lead * num / (den * static_cast<double>(I.len));
}

}  // namespace unif
