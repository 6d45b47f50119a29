#include "unif/spec_parse.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <vector>

#include "unif/heisenberg.hpp"

namespace unif {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::string_view spec, const std::string& what) {
  throw PreconditionError("bad spec '" + std::string(spec) + "': " + what);
}

// Split on `sep` outside parentheses and brackets.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::string_view strip_wrapping(std::string_view s, char open, char close) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == open && s.back() == close) return trim(s.substr(1, s.size() - 2));
  return s;
}

index_t parse_int(std::string_view text, std::string_view spec) {
  text = trim(text);
  index_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) fail(spec, "expected an integer, got '" + std::string(text) + "'");
  return v;
}

std::uint64_t parse_seed(std::string_view text, std::string_view spec) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) fail(spec, "expected a seed, got '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_reals(std::string_view text) {
  std::vector<double> out;
  for (const auto part : split_top(text, ',')) out.push_back(parse_real(part));
  return out;
}

HeisElem parse_triple(std::string_view text, std::string_view spec) {
  const auto v = parse_reals(strip_wrapping(text, '(', ')'));
  if (v.size() != 3) fail(spec, "expected three coordinates");
  return {v[0], v[1], v[2]};
}

NilFunction parse_character(std::string_view name, std::string_view spec) {
  if (name == "ex") return character_ex();
  if (name == "ey") return character_ey();
  if (name == "ez") return character_ez(1);
  if (name.size() > 2 && name.front() == 'e' && name.back() == 'z') {
    return character_ez(static_cast<int>(parse_int(name.substr(1, name.size() - 2), spec)));
  }
  fail(spec, "unknown function '" + std::string(name) + "' (use ex, ey, ez or e<j>z)");
}

Sequence parse_trig(std::string_view body, std::string_view spec) {
  body = strip_wrapping(body, '[', ']');
  TrigPoly p;
  for (const auto term : split_top(body, ';')) {
    if (term.empty()) continue;
    std::optional<double> t;
    std::optional<cplx> l;
    for (const auto field : split_top(term, ',')) {
      const auto eq = field.find('=');
      if (eq == std::string_view::npos) fail(spec, "trig terms are t=...,l=...");
      const auto key = trim(field.substr(0, eq));
      const auto value = trim(field.substr(eq + 1));
      if (key == "t") {
        t = parse_real(value);
      } else if (key == "l") {
        l = parse_complex(value);
      } else {
        fail(spec, "unknown trig field '" + std::string(key) + "'");
      }
    }
    if (!t || !l) fail(spec, "each trig term needs t and l");
    p.terms.push_back({*t, *l});
  }
  if (p.terms.empty()) fail(spec, "empty trig polynomial");
  return trig_poly_seq(std::move(p));
}

Sequence parse_block(std::string_view body, std::string_view spec) {
  BlockSpec bs;
  if (starts_with(body, "geo")) {
    const auto rest = body.substr(3);
    const auto x = rest.find('x');
    bs.growth = GeometricGrowth{parse_int(rest.substr(0, x), spec)};
    if (x != std::string_view::npos) bs.block_count = static_cast<int>(parse_int(rest.substr(x + 1), spec));
  } else if (starts_with(body, "custom=")) {
    CustomGrowth c;
    for (const auto part : split_top(body.substr(7), ',')) c.starts.push_back(parse_int(part, spec));
    bs.block_count = static_cast<int>(c.starts.size()) - 1;
    bs.growth = std::move(c);
  } else {
    fail(spec, "block spec is geo<r>x<count> or custom=N1,N2,...");
  }
  return BlockCounterexample(bs).sequence();
}

Sequence parse_genpoly(std::string_view body, std::string_view spec) {
  body = strip_wrapping(body, '"', '"');
  body = strip_wrapping(body, '\'', '\'');
  if (starts_with(body, "frac(") && body.back() == ')') {
    return genpoly_seq(GenPoly::parse(body.substr(5, body.size() - 6)), GenPolyForm::FracPart);
  }
  if (starts_with(body, "e(") && body.back() == ')') {
    return genpoly_seq(GenPoly::parse(body.substr(2, body.size() - 3)), GenPolyForm::ExpPhase);
  }
  fail(spec, "genpoly body is frac(EXPR) or e(EXPR)");
}

Sequence parse_heis(std::string_view body, std::string_view spec) {
  HeisElem tau{};
  HeisElem x0{};
  NilFunction f = character_ez(1);
  bool have_tau = false;
  for (const auto field : split_top(body, ';')) {
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) fail(spec, "heis fields are tau=(..), x0=(..), f=..");
    const auto key = trim(field.substr(0, eq));
    const auto value = trim(field.substr(eq + 1));
    if (key == "tau") {
      tau = parse_triple(value, spec);
      have_tau = true;
    } else if (key == "x0") {
      x0 = parse_triple(value, spec);
    } else if (key == "f") {
      f = parse_character(value, spec);
    } else {
      fail(spec, "unknown heis field '" + std::string(key) + "'");
    }
  }
  if (!have_tau) fail(spec, "heis needs tau=(a,b,c)");
  return nilsequence(tau, heis_reduce(x0).point, std::move(f), std::nullopt);
}

Sequence delta_seq(index_t m) {
  return {[m](index_t n) { return n == m ? cplx{1.0, 0.0} : cplx{0.0, 0.0}; }, std::nullopt, 1.0, "delta"};
}

}  // namespace

double parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw PreconditionError("expected a number, got an empty string");
  const GenPoly p = GenPoly::parse(text);
  if (p.has_var()) throw PreconditionError("expected a constant, got '" + std::string(text) + "'");
  return p.eval(0);
}

cplx parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty() || text.back() != 'i') return {parse_real(text), 0.0};
  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [&](std::string_view s) {
    s = trim(s);
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.remove_prefix(1);
    return parse_real(s);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

Sequence parse_generator(std::string_view spec) {
  const std::string_view s = trim(spec);
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) fail(spec, "expected kind:args");
  const auto kind = s.substr(0, colon);
  const auto body = trim(s.substr(colon + 1));

  if (kind == "exp") return exp_seq(parse_real(body));
  if (kind == "quad") return poly_phase_seq({0.0, 0.0, parse_real(body)});
  if (kind == "poly") return poly_phase_seq(parse_reals(body));
  if (kind == "trig") return parse_trig(body, spec);
  if (kind == "tm") {
    if (body == "pm") return thue_morse_seq(ThueMorseForm::PlusMinus);
    if (body == "01") return thue_morse_seq(ThueMorseForm::ZeroOne);
    fail(spec, "tm takes pm or 01");
  }
  if (kind == "rad") return rademacher_seq(parse_seed(body, spec));
  if (kind == "block") return parse_block(body, spec);
  if (kind == "genpoly") return parse_genpoly(body, spec);
  if (kind == "heis") return parse_heis(body, spec);
  if (kind == "const") return Sequence::constant(parse_complex(body));
  if (kind == "delta") return delta_seq(body.empty() ? 0 : parse_int(body, spec));
  fail(spec, "unknown generator '" + std::string(kind) + "'");
}

DynSystem parse_system(std::string_view spec) {
  const std::string_view s = trim(spec);
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) fail(spec, "expected rot:A, skew:A or heis:a,b,c");
  const auto kind = s.substr(0, colon);
  const auto body = s.substr(colon + 1);
  if (kind == "rot") return DynSystem::rotation(parse_real(body));
  if (kind == "skew") return DynSystem::skew(parse_real(body));
  if (kind == "heis") return DynSystem::heis(parse_triple(body, spec));
  fail(spec, "unknown system '" + std::string(kind) + "'");
}

Observable parse_observable(std::string_view spec) {
  const std::string_view s = trim(spec);
  if (s == "ex") return observable_ex();
  if (s == "ey") return observable_ey();
  if (s == "ez") return observable_ez(1);
  if (starts_with(s, "const:")) return observable_const(parse_complex(s.substr(6)));
  if (s.size() > 2 && s.front() == 'e' && s.back() == 'z') {
    return observable_ez(static_cast<int>(parse_int(s.substr(1, s.size() - 2), spec)));
  }
  fail(spec, "unknown observable (use ex, ey, ez, e<j>z or const:C)");
}

Point parse_point(std::string_view text) {
  const auto v = parse_reals(strip_wrapping(text, '(', ')'));
  if (v.empty() || v.size() > 3) fail(text, "expected 1 to 3 coordinates");
  Point p;
  p.x = v[0];
  if (v.size() > 1) p.y = v[1];
  if (v.size() > 2) p.z = v[2];
  return p;
}

Interval parse_range(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) fail(text, "expected lo:hi");
  const index_t lo = parse_int(text.substr(0, colon), text);
  const index_t hi = parse_int(text.substr(colon + 1), text);
  if (hi <= lo) fail(text, "range must have hi > lo");
  return {lo, hi - lo};
}

}  // namespace unif
