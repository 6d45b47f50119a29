// unif-lab: command-line front end for the uniformity library.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "unif/duality.hpp"
#include "unif/ergodic.hpp"
#include "unif/generators.hpp"
#include "unif/harness.hpp"
#include "unif/heisenberg.hpp"
#include "unif/parallel.hpp"
#include "unif/spec_parse.hpp"
#include "unif/uniformity.hpp"

using json = nlohmann::ordered_json;
using namespace unif;

namespace {

enum Exit { kOk = 0, kUsage = 2, kContract = 3, kViolation = 4 };

struct Global {
  unsigned threads = 1;
  std::string out;
  bool json = false;
  bool csv = false;
  std::uint64_t seed = 1;
};

enum class Format { Json, Csv };

Format pick(const Global& g, Format fallback) {
  if (g.json && g.csv) throw PreconditionError("--json and --csv are mutually exclusive");
  if (g.json) return Format::Json;
  if (g.csv) return Format::Csv;
  return fallback;
}

std::string num(double x) { return format_double(x); }

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

// ---------------------------------------------------------------------------
// Box parameters shared by norm, unorm and dualfn
// ---------------------------------------------------------------------------

struct BoxOpts {
  std::string gen;
  int k = 2;
  index_t H = 16;
  std::string mode = "interval";
  index_t N = 0;
  index_t start = 0;
  index_t len = 4096;
};

void add_box_options(CLI::App* app, BoxOpts& o) {
  app->add_option("--gen", o.gen, "generator spec")->required();
  app->add_option("--k", o.k, "order k >= 1");
  app->add_option("--H", o.H, "h-grid size");
  app->add_option("--mode", o.mode, "interval | cyclic")->check(CLI::IsMember({"interval", "cyclic"}));
  app->add_option("--N", o.N, "cyclic modulus (cyclic mode)");
  app->add_option("--start", o.start, "interval start, or cyclic origin");
  app->add_option("--len", o.len, "interval length (interval mode)");
}

BoxParams box_params(const BoxOpts& o) {
  if (o.mode == "cyclic") {
    if (o.N < 1) throw PreconditionError("cyclic mode needs --N >= 1");
    return BoxParams::cyclic(o.k, o.H, o.N, o.start);
  }
  return BoxParams::interval(o.k, o.H, Interval{o.start, o.len});
}

json box_params_json(const BoxOpts& o, const BoxParams& p) {
  json j;
  j["gen"] = o.gen;
  j["k"] = p.k;
  j["H"] = p.H;
  j["mode"] = p.mode.name();
  j["I"] = {p.I.lo, p.I.hi()};
  if (p.mode.is_cyclic()) j["N"] = p.mode.N;
  return j;
}

json norm_json(const std::string& op, json params, const NormReport& r) {
  json j;
  j["op"] = op;
  j["params"] = std::move(params);
  j["value"] = r.value;
  j["powered"] = r.powered;
  json d;
  d["h_tail"] = r.h_tail;
  d["mode"] = r.params.mode.name();
  d["N"] = r.params.mode.is_cyclic() ? r.params.mode.N : r.params.I.len;
  d["H"] = r.params.H;
  d["raw_powered"] = r.raw_powered;
  d["clamped"] = r.clamped;
  d["method"] = r.method;
  j["diagnostics"] = std::move(d);
  return j;
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns an exit code and appends to `out`.
// ---------------------------------------------------------------------------

struct GenOpts {
  std::string gen;
  std::string range = "0:16";
};

int run_gen(const Global& g, const GenOpts& o, std::ostream& out) {
  const Sequence a = parse_generator(o.gen);
  const Interval I = parse_range(o.range);
  const std::vector<cplx> v = a.sample(I);
  if (pick(g, Format::Csv) == Format::Json) {
    json j;
    j["op"] = "gen";
    j["params"] = {{"gen", o.gen}, {"range", {I.lo, I.hi()}}};
    json vals = json::array();
    for (const cplx& z : v) vals.push_back(cjson(z));
    j["value"] = std::move(vals);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "n,re,im\n";
  for (index_t n = 0; n < I.len; ++n) {
    const cplx z = v[static_cast<std::size_t>(n)];
    out << I.lo + n << "," << num(z.real()) << "," << num(z.imag()) << "\n";
  }
  return kOk;
}

struct NormOpts {
  BoxOpts box;
  std::string method = "auto";
};

int run_norm(const Global& g, const NormOpts& o, std::ostream& out) {
  const Sequence a = parse_generator(o.box.gen);
  const BoxParams p = box_params(o.box);
  const BoxMethod m = o.method == "direct" ? BoxMethod::Direct : o.method == "fft" ? BoxMethod::Fft : BoxMethod::Auto;
  const NormReport r = box_norm(a, p, m);
  if (pick(g, Format::Json) == Format::Csv) {
    out << "value,powered,h_tail,mode,N,H,method\n"
        << num(r.value) << "," << num(r.powered) << "," << num(r.h_tail) << "," << p.mode.name() << ","
        << (p.mode.is_cyclic() ? p.mode.N : p.I.len) << "," << p.H << "," << r.method << "\n";
    return kOk;
  }
  out << norm_json("norm", box_params_json(o.box, p), r).dump(2) << "\n";
  return kOk;
}

struct UnormOpts {
  std::string gen;
  std::string range = "0:65536";
  index_t window = 4096;
  index_t stride = 1024;
  int k = 2;
  index_t H = 16;
  std::string mode = "interval";
};

int run_unorm(const Global& g, const UnormOpts& o, std::ostream& out) {
  const Sequence a = parse_generator(o.gen);
  const Interval R = parse_range(o.range);
  const ProxyReport r = uniformity_norm_proxy(a, R, o.window, o.stride, o.k, o.H,
                                              o.mode == "cyclic" ? WindowMode::Cyclic : WindowMode::Interval);
  json params;
  params["gen"] = o.gen;
  params["range"] = {R.lo, R.hi()};
  params["window"] = o.window;
  params["stride"] = o.stride;
  params["k"] = o.k;
  params["H"] = o.H;
  params["mode"] = o.mode;
  if (pick(g, Format::Json) == Format::Csv) {
    out << "value,powered,argmax_lo,argmax_hi,windows\n"
        << num(r.best.value) << "," << num(r.best.powered) << "," << r.argmax.lo << "," << r.argmax.hi() << ","
        << r.windows << "\n";
    return kOk;
  }
  json j = norm_json("unorm", params, r.best);
  j["diagnostics"]["argmax"] = {r.argmax.lo, r.argmax.hi()};
  j["diagnostics"]["windows"] = r.windows;
  out << j.dump(2) << "\n";
  return kOk;
}

struct DualOpts {
  std::string gen;
  index_t N = 4096;
};

int run_dual(const Global& g, const DualOpts& o, std::ostream& out) {
  const SpectrumReport s = dft_coefficients(parse_generator(o.gen), o.N);
  if (pick(g, Format::Csv) == Format::Json) {
    json j;
    j["op"] = "dual";
    j["params"] = {{"gen", o.gen}, {"N", o.N}};
    j["value"] = s.hk2;
    j["powered"] = std::pow(s.hk2, 4.0);
    j["diagnostics"] = {{"hk2", s.hk2},
                        {"dual2", s.dual2},
                        {"parseval_spectrum", s.parseval_spectrum},
                        {"parseval_samples", s.parseval_samples},
                        {"N", o.N}};
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "bin,re,im,magnitude\n";
  for (std::size_t b = 0; b < s.coefficients.terms.size(); ++b) {
    const cplx z = s.coefficients.terms[b].coeff;
    out << b << "," << num(z.real()) << "," << num(z.imag()) << "," << num(std::abs(z)) << "\n";
  }
  return kOk;
}

int run_dualfn(const Global& g, const BoxOpts& o, std::ostream& out) {
  const Sequence a = parse_generator(o.gen);
  const BoxParams p = box_params(o);
  const Sequence d = dual_function(a, p);
  std::vector<cplx> vals;
  for (index_t n = p.I.lo; n < p.I.hi(); ++n) vals.push_back(d(n));
  if (pick(g, Format::Csv) == Format::Json) {
    cplx pairing;
    double sup = 0.0;
    for (index_t i = 0; i < p.I.len; ++i) {
      const cplx v = vals[static_cast<std::size_t>(i)];
      pairing += a(p.mode.reduce(p.I.lo + i)) * v;
      sup = std::max(sup, std::abs(v));
    }
    pairing /= static_cast<double>(p.I.len);
    json j;
    j["op"] = "dualfn";
    j["params"] = box_params_json(o, p);
    j["value"] = sup;
    j["powered"] = pairing.real();
    j["diagnostics"] = {{"pairing", cjson(pairing)},
                        {"mode", p.mode.name()},
                        {"N", p.mode.is_cyclic() ? p.mode.N : p.I.len},
                        {"H", p.H}};
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "n,re,im\n";
  for (index_t i = 0; i < p.I.len; ++i) {
    const cplx z = vals[static_cast<std::size_t>(i)];
    out << p.I.lo + i << "," << num(z.real()) << "," << num(z.imag()) << "\n";
  }
  return kOk;
}

struct VerifyOpts {
  std::string check;
  std::string gen = "rad:42";
  index_t trials = 0;
  index_t len = 8192;
  index_t H = 0;
  index_t N = 0;
  std::vector<int> ks;
  int terms = 5;
};

int run_verify(const Global& g, const VerifyOpts& o, std::ostream& out) {
  TrialSummary s;
  json params;
  params["check"] = o.check;
  params["seed"] = g.seed;
  auto trials = [&](index_t fallback) { return o.trials > 0 ? o.trials : fallback; };
  auto config = [&](index_t N, index_t H, std::vector<int> ks, index_t t) {
    HarnessConfig c;
    c.seed = g.seed;
    c.trials = trials(t);
    c.N = o.N > 0 ? o.N : N;
    c.H = o.H > 0 ? o.H : (o.N > 0 ? o.N : H);
    c.ks = o.ks.empty() ? std::move(ks) : o.ks;
    params["N"] = c.N;
    params["H"] = c.H;
    params["k"] = c.ks;
    params["trials"] = c.trials;
    return c;
  };

  if (o.check == "vdc") {
    const index_t H = o.H > 0 ? o.H : 64;
    const index_t n = trials(1000);
    const bool random = o.gen.rfind("rad:", 0) == 0;
    const Sequence base = parse_generator(o.gen);
    const std::uint64_t base_seed = random ? std::stoull(o.gen.substr(4)) : 0;
    const index_t len = o.len;
    VdcInstance make = [&](index_t t) -> std::pair<Sequence, Interval> {
      if (random) return {rademacher_seq(base_seed + static_cast<std::uint64_t>(t)), Interval{0, len}};
      return {base, Interval{t * len, len}};
    };
    s = verify_vdc(make, n, H);
    params["gen"] = o.gen;
    params["len"] = len;
    params["H"] = H;
    params["trials"] = n;
  } else if (o.check == "csg") {
    s = verify_csg(config(1024, 32, {2, 3}, 200));
  } else if (o.check == "subadd") {
    s = verify_subadditivity(config(64, 64, {1, 2}, 200));
  } else if (o.check == "mono") {
    s = verify_monotonicity(config(64, 64, {1}, 200));
  } else if (o.check == "recursion") {
    s = verify_recursion(config(64, 64, {1}, 50));
  } else if (o.check == "pairing") {
    s = verify_pairing(config(64, 64, {2}, 50));
  } else if (o.check == "direct") {
    const index_t N = o.N > 0 ? o.N : 4096;
    s = verify_direct(g.seed, trials(500), N, o.terms);
    params["N"] = N;
    params["terms"] = o.terms;
    params["trials"] = trials(500);
  } else {
    throw PreconditionError("unknown check '" + o.check +
                            "' (vdc, csg, subadd, mono, recursion, pairing, direct)");
  }

  if (pick(g, Format::Json) == Format::Csv) {
    out << "check,trials,violations,worst,tolerance\n"
        << s.check << "," << s.trials << "," << s.violations << "," << num(s.worst) << "," << num(s.tolerance)
        << "\n";
  } else {
    json j;
    j["op"] = "verify";
    j["params"] = params;
    j["value"] = s.worst;
    j["powered"] = nullptr;
    j["violations"] = s.violations;
    j["trials"] = s.trials;
    j["diagnostics"] = {{"tolerance", s.tolerance}, {"failures", s.failures}};
    out << j.dump(2) << "\n";
  }
  return s.ok() ? kOk : kViolation;
}

struct HeisOpts {
  std::string tau;
  std::string x0 = "0,0,0";
  std::string f = "ez";
  std::string range = "0:16";
  bool check = false;
};

int run_heis(const Global& g, const HeisOpts& o, std::ostream& out) {
  const Point tp = parse_point(o.tau);
  const HeisElem tau{tp.x, tp.y, tp.z};
  const Point xp = parse_point(o.x0);
  const HeisPoint x0 = heis_reduce({xp.x, xp.y, xp.z}).point;
  const Interval I = parse_range(o.range);
  const Sequence a = parse_generator("heis:tau=(" + o.tau + ");x0=(" + o.x0 + ");f=" + o.f);
  const Observable f = parse_observable(o.f);

  if (o.check) {
    // Character values through the independent bracket closed form.
    double max_dev = 0.0;
    const bool quadratic = tau.y == 1.0 && tau.z == 0.0 && x0 == HeisPoint{} && o.f == "ez";
    double max_quad = 0.0;
    for (index_t n = I.lo; n < I.hi(); ++n) {
      const HeisPoint c = heis_closed_form(tau, x0, n);
      const cplx v = a(n);
      max_dev = std::max(max_dev, std::abs(v - f({c.x, c.y, c.z})));
      if (quadratic) {
        // e(-n(n+1) alpha / 2) with n(n+1)/2 formed exactly.
        const index_t tri = n % 2 == 0 ? (n / 2) * (n + 1) : n * ((n + 1) / 2);
        max_quad = std::max(max_quad, std::abs(v - expi(-frac_mul(tau.x, tri))));
      }
    }
    const double worst = std::max(max_dev, max_quad);
    json j;
    j["op"] = "heis";
    j["params"] = {{"tau", o.tau}, {"x0", o.x0}, {"f", o.f}, {"range", {I.lo, I.hi()}}};
    j["value"] = worst;
    j["powered"] = nullptr;
    json d = {{"closed_form_max_dev", max_dev}, {"tolerance", 1e-6}};
    if (quadratic) d["quadratic_phase_max_dev"] = max_quad;
    j["diagnostics"] = d;
    if (pick(g, Format::Json) == Format::Csv) {
      out << "closed_form_max_dev,quadratic_phase_max_dev\n" << num(max_dev) << "," << num(max_quad) << "\n";
    } else {
      out << j.dump(2) << "\n";
    }
    return worst <= 1e-6 ? kOk : kViolation;
  }

  if (pick(g, Format::Csv) == Format::Json) {
    json rows = json::array();
    for (index_t n = I.lo; n < I.hi(); ++n) {
      const HeisPoint p = heis_orbit_point(tau, x0, n);
      rows.push_back({{"n", n}, {"point", {p.x, p.y, p.z}}, {"value", cjson(a(n))}});
    }
    json j;
    j["op"] = "heis";
    j["params"] = {{"tau", o.tau}, {"x0", o.x0}, {"f", o.f}, {"range", {I.lo, I.hi()}}};
    j["value"] = rows;
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "n,x,y,z,re,im\n";
  for (index_t n = I.lo; n < I.hi(); ++n) {
    const HeisPoint p = heis_orbit_point(tau, x0, n);
    const cplx v = a(n);
    out << n << "," << num(p.x) << "," << num(p.y) << "," << num(p.z) << "," << num(v.real()) << ","
        << num(v.imag()) << "\n";
  }
  return kOk;
}

struct SearchOpts {
  std::string gen;
  index_t N = 4096;
  bool fourier = false;
  std::vector<std::string> quad;
  std::vector<std::string> heis;
  std::size_t top = 10;
};

int run_search(const Global& g, const SearchOpts& o, std::ostream& out) {
  std::vector<Dictionary> dicts;
  if (o.fourier || (o.quad.empty() && o.heis.empty())) dicts.push_back({Dictionary::Kind::Fourier, {}});
  auto grid = [](const std::vector<std::string>& v) {
    std::vector<double> r;
    for (const auto& s : v) r.push_back(parse_real(s));
    return r;
  };
  if (!o.quad.empty()) dicts.push_back({Dictionary::Kind::QuadPhase, grid(o.quad)});
  if (!o.heis.empty()) dicts.push_back({Dictionary::Kind::Heis, grid(o.heis)});
  auto hits = inverse_search(parse_generator(o.gen), o.N, dicts);
  if (o.top > 0 && hits.size() > o.top) hits.resize(o.top);

  if (pick(g, Format::Csv) == Format::Json) {
    json list = json::array();
    for (const auto& h : hits) list.push_back({{"spec", h.spec}, {"corr", h.corr}});
    json j;
    j["op"] = "search";
    j["params"] = {{"gen", o.gen}, {"N", o.N}};
    j["value"] = hits.empty() ? 0.0 : hits.front().corr;
    j["powered"] = nullptr;
    j["diagnostics"] = {{"hits", list}};
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "rank,spec,corr\n";
  for (std::size_t i = 0; i < hits.size(); ++i) out << i + 1 << ",\"" << hits[i].spec << "\"," << num(hits[i].corr) << "\n";
  return kOk;
}

struct WeightedOpts {
  std::string w;
  std::string sys;
  std::vector<std::string> fs;
  std::string x0 = "0";
  index_t N0 = 1024;
  int count = 7;
  double threshold = 0.01;
  bool iterated = false;
};

int run_weighted(const Global& g, const WeightedOpts& o, std::ostream& out) {
  const Sequence w = parse_generator(o.w);
  const DynSystem sys = parse_system(o.sys);
  std::vector<Observable> fs;
  const std::vector<std::string> names = o.fs.empty() ? std::vector<std::string>{"ex"} : o.fs;
  for (const auto& f : names) fs.push_back(parse_observable(f));
  const Point x0 = parse_point(o.x0);
  const CauchyReport r = cauchy_scan(w, sys, fs, x0, doubling_grid(o.N0, o.count), o.threshold);

  std::vector<cplx> iter;
  if (o.iterated) {
    for (const index_t N : r.Ns) iter.push_back(weighted_multiple_average_iterated(w, sys, fs, x0, N));
  }

  if (pick(g, Format::Json) == Format::Csv) {
    out << "N,re,im,delta" << (o.iterated ? ",iter_re,iter_im" : "") << "\n";
    for (std::size_t i = 0; i < r.Ns.size(); ++i) {
      out << r.Ns[i] << "," << num(r.values[i].real()) << "," << num(r.values[i].imag()) << ","
          << (i == 0 ? std::string() : num(r.deltas[i - 1]));
      if (o.iterated) out << "," << num(iter[i].real()) << "," << num(iter[i].imag());
      out << "\n";
    }
    return kOk;
  }
  json vals = json::array();
  for (const cplx& v : r.values) vals.push_back(cjson(v));
  json j;
  j["op"] = "weighted";
  j["params"] = {{"w", o.w}, {"sys", o.sys}, {"f", names}, {"x0", o.x0}, {"N", r.Ns}};
  j["value"] = std::abs(r.values.back());
  j["powered"] = nullptr;
  json d = {{"values", vals},
            {"deltas", r.deltas},
            {"threshold", r.threshold},
            {"converged", r.converged},
            {"deltas_decreasing", r.deltas_decreasing()}};
  if (o.iterated) {
    json it = json::array();
    double dev = 0.0;
    for (std::size_t i = 0; i < iter.size(); ++i) {
      it.push_back(cjson(iter[i]));
      dev = std::max(dev, std::abs(iter[i] - r.values[i]));
    }
    d["iterated"] = it;
    d["iterated_max_dev"] = dev;
  }
  j["diagnostics"] = d;
  out << j.dump(2) << "\n";
  return kOk;
}

struct WwOpts {
  std::string gen;
  index_t N = 4096;
};

int run_ww(const Global& g, const WwOpts& o, std::ostream& out) {
  const std::vector<double> mags = wiener_wintner_scan(parse_generator(o.gen), o.N);
  std::size_t arg = 0;
  for (std::size_t j = 1; j < mags.size(); ++j) {
    if (mags[j] > mags[arg]) arg = j;
  }
  if (pick(g, Format::Csv) == Format::Json) {
    json j;
    j["op"] = "ww";
    j["params"] = {{"gen", o.gen}, {"N", o.N}};
    j["value"] = mags[arg];
    j["powered"] = nullptr;
    j["diagnostics"] = {{"argmax_bin", arg}, {"argmax_t", static_cast<double>(arg) / static_cast<double>(o.N)}};
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "bin,t,magnitude\n";
  for (std::size_t j = 0; j < mags.size(); ++j) {
    out << j << "," << num(static_cast<double>(j) / static_cast<double>(o.N)) << "," << num(mags[j]) << "\n";
  }
  return kOk;
}

struct BenchOpts {
  std::string gen = "quad:sqrt2/2";
  index_t N = 65536;
  index_t H = 256;
};

int run_bench(const Global& g, const BenchOpts& o, std::ostream& out) {
  const Sequence a = parse_generator(o.gen);
  const BoxParams p = BoxParams::cyclic(2, o.H, o.N);
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const NormReport direct = box_norm(a, p, BoxMethod::Direct);
  const auto t1 = clock::now();
  const NormReport fft = box_norm(a, p, BoxMethod::Fft);
  const auto t2 = clock::now();
  const double td = std::chrono::duration<double>(t1 - t0).count();
  const double tf = std::chrono::duration<double>(t2 - t1).count();
  const double diff = std::abs(direct.powered - fft.powered);

  if (pick(g, Format::Csv) == Format::Json) {
    json j;
    j["op"] = "bench";
    j["params"] = {{"gen", o.gen}, {"N", o.N}, {"H", o.H}, {"k", 2}};
    j["value"] = fft.value;
    j["powered"] = fft.powered;
    j["diagnostics"] = {{"direct_value", direct.value}, {"fft_value", fft.value}, {"powered_abs_diff", diff},
                        {"direct_seconds", td},     {"fft_seconds", tf},     {"speedup", td / tf},
                        {"h_tail", fft.h_tail},     {"mode", "cyclic"},     {"N", o.N},
                        {"H", o.H}};
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "method,seconds,value,powered\n"
      << "direct," << num(td) << "," << num(direct.value) << "," << num(direct.powered) << "\n"
      << "fft," << num(tf) << "," << num(fft.value) << "," << num(fft.powered) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unif-lab: local box norms, dual functions and nilsequence experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--threads", g.threads, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", g.out, "write output to this path instead of stdout");
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output");
  app.add_option("--seed", g.seed, "seed for randomized checks");

  std::function<int(std::ostream&)> action;

  GenOpts gen_o;
  auto* gen = app.add_subcommand("gen", "dump sequence samples");
  gen->add_option("--gen", gen_o.gen, "generator spec")->required();
  gen->add_option("--range", gen_o.range, "lo:hi (half-open)");
  gen->callback([&] { action = [&](std::ostream& os) { return run_gen(g, gen_o, os); }; });

  NormOpts norm_o;
  auto* norm = app.add_subcommand("norm", "local box norm");
  add_box_options(norm, norm_o.box);
  norm->add_option("--method", norm_o.method, "auto | direct | fft")->check(CLI::IsMember({"auto", "direct", "fft"}));
  norm->callback([&] { action = [&](std::ostream& os) { return run_norm(g, norm_o, os); }; });

  UnormOpts unorm_o;
  auto* unorm = app.add_subcommand("unorm", "sliding-window uniformity proxy (a lower bound)");
  unorm->add_option("--gen", unorm_o.gen, "generator spec")->required();
  unorm->add_option("--range", unorm_o.range, "search range lo:hi");
  unorm->add_option("--window", unorm_o.window, "window length");
  unorm->add_option("--stride", unorm_o.stride, "window stride");
  unorm->add_option("--k", unorm_o.k, "order k");
  unorm->add_option("--H", unorm_o.H, "h-grid size");
  unorm->add_option("--mode", unorm_o.mode, "interval | cyclic (per window)")
      ->check(CLI::IsMember({"interval", "cyclic"}));
  unorm->callback([&] { action = [&](std::ostream& os) { return run_unorm(g, unorm_o, os); }; });

  DualOpts dual_o;
  auto* dual = app.add_subcommand("dual", "DFT spectrum with the k = 2 norm and dual norm");
  dual->add_option("--gen", dual_o.gen, "generator spec")->required();
  dual->add_option("--N", dual_o.N, "DFT length");
  dual->callback([&] { action = [&](std::ostream& os) { return run_dual(g, dual_o, os); }; });

  BoxOpts dualfn_o;
  auto* dualfn = app.add_subcommand("dualfn", "dual function D_k a");
  add_box_options(dualfn, dualfn_o);
  dualfn->callback([&] { action = [&](std::ostream& os) { return run_dualfn(g, dualfn_o, os); }; });

  VerifyOpts verify_o;
  auto* verify = app.add_subcommand("verify", "seeded inequality and identity checks (exit 4 on violation)");
  verify->add_option("check", verify_o.check, "vdc | csg | subadd | mono | recursion | pairing | direct")->required();
  verify->add_option("--gen", verify_o.gen, "generator spec (vdc)");
  verify->add_option("--trials", verify_o.trials, "number of trials");
  verify->add_option("--len", verify_o.len, "interval length (vdc)");
  verify->add_option("--H", verify_o.H, "h-grid size");
  verify->add_option("--N", verify_o.N, "cyclic modulus");
  verify->add_option("--k", verify_o.ks, "orders, comma separated")->delimiter(',');
  verify->add_option("--terms", verify_o.terms, "trig terms (direct)");
  verify->callback([&] { action = [&](std::ostream& os) { return run_verify(g, verify_o, os); }; });

  HeisOpts heis_o;
  auto* heis = app.add_subcommand("heis", "Heisenberg nilsequence orbit");
  heis->add_option("--tau", heis_o.tau, "a,b,c")->required();
  heis->add_option("--x0", heis_o.x0, "x,y,z");
  heis->add_option("--f", heis_o.f, "ex | ey | ez | e<j>z");
  heis->add_option("--range", heis_o.range, "lo:hi (half-open)");
  heis->add_flag("--check-closed-form", heis_o.check, "compare with the bracket closed form (exit 4 above 1e-6)");
  heis->callback([&] { action = [&](std::ostream& os) { return run_heis(g, heis_o, os); }; });

  SearchOpts search_o;
  auto* search = app.add_subcommand("search", "rank dictionary elements by correlation");
  search->add_option("--gen", search_o.gen, "generator spec")->required();
  search->add_option("--N", search_o.N, "window length");
  search->add_flag("--fourier", search_o.fourier, "include the Fourier dictionary (default when nothing else)");
  search->add_option("--quad", search_o.quad, "quadratic-phase alphas, comma separated")->delimiter(',');
  search->add_option("--heis", search_o.heis, "Heisenberg alphas, comma separated")->delimiter(',');
  search->add_option("--top", search_o.top, "keep the best this many (0 keeps all)");
  search->callback([&] { action = [&](std::ostream& os) { return run_search(g, search_o, os); }; });

  WeightedOpts weighted_o;
  auto* weighted = app.add_subcommand("weighted", "weighted multiple ergodic averages with Cauchy deltas");
  weighted->add_option("--w", weighted_o.w, "weight generator spec")->required();
  weighted->add_option("--sys", weighted_o.sys, "rot:A | skew:A | heis:a,b,c")->required();
  weighted->add_option("--f", weighted_o.fs, "observable, repeat for k > 1 (ex, ey, ez, e<j>z, const:C)");
  weighted->add_option("--x0", weighted_o.x0, "starting point x[,y[,z]]");
  weighted->add_option("--N0", weighted_o.N0, "first N of the doubling grid");
  weighted->add_option("--count", weighted_o.count, "grid size");
  weighted->add_option("--threshold", weighted_o.threshold, "convergence threshold on the last delta");
  weighted->add_flag("--iterated", weighted_o.iterated, "also run the iterated-map path");
  weighted->callback([&] { action = [&](std::ostream& os) { return run_weighted(g, weighted_o, os); }; });

  WwOpts ww_o;
  auto* ww = app.add_subcommand("ww", "Wiener-Wintner frequency scan");
  ww->add_option("--gen", ww_o.gen, "generator spec")->required();
  ww->add_option("--N", ww_o.N, "length");
  ww->callback([&] { action = [&](std::ostream& os) { return run_ww(g, ww_o, os); }; });

  BenchOpts bench_o;
  auto* bench = app.add_subcommand("bench", "direct vs DFT timing for k = 2 cyclic (timings vary run to run)");
  bench->add_option("--gen", bench_o.gen, "generator spec");
  bench->add_option("--N", bench_o.N, "cyclic modulus");
  bench->add_option("--H", bench_o.H, "h-grid size");
  bench->callback([&] { action = [&](std::ostream& os) { return run_bench(g, bench_o, os); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    set_threads(g.threads);
    std::ostringstream buffer;
    const int code = action(buffer);
    if (g.out.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream f(g.out, std::ios::binary);
      if (!f) throw PreconditionError("cannot open --out path '" + g.out + "'");
      f << buffer.str();
    }
    return code;
  } catch (const NumericContractError& e) {
    std::cerr << "unif-lab: numeric contract violation: " << e.what() << "\n";
    return kContract;
  } catch (const Error& e) {
    std::cerr << "unif-lab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "unif-lab: internal error: " << e.what() << "\n";
    return 1;
  }
}
