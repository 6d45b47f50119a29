#include "unif/harness.hpp"

#include <cmath>
#include <limits>

#include "unif/duality.hpp"
#include "unif/generators.hpp"
#include "unif/uniformity.hpp"

namespace unif {

namespace {

constexpr std::size_t kMaxReported = 5;

TrialSummary start(std::string check, double tol) {
  TrialSummary s;
  s.check = std::move(check);
  s.tolerance = tol;
  s.worst = -std::numeric_limits<double>::infinity();
  return s;
}

void note(TrialSummary& s, index_t trial, double lhs, double rhs, double gap, bool bad) {
  ++s.trials;
  if (gap > s.worst) s.worst = gap;
  if (!bad) return;
  ++s.violations;
  if (s.failures.size() < kMaxReported) {
    s.failures.push_back("trial " + std::to_string(trial) + ": lhs=" + format_double(lhs) +
                         " rhs=" + format_double(rhs));
  }
}

void inequality(TrialSummary& s, index_t trial, double lhs, double rhs) {
  note(s, trial, lhs, rhs, lhs - rhs, lhs > rhs + s.tolerance);
}

void identity(TrialSummary& s, index_t trial, double lhs, double rhs) {
  const double gap = std::abs(lhs - rhs);
  note(s, trial, lhs, rhs, gap, !(gap <= s.tolerance));
}

int k_for(const HarnessConfig& cfg, index_t trial) {
  if (cfg.ks.empty()) throw PreconditionError("harness: empty k list");
  return cfg.ks[static_cast<std::size_t>(trial) % cfg.ks.size()];
}

void check_trials(index_t trials) {
  if (trials < 1) throw PreconditionError("harness: trials must be >= 1");
}

}  // namespace

Sequence harness_instance(std::uint64_t seed, index_t trial, int slot, index_t N) {
  return random_periodic_seq(seed, static_cast<std::uint64_t>(trial) * 64 + static_cast<std::uint64_t>(slot), N);
}

TrialSummary verify_vdc(const VdcInstance& make, index_t trials, index_t H, double slack) {
  check_trials(trials);
  TrialSummary s = start("vdc", slack);
  for (index_t t = 0; t < trials; ++t) {
    const auto [a, I] = make(t);
    const VdcResult r = vdc_bound(a, I, H);
    inequality(s, t, r.lhs, r.rhs);
  }
  return s;
}

TrialSummary verify_csg(const HarnessConfig& cfg, double slack) {
  check_trials(cfg.trials);
  TrialSummary s = start("csg", slack);
  for (index_t t = 0; t < cfg.trials; ++t) {
    const int k = k_for(cfg, t);
    std::vector<Sequence> seqs;
    for (int e = 0; e < (1 << k); ++e) seqs.push_back(harness_instance(cfg.seed, t, e, cfg.N));
    const CsgResult r = csg_check(seqs, BoxParams::cyclic(k, cfg.H, cfg.N));
    inequality(s, t, r.lhs, r.rhs);
  }
  return s;
}

TrialSummary verify_subadditivity(const HarnessConfig& cfg, double slack) {
  check_trials(cfg.trials);
  TrialSummary s = start("subadd", slack);
  for (index_t t = 0; t < cfg.trials; ++t) {
    const BoxParams p = BoxParams::cyclic(k_for(cfg, t), cfg.H, cfg.N);
    const Sequence a = harness_instance(cfg.seed, t, 0, cfg.N);
    const Sequence b = harness_instance(cfg.seed, t, 1, cfg.N);
    const double lhs = box_norm(a + b, p).value;
    const double rhs = box_norm(a, p).value + box_norm(b, p).value;
    inequality(s, t, lhs, rhs);
  }
  return s;
}

TrialSummary verify_monotonicity(const HarnessConfig& cfg, double slack) {
  check_trials(cfg.trials);
  TrialSummary s = start("mono", slack);
  for (index_t t = 0; t < cfg.trials; ++t) {
    const int k = k_for(cfg, t);
    const Sequence a = harness_instance(cfg.seed, t, 0, cfg.N);
    const double lhs = box_norm(a, BoxParams::cyclic(k, cfg.H, cfg.N)).value;
    const double rhs = box_norm(a, BoxParams::cyclic(k + 1, cfg.H, cfg.N)).value;
    inequality(s, t, lhs, rhs);
  }
  return s;
}

TrialSummary verify_recursion(const HarnessConfig& cfg, double tol) {
  check_trials(cfg.trials);
  TrialSummary s = start("recursion", tol);
  for (index_t t = 0; t < cfg.trials; ++t) {
    const int k = k_for(cfg, t);
    const Sequence a = harness_instance(cfg.seed, t, 0, cfg.N);
    const BoxParams pk = BoxParams::cyclic(k, cfg.H, cfg.N);
    double lhs = 0.0;
    for (index_t h = 0; h < cfg.H; ++h) lhs += box_norm(shift(a, h) * conjugate(a), pk).raw_powered;
    lhs /= static_cast<double>(cfg.H);
    const double rhs = box_norm(a, BoxParams::cyclic(k + 1, cfg.H, cfg.N)).raw_powered;
    identity(s, t, lhs, rhs);
  }
  return s;
}

TrialSummary verify_pairing(const HarnessConfig& cfg, double tol) {
  check_trials(cfg.trials);
  TrialSummary s = start("pairing", tol);
  for (index_t t = 0; t < cfg.trials; ++t) {
    const BoxParams p = BoxParams::cyclic(k_for(cfg, t), cfg.H, cfg.N);
    const Sequence a = harness_instance(cfg.seed, t, 0, cfg.N);
    const Sequence d = dual_function(a, p);
    cplx pairing;
    for (index_t n = 0; n < cfg.N; ++n) pairing += a(n) * d(n);
    pairing /= static_cast<double>(cfg.N);
    const cplx raw = box_norm(a, p, BoxMethod::Direct).raw;
    note(s, t, pairing.real(), raw.real(), std::abs(pairing - raw), !(std::abs(pairing - raw) <= tol));
  }
  return s;
}

TrialSummary verify_direct(std::uint64_t seed, index_t trials, index_t N, int terms, double slack) {
  check_trials(trials);
  TrialSummary s = start("direct", slack);
  for (index_t t = 0; t < trials; ++t) {
    const Sequence a = harness_instance(seed, t, 0, N);
    const TrigPoly b = random_grid_trig(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(t + 1)), N, terms);
    const DirectBound r = direct_bound_check(a, b, N);
    inequality(s, t, r.corr, r.bound);
  }
  return s;
}

}  // namespace unif
