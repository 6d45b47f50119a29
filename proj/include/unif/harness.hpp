#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "unif/sequence.hpp"

namespace unif {

/// Outcome of a seeded batch of inequality or identity checks.
struct TrialSummary {
  std::string check;
  index_t trials = 0;
  index_t violations = 0;
  /// Largest lhs - rhs for inequalities, largest |lhs - rhs| for identities.
  double worst = 0.0;
  double tolerance = 0.0;
  /// The first few failing trials, human readable.
  std::vector<std::string> failures;

  [[nodiscard]] bool ok() const { return violations == 0; }
};

/// Random instances are periodic sequences of period N with values uniform
/// in the unit disk, seeded by (seed, trial, slot). Trial t uses
/// k = ks[t % ks.size()] and box parameters cyclic(k, H, N).
struct HarnessConfig {
  std::uint64_t seed = 1;
  index_t trials = 100;
  index_t N = 64;
  index_t H = 64;
  std::vector<int> ks{2};
};

/// Sequence and interval for van der Corput trial t.
using VdcInstance = std::function<std::pair<Sequence, Interval>(index_t)>;

TrialSummary verify_vdc(const VdcInstance& make, index_t trials, index_t H, double slack = 1e-12);

/// |cube pairing of 2^k random sequences| <= product of their box norms.
TrialSummary verify_csg(const HarnessConfig& cfg, double slack = 1e-9);
/// ||a + b||_k <= ||a||_k + ||b||_k.
TrialSummary verify_subadditivity(const HarnessConfig& cfg, double slack = 1e-9);
/// ||a||_k <= ||a||_{k+1}.
TrialSummary verify_monotonicity(const HarnessConfig& cfg, double slack = 1e-9);
/// (1/H) sum_{h<H} ||sigma^h a . conj(a)||_k^{2^k} = ||a||_{k+1}^{2^{k+1}}, both
/// sides unclamped.
TrialSummary verify_recursion(const HarnessConfig& cfg, double tol = 1e-9);
/// (1/N) sum_n a_n (D_k a)(n) = the unclamped h-average of c_h.
TrialSummary verify_pairing(const HarnessConfig& cfg, double tol = 1e-9);
/// |(1/N) sum a conj(b)| <= ||a||_2 ||b||_2^* for random a and random
/// `terms`-term on-grid b.
TrialSummary verify_direct(std::uint64_t seed, index_t trials, index_t N, int terms = 5, double slack = 1e-9);

/// The random instance for (seed, trial, slot).
Sequence harness_instance(std::uint64_t seed, index_t trial, int slot, index_t N);

}  // namespace unif
