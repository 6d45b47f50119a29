#pragma once

#include <string>
#include <vector>

#include "unif/generators.hpp"
#include "unif/uniformity.hpp"

namespace unif {

/// DFT of a length-N window with the k = 2 norms read off the spectrum.
struct SpectrumReport {
  index_t N = 0;
  /// One term per bin j, frequency j/N, coefficient lambda_j.
  TrigPoly coefficients;
  double hk2 = 0.0;    // (sum |lambda|^4)^{1/4}
  double dual2 = 0.0;  // (sum |lambda|^{4/3})^{3/4}
  double parseval_spectrum = 0.0;  // sum |lambda|^2
  double parseval_samples = 0.0;   // (1/N) sum |a_n|^2
};

/// lambda_j = (1/N) sum_{n<N} a_n e(-nj/N).
SpectrumReport dft_coefficients(const Sequence& a, index_t N);
SpectrumReport spectrum_of_samples(const std::vector<cplx>& values);

double dual_norm_k2(const TrigPoly& p);
double hk_norm_k2(const TrigPoly& p);

/// (D_k a)(n) = (1/H^k) sum_{h in [0,H)^k} prod_{eps != 0} C^{|eps|} a_{n+eps.h}.
///
/// Interval mode: the result is valid on I (the input must cover I plus the
/// k H margin). Cyclic mode: the result is N-periodic.
Sequence dual_function(const Sequence& a, const BoxParams& p);

struct DirectBound {
  double corr = 0.0;
  double bound = 0.0;
  [[nodiscard]] bool holds(double slack = 1e-9) const { return corr <= bound + slack; }
};

/// corr = |(1/N) sum_{n<N} a_n conj(b_n)|,
/// bound = ||a||_{2, cyclic N, H = N} * dual_norm_k2(b).
/// Every frequency of b must lie within 1e-12 of a multiple of 1/N.
DirectBound direct_bound_check(const Sequence& a, const TrigPoly& b, index_t N);

/// Index j with |t - j/N| <= 1e-12 (mod 1); PreconditionError otherwise.
index_t grid_bin(double t, index_t N);

struct Dictionary {
  enum class Kind { Fourier, QuadPhase, Heis };
  Kind kind = Kind::Fourier;
  /// alpha values for QuadPhase and Heis; unused for Fourier.
  std::vector<double> grid;
};

struct SearchHit {
  std::string spec;  // a generator spec string
  double corr = 0.0;
};

/// Dictionary elements ranked by |(1/N) sum_{n<N} a_n conj(b_n)|, largest
/// first; ties keep dictionary order.
///
/// Fourier: every bin j/N. QuadPhase: for each alpha the best e(alpha n^2 +
/// beta n) over grid beta. Heis: tau = (alpha, 1, 0), x0 = 0, f = e(z).
/// No optimality claim is made.
std::vector<SearchHit> inverse_search(const Sequence& a, index_t N, const std::vector<Dictionary>& dictionaries);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace unif
