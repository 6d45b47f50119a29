#pragma once

#include <functional>
#include <vector>

#include "unif/heisenberg.hpp"
#include "unif/sequence.hpp"

namespace unif {

/// A point of T, T^2 or the Heisenberg nilmanifold; unused coordinates are 0.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Concrete uniquely ergodic systems (for irrational alpha):
///   Rotation(alpha): x -> x + alpha on T.
///   Skew(alpha):     (x, y) -> (x + alpha, y + 2x + alpha) on T^2.
///   Heis(tau):       left translation by tau on the Heisenberg nilmanifold.
struct DynSystem {
  enum class Kind { Rotation, Skew, Heis };

  Kind kind = Kind::Rotation;
  double alpha = 0.0;
  HeisElem tau;

  static DynSystem rotation(double alpha) { return {Kind::Rotation, alpha, {}}; }
  static DynSystem skew(double alpha) { return {Kind::Skew, alpha, {}}; }
  static DynSystem heis(const HeisElem& tau) { return {Kind::Heis, 0.0, tau}; }

  /// S^n x by closed form. Skew: (x + n alpha, y + 2 n x + n^2 alpha).
  [[nodiscard]] Point orbit(const Point& x0, index_t n) const;
  /// One application of S.
  [[nodiscard]] Point step(const Point& p) const;
};

using Observable = std::function<cplx(const Point&)>;

Observable observable_ex();
Observable observable_ey();
Observable observable_ez(int j = 1);
Observable observable_const(cplx c);

/// (1/N) sum_{n<N} w_n prod_{i=1}^k f_i(S^{in} x0), orbit points by closed
/// form. Summed left to right.
cplx weighted_multiple_average(const Sequence& w, const DynSystem& sys, const std::vector<Observable>& fs,
                               const Point& x0, index_t N);

/// The same average with S^{in} x0 produced by iterating the map.
cplx weighted_multiple_average_iterated(const Sequence& w, const DynSystem& sys, const std::vector<Observable>& fs,
                                        const Point& x0, index_t N);

struct CauchyReport {
  std::vector<index_t> Ns;
  std::vector<cplx> values;
  /// deltas[i] = |values[i + 1] - values[i]|.
  std::vector<double> deltas;
  double threshold = 0.01;
  /// Last delta below threshold. Advisory; the raw deltas are the data.
  bool converged = false;

  [[nodiscard]] bool deltas_decreasing() const;
};

/// The weighted average at every N in `Ns` (strictly increasing).
CauchyReport cauchy_scan(const Sequence& w, const DynSystem& sys, const std::vector<Observable>& fs,
                         const Point& x0, const std::vector<index_t>& Ns, double threshold = 0.01);

/// N = N0, 2 N0, ..., N0 2^{count-1}.
std::vector<index_t> doubling_grid(index_t N0, int count);

/// |(1/N) sum_{n<N} phi_n e(n j / N)| for every bin j.
std::vector<double> wiener_wintner_scan(const Sequence& phi, index_t N);

}  // namespace unif
