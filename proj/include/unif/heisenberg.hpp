#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "unif/sequence.hpp"

namespace unif {

/// Element of the 3-dimensional Heisenberg group, the matrix
/// [[1, x, z], [0, 1, y], [0, 0, 1]].
///
/// Group law: (x, y, z) * (x', y', z') = (x + x', y + y', z + z' + x y').
struct HeisElem {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const HeisElem&, const HeisElem&) = default;
};

/// Canonical representative of a coset g Gamma, every coordinate in [0, 1).
struct HeisPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const HeisPoint&, const HeisPoint&) = default;
};

/// Integer lattice element (p, q, r) of Gamma.
struct LatticeElem {
  index_t p = 0;
  index_t q = 0;
  index_t r = 0;
};

HeisElem heis_mul(const HeisElem& g, const HeisElem& h);
HeisElem heis_inv(const HeisElem& g);

/// tau^n = (n x, n y, n z + C(n,2) x y), valid for negative n.
HeisElem heis_pow(const HeisElem& tau, index_t n);

struct Reduction {
  HeisPoint point;
  LatticeElem lattice;  // the (p, q, r) that was right-multiplied
};

/// Right-multiply by lattice elements in the fixed order: q = -floor(y)
/// (z += x q), then p = -floor(x), then r = -floor(z).
Reduction heis_reduce(const HeisElem& g);

inline HeisElem lift(const HeisPoint& p) { return {p.x, p.y, p.z}; }

/// One step of the nilsystem: x -> tau x.
HeisPoint heis_step(const HeisElem& tau, const HeisPoint& x);

/// T^n x computed through the closed-form power.
HeisPoint heis_orbit_point(const HeisElem& tau, const HeisPoint& x0, index_t n);

/// T^n x0 from the bracket-polynomial closed form of the reduction:
///   x = {n a + x0},  y = {n b + y0},
///   z = {z0 + n c + C(n,2) a b + n a y0 - (n a + x0) floor(n b + y0)}.
/// Products with integers are reduced mod 1 term by term, so this path
/// shares no arithmetic with heis_pow / heis_reduce.
HeisPoint heis_closed_form(const HeisElem& tau, const HeisPoint& x0, index_t n);

using NilFunction = std::function<cplx(const HeisPoint&)>;

/// Registered characters on canonical representatives: e(j z), e(x), e(y).
/// e(z) is discontinuous across the fundamental-domain boundary but
/// Riemann integrable.
NilFunction character_ez(int j = 1);
NilFunction character_ex();
NilFunction character_ey();

/// a_n = f(T^n x0) via heis_pow and heis_reduce. The valid range is `range`
/// (or unbounded when std::nullopt). `sup_f` is the declared bound on |f|.
Sequence nilsequence(const HeisElem& tau, const HeisPoint& x0, NilFunction f, std::optional<Interval> range,
                     double sup_f = 1.0);

/// The 2^k points T^{eps.h} x, entry e holding eps with bit i = eps_{i+1}.
std::vector<HeisPoint> cube_orbit(const HeisPoint& x, const HeisElem& tau, const std::vector<index_t>& h);

}  // namespace unif
