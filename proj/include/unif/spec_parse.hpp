#pragma once

#include <string>
#include <string_view>

#include "unif/ergodic.hpp"
#include "unif/generators.hpp"

namespace unif {

/// Sequence from a generator spec string:
///
///   exp:T                      e(n T)
///   quad:A                     e(A n^2)
///   poly:C0,C1,...             e(C0 + C1 n + ...)
///   trig:[t=T,l=L;t=T,l=L]     sum of L e(n T); L may be complex (0.5-0.25i)
///   tm:pm | tm:01              Thue-Morse, +-1 or 0/1
///   rad:SEED                   random signs
///   block:geoRxJ | block:custom=N1,N2,...
///   genpoly:frac(EXPR) | genpoly:e(EXPR)   quotes around the body are optional
///   heis:tau=(a,b,c);x0=(x,y,z);f=ez|ex|ey|e<j>z
///   const:C                    constant (complex allowed)
///   delta:M                    1 at n = M, 0 elsewhere
///
/// Every real number may be a constant expression in the generalized
/// polynomial grammar without n (e.g. 177/4096, sqrt2/2, phi-1).
Sequence parse_generator(std::string_view spec);

/// Constant real expression.
double parse_real(std::string_view text);
/// Real or complex literal: 0.5, -2i, 0.5+0.25i.
cplx parse_complex(std::string_view text);

/// rot:ALPHA | skew:ALPHA | heis:a,b,c
DynSystem parse_system(std::string_view spec);
/// ex | ey | ez | e<j>z | const:C
Observable parse_observable(std::string_view spec);
/// "x,y,z" with 1 to 3 entries.
Point parse_point(std::string_view text);
/// "lo:hi", half-open.
Interval parse_range(std::string_view text);

}  // namespace unif
