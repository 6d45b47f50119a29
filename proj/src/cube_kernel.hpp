#pragma once

#include <span>
#include <vector>

#include "unif/types.hpp"

namespace unif::detail {

/// Parallelepiped averages over a direct h-grid.
///
/// `slots` holds 2^k pointers, one per eps in {0,1}^k (bit i of the slot
/// index is eps_{i+1}); each must reference at least len + k (H - 1)
/// values. Slots may alias, and aliasing is exploited: the product over the
/// cube is reduced one coordinate at a time,
///
///   g_m(n) = f_{2m}(n) * conj(f_{2m+1}(n + h_i)),
///
/// and identical pointer pairs are only multiplied once. For a single
/// sequence this leaves one buffer per level.
///
/// Summation: a fixed four-lane split over n for every h, then over h_2..h_k in
/// lexicographic order inside one partial per h_1, then the H partials left
/// to right. The partition does not depend on the thread count.
struct CubeSum {
  cplx average;          // (1/H^k) sum_h (1/len) sum_n prod
  cplx shell_average;    // same, restricted to h with max_i h_i = H - 1
  index_t shell_count = 0;
};

CubeSum cube_average(std::span<const cplx* const> slots, index_t len, int k, index_t H);

/// Pointwise version with slot 0 left out of the product:
/// out[n] = (1/H^k) sum_h prod_{eps != 0} C^{|eps|} f_eps(n + eps.h).
/// Slot 0 is ignored.
std::vector<cplx> cube_pointwise(std::span<const cplx* const> slots, index_t len, int k, index_t H);

/// sum_{i < len} a[i] * conj(b[i]) over four interleaved lanes.
cplx dot_conj(const cplx* a, const cplx* b, index_t len);

}  // namespace unif::detail
