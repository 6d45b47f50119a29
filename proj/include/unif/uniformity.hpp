#pragma once

#include <string>
#include <vector>

#include "unif/sequence.hpp"

namespace unif {

/// Parameters of a local box norm: order k, h-grid [0, H)^k, averaging
/// interval I and domain mode.
///
/// Margin contract: in Interval mode every operand must be valid on
/// [I.lo, I.hi + k H). In Cyclic(N) mode I must be the residue window
/// [origin, origin + N) and operands must be valid there.
struct BoxParams {
  int k = 2;
  index_t H = 1;
  Interval I{0, 1};
  DomainMode mode;

  static BoxParams interval(int k, index_t H, Interval I);
  static BoxParams cyclic(int k, index_t H, index_t N, index_t origin = 0);

  void validate() const;
  /// Index window the operands must cover.
  [[nodiscard]] Interval margin() const;
  /// Cyclic with H a multiple of N: the h-average runs over the whole group
  /// and the powered norm is a sum of squared magnitudes.
  [[nodiscard]] bool full_group() const;
};

struct NormReport {
  double value = 0.0;
  double powered = 0.0;
  /// Real part of the h-average before clamping.
  double raw_powered = 0.0;
  cplx raw;
  BoxParams params;
  /// |average of c_h over the shell max_i h_i = H - 1|.
  double h_tail = 0.0;
  bool clamped = false;
  std::string method;
};

/// (1/|I|) sum_{n in I} prod_eps C^{|eps|} a_{n + eps.h}; h.size() == k.
cplx box_correlation(const Sequence& a, const std::vector<index_t>& h, const BoxParams& p);

enum class BoxMethod { Auto, Direct, Fft };

/// powered = Re (1/H^k) sum_{h in [0,H)^k} c_h, value = powered^{1/2^k}.
///
/// Negative finite averages are clamped to 0 and flagged; a NegativityViolation
/// is raised only below -1e-9 when the quantity is a sum of squares
/// (full_group()). Auto picks the DFT path for k = 2 in cyclic mode.
NormReport box_norm(const Sequence& a, const BoxParams& p, BoxMethod method = BoxMethod::Auto);

/// Same quantity from samples already laid out for the direct kernel:
/// `values` covers I followed by k (H - 1) margin entries.
NormReport box_norm_samples(const std::vector<cplx>& values, const BoxParams& p);

struct ProxyReport {
  NormReport best;
  Interval argmax;
  index_t windows = 0;
};

enum class WindowMode { Interval, Cyclic };

/// Max of box_norm over windows [M, M + window_len), M = lo, lo + stride, ...
/// while the window fits in search_range. Cyclic treats each window as
/// Z/window_len with origin M. The result is a lower bound for the true
/// uniformity seminorm, not an estimate of it.
ProxyReport uniformity_norm_proxy(const Sequence& a, const Interval& search_range, index_t window_len,
                                  index_t stride, int k, index_t H, WindowMode mode = WindowMode::Interval);

/// ((1/H) sum_{h<H} Re c_h)^{1/2}, summed directly from the k = 1
/// correlations (Interval mode).
double u1_norm(const Sequence& a, const Interval& I, index_t H);

struct VdcResult {
  double lhs = 0.0;
  double rhs = 0.0;
  [[nodiscard]] bool holds(double slack = 1e-12) const { return lhs <= rhs + slack; }
};

/// lhs = |(1/|I|) sum_I a_n|^2,
/// rhs = 4H/|I| + |sum_{|h|<=H} ((H-|h|)/H^2) (1/|I|) sum_I a_{n+h} conj(a_n)|.
/// Needs sup_bound <= 1 and validity on [I.lo - H, I.hi + H).
VdcResult vdc_bound(const Sequence& a, const Interval& I, index_t H);

struct CsgResult {
  double lhs = 0.0;
  double rhs = 0.0;
  /// False in Interval mode, where edge effects can break the inequality.
  bool exact = true;
  std::string note;
  [[nodiscard]] bool holds(double slack = 1e-9) const { return lhs <= rhs + slack; }
};

/// lhs = |(1/H^k) sum_h (1/|I|) sum_n prod_eps C^{|eps|} a(eps)_{n+eps.h}|,
/// rhs = prod_eps box_norm(a(eps)).value. seqs[e] carries eps with bit i =
/// eps_{i+1}.
CsgResult csg_check(const std::vector<Sequence>& seqs, const BoxParams& p);

/// The 2^k-fold cube average (complex, unclamped) for an arbitrary family.
cplx cube_pairing(const std::vector<Sequence>& seqs, const BoxParams& p);

/// Values laid out for the direct kernel: I plus k (H - 1) margin entries,
/// wrapped in Cyclic mode. Checks the margin contract.
std::vector<cplx> cube_samples(const Sequence& a, const BoxParams& p);

}  // namespace unif
