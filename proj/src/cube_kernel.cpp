#include "cube_kernel.hpp"

#include <algorithm>
#include <utility>

#include "unif/parallel.hpp"

namespace unif::detail {

namespace {

// out[i] = a[i] * conj(b[i]) for i < n.
void mul_conj(const cplx* a, const cplx* b, cplx* out, index_t n) {
  const auto* x = reinterpret_cast<const double*>(a);
  const auto* y = reinterpret_cast<const double*>(b);
  auto* o = reinterpret_cast<double*>(out);
  for (index_t i = 0; i < n; ++i) {
    const double ar = x[2 * i];
    const double ai = x[2 * i + 1];
    const double br = y[2 * i];
    const double bi = y[2 * i + 1];
    o[2 * i] = ar * br + ai * bi;
    o[2 * i + 1] = ai * br - ar * bi;
  }
}

// out[i] += a[i] * conj(b[i]).
void add_mul_conj(const cplx* a, const cplx* b, cplx* out, index_t n) {
  const auto* x = reinterpret_cast<const double*>(a);
  const auto* y = reinterpret_cast<const double*>(b);
  auto* o = reinterpret_cast<double*>(out);
  for (index_t i = 0; i < n; ++i) {
    const double ar = x[2 * i];
    const double ai = x[2 * i + 1];
    const double br = y[2 * i];
    const double bi = y[2 * i + 1];
    o[2 * i] += ar * br + ai * bi;
    o[2 * i + 1] += ai * br - ar * bi;
  }
}

using Buffers = std::vector<std::vector<cplx>>;

// h1 values are split into this many contiguous chunks, whatever the
// thread count.
constexpr index_t kChunks = 16;

// Scratch for one h_1 task: level l (1-based) owns up to 2^{k-l} buffers.
struct Workspace {
  std::vector<Buffers> levels;

  Workspace(int k, index_t len, index_t H) : levels(static_cast<std::size_t>(k)) {
    for (int l = 1; l < k; ++l) {
      const std::size_t count = std::size_t{1} << (k - l);
      const auto n = static_cast<std::size_t>(len + (k - l) * (H - 1));
      levels[static_cast<std::size_t>(l)].assign(count, std::vector<cplx>(n));
    }
  }
};

// One reduction step g_m(n) = f_{2m}(n) conj(f_{2m+1}(n + h)), skipping
// repeated pointer pairs.
std::vector<const cplx*> reduce_level(const std::vector<const cplx*>& in, index_t h, index_t out_len,
                                      Buffers& bufs) {
  const std::size_t m = in.size() / 2;
  std::vector<const cplx*> out(m);
  std::vector<std::pair<const cplx*, const cplx*>> done;
  done.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::pair key{in[2 * i], in[2 * i + 1]};
    const auto it = std::find(done.begin(), done.end(), key);
    if (it != done.end()) {
      out[i] = out[static_cast<std::size_t>(it - done.begin())];
      done.push_back(key);
      continue;
    }
    cplx* dst = bufs[i].data();
    mul_conj(key.first, key.second + h, dst, out_len);
    out[i] = dst;
    done.push_back(key);
  }
  return out;
}

struct ScalarSink {
  cplx total;
  cplx shell;
  index_t len;

  void last(const cplx* a, const cplx* b, index_t H, bool on_shell, index_t shell_h) {
    for (index_t h = 0; h < H; ++h) {
      const cplx s = dot_conj(a, b + h, len);
      total += s;
      if (on_shell || h == shell_h) shell += s;
    }
  }
};

struct PointwiseSink {
  cplx* acc;
  index_t len;

  void last(const cplx* a, const cplx* b, index_t H, bool /*on_shell*/, index_t /*shell_h*/) {
    for (index_t h = 0; h < H; ++h) add_mul_conj(a, b + h, acc, len);
  }
};

template <class Sink>
void descend(int level, const std::vector<const cplx*>& in, int k, index_t len, index_t H, bool on_shell,
             Workspace& ws, Sink& sink) {
  if (in.size() == 2) {
    sink.last(in[0], in[1], H, on_shell, H - 1);
    return;
  }
  const index_t out_len = len + (k - level) * (H - 1);
  for (index_t h = 0; h < H; ++h) {
    const auto next = reduce_level(in, h, out_len, ws.levels[static_cast<std::size_t>(level)]);
    descend(level + 1, next, k, len, H, on_shell || h == H - 1, ws, sink);
  }
}

// Runs the levels below h_1 for one fixed h_1.
template <class Sink>
void run_h1(const std::vector<const cplx*>& slots, int k, index_t len, index_t H, index_t h1, Workspace& ws,
            Sink& sink) {
  if (k == 1) {
    // Single coordinate: a one-term sum at this h1.
    sink.last(slots[0], slots[1] + h1, 1, h1 == H - 1, -1);
    return;
  }
  const auto next = reduce_level(slots, h1, len + (k - 1) * (H - 1), ws.levels[1]);
  descend(2, next, k, len, H, h1 == H - 1, ws, sink);
}

void check_args(std::span<const cplx* const> slots, index_t len, int k, index_t H) {
  if (k < 1 || k > 20) throw PreconditionError("box parameters: k must be in [1, 20]");
  if (H < 1) throw PreconditionError("box parameters: H must be >= 1");
  if (len < 1) throw PreconditionError("box parameters: |I| must be >= 1");
  if (slots.size() != (std::size_t{1} << k)) throw PreconditionError("cube kernel: need 2^k sequences");
}

}  // namespace

cplx dot_conj(const cplx* a, const cplx* b, index_t len) {
  const auto* x = reinterpret_cast<const double*>(a);
  const auto* y = reinterpret_cast<const double*>(b);
  // Four interleaved lanes, combined in a fixed order at the end.
  double re[4] = {0.0, 0.0, 0.0, 0.0};
  double im[4] = {0.0, 0.0, 0.0, 0.0};
  const index_t body = len - len % 4;
  for (index_t i = 0; i < body; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double ar = x[2 * (i + l)];
      const double ai = x[2 * (i + l) + 1];
      const double br = y[2 * (i + l)];
      const double bi = y[2 * (i + l) + 1];
      re[l] += ar * br + ai * bi;
      im[l] += ai * br - ar * bi;
    }
  }
  for (index_t i = body; i < len; ++i) {
    const double ar = x[2 * i];
    const double ai = x[2 * i + 1];
    const double br = y[2 * i];
    const double bi = y[2 * i + 1];
    re[0] += ar * br + ai * bi;
    im[0] += ai * br - ar * bi;
  }
  return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

CubeSum cube_average(std::span<const cplx* const> slots, index_t len, int k, index_t H) {
  check_args(slots, len, k, H);
  const std::vector<const cplx*> in(slots.begin(), slots.end());
  const auto count = static_cast<std::size_t>(H);
  std::vector<cplx> totals(count);
  std::vector<cplx> shells(count);
  const index_t chunks = std::min(H, kChunks);
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    Workspace ws(k, len, H);
    const index_t begin = H * static_cast<index_t>(c) / chunks;
    const index_t end = H * static_cast<index_t>(c + 1) / chunks;
    for (index_t h1 = begin; h1 < end; ++h1) {
      ScalarSink sink{{}, {}, len};
      run_h1(in, k, len, H, h1, ws, sink);
      totals[static_cast<std::size_t>(h1)] = sink.total;
      shells[static_cast<std::size_t>(h1)] = sink.shell;
    }
  });

  cplx total;
  cplx shell;
  for (std::size_t i = 0; i < count; ++i) {
    total += totals[i];
    shell += shells[i];
  }
  const double cells = std::pow(static_cast<double>(H), k);
  const double shell_cells = cells - std::pow(static_cast<double>(H - 1), k);
  CubeSum out;
  out.average = total / (cells * static_cast<double>(len));
  out.shell_average = shell / (shell_cells * static_cast<double>(len));
  out.shell_count = static_cast<index_t>(shell_cells);
  return out;
}

std::vector<cplx> cube_pointwise(std::span<const cplx* const> slots, index_t len, int k, index_t H) {
  check_args(slots, len, k, H);
  const std::vector<cplx> ones(static_cast<std::size_t>(len + k * (H - 1)), cplx{1.0, 0.0});
  std::vector<const cplx*> in(slots.begin(), slots.end());
  in[0] = ones.data();

  const index_t chunks = std::min(H, kChunks);
  std::vector<std::vector<cplx>> partial(static_cast<std::size_t>(chunks));
  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    auto& acc = partial[c];
    acc.assign(static_cast<std::size_t>(len), cplx{});
    const index_t begin = H * static_cast<index_t>(c) / chunks;
    const index_t end = H * static_cast<index_t>(c + 1) / chunks;
    Workspace ws(k, len, H);
    PointwiseSink sink{acc.data(), len};
    for (index_t h1 = begin; h1 < end; ++h1) run_h1(in, k, len, H, h1, ws, sink);
  });

  std::vector<cplx> out(static_cast<std::size_t>(len));
  for (const auto& p : partial) {
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += p[n];
  }
  const double cells = std::pow(static_cast<double>(H), k);
  for (auto& v : out) v /= cells;
  return out;
}

}  // namespace unif::detail
