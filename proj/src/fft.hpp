#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "unif/types.hpp"

namespace unif::detail {

/// fftw_malloc-backed complex buffer. Every transform input/output is one of
/// these so all executions of a plan see the same alignment (FFTW may pick
/// different codelets otherwise, which would break bitwise reproducibility).
class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n);
  FftBuffer(FftBuffer&&) noexcept = default;
  FftBuffer& operator=(FftBuffer&&) noexcept = default;

  [[nodiscard]] cplx* data() { return ptr_.get(); }
  [[nodiscard]] const cplx* data() const { return ptr_.get(); }
  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::span<cplx> span() { return {ptr_.get(), n_}; }
  cplx& operator[](std::size_t i) { return ptr_[i]; }
  const cplx& operator[](std::size_t i) const { return ptr_[i]; }

 private:
  struct Free {
    void operator()(cplx* p) const;
  };
  std::unique_ptr<cplx[], Free> ptr_;
  std::size_t n_ = 0;
};

/// Unnormalized length-N DFT. Forward: X_j = sum_n x_n e(-nj/N);
/// Backward: x_n = sum_j X_j e(+nj/N). Planned with FFTW_ESTIMATE, which is
/// deterministic; execute() is safe to call concurrently on distinct buffers.
class Dft {
 public:
  enum class Direction { Forward, Backward };

  Dft(std::size_t n, Direction dir);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  void execute(const FftBuffer& in, FftBuffer& out) const;
  [[nodiscard]] std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  void* plan_ = nullptr;
};

}  // namespace unif::detail
