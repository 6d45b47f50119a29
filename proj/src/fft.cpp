#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

namespace unif::detail {

namespace {
// The FFTW planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void FftBuffer::Free::operator()(cplx* p) const { fftw_free(p); }

FftBuffer::FftBuffer(std::size_t n) : n_(n) {
  auto* raw = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * (n == 0 ? 1 : n)));
  if (raw == nullptr) throw std::bad_alloc();
  ptr_.reset(raw);
  for (std::size_t i = 0; i < n; ++i) raw[i] = cplx{0.0, 0.0};
}

Dft::Dft(std::size_t n, Direction dir) : n_(n) {
  if (n == 0) throw PreconditionError("Dft: length must be >= 1");
  FftBuffer in(n);
  FftBuffer out(n);
  std::lock_guard lock(planner_mutex());
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                           reinterpret_cast<fftw_complex*>(out.data()),
                           dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  if (plan_ == nullptr) throw Error("FFTW failed to create a plan");
}

Dft::~Dft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void Dft::execute(const FftBuffer& in, FftBuffer& out) const {
  if (in.size() != n_ || out.size() != n_) throw PreconditionError("Dft: buffer size mismatch");
  // fftw_execute_dft does not modify the input for out-of-place complex plans.
  fftw_execute_dft(static_cast<fftw_plan>(plan_), reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace unif::detail
