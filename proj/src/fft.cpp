#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

#include "noiseplane/error.hpp"

namespace noiseplane::detail {

namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t n) {
  auto* raw = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
  if (raw == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(raw);
}

}  // namespace

std::vector<std::complex<double>> real_fft(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  const std::size_t bins = n / 2 + 1;
  auto in = allocate<double>(n);
  auto out = allocate<fftw_complex>(bins);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  if (!plan) throw Error(ErrorCode::InvalidArgument, "fftw planning failed");
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(bins);
  for (std::size_t k = 0; k < bins; ++k) result[k] = {out[k][0], out[k][1]};
  return result;
}

std::vector<double> inverse_real_fft(std::span<const std::complex<double>> spectrum,
                                     std::size_t n) {
  if (n == 0) return {};
  const std::size_t bins = n / 2 + 1;
  if (spectrum.size() != bins) {
    throw Error(ErrorCode::LengthMismatch, "spectrum must hold n/2+1 bins");
  }
  auto in = allocate<fftw_complex>(bins);
  auto out = allocate<double>(n);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  if (!plan) throw Error(ErrorCode::InvalidArgument, "fftw planning failed");
  for (std::size_t k = 0; k < bins; ++k) {
    in[k][0] = spectrum[k].real();
    in[k][1] = spectrum[k].imag();
  }
  fftw_execute(plan.get());
  return std::vector<double>(out.get(), out.get() + n);
}

}  // namespace noiseplane::detail
