#include "fourier.hpp"

#include <fftw3.h>

#include <mutex>

namespace twinterf::detail {
namespace {

// FFTW planning touches global state; execution on a private plan does not.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void run(std::vector<std::complex<double>>& data, int sign) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

void dft_forward(std::vector<std::complex<double>>& data) { run(data, FFTW_FORWARD); }

void dft_backward(std::vector<std::complex<double>>& data) { run(data, FFTW_BACKWARD); }

}  // namespace twinterf::detail
