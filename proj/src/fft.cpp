#include "cantor/fft.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

// The FFTW planner is not thread-safe.
std::mutex planner_mutex;

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(p);
  }
};

std::vector<std::complex<double>> run(std::vector<std::complex<double>> x, int sign) {
  if (x.empty()) return x;
  if (x.size() > static_cast<std::size_t>(1) << 30) fail(ErrorKind::Resource, "transform too large");
  auto* data = reinterpret_cast<fftw_complex*>(x.data());
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex);
    // FFTW_ESTIMATE keeps the plan, hence the output bits, independent of timing.
    plan.reset(fftw_plan_dft_1d(static_cast<int>(x.size()), data, data, sign, FFTW_ESTIMATE));
  }
  if (!plan) fail(ErrorKind::Resource, "FFTW could not create a plan");
  fftw_execute(plan.get());
  return x;
}

}  // namespace

std::vector<std::complex<double>> dft_forward(std::vector<std::complex<double>> x) {
  return run(std::move(x), FFTW_FORWARD);
}

std::vector<std::complex<double>> dft_backward(std::vector<std::complex<double>> x) {
  return run(std::move(x), FFTW_BACKWARD);
}

}  // namespace cantor
