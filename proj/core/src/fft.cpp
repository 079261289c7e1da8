#include "mf/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace mf::fft {

namespace {
// FFTW planning is not thread-safe; execution with a private plan is.
std::mutex planner_mutex;
}  // namespace

void transform(std::complex<double>* data, int n, int howmany, int stride, int dist,
               Direction dir) {
    if (n <= 0 || howmany <= 0) return;
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, stride, dist, buf, nullptr, stride,
                                  dist, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
}

}  // namespace mf::fft
