#include "hbvp/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace hbvp {

namespace {

// the FFTW planner is not thread-safe; execution of distinct plans is
std::mutex planner_mutex;

std::vector<cplx> transform(std::span<const cplx> in, int sign) {
    const int n = static_cast<int>(in.size());
    std::vector<cplx> out(in.size());
    if (in.empty()) return out;
    std::vector<cplx> buffer(in.begin(), in.end());
    auto* src = reinterpret_cast<fftw_complex*>(buffer.data());
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, src, dst, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

std::vector<cplx> dft(std::span<const cplx> x) {
    auto out = transform(x, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(x.size());
    std::for_each(out.begin(), out.end(), [scale](cplx& v) { v *= scale; });
    return out;
}

std::vector<cplx> idft(std::span<const cplx> coefficients) { return transform(coefficients, FFTW_BACKWARD); }

}  // namespace hbvp
