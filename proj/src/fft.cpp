#include "reso/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace reso {
namespace {

std::mutex g_plan_mutex;

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// FFTW plan creation is not thread-safe; execution with _ESTIMATE plans on
// caller-owned arrays is. Plans live for the process lifetime.
PlanPair& plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> scratch_in(n), scratch_out(n);
    PlanPair p;
    p.forward = fftw_plan_dft_1d(static_cast<int>(n),
                                 reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                 reinterpret_cast<fftw_complex*>(scratch_out.data()),
                                 FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_1d(static_cast<int>(n),
                                  reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                  reinterpret_cast<fftw_complex*>(scratch_out.data()),
                                  FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, p).first->second;
}

std::vector<std::complex<double>> execute(const std::vector<std::complex<double>>& in,
                                          bool forward) {
    if (in.empty()) return {};
    std::vector<std::complex<double>> buf(in);
    std::vector<std::complex<double>> out(in.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        PlanPair& p = plans_for(in.size());
        plan = forward ? p.forward : p.backward;
    }
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    if (!forward) {
        const double scale = 1.0 / static_cast<double>(in.size());
        for (auto& v : out) v *= scale;
    }
    return out;
}

} // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in) {
    return execute(in, true);
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& in) {
    return execute(in, false);
}

std::vector<std::complex<double>> fft_real(const std::vector<double>& in) {
    std::vector<std::complex<double>> cplx(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) cplx[i] = in[i];
    return fft(cplx);
}

std::vector<double> ifft_to_real(const std::vector<std::complex<double>>& in) {
    auto cplx = ifft(in);
    std::vector<double> out(cplx.size());
    for (std::size_t i = 0; i < cplx.size(); ++i) out[i] = cplx[i].real();
    return out;
}

} // namespace reso
