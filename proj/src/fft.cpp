#include "pwm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace pwm {
namespace {

std::mutex plan_mutex;

// FFTW_ESTIMATE|FFTW_UNALIGNED: deterministic planning, reusable on any buffer.
fftw_plan get_plan3(int n0, int n1, int n2, int sign, fftw_complex* data) {
    static std::map<std::tuple<int, int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(n0, n1, n2, sign);
    auto it = cache.find(key);
    if (it == cache.end()) {
        fftw_plan p = fftw_plan_dft_3d(n0, n1, n2, data, data, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        it = cache.emplace(key, p).first;
    }
    return it->second;
}

fftw_plan get_plan1(int n, int sign, fftw_complex* data) {
    static std::map<std::tuple<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(n, sign);
    auto it = cache.find(key);
    if (it == cache.end()) {
        fftw_plan p = fftw_plan_dft_1d(n, data, data, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        it = cache.emplace(key, p).first;
    }
    return it->second;
}

} // namespace

void dft3(std::complex<double>* data, int n0, int n1, int n2, int sign) {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_plan p = get_plan3(n0, n1, n2, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, d);
    fftw_execute_dft(p, d, d);
}

void dft1(std::complex<double>* data, int n, int sign) {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_plan p = get_plan1(n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, d);
    fftw_execute_dft(p, d, d);
}

} // namespace pwm
