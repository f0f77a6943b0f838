#include "gipulse/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace gipulse::fft {
namespace {

// FFTW plan creation mutates global planner state; execution does not.
// Plans are cached per (length, direction) and executed via the new-array
// interface, which is safe to call concurrently with distinct buffers.
std::mutex g_planner_mutex;

fftw_plan get_plan(std::size_t n, int sign) {
    static std::unordered_map<std::uint64_t, fftw_plan> cache;
    const std::uint64_t key = (static_cast<std::uint64_t>(n) << 1) | (sign == FFTW_BACKWARD);
    std::lock_guard lock(g_planner_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw planning failed");
    cache.emplace(key, plan);
    return plan;
}

std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& in, int sign) {
    if (in.empty()) throw std::invalid_argument("fft: empty input");
    std::vector<std::complex<double>> out(in.size());
    fftw_plan plan = get_plan(in.size(), sign);
    // in is not modified: out-of-place c2c with distinct buffers.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, src, dst);
    return out;
}

} // namespace

std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& in) {
    return transform(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>>& in) {
    auto out = transform(in, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(in.size());
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<std::complex<double>> forward_real_padded(const std::vector<double>& in,
                                                      std::size_t n_out) {
    if (n_out < in.size()) throw std::invalid_argument("fft: n_out smaller than input");
    std::vector<std::complex<double>> buf(n_out, {0.0, 0.0});
    for (std::size_t i = 0; i < in.size(); ++i) buf[i] = {in[i], 0.0};
    return forward(buf);
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace gipulse::fft
