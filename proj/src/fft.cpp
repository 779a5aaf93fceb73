#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <new>
#include <utility>

namespace dmax::detail {

namespace {

std::mutex plan_mutex;

// Plans are made on scratch buffers and executed on caller data via the
// new-array interface, so one plan per (n, direction) is enough.
fftw_plan plan_for(std::size_t n, bool forward) {
    static std::map<std::pair<std::size_t, bool>, fftw_plan> plans;
    std::lock_guard lock(plan_mutex);
    const auto key = std::make_pair(n, forward);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    auto scratch = make_buffer(n * n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.get());
    const int sn = static_cast<int>(n);
    fftw_plan plan = fftw_plan_dft_2d(sn, sn, p, p, forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
    if (plan == nullptr) throw std::bad_alloc();
    plans.emplace(key, plan);
    return plan;
}

}  // namespace

void FftwFree::operator()(std::complex<double>* p) const noexcept { fftw_free(p); }

ComplexBuffer make_buffer(std::size_t count) {
    auto* raw = static_cast<std::complex<double>*>(fftw_malloc(sizeof(std::complex<double>) * count));
    if (raw == nullptr) throw std::bad_alloc();
    for (std::size_t i = 0; i < count; ++i) new (raw + i) std::complex<double>(0.0, 0.0);
    return ComplexBuffer(raw);
}

void fft2(std::complex<double>* data, std::size_t n, bool forward) {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(n, forward), p, p);
}

}  // namespace dmax::detail
