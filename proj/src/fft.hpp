#pragma once

// Thin FFTW wrapper: unnormalized 2D complex transforms of n x n row-major data.

#include <complex>
#include <cstddef>
#include <memory>

namespace dmax::detail {

struct FftwFree {
    void operator()(std::complex<double>* p) const noexcept;
};

using ComplexBuffer = std::unique_ptr<std::complex<double>[], FftwFree>;

ComplexBuffer make_buffer(std::size_t count);

/// In-place forward (e^{-i}) or backward (e^{+i}) transform; no scaling.
void fft2(std::complex<double>* data, std::size_t n, bool forward);

}  // namespace dmax::detail
