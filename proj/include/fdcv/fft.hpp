#pragma once

#include <complex>
#include <span>
#include <vector>

// Thin wrapper over FFTW. Both directions are unnormalized:
//   forward:  X_k = sum_t x_t exp(-2 pi i k t / n)
//   backward: x_t = sum_k X_k exp(+2 pi i k t / n)
// Any length is accepted; plans are cached per (length, direction) and are
// safe to execute concurrently from multiple threads.
namespace fdcv::fft {

using cplx = std::complex<double>;

void forward_inplace(std::span<cplx> data);
void backward_inplace(std::span<cplx> data);

[[nodiscard]] std::vector<cplx> forward(std::span<const double> x);
[[nodiscard]] std::vector<cplx> forward(std::span<const cplx> x);
[[nodiscard]] std::vector<cplx> backward(std::span<const cplx> x);

}  // namespace fdcv::fft
