#pragma once

#include <complex>
#include <span>
#include <vector>

namespace noiseplane::detail {

/// Forward real-to-complex DFT: X_k = sum_j x_j exp(-2 pi i jk/n), k = 0..n/2.
std::vector<std::complex<double>> real_fft(std::span<const double> x);

/// Inverse of real_fft for a series of length n, without the 1/n factor:
/// x_j = sum over the full Hermitian-extended spectrum of X_k exp(2 pi i jk/n).
std::vector<double> inverse_real_fft(std::span<const std::complex<double>> spectrum,
                                     std::size_t n);

}  // namespace noiseplane::detail
