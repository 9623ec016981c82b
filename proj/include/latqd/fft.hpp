#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace latqd {

std::size_t next_power_of_two(std::size_t n);

/// In-place iterative radix-2 transform. Forward computes
/// X[m] = sum_a x[a] e^{-2 pi i m a / L}; inverse uses the opposite sign and
/// divides by L. Throws InvalidArgument unless L is a power of two.
void fft_radix2(std::span<std::complex<double>> data, bool inverse);

}  // namespace latqd
