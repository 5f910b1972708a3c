#pragma once

#include <complex>
#include <span>
#include <vector>

namespace browmad::fft {

using Complex = std::complex<double>;

/// In-place unnormalized forward DFT, X[k] = sum_j x[j] exp(-2 pi i jk / n),
/// for any n >= 1. Smooth lengths go through mixed-radix Cooley-Tukey; lengths
/// with a prime factor above the direct-butterfly cutoff use Bluestein's chirp-z
/// algorithm.
void forward(std::span<Complex> data);

/// Inverse of forward() including the 1/n factor.
void inverse(std::span<Complex> data);

/// 2D forward transform of a row-major rows x cols grid (rows then columns).
void forward_2d(std::span<Complex> data, int rows, int cols);

}  // namespace browmad::fft
