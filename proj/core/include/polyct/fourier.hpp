#pragma once

#include <complex>
#include <span>
#include <vector>

namespace polyct {

// One-sided power spectrum by direct DFT summation:
// S(k) = |sum_t x_t exp(-2 pi i k t / N)|^2 / N for k = 0..floor(N/2).
// Satisfies Parseval: sum x^2 = S(0) + S(N/2 if N even) + 2 * sum interior.
std::vector<double> power_spectrum(std::span<const double> xs);

// In-place complex FFT, any length (radix-2 with Bluestein fallback).
void fft(std::vector<std::complex<double>>& a, bool inverse);

// Row-column 2-D FFT of a width x height row-major buffer.
void fft2(std::vector<std::complex<double>>& a, int width, int height,
          bool inverse);

}  // namespace polyct
