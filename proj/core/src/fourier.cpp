#include "polyct/fourier.hpp"

#include <cmath>

#include "polyct/error.hpp"

namespace polyct {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / double(len) * (inverse ? 1.0 : -1.0);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& v : a) v /= double(n);
}

// Bluestein chirp-z: express the length-n DFT as a convolution and evaluate
// it with power-of-two FFTs of length >= 2n - 1.
void fft_bluestein(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small.
    const double ang = kPi * double((k * k) % (2 * n)) / double(n) * sign;
    chirp[k] = {std::cos(ang), std::sin(ang)};
  }

  std::vector<std::complex<double>> x(m, {0.0, 0.0}), y(m, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = std::conj(chirp[k]);
    if (k != 0) y[m - k] = std::conj(chirp[k]);
  }
  fft_pow2(x, false);
  fft_pow2(y, false);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  fft_pow2(x, true);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  if (inverse)
    for (auto& v : a) v /= double(n);
}

}  // namespace

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  if (a.empty()) throw ContractError("fft: empty input");
  if (a.size() == 1) return;
  if (is_pow2(a.size()))
    fft_pow2(a, inverse);
  else
    fft_bluestein(a, inverse);
}

void fft2(std::vector<std::complex<double>>& a, int width, int height,
          bool inverse) {
  if (width <= 0 || height <= 0 ||
      a.size() != std::size_t(width) * std::size_t(height))
    throw ContractError("fft2: buffer does not match dimensions");
  std::vector<std::complex<double>> line;
  for (int r = 0; r < height; ++r) {
    line.assign(a.begin() + std::size_t(r) * std::size_t(width),
                a.begin() + std::size_t(r + 1) * std::size_t(width));
    fft(line, inverse);
    std::copy(line.begin(), line.end(),
              a.begin() + std::size_t(r) * std::size_t(width));
  }
  for (int c = 0; c < width; ++c) {
    line.resize(std::size_t(height));
    for (int r = 0; r < height; ++r)
      line[std::size_t(r)] = a[std::size_t(r) * std::size_t(width) + std::size_t(c)];
    fft(line, inverse);
    for (int r = 0; r < height; ++r)
      a[std::size_t(r) * std::size_t(width) + std::size_t(c)] = line[std::size_t(r)];
  }
}

std::vector<double> power_spectrum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 4) throw ContractError("power_spectrum: need at least 4 samples");
  std::vector<double> out(n / 2 + 1);
  // Direct summation keeps the definition obvious; lengths here are small.
  for (std::size_t k = 0; k < out.size(); ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * kPi * double(k) * double(t) / double(n);
      re += xs[t] * std::cos(ang);
      im += xs[t] * std::sin(ang);
    }
    out[k] = (re * re + im * im) / double(n);
  }
  return out;
}

}  // namespace polyct
