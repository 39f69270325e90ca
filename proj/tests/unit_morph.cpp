#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "polyct/error.hpp"
#include "polyct/fourier.hpp"
#include "polyct/morphology.hpp"

using namespace polyct;

namespace {

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double uniform() {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return double((s * 0x2545f4914f6cdd1dull) >> 11) / 9007199254740992.0;
  }
};

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("richness counts distinct 3x3 neighborhoods") {
  const ImageGrid zeros = make_image(6, 6, 1.0, ValueSemantics::labels, 0.0);
  CHECK(morphological_richness(zeros) == doctest::Approx(1.0 / 512.0));

  ImageGrid checker = make_image(4, 4, 1.0, ValueSemantics::labels);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) checker.at(r, c) = double((r + c) % 2 == 0);
  // Windows repeat with origin parity: exactly two neighborhoods.
  CHECK(morphological_richness(checker) == doctest::Approx(2.0 / 512.0));

  ImageGrid dot = make_image(5, 5, 1.0, ValueSemantics::labels, 0.0);
  dot.at(2, 2) = 1.0;
  // All nine windows contain the dot at a different position.
  CHECK(morphological_richness(dot) == doctest::Approx(9.0 / 512.0));
}

TEST_CASE("richness input contracts") {
  ImageGrid gray = make_image(3, 3, 1.0, ValueSemantics::labels, 0.5);
  CHECK_THROWS_AS(morphological_richness(gray), ContractError);
  ImageGrid small = make_image(2, 3, 1.0, ValueSemantics::labels, 0.0);
  CHECK_THROWS_AS(morphological_richness(small), ContractError);
}

TEST_CASE("threshold sweep starts saturated and tracks the binary image") {
  ImageGrid dot = make_image(5, 5, 1.0, ValueSemantics::hounsfield, 0.0);
  dot.at(2, 2) = 1.0;
  const std::vector<double> sig = mr_signal(dot, 8);
  REQUIRE(sig.size() == 8);
  // t_0 = min binarizes the whole image to ones.
  CHECK(sig[0] == doctest::Approx(1.0 / 512.0));
  // All later thresholds fall in (0, 1]: the original two-value pattern.
  for (std::size_t k = 1; k < sig.size(); ++k)
    CHECK(sig[k] == doctest::Approx(9.0 / 512.0));
}

TEST_CASE("threshold sweep contracts") {
  const ImageGrid flat = make_image(5, 5, 1.0, ValueSemantics::hounsfield, 2.0);
  CHECK_THROWS_AS(mr_signal(flat, 8), ContractError);
  ImageGrid dot = make_image(5, 5, 1.0, ValueSemantics::hounsfield, 0.0);
  dot.at(2, 2) = 1.0;
  CHECK_THROWS_AS(mr_signal(dot, 7), ContractError);
}

TEST_CASE("fft round-trips at power-of-two and awkward lengths") {
  for (std::size_t n : {16u, 12u, 17u, 1u}) {
    Rng rng(n);
    std::vector<std::complex<double>> a(n), orig;
    for (auto& v : a) v = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    orig = a;
    fft(a, false);
    fft(a, true);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(a[i].real() == doctest::Approx(orig[i].real()).epsilon(1e-9));
      CHECK(a[i].imag() == doctest::Approx(orig[i].imag()).epsilon(1e-9));
    }
  }
  std::vector<std::complex<double>> empty;
  CHECK_THROWS_AS(fft(empty, false), ContractError);
}

TEST_CASE("fft matches direct transform at a prime length") {
  const std::size_t n = 13;
  Rng rng(3);
  std::vector<std::complex<double>> a(n);
  for (auto& v : a) v = {rng.uniform() - 0.5, rng.uniform() - 0.5};
  const auto orig = a;
  fft(a, false);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * kPi * double(k) * double(t) / double(n);
      sum += orig[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    CHECK(a[k].real() == doctest::Approx(sum.real()).epsilon(1e-9));
    CHECK(a[k].imag() == doctest::Approx(sum.imag()).epsilon(1e-9));
  }
}

TEST_CASE("two-dimensional fft round-trips and validates dimensions") {
  Rng rng(8);
  std::vector<std::complex<double>> a(6 * 4);
  for (auto& v : a) v = {rng.uniform(), rng.uniform()};
  const auto orig = a;
  fft2(a, 6, 4, false);
  fft2(a, 6, 4, true);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(a[i] - orig[i]) < 1e-9);

  CHECK_THROWS_AS(fft2(a, 5, 4, false), ContractError);
  CHECK_THROWS_AS(fft2(a, 6, 0, false), ContractError);
}

TEST_CASE("power spectrum isolates a pure tone") {
  const std::size_t n = 16;
  std::vector<double> xs(n);
  for (std::size_t t = 0; t < n; ++t)
    xs[t] = std::cos(2.0 * kPi * 3.0 * double(t) / double(n));
  const std::vector<double> ps = power_spectrum(xs);
  REQUIRE(ps.size() == n / 2 + 1);
  CHECK(ps[3] == doctest::Approx(double(n) / 4.0).epsilon(1e-9));
  for (std::size_t k = 0; k < ps.size(); ++k)
    if (k != 3) CHECK(ps[k] < 1e-18);
}

TEST_CASE("power spectrum satisfies the energy identity") {
  for (std::size_t n : {12u, 15u}) {
    Rng rng(n * 31);
    std::vector<double> xs(n);
    double energy = 0.0;
    for (auto& v : xs) {
      v = rng.uniform() - 0.5;
      energy += v * v;
    }
    const std::vector<double> ps = power_spectrum(xs);
    double total = ps[0];
    const std::size_t last = ps.size() - 1;
    const bool even = n % 2 == 0;
    if (even) total += ps[last];
    for (std::size_t k = 1; k < last + (even ? 0 : 1); ++k) total += 2.0 * ps[k];
    CHECK(total == doctest::Approx(energy).epsilon(1e-9));
  }
  CHECK_THROWS_AS(power_spectrum(std::vector<double>{1.0, 2.0, 3.0}),
                  ContractError);
}

TEST_CASE("constant signal concentrates in the zero bin") {
  const std::vector<double> xs(10, 2.0);
  const std::vector<double> ps = power_spectrum(xs);
  CHECK(ps[0] == doctest::Approx(10.0 * 4.0).epsilon(1e-12));
  for (std::size_t k = 1; k < ps.size(); ++k) CHECK(ps[k] < 1e-18);
}
