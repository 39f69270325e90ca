#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "polyct/error.hpp"
#include "polyct/stats.hpp"

using namespace polyct;

namespace {

// xorshift64* generator: deterministic noise without <random> second-guessing.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double uniform() {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return double((s * 0x2545f4914f6cdd1dull) >> 11) / 9007199254740992.0;
  }
  double normal() {
    const double u1 = std::max(uniform(), 1e-12);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }
};

}  // namespace

TEST_CASE("mean and sample standard deviation hand values") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  CHECK(sample_mean(xs) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(sample_stddev(xs) ==
        doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-15));
  CHECK(sample_stddev(std::vector<double>{7.0, 7.0}) == 0.0);
}

TEST_CASE("normal-reference bin width") {
  CHECK(scott_width(2.0, 8) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(scott_width(1.0, 1000) == doctest::Approx(0.35).epsilon(1e-12));
}

TEST_CASE("histogram covers the range with the top edge inclusive") {
  std::vector<double> xs(10);
  std::iota(xs.begin(), xs.end(), 0.0);  // 0..9
  const Histogram h = scott_histogram(xs);
  REQUIRE(h.edges.size() == h.counts.size() + 1);
  CHECK(h.edges.front() == 0.0);
  CHECK(h.edges.back() >= 9.0);
  std::size_t total = 0;
  for (std::size_t c : h.counts) total += c;
  CHECK(total == xs.size());  // the max lands in the last bin, not beyond
  CHECK(h.counts.back() > 0);

  CHECK(scott_bins(xs) == h.counts.size());
  const std::vector<int> idx = scott_bin_indices(xs);
  REQUIRE(idx.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(idx[i] >= 0);
    CHECK(idx[i] < int(h.counts.size()));
  }
  CHECK(idx.back() == int(h.counts.size()) - 1);
  CHECK(idx.front() == 0);
}

TEST_CASE("constant input has no histogram") {
  const std::vector<double> xs(32, 4.2);
  CHECK_THROWS_AS(scott_histogram(xs), ContractError);
  CHECK_THROWS_AS(scott_bins(xs), ContractError);
}

TEST_CASE("pearson correlation frozen hand value") {
  const std::vector<double> x = {1.0, 2.0, 3.0};
  const std::vector<double> y = {2.0, 4.0, 7.0};
  // cov 5, sx^2 2, sy^2 38/3 -> r = 5/sqrt(76/3)
  CHECK(pearson(x, y) == doctest::Approx(0.9933992677987827).epsilon(1e-12));
}

TEST_CASE("pearson is exactly +-1 on affine data and scale-invariant") {
  std::vector<double> x(50), y(50), z(50);
  Rng rng(11);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.normal();
    y[i] = 3.0 * x[i] - 2.0;
    z[i] = rng.normal();
  }
  CHECK(pearson(x, y) == doctest::Approx(1.0).epsilon(1e-12));
  for (auto& v : y) v = -v;
  CHECK(pearson(x, y) == doctest::Approx(-1.0).epsilon(1e-12));

  // r(x, z) stays put when either argument is positively rescaled.
  const double base = pearson(x, z);
  std::vector<double> z2 = z;
  for (auto& v : z2) v = 0.01 * v + 7.0;
  CHECK(pearson(x, z2) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("pearson rejects constant and mismatched input") {
  const std::vector<double> x = {1.0, 1.0, 1.0};
  const std::vector<double> y = {2.0, 4.0, 7.0};
  CHECK_THROWS_AS(pearson(x, y), ContractError);
  CHECK_THROWS_AS(pearson(y, x), ContractError);
  const std::vector<double> shorter = {1.0, 2.0};
  CHECK_THROWS_AS(pearson(shorter, y), ContractError);
}

TEST_CASE("midranks average over ties") {
  const std::vector<double> x = {10.0, 20.0, 20.0, 30.0};
  const std::vector<double> r = midranks(x);
  REQUIRE(r.size() == 4);
  CHECK(r[0] == 1.0);
  CHECK(r[1] == 2.5);
  CHECK(r[2] == 2.5);
  CHECK(r[3] == 4.0);
  const std::vector<double> all_tied(5, 3.0);
  for (double v : midranks(all_tied)) CHECK(v == 3.0);
}

TEST_CASE("spearman sees monotone association as exactly one") {
  std::vector<double> x(20), y(20);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = double(i) - 10.0;
    y[i] = x[i] * x[i] * x[i];  // monotone, wildly nonlinear
  }
  CHECK(spearman(x, y) == doctest::Approx(1.0).epsilon(1e-12));
  for (auto& v : y) v = -v;
  CHECK(spearman(x, y) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("spearman handles ties through midranks") {
  const std::vector<double> x = {1.0, 2.0, 2.0, 3.0};
  const std::vector<double> y = {10.0, 20.0, 20.0, 30.0};
  CHECK(spearman(x, y) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lowess reproduces straight lines exactly") {
  std::vector<double> x(40), y(40);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = 0.25 * double(i);
    y[i] = -1.5 * x[i] + 4.0;
  }
  for (double frac : {0.2, 0.5, 1.0}) {
    const std::vector<double> fit = lowess(x, y, frac);
    REQUIRE(fit.size() == y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      CHECK(fit[i] == doctest::Approx(y[i]).epsilon(1e-9));
  }
}

TEST_CASE("lowess smooths noise toward the clean signal") {
  const std::size_t n = 120;
  std::vector<double> x(n), clean(n), noisy(n);
  Rng rng(29);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = double(i) * 0.1;
    clean[i] = std::sin(x[i]);
    noisy[i] = clean[i] + 0.2 * rng.normal();
  }
  const std::vector<double> fit = lowess(x, noisy, 0.2);
  double rmse_fit = 0.0, rmse_noisy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rmse_fit += (fit[i] - clean[i]) * (fit[i] - clean[i]);
    rmse_noisy += (noisy[i] - clean[i]) * (noisy[i] - clean[i]);
  }
  CHECK(rmse_fit < rmse_noisy);
}

TEST_CASE("lowess input validation") {
  const std::vector<double> x = {1.0, 2.0, 3.0};
  const std::vector<double> y = {1.0, 2.0};
  CHECK_THROWS_AS(lowess(x, y, 0.5), ContractError);
  const std::vector<double> y3 = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(lowess(x, y3, 0.0), ContractError);
  CHECK_THROWS_AS(lowess(x, y3, 1.5), ContractError);
}
