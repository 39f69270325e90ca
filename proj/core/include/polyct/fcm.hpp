#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polyct/image.hpp"

namespace polyct {

struct FcmOptions {
  int clusters = 4;
  double fuzzifier = 2.0;   // m > 1
  double tolerance = 1e-5;  // max center shift
  int max_iterations = 300;
  std::uint64_t seed = 0;
};

struct FcmResult {
  std::vector<double> centers;          // c cluster centers
  std::vector<double> memberships;      // n x c row-major, rows sum to 1
  std::vector<int> labels;              // argmax membership (ties: lowest)
  std::vector<double> objective_trace;  // J after each iteration
  int iterations = 0;
  bool converged = false;
};

// Fuzzy c-means over the image's pixel values (1-D feature space), seeded
// random membership init, alternating center/membership updates. A pixel
// exactly at a center receives an indicator membership row. Errors when the
// image has fewer distinct values than clusters.
FcmResult fcm(const ImageGrid& img, const FcmOptions& opt);

// Membership rows for fixed centers (exposes the singularity rule).
std::vector<double> fcm_memberships(std::span<const double> data,
                                    std::span<const double> centers,
                                    double fuzzifier);

std::vector<int> defuzzify(const std::vector<double>& memberships, int clusters);

}  // namespace polyct
