#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fbspde/problem.hpp"

namespace fbspde {

struct ParabolicityReport {
  double min_margin = 0.0;  ///< min over samples/directions of xi^T (2a - sigma sigma^T) xi
  double worst_t = 0.0;
  std::vector<double> worst_x;
  bool pass = false;  ///< min_margin >= -1e-10
};

/// Samples (t,x) in the domain box and eigen-decomposes 2a - sigma sigma^T.
/// Throws StructuralError naming the offending entry when a is not symmetric.
ParabolicityReport validate_parabolicity(const ProblemSpec& spec, int sample_count,
                                         std::uint64_t seed);

struct LipschitzReport {
  double max_observed_ratio = 0.0;
  double declared_L = 0.0;
  bool pass = false;  ///< max ratio <= L (1 + 1e-8); vacuous pass when L = 0 and ratios are 0
};

/// Difference quotients of the driver over random (t,x,v1,r1,v2,r2) tuples.
LipschitzReport validate_driver_lipschitz(const ProblemSpec& spec, int sample_count,
                                          std::uint64_t seed);

struct BoundsReport {
  double max_value = 0.0;  ///< worst |entry| or |derivative| over samples, orders <= m
  double bound_Km = 0.0;
  std::string worst_field;
  bool pass = false;
};

/// Hypothesis (A_m): coefficient values and derivatives up to the declared
/// order stay within K_m on sampled points.
BoundsReport validate_coefficient_bounds(const ProblemSpec& spec, int sample_count,
                                         std::uint64_t seed);

/// Conservative Lipschitz constant: 1.1x the largest finite-difference
/// quotient over sampled pairs in the box.
double estimate_lipschitz_constant(const std::function<double(const double*)>& h, const Box& box,
                                   int sample_count, std::uint64_t seed);

}  // namespace fbspde
