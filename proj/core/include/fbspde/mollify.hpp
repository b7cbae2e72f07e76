#pragma once

#include <functional>
#include <vector>

#include "fbspde/problem.hpp"

namespace fbspde {

/// Smooth bump rho(y) = c_d exp(-1/(1-|y|^2)) on |y| < 1, zero outside,
/// normalized so the quadrature rule below integrates it to exactly 1
/// (constants then mollify to themselves at machine precision).
class MollifierKernel {
public:
  explicit MollifierKernel(int d, int panels_per_axis = 32, int gl_order = 12);

  int dim() const { return d_; }
  double density(const double* y) const;  ///< normalized rho
  double abs_moment() const { return abs_moment_; }  ///< ∫ |y| rho(y) dy

  /// Quadrature nodes/weights on [-1,1] per axis (composite Gauss-Legendre).
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

private:
  static double raw_bump(const double* y, int d);
  int d_;
  std::vector<double> nodes_, weights_;  // 1-d rule on [-1,1]
  double norm_ = 1.0;
  double abs_moment_ = 0.0;
};

/// h^eps(x) = eps^-d ∫ rho((x-y)/eps) h(y) dy by the kernel's quadrature.
/// Throws DomainError when epsilon <= 0.
std::function<double(const double*)> mollify_field(
    const std::function<double(const double*)>& h, double epsilon, const MollifierKernel& kernel);

/// Mollifies every coefficient entry and the terminal condition of a spec.
/// Time-invariant deterministic entries are cached on a dense interpolation
/// table spanning the box plus an (epsilon + pad) margin; anything else
/// evaluates the quadrature directly.
ProblemSpec mollify_spec(const ProblemSpec& spec, double epsilon, int table_nodes = 16385);

}  // namespace fbspde
