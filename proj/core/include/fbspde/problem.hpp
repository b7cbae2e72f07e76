#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fbspde/field.hpp"

namespace fbspde {

/// Axis-aligned box [-R, R]^d (general lo/hi supported).
struct Box {
  std::vector<double> lo, hi;

  static Box centered(int d, double radius);
  int dim() const { return static_cast<int>(lo.size()); }
  double clamp_axis(int axis, double v) const;
  bool contains(const double* x) const;
  double volume() const;
};

/// Driver f(t, x, v, r): v the backward value, r the d'-vector channel.
struct DriverFunction {
  std::function<double(double t, const double* x, double v, const double* r)> f;
  std::function<double(double t, const double* x, double v)> fv;  // optional partial
  double lipschitz_L = 0.0;
  bool depends_on_r = false;

  bool is_zero() const { return !f; }
  double eval(double t, const double* x, double v, const double* r) const;
  /// f(t, x, 0, 0) — the data norm entering the a-priori estimates.
  double at_zero(double t, const double* x) const;
};

/// A complete FBSDE/BSPDE instance.
struct ProblemSpec {
  std::string name;
  int d = 1;
  int dprime = 1;
  double T = 1.0;

  CoefficientField a;      // d x d, symmetric
  CoefficientField b;      // d
  CoefficientField c;      // scalar
  CoefficientField sigma;  // d x d'
  CoefficientField nu;     // d'
  DriverFunction driver;   // nonlinearity / source f
  TerminalFn phi;
  Box domain;
  double sobolev_p = 4.0;

  PathFunctional path_functional;

  bool deterministic() const;
  bool non_markov() const { return path_functional.kind != PathFunctional::Kind::none; }
  /// State dimension seen by regression bases (d, +1 for the path channel).
  int state_dim() const { return d + (non_markov() ? 1 : 0); }
  /// max |a - sigma sigma^T / 2| over a coarse sample; 0 means the spec is in
  /// the a = alpha regime required by the correspondence checks.
  double alpha_mismatch(int samples = 64) const;
};

/// Result of the q̂-substitution: alpha = sigma sigma^T / 2, the transformed
/// second-order coefficient a - 2 alpha, and drift
/// b̃^i = b^i - sigma^{jk} d_j sigma^{ik} - nu^k sigma^{ik}.
struct TransformedSpec {
  CoefficientField alpha;               // d x d
  CoefficientField residual_diffusion;  // a - 2 alpha
  CoefficientField b_tilde;             // d
  const ProblemSpec* source = nullptr;

  /// q = q̂ - u_x sigma evaluated entrywise (round-trip identity support).
  static void qhat_to_q(const double* qhat, const double* ux, const double* sigma_row_major,
                        int d, int dprime, double* q_out);
  static void q_to_qhat(const double* q, const double* ux, const double* sigma_row_major,
                        int d, int dprime, double* qhat_out);
};

/// Requires first spatial derivatives of sigma (analytic or finite-difference).
TransformedSpec transform_spec(const ProblemSpec& spec);

}  // namespace fbspde
