#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace fbspde {

/// Scalar-valued map (t, x, w) -> R; w is the path-functional channel
/// (0 for deterministic fields).
using ScalarFn = std::function<double(double t, const double* x, double w)>;

/// Shape of a coefficient field.
enum class Arity { scalar, vec_d, mat_dd, mat_ddp, vec_dp };

/// An evaluable coefficient with declared smoothness and bounds.
///
/// Entries are scalar functions indexed row-major; analytic spatial
/// gradients are used when supplied, otherwise central finite differences
/// with step h = eps^(1/3) * (1 + |x_axis|).
class CoefficientField {
public:
  struct Entry {
    ScalarFn f;
    std::vector<ScalarFn> grad;  // optional, size d when present
  };

  CoefficientField() = default;
  CoefficientField(Arity arity, int d, int dprime, std::vector<Entry> entries);

  static CoefficientField constant(Arity arity, int d, int dprime,
                                   const std::vector<double>& values);
  static CoefficientField zero(Arity arity, int d, int dprime);

  Arity arity() const { return arity_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const { return d_; }

  double value(int i, int j, double t, const double* x, double w = 0.0) const;
  double value(double t, const double* x, double w = 0.0) const {  // scalar shorthand
    return value(0, 0, t, x, w);
  }

  /// First spatial derivative of entry (i,j) along `axis`.
  double dvalue(int i, int j, int axis, double t, const double* x, double w = 0.0) const;

  /// Derivative for a multi-index with |gamma| <= 2 (gamma lists axes, e.g.
  /// {0,1} = d2/dx1 dx2). Throws CapabilityError when differentiable() is false
  /// and no analytic derivative exists.
  double deriv(int i, int j, const std::vector<int>& gamma, double t, const double* x,
               double w = 0.0) const;

  bool has_analytic_gradient() const;

  // Declared hypothesis data.
  double bound_Km = 0.0;      ///< coefficient bound K_m
  int smoothness_m = 0;       ///< smoothness order m
  bool is_deterministic = true;   ///< no dependence on the path channel
  bool time_invariant = false;    ///< value independent of t (enables caching)
  bool differentiable = true;     ///< finite-difference derivative access allowed
  std::string label;

private:
  Arity arity_ = Arity::scalar;
  int d_ = 1, dprime_ = 1, rows_ = 1, cols_ = 1;
  std::vector<Entry> entries_;
};

/// Shape of (rows, cols) implied by an arity for dimensions (d, d').
std::array<int, 2> arity_shape(Arity arity, int d, int dprime);

/// Terminal condition x -> R with weak-derivative access.
struct TerminalFn {
  std::function<double(const double* x)> f;
  std::function<double(const double* x, int axis)> df;  // optional analytic gradient

  double value(const double* x) const { return f(x); }
  double grad(const double* x, int axis, int d) const;
};

/// Per-path running functional of the Brownian path, carried as an extra
/// state channel: w_{k+1} = update(w_k, t_k, dt, dW_k).
struct PathFunctional {
  enum class Kind { none, ou };
  Kind kind = Kind::none;

  double update(double w, double t, double dt, const double* dw, int dprime) const;
};

}  // namespace fbspde
