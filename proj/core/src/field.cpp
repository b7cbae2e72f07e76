#include "fbspde/field.hpp"

#include <cmath>
#include <limits>

#include "fbspde/errors.hpp"

namespace fbspde {

namespace {
// Optimal central-difference step for first derivatives.
double fd_step(double x) {
  static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * (1.0 + std::abs(x));
}

constexpr int kMaxDim = 16;
}  // namespace

std::array<int, 2> arity_shape(Arity arity, int d, int dprime) {
  switch (arity) {
    case Arity::scalar: return {1, 1};
    case Arity::vec_d: return {d, 1};
    case Arity::mat_dd: return {d, d};
    case Arity::mat_ddp: return {d, dprime};
    case Arity::vec_dp: return {dprime, 1};
  }
  return {1, 1};
}

CoefficientField::CoefficientField(Arity arity, int d, int dprime, std::vector<Entry> entries)
    : arity_(arity), d_(d), dprime_(dprime), entries_(std::move(entries)) {
  const auto shape = arity_shape(arity, d, dprime);
  rows_ = shape[0];
  cols_ = shape[1];
  if (static_cast<int>(entries_.size()) != rows_ * cols_)
    throw StructuralError("coefficient field entry count does not match its arity");
}

CoefficientField CoefficientField::constant(Arity arity, int d, int dprime,
                                            const std::vector<double>& values) {
  const auto shape = arity_shape(arity, d, dprime);
  if (static_cast<int>(values.size()) != shape[0] * shape[1])
    throw StructuralError("constant field value count does not match its arity");
  std::vector<Entry> entries(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    entries[i].f = [v](double, const double*, double) { return v; };
    entries[i].grad.resize(static_cast<std::size_t>(d));
    for (int axis = 0; axis < d; ++axis)
      entries[i].grad[static_cast<std::size_t>(axis)] = [](double, const double*, double) {
        return 0.0;
      };
  }
  CoefficientField field(arity, d, dprime, std::move(entries));
  field.time_invariant = true;
  return field;
}

CoefficientField CoefficientField::zero(Arity arity, int d, int dprime) {
  const auto shape = arity_shape(arity, d, dprime);
  return constant(arity, d, dprime,
                  std::vector<double>(static_cast<std::size_t>(shape[0] * shape[1]), 0.0));
}

double CoefficientField::value(int i, int j, double t, const double* x, double w) const {
  return entries_[static_cast<std::size_t>(i * cols_ + j)].f(t, x, w);
}

bool CoefficientField::has_analytic_gradient() const {
  for (const Entry& e : entries_)
    if (e.grad.empty()) return false;
  return true;
}

double CoefficientField::dvalue(int i, int j, int axis, double t, const double* x,
                                double w) const {
  const Entry& e = entries_[static_cast<std::size_t>(i * cols_ + j)];
  if (!e.grad.empty()) return e.grad[static_cast<std::size_t>(axis)](t, x, w);
  if (!differentiable)
    throw CapabilityError("field '" + label + "' does not provide derivatives");
  double xs[kMaxDim];
  for (int k = 0; k < d_; ++k) xs[k] = x[k];
  const double h = fd_step(x[axis]);
  xs[axis] = x[axis] + h;
  const double fp = e.f(t, xs, w);
  xs[axis] = x[axis] - h;
  const double fm = e.f(t, xs, w);
  return (fp - fm) / (2.0 * h);
}

double CoefficientField::deriv(int i, int j, const std::vector<int>& gamma, double t,
                               const double* x, double w) const {
  if (gamma.empty()) return value(i, j, t, x, w);
  if (gamma.size() == 1) return dvalue(i, j, gamma[0], t, x, w);
  if (gamma.size() != 2) throw CapabilityError("derivatives beyond order 2 are not available");
  if (!differentiable && !has_analytic_gradient())
    throw CapabilityError("field '" + label + "' does not provide derivatives");
  // Second derivative: difference the (analytic or FD) first derivative.
  const int a0 = gamma[0], a1 = gamma[1];
  double xs[kMaxDim];
  for (int k = 0; k < d_; ++k) xs[k] = x[k];
  const double h = fd_step(x[a1]);
  xs[a1] = x[a1] + h;
  const double gp = dvalue(i, j, a0, t, xs, w);
  xs[a1] = x[a1] - h;
  const double gm = dvalue(i, j, a0, t, xs, w);
  return (gp - gm) / (2.0 * h);
}

double TerminalFn::grad(const double* x, int axis, int d) const {
  if (df) return df(x, axis);
  double xs[kMaxDim];
  for (int k = 0; k < d; ++k) xs[k] = x[k];
  const double h = fd_step(x[axis]);
  xs[axis] = x[axis] + h;
  const double fp = f(xs);
  xs[axis] = x[axis] - h;
  const double fm = f(xs);
  return (fp - fm) / (2.0 * h);
}

double PathFunctional::update(double w, double /*t*/, double dt, const double* dw,
                              int /*dprime*/) const {
  switch (kind) {
    case Kind::none: return 0.0;
    case Kind::ou: return w - w * dt + dw[0];  // dw_t = -w dt + dW^1
  }
  return 0.0;
}

}  // namespace fbspde
