#include "fbspde/problem.hpp"

#include <algorithm>
#include <cmath>

#include "fbspde/errors.hpp"

namespace fbspde {

Box Box::centered(int d, double radius) {
  Box box;
  box.lo.assign(static_cast<std::size_t>(d), -radius);
  box.hi.assign(static_cast<std::size_t>(d), radius);
  return box;
}

double Box::clamp_axis(int axis, double v) const {
  return std::min(hi[static_cast<std::size_t>(axis)],
                  std::max(lo[static_cast<std::size_t>(axis)], v));
}

bool Box::contains(const double* x) const {
  for (int k = 0; k < dim(); ++k) {
    if (x[k] < lo[static_cast<std::size_t>(k)] || x[k] > hi[static_cast<std::size_t>(k)])
      return false;
  }
  return true;
}

double Box::volume() const {
  double v = 1.0;
  for (int k = 0; k < dim(); ++k)
    v *= hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)];
  return v;
}

double DriverFunction::eval(double t, const double* x, double v, const double* r) const {
  if (!f) return 0.0;
  return f(t, x, v, r);
}

double DriverFunction::at_zero(double t, const double* x) const {
  if (!f) return 0.0;
  static const double zeros[16] = {0};
  return f(t, x, 0.0, zeros);
}

bool ProblemSpec::deterministic() const {
  return a.is_deterministic && b.is_deterministic && c.is_deterministic &&
         sigma.is_deterministic && nu.is_deterministic && !non_markov();
}

double ProblemSpec::alpha_mismatch(int samples) const {
  double worst = 0.0;
  double x[16];
  const int n = std::max(2, samples);
  for (int s = 0; s < n; ++s) {
    const double frac = static_cast<double>(s) / static_cast<double>(n - 1);
    for (int k = 0; k < d; ++k)
      x[k] = domain.lo[static_cast<std::size_t>(k)] +
             frac * (domain.hi[static_cast<std::size_t>(k)] - domain.lo[static_cast<std::size_t>(k)]);
    const double t = frac * T;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        double alpha_ij = 0.0;
        for (int k = 0; k < dprime; ++k)
          alpha_ij += 0.5 * sigma.value(i, k, t, x) * sigma.value(j, k, t, x);
        worst = std::max(worst, std::abs(a.value(i, j, t, x) - alpha_ij));
      }
    }
  }
  return worst;
}

void TransformedSpec::qhat_to_q(const double* qhat, const double* ux, const double* sigma_rm,
                                int d, int dprime, double* q_out) {
  for (int k = 0; k < dprime; ++k) {
    double uxs = 0.0;
    for (int i = 0; i < d; ++i) uxs += ux[i] * sigma_rm[i * dprime + k];
    q_out[k] = qhat[k] - uxs;
  }
}

void TransformedSpec::q_to_qhat(const double* q, const double* ux, const double* sigma_rm,
                                int d, int dprime, double* qhat_out) {
  for (int k = 0; k < dprime; ++k) {
    double uxs = 0.0;
    for (int i = 0; i < d; ++i) uxs += ux[i] * sigma_rm[i * dprime + k];
    qhat_out[k] = q[k] + uxs;
  }
}

TransformedSpec transform_spec(const ProblemSpec& spec) {
  if (!spec.sigma.differentiable && !spec.sigma.has_analytic_gradient())
    throw CapabilityError("transform_spec: sigma provides no first spatial derivatives");

  const int d = spec.d;
  const int dp = spec.dprime;
  // Copies shared by the field closures. The source spec's fields are
  // immutable after construction, so capturing copies is safe and keeps the
  // transformed fields self-contained.
  const CoefficientField sigma = spec.sigma;
  const CoefficientField a = spec.a;
  const CoefficientField b = spec.b;
  const CoefficientField nu = spec.nu;

  std::vector<CoefficientField::Entry> alpha_entries;
  std::vector<CoefficientField::Entry> resid_entries;
  alpha_entries.reserve(static_cast<std::size_t>(d * d));
  resid_entries.reserve(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      auto alpha_ij = [sigma, i, j, dp](double t, const double* x, double w) {
        double s = 0.0;
        for (int k = 0; k < dp; ++k) s += 0.5 * sigma.value(i, k, t, x, w) * sigma.value(j, k, t, x, w);
        return s;
      };
      alpha_entries.push_back({alpha_ij, {}});
      auto resid_ij = [a, alpha_ij, i, j](double t, const double* x, double w) {
        return a.value(i, j, t, x, w) - 2.0 * alpha_ij(t, x, w);
      };
      resid_entries.push_back({resid_ij, {}});
    }
  }

  std::vector<CoefficientField::Entry> bt_entries;
  bt_entries.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    auto bt_i = [sigma, b, nu, i, d, dp](double t, const double* x, double w) {
      double v = b.value(i, 0, t, x, w);
      for (int k = 0; k < dp; ++k) {
        for (int j = 0; j < d; ++j) v -= sigma.value(j, k, t, x, w) * sigma.dvalue(i, k, j, t, x, w);
        v -= nu.value(k, 0, t, x, w) * sigma.value(i, k, t, x, w);
      }
      return v;
    };
    bt_entries.push_back({bt_i, {}});
  }

  TransformedSpec out;
  out.alpha = CoefficientField(Arity::mat_dd, d, dp, std::move(alpha_entries));
  out.residual_diffusion = CoefficientField(Arity::mat_dd, d, dp, std::move(resid_entries));
  out.b_tilde = CoefficientField(Arity::vec_d, d, dp, std::move(bt_entries));
  out.alpha.is_deterministic = spec.sigma.is_deterministic;
  out.alpha.time_invariant = spec.sigma.time_invariant;
  out.residual_diffusion.is_deterministic = spec.a.is_deterministic && spec.sigma.is_deterministic;
  out.residual_diffusion.time_invariant = spec.a.time_invariant && spec.sigma.time_invariant;
  out.b_tilde.is_deterministic =
      spec.b.is_deterministic && spec.sigma.is_deterministic && spec.nu.is_deterministic;
  out.b_tilde.time_invariant =
      spec.b.time_invariant && spec.sigma.time_invariant && spec.nu.time_invariant;
  out.source = &spec;
  return out;
}

}  // namespace fbspde
