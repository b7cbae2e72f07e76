#include "fbspde/validate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "fbspde/errors.hpp"
#include "fbspde/rng.hpp"

namespace fbspde {

namespace {

void sample_point(Xoshiro256& gen, const ProblemSpec& spec, double* t, double* x) {
  *t = spec.T * gen.next_unit();
  for (int k = 0; k < spec.d; ++k) {
    const double lo = spec.domain.lo[static_cast<std::size_t>(k)];
    const double hi = spec.domain.hi[static_cast<std::size_t>(k)];
    x[k] = lo + (hi - lo) * gen.next_unit();
  }
}

}  // namespace

ParabolicityReport validate_parabolicity(const ProblemSpec& spec, int sample_count,
                                         std::uint64_t seed) {
  ParabolicityReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  report.worst_x.assign(static_cast<std::size_t>(spec.d), 0.0);

  Xoshiro256 gen(substream_seed(seed, "validate/parabolicity"));
  Eigen::MatrixXd m(spec.d, spec.d);
  double x[16];
  const double sym_tol = 1e-9;

  for (int s = 0; s < std::max(1, sample_count); ++s) {
    double t;
    sample_point(gen, spec, &t, x);
    for (int i = 0; i < spec.d; ++i) {
      for (int j = 0; j < spec.d; ++j) {
        double ssT = 0.0;
        for (int k = 0; k < spec.dprime; ++k)
          ssT += spec.sigma.value(i, k, t, x) * spec.sigma.value(j, k, t, x);
        m(i, j) = 2.0 * spec.a.value(i, j, t, x) - ssT;
      }
    }
    for (int i = 0; i < spec.d; ++i) {
      for (int j = i + 1; j < spec.d; ++j) {
        const double aij = spec.a.value(i, j, t, x);
        const double aji = spec.a.value(j, i, t, x);
        const double scale = 1.0 + std::abs(aij) + std::abs(aji);
        if (std::abs(aij - aji) > sym_tol * scale)
          throw StructuralError("coefficient 'a' is not symmetric: a(" + std::to_string(i) +
                                "," + std::to_string(j) + ") = " + std::to_string(aij) +
                                " vs a(" + std::to_string(j) + "," + std::to_string(i) +
                                ") = " + std::to_string(aji));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()),
                                                       Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    if (lambda_min < report.min_margin) {
      report.min_margin = lambda_min;
      report.worst_t = t;
      for (int k = 0; k < spec.d; ++k) report.worst_x[static_cast<std::size_t>(k)] = x[k];
    }
  }
  report.pass = report.min_margin >= -1e-10;
  return report;
}

LipschitzReport validate_driver_lipschitz(const ProblemSpec& spec, int sample_count,
                                          std::uint64_t seed) {
  LipschitzReport report;
  report.declared_L = spec.driver.lipschitz_L;
  if (spec.driver.is_zero()) {
    report.pass = true;
    return report;
  }

  Xoshiro256 gen(substream_seed(seed, "validate/lipschitz"));
  double x[16], r1[16], r2[16];
  double worst = 0.0;
  const double vscale = 2.0, rscale = 2.0;
  for (int s = 0; s < std::max(1, sample_count); ++s) {
    double t;
    sample_point(gen, spec, &t, x);
    const double v1 = vscale * (2.0 * gen.next_unit() - 1.0);
    const double v2 = vscale * (2.0 * gen.next_unit() - 1.0);
    for (int k = 0; k < spec.dprime; ++k) {
      r1[k] = rscale * (2.0 * gen.next_unit() - 1.0);
      r2[k] = spec.driver.depends_on_r ? rscale * (2.0 * gen.next_unit() - 1.0) : r1[k];
    }
    double dist = std::abs(v1 - v2);
    double rn = 0.0;
    for (int k = 0; k < spec.dprime; ++k) rn += (r1[k] - r2[k]) * (r1[k] - r2[k]);
    dist += std::sqrt(rn);
    if (dist < 1e-12) continue;
    const double df =
        std::abs(spec.driver.eval(t, x, v1, r1) - spec.driver.eval(t, x, v2, r2));
    worst = std::max(worst, df / dist);
  }
  report.max_observed_ratio = worst;
  report.pass = worst <= report.declared_L * (1.0 + 1e-8) + 1e-15;
  return report;
}

namespace {

struct FieldRef {
  const CoefficientField* field;
  const char* name;
  int max_order;  // derivative order to sample for this field
};

double worst_field_magnitude(const FieldRef& ref, const ProblemSpec& spec, Xoshiro256& gen,
                             int samples) {
  double x[16];
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    double t;
    sample_point(gen, spec, &t, x);
    for (int i = 0; i < ref.field->rows(); ++i) {
      for (int j = 0; j < ref.field->cols(); ++j) {
        worst = std::max(worst, std::abs(ref.field->value(i, j, t, x)));
        if (ref.max_order >= 1) {
          for (int axis = 0; axis < spec.d; ++axis)
            worst = std::max(worst, std::abs(ref.field->dvalue(i, j, axis, t, x)));
        }
        if (ref.max_order >= 2) {
          for (int a0 = 0; a0 < spec.d; ++a0)
            for (int a1 = a0; a1 < spec.d; ++a1)
              worst = std::max(worst, std::abs(ref.field->deriv(i, j, {a0, a1}, t, x)));
        }
      }
    }
  }
  return worst;
}

}  // namespace

BoundsReport validate_coefficient_bounds(const ProblemSpec& spec, int sample_count,
                                         std::uint64_t seed) {
  BoundsReport report;
  Xoshiro256 gen(substream_seed(seed, "validate/bounds"));
  const int m_b = spec.b.smoothness_m;
  const int m_a = std::max(2, spec.a.smoothness_m);
  const FieldRef refs[] = {
      {&spec.b, "b", m_b},
      {&spec.c, "c", spec.c.smoothness_m},
      {&spec.nu, "nu", spec.nu.smoothness_m},
      {&spec.a, "a", m_a},
      {&spec.sigma, "sigma", std::max(2, spec.sigma.smoothness_m)},
  };
  report.bound_Km = 0.0;
  for (const auto& ref : refs) report.bound_Km = std::max(report.bound_Km, ref.field->bound_Km);
  const int samples = std::max(1, sample_count);
  for (const auto& ref : refs) {
    const double worst = worst_field_magnitude(ref, spec, gen, samples);
    if (worst > report.max_value) {
      report.max_value = worst;
      report.worst_field = ref.name;
    }
    if (worst > ref.field->bound_Km * (1.0 + 1e-6) + 1e-12) {
      report.max_value = worst;
      report.worst_field = ref.name;
      report.pass = false;
      return report;
    }
  }
  report.pass = true;
  return report;
}

double estimate_lipschitz_constant(const std::function<double(const double*)>& h, const Box& box,
                                   int sample_count, std::uint64_t seed) {
  Xoshiro256 gen(substream_seed(seed, "lipschitz-estimate"));
  const int d = box.dim();
  double x1[16], x2[16];
  double worst = 0.0;
  for (int s = 0; s < std::max(1, sample_count); ++s) {
    for (int k = 0; k < d; ++k) {
      const double lo = box.lo[static_cast<std::size_t>(k)];
      const double hi = box.hi[static_cast<std::size_t>(k)];
      x1[k] = lo + (hi - lo) * gen.next_unit();
    }
    // Alternate global pairs with short-range quotients so both coarse slope
    // and local steepness are seen.
    const bool local = (s % 2) == 0;
    double dist2 = 0.0;
    for (int k = 0; k < d; ++k) {
      const double lo = box.lo[static_cast<std::size_t>(k)];
      const double hi = box.hi[static_cast<std::size_t>(k)];
      const double span = hi - lo;
      double step;
      if (local) {
        step = 1e-4 * span * (2.0 * gen.next_unit() - 1.0);
      } else {
        step = lo + span * gen.next_unit() - x1[k];
      }
      x2[k] = box.clamp_axis(k, x1[k] + step);
      dist2 += (x2[k] - x1[k]) * (x2[k] - x1[k]);
    }
    const double dist = std::sqrt(dist2);
    if (dist < 1e-14) continue;
    worst = std::max(worst, std::abs(h(x2) - h(x1)) / dist);
  }
  return 1.1 * worst;
}

}  // namespace fbspde
