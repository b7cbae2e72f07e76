#include "fbspde/mollify.hpp"

#include <cmath>
#include <memory>

#include "fbspde/errors.hpp"

namespace fbspde {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
}

}  // namespace

double MollifierKernel::raw_bump(const double* y, int d) {
  double r2 = 0.0;
  for (int k = 0; k < d; ++k) r2 += y[k] * y[k];
  if (r2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r2));
}

MollifierKernel::MollifierKernel(int d, int panels_per_axis, int gl_order) : d_(d) {
  std::vector<double> gx, gw;
  gauss_legendre(gl_order, gx, gw);
  const int panels = panels_per_axis;
  nodes_.reserve(static_cast<std::size_t>(panels * gl_order));
  weights_.reserve(static_cast<std::size_t>(panels * gl_order));
  const double width = 2.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = -1.0 + p * width;
    for (int i = 0; i < gl_order; ++i) {
      nodes_.push_back(a + 0.5 * width * (gx[static_cast<std::size_t>(i)] + 1.0));
      weights_.push_back(0.5 * width * gw[static_cast<std::size_t>(i)]);
    }
  }

  // Normalize by this same rule and record the absolute moment with it.
  const std::size_t n1 = nodes_.size();
  double total = 0.0, moment = 0.0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  double y[8];
  for (;;) {
    double wprod = 1.0;
    double r2 = 0.0;
    for (int k = 0; k < d; ++k) {
      y[k] = nodes_[idx[static_cast<std::size_t>(k)]];
      wprod *= weights_[idx[static_cast<std::size_t>(k)]];
      r2 += y[k] * y[k];
    }
    const double rho = raw_bump(y, d);
    total += wprod * rho;
    moment += wprod * rho * std::sqrt(r2);
    int k = 0;
    for (; k < d; ++k) {
      if (++idx[static_cast<std::size_t>(k)] < n1) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
    if (k == d) break;
  }
  norm_ = total;
  abs_moment_ = moment / total;
}

double MollifierKernel::density(const double* y) const { return raw_bump(y, d_) / norm_; }

std::function<double(const double*)> mollify_field(
    const std::function<double(const double*)>& h, double epsilon,
    const MollifierKernel& kernel) {
  if (epsilon <= 0.0) throw DomainError("mollify_field: epsilon must be positive");
  const int d = kernel.dim();
  // Share the rule through the closure; the kernel may go out of scope.
  auto nodes = std::make_shared<std::vector<double>>(kernel.nodes());
  auto weights = std::make_shared<std::vector<double>>(kernel.weights());
  auto kern = std::make_shared<MollifierKernel>(kernel);

  return [h, epsilon, d, nodes, weights, kern](const double* x) {
    const std::size_t n1 = nodes->size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    double y[8], arg[8];
    double acc = 0.0;
    for (;;) {
      double wprod = 1.0;
      for (int k = 0; k < d; ++k) {
        y[k] = (*nodes)[idx[static_cast<std::size_t>(k)]];
        wprod *= (*weights)[idx[static_cast<std::size_t>(k)]];
        arg[k] = x[k] - epsilon * y[k];
      }
      const double rho = kern->density(y);
      if (rho != 0.0) acc += wprod * rho * h(arg);
      int k = 0;
      for (; k < d; ++k) {
        if (++idx[static_cast<std::size_t>(k)] < n1) break;
        idx[static_cast<std::size_t>(k)] = 0;
      }
      if (k == d) break;
    }
    return acc;
  };
}

namespace {

// Dense linear-interpolation cache of a smooth 1-d function.
struct Table1d {
  double lo, hi, step;
  std::vector<double> values;

  double operator()(double x) const {
    double s = (x - lo) / step;
    if (s <= 0.0) return values.front();
    const double smax = static_cast<double>(values.size() - 1);
    if (s >= smax) return values.back();
    const std::size_t i = static_cast<std::size_t>(s);
    const double frac = s - static_cast<double>(i);
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
  }
};

ScalarFn mollify_entry(const ScalarFn& f, const ProblemSpec& spec, double epsilon,
                       bool cacheable, int table_nodes, const MollifierKernel& kernel) {
  if (spec.d == 1 && cacheable) {
    auto fn1 = [f](const double* x) { return f(0.0, x, 0.0); };
    auto direct = mollify_field(fn1, epsilon, kernel);
    auto table = std::make_shared<Table1d>();
    table->lo = spec.domain.lo[0] - epsilon;
    table->hi = spec.domain.hi[0] + epsilon;
    const int n = std::max(table_nodes, 9);
    table->step = (table->hi - table->lo) / (n - 1);
    table->values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double xi = table->lo + i * table->step;
      table->values[static_cast<std::size_t>(i)] = direct(&xi);
    }
    return [table](double, const double* x, double) { return (*table)(x[0]); };
  }
  // General path: quadrature at every call, time and path channel frozen
  // per evaluation (mollification acts in x only).
  auto kern = std::make_shared<MollifierKernel>(kernel);
  const double eps = epsilon;
  return [f, eps, kern](double t, const double* x, double w) {
    auto fx = [&](const double* xx) { return f(t, xx, w); };
    return mollify_field(fx, eps, *kern)(x);
  };
}

CoefficientField mollify_coefficient(const CoefficientField& field, const ProblemSpec& spec,
                                     double epsilon, int table_nodes,
                                     const MollifierKernel& kernel) {
  std::vector<CoefficientField::Entry> entries;
  entries.reserve(static_cast<std::size_t>(field.rows() * field.cols()));
  const bool cacheable = field.time_invariant && field.is_deterministic;
  for (int i = 0; i < field.rows(); ++i) {
    for (int j = 0; j < field.cols(); ++j) {
      const CoefficientField& src = field;
      ScalarFn raw = [&src, i, j](double t, const double* x, double w) {
        return src.value(i, j, t, x, w);
      };
      // Bind a value copy of the entry accessor, not the field reference.
      ScalarFn owned = [field, i, j](double t, const double* x, double w) {
        return field.value(i, j, t, x, w);
      };
      entries.push_back({mollify_entry(owned, spec, epsilon, cacheable, table_nodes, kernel), {}});
    }
  }
  CoefficientField out(field.arity(), spec.d, spec.dprime, std::move(entries));
  out.bound_Km = field.bound_Km;
  out.smoothness_m = std::max(field.smoothness_m, 2);  // mollified fields are smooth
  out.is_deterministic = field.is_deterministic;
  out.time_invariant = field.time_invariant;
  out.label = field.label + "^eps";
  return out;
}

}  // namespace

ProblemSpec mollify_spec(const ProblemSpec& spec, double epsilon, int table_nodes) {
  if (epsilon <= 0.0) throw DomainError("mollify_spec: epsilon must be positive");
  MollifierKernel kernel(spec.d);
  ProblemSpec out = spec;
  out.name = spec.name + "~eps=" + std::to_string(epsilon);
  out.a = mollify_coefficient(spec.a, spec, epsilon, table_nodes, kernel);
  out.b = mollify_coefficient(spec.b, spec, epsilon, table_nodes, kernel);
  out.c = mollify_coefficient(spec.c, spec, epsilon, table_nodes, kernel);
  out.sigma = mollify_coefficient(spec.sigma, spec, epsilon, table_nodes, kernel);
  out.nu = mollify_coefficient(spec.nu, spec, epsilon, table_nodes, kernel);

  // Terminal condition.
  {
    auto phi = spec.phi;
    if (spec.d == 1) {
      auto f1 = [phi](const double* x) { return phi.value(x); };
      auto direct = mollify_field(f1, epsilon, kernel);
      auto table = std::make_shared<Table1d>();
      table->lo = spec.domain.lo[0] - epsilon;
      table->hi = spec.domain.hi[0] + epsilon;
      const int n = std::max(table_nodes, 9);
      table->step = (table->hi - table->lo) / (n - 1);
      table->values.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const double xi = table->lo + i * table->step;
        table->values[static_cast<std::size_t>(i)] = direct(&xi);
      }
      out.phi.f = [table](const double* x) { return (*table)(x[0]); };
      out.phi.df = nullptr;
    } else {
      auto f = [phi](const double* x) { return phi.value(x); };
      auto moll = mollify_field(f, epsilon, kernel);
      out.phi.f = [moll](const double* x) { return moll(x); };
      out.phi.df = nullptr;
    }
  }

  // Driver: mollify in x for each frozen (t, v, r).
  if (!spec.driver.is_zero()) {
    auto f = spec.driver.f;
    auto kern = std::make_shared<MollifierKernel>(kernel);
    const double eps = epsilon;
    out.driver.f = [f, eps, kern](double t, const double* x, double v, const double* r) {
      auto fx = [&](const double* xx) { return f(t, xx, v, r); };
      return mollify_field(fx, eps, *kern)(x);
    };
    out.driver.fv = nullptr;
  }
  return out;
}

}  // namespace fbspde
