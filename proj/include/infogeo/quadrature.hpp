#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "infogeo/density.hpp"
#include "infogeo/errors.hpp"
#include "infogeo/points.hpp"

namespace infogeo {

enum class QuadScheme {
  gauss_hermite_tensor,
  trapezoid_truncated,
};

inline std::string to_string(QuadScheme s) {
  return s == QuadScheme::gauss_hermite_tensor ? "gauss_hermite_tensor"
                                               : "trapezoid_truncated";
}

inline QuadScheme quad_scheme_from_string(const std::string& s) {
  if (s == "gauss_hermite_tensor") return QuadScheme::gauss_hermite_tensor;
  if (s == "trapezoid_truncated") return QuadScheme::trapezoid_truncated;
  throw std::invalid_argument("unknown quadrature scheme '" + s + "'");
}

/// Tensor-grid integration plan. `truncation_radius` is measured in units of
/// `envelope_scale` and only affects the trapezoid scheme; the Gauss-Hermite
/// scheme maps nodes through x = center + sqrt(2) * envelope_scale * t so
/// that a width-`envelope_scale` Gaussian becomes a polynomial integrand.
struct QuadratureSpec {
  QuadScheme scheme = QuadScheme::gauss_hermite_tensor;
  int nodes_per_axis = 64;
  double truncation_radius = 8.0;
  std::vector<double> center;  // empty means the origin
  double envelope_scale = 1.0;

  /// Default plan for a family at theta: 64-node Gauss-Hermite grid centered
  /// on the real part of the family mean, scaled to the family envelope.
  static QuadratureSpec defaults_for(const DensityFamily& family,
                                     const ParamPoint& theta) {
    QuadratureSpec spec;
    spec.center = family.grid_center(theta).coords();
    spec.envelope_scale = family.envelope_scale;
    return spec;
  }
};

struct IntegralResult {
  Complex value{0.0, 0.0};
  std::int64_t node_count = 0;
  QuadScheme scheme_used = QuadScheme::gauss_hermite_tensor;
  /// Zero unless produced by refine(), where it is |coarse - fine|.
  double estimated_error = 0.0;
};

struct HermiteNode {
  double node = 0.0;
  double weight = 0.0;
};

/// Gauss-Hermite rule for integrals against exp(-t^2): n nodes exact for
/// polynomials of degree <= 2n-1. Computed by Golub-Welsch on the Jacobi
/// matrix of the physicists' Hermite polynomials, then symmetrized so that
/// node[i] == -node[n-1-i] holds exactly.
inline std::vector<HermiteNode> hermite_nodes(int n) {
  if (n < 1 || n > 200) {
    throw std::invalid_argument("hermite_nodes: n must be in [1, 200], got " +
                                std::to_string(n));
  }
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  if (n == 1) return {{0.0, sqrt_pi}};

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub,
                                Eigen::ComputeEigenvectors);

  std::vector<HermiteNode> rule(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule[static_cast<std::size_t>(i)] = {solver.eigenvalues()(i),
                                         sqrt_pi * v0 * v0};
  }
  for (int i = 0, j = n - 1; i < j; ++i, --j) {
    const double node = 0.5 * (rule[j].node - rule[i].node);
    const double weight = 0.5 * (rule[i].weight + rule[j].weight);
    rule[static_cast<std::size_t>(i)] = {-node, weight};
    rule[static_cast<std::size_t>(j)] = {node, weight};
  }
  if (n % 2 == 1) rule[static_cast<std::size_t>(n / 2)].node = 0.0;
  return rule;
}

namespace detail {

struct AxisRule {
  std::vector<double> x;
  std::vector<double> w;  // Lebesgue weights, Gaussian factor multiplied back
};

inline AxisRule axis_rule(const QuadratureSpec& spec, double center) {
  const int n = spec.nodes_per_axis;
  AxisRule ax;
  ax.x.resize(static_cast<std::size_t>(n));
  ax.w.resize(static_cast<std::size_t>(n));
  if (spec.scheme == QuadScheme::gauss_hermite_tensor) {
    const double s = spec.envelope_scale * std::numbers::sqrt2;
    const auto rule = hermite_nodes(n);
    for (int i = 0; i < n; ++i) {
      const double t = rule[static_cast<std::size_t>(i)].node;
      ax.x[static_cast<std::size_t>(i)] = center + s * t;
      ax.w[static_cast<std::size_t>(i)] =
          rule[static_cast<std::size_t>(i)].weight * std::exp(t * t) * s;
    }
  } else {
    // Symmetric uniform grid of step 2R/n with trapezoidal end weights.
    const double radius = spec.truncation_radius * spec.envelope_scale;
    if (n == 1) {
      ax.x[0] = center;
      ax.w[0] = 2.0 * radius;
      return ax;
    }
    const double h = 2.0 * radius / n;
    for (int i = 0; i < n; ++i) {
      ax.x[static_cast<std::size_t>(i)] =
          center + (i - 0.5 * (n - 1)) * h;
      ax.w[static_cast<std::size_t>(i)] =
          (i == 0 || i == n - 1) ? 0.5 * h : h;
    }
  }
  return ax;
}

struct KahanComplex {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};
  void add(Complex v) {
    const Complex y = v - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

inline void check_grid_args(int dims, const QuadratureSpec& spec) {
  if (dims < 1) throw std::invalid_argument("integrate: dims must be >= 1");
  if (dims > 6) {
    throw std::invalid_argument(
        "integrate: tensor schemes are capped at 6 dimensions, got " +
        std::to_string(dims));
  }
  if (spec.nodes_per_axis < 1) {
    throw std::invalid_argument("integrate: nodes_per_axis must be >= 1");
  }
  if (!(spec.truncation_radius > 0.0)) {
    throw std::invalid_argument("integrate: truncation_radius must be > 0");
  }
  if (!(spec.envelope_scale > 0.0)) {
    throw std::invalid_argument("integrate: envelope_scale must be > 0");
  }
  if (!spec.center.empty() &&
      static_cast<int>(spec.center.size()) != dims) {
    throw std::invalid_argument("integrate: center has dimension " +
                                std::to_string(spec.center.size()) +
                                ", expected " + std::to_string(dims));
  }
  double nodes = 1.0;
  for (int d = 0; d < dims; ++d) nodes *= spec.nodes_per_axis;
  if (nodes > 1e8) {
    throw BudgetExceededError("integrate: node budget exceeded (" +
                              std::to_string(spec.nodes_per_axis) + "^" +
                              std::to_string(dims) + " > 1e8)");
  }
}

inline std::string format_point(const std::vector<double>& coords) {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ", ";
    out += format_double(coords[i]);
  }
  return out + ")";
}

/// Single pass over the tensor grid accumulating `m` integrand components.
/// Nodes are visited in a fixed lexicographic order and summed with Kahan
/// compensation, so results are deterministic for a given spec.
template <class Eval>
  requires std::invocable<Eval&, const SamplePoint&, std::vector<Complex>&>
std::vector<Complex> tensor_accumulate(int dims, int m,
                                       const QuadratureSpec& spec,
                                       Eval&& eval) {
  check_grid_args(dims, spec);
  const int n = spec.nodes_per_axis;

  std::vector<AxisRule> axes;
  axes.reserve(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) {
    axes.push_back(axis_rule(spec, spec.center.empty() ? 0.0 : spec.center[d]));
  }

  std::vector<KahanComplex> acc(static_cast<std::size_t>(m));
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  std::vector<double> coords(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) coords[d] = axes[d].x[0];
  std::vector<Complex> vals(static_cast<std::size_t>(m));

  std::int64_t total = 1;
  for (int d = 0; d < dims; ++d) total *= n;

  for (std::int64_t node = 0; node < total; ++node) {
    double w = 1.0;
    for (int d = 0; d < dims; ++d) w *= axes[d].w[idx[d]];

    const SamplePoint x(coords);
    eval(x, vals);
    for (int k = 0; k < m; ++k) {
      const Complex v = vals[static_cast<std::size_t>(k)];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw NumericError("integrate: non-finite integrand at point " +
                           format_point(coords));
      }
      acc[static_cast<std::size_t>(k)].add(v * w);
    }

    for (int d = dims - 1; d >= 0; --d) {
      if (++idx[d] < n) {
        coords[d] = axes[d].x[idx[d]];
        break;
      }
      idx[d] = 0;
      coords[d] = axes[d].x[0];
    }
  }

  std::vector<Complex> out(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) out[k] = acc[static_cast<std::size_t>(k)].sum;
  return out;
}

}  // namespace detail

/// Integrate a complex-valued function over R^dims against plain Lebesgue
/// measure. Deterministic for a fixed spec.
template <class F>
  requires std::invocable<F&, const SamplePoint&>
IntegralResult integrate(F&& f, int dims, const QuadratureSpec& spec) {
  auto values = detail::tensor_accumulate(
      dims, 1, spec, [&f](const SamplePoint& x, std::vector<Complex>& vals) {
        vals[0] = f(x);
      });
  IntegralResult r;
  r.value = values[0];
  r.node_count = 1;
  for (int d = 0; d < dims; ++d) r.node_count *= spec.nodes_per_axis;
  r.scheme_used = spec.scheme;
  return r;
}

/// Integrate `m` components in one grid pass; the workhorse behind the
/// metric integrals, where the density and scores are shared across entries.
template <class Eval>
  requires std::invocable<Eval&, const SamplePoint&, std::vector<Complex>&>
std::vector<Complex> integrate_many(Eval&& eval, int dims, int m,
                                    const QuadratureSpec& spec) {
  if (m < 1) throw std::invalid_argument("integrate_many: m must be >= 1");
  return detail::tensor_accumulate(dims, m, spec, std::forward<Eval>(eval));
}

/// Run the rule at nodes_per_axis and at twice that; return the finer value
/// with estimated_error = |difference|.
template <class F>
  requires std::invocable<F&, const SamplePoint&>
IntegralResult refine(F&& f, int dims, const QuadratureSpec& spec) {
  const IntegralResult coarse = integrate(f, dims, spec);
  QuadratureSpec fine_spec = spec;
  fine_spec.nodes_per_axis = 2 * spec.nodes_per_axis;
  IntegralResult fine = integrate(f, dims, fine_spec);
  fine.estimated_error = std::abs(fine.value - coarse.value);
  return fine;
}

}  // namespace infogeo
