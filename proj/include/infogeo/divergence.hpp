#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "infogeo/density.hpp"
#include "infogeo/errors.hpp"
#include "infogeo/fisher.hpp"
#include "infogeo/points.hpp"
#include "infogeo/quadrature.hpp"
#include "infogeo/rng.hpp"

namespace infogeo {

enum class EntropyUnit { bits, nats };

/// -sum p(i) log p(i), with 0 log 0 := 0. Bits use the base-2 logarithm.
inline double shannon_entropy(const DiscreteDistribution& p, EntropyUnit unit) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  }
  if (unit == EntropyUnit::bits) h /= std::numbers::ln2;
  // Clamp the -0.0 that a deterministic distribution produces.
  return h == 0.0 ? 0.0 : h;
}

/// KL-type quantity in nats. `is_infinite` marks a support violation
/// (some g(i) > 0 where p(i) = 0) rather than throwing.
struct DivergenceValue {
  double value = 0.0;
  bool is_infinite = false;
};

/// sum g(i) log(g(i)/p(i)) in nats; g(i) = 0 terms contribute zero.
inline DivergenceValue kl_discrete(const DiscreteDistribution& g,
                                   const DiscreteDistribution& p) {
  if (g.size() != p.size()) {
    throw std::invalid_argument("kl_discrete: distributions have sizes " +
                                std::to_string(g.size()) + " and " +
                                std::to_string(p.size()));
  }
  DivergenceValue out;
  for (int i = 0; i < g.size(); ++i) {
    if (g[i] == 0.0) continue;
    if (p[i] == 0.0) {
      out.is_infinite = true;
      out.value = std::numeric_limits<double>::infinity();
      return out;
    }
    out.value += g[i] * std::log(g[i] / p[i]);
  }
  return out;
}

/// Continuous Kullback number I(q||p) = integral of q log(q/p). Defined for
/// real nonnegative densities only: the logarithm of a complex density is
/// multivalued and no branch is chosen here.
inline DivergenceValue kullback_number(const DensityFamily& q_family,
                                       const ParamPoint& theta_q,
                                       const DensityFamily& p_family,
                                       const ParamPoint& theta_p,
                                       const QuadratureSpec& spec) {
  if (q_family.sample_dim != p_family.sample_dim) {
    throw std::invalid_argument(
        "kullback_number: families have different sample dimensions");
  }
  if (!q_family.is_real_valued || !p_family.is_real_valued) {
    throw UnsupportedForComplexError(
        "kullback_number: log of a complex density is multivalued; only real "
        "families are supported");
  }
  detail::check_param(q_family, theta_q);
  detail::check_param(p_family, theta_p);

  bool support_violation = false;
  auto integrand = [&](const SamplePoint& x) {
    const double q = q_family.density(theta_q, x).real();
    if (q <= kDegenerateDensityFloor) return Complex(0.0, 0.0);
    const double p = p_family.density(theta_p, x).real();
    if (p <= 0.0) {
      support_violation = true;
      return Complex(0.0, 0.0);
    }
    return Complex(q * std::log(q / p), 0.0);
  };

  const IntegralResult r = integrate(integrand, q_family.sample_dim, spec);
  if (std::abs(r.value.imag()) >= 1e-10) {
    throw NumericError("kullback_number: imaginary residue " +
                       detail::format_double(r.value.imag()) +
                       " above discard tolerance");
  }
  DivergenceValue out;
  if (support_violation) {
    out.is_infinite = true;
    out.value = std::numeric_limits<double>::infinity();
  } else {
    out.value = r.value.real();
  }
  return out;
}

/// Comparison of I(p_{theta+eps v} || p_theta) against the quadratic form
/// 0.5 eps^2 v^T g v, over a ladder of epsilons.
struct ExpansionReport {
  std::vector<double> epsilons;
  std::vector<double> lhs;
  std::vector<double> quadratic_prediction;
  std::vector<double> residuals;
  /// Least-squares slope of log|residual| against log eps.
  double fitted_order = 0.0;
};

inline ExpansionReport expansion_residuals(const DensityFamily& family,
                                           const ParamPoint& theta,
                                           const std::vector<double>& v,
                                           const std::vector<double>& epsilons,
                                           const QuadratureSpec& spec,
                                           const MetricTensor& g) {
  detail::check_param(family, theta);
  if (static_cast<int>(v.size()) != family.param_dim) {
    throw std::invalid_argument("expansion_residuals: direction has dimension " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(family.param_dim));
  }
  double v_norm = 0.0;
  for (double vi : v) v_norm += vi * vi;
  if (!(v_norm > 0.0)) {
    throw std::invalid_argument("expansion_residuals: direction must be nonzero");
  }
  if (epsilons.size() < 3) {
    throw std::invalid_argument(
        "expansion_residuals: need at least 3 epsilons");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || !(epsilons[i] < 1.0)) {
      throw std::invalid_argument(
          "expansion_residuals: epsilons must lie in (0, 1)");
    }
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw std::invalid_argument(
          "expansion_residuals: epsilons must be sorted descending");
    }
  }
  if (g.dim() != family.param_dim) {
    throw std::invalid_argument("expansion_residuals: metric has dimension " +
                                std::to_string(g.dim()));
  }

  double vgv = 0.0;
  for (int mu = 0; mu < family.param_dim; ++mu) {
    for (int nu = 0; nu < family.param_dim; ++nu) {
      vgv += v[static_cast<std::size_t>(mu)] * g.entries(mu, nu) *
             v[static_cast<std::size_t>(nu)];
    }
  }

  ExpansionReport rep;
  rep.epsilons = epsilons;
  for (double eps : epsilons) {
    const ParamPoint shifted = theta.translated(v, eps);
    QuadratureSpec local = spec;
    local.center = family.grid_center(shifted).coords();
    const double lhs =
        kullback_number(family, shifted, family, theta, local).value;
    const double prediction = 0.5 * eps * eps * vgv;
    rep.lhs.push_back(lhs);
    rep.quadratic_prediction.push_back(prediction);
    rep.residuals.push_back(lhs - prediction);
  }

  // Log-log slope; residuals at rounding level are floored so the fit stays
  // finite (its value is meaningless there, and tests assert on the
  // residuals themselves in that regime).
  const auto n = static_cast<double>(epsilons.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double lx = std::log(epsilons[i]);
    const double ly = std::log(std::max(std::abs(rep.residuals[i]), 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  rep.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return rep;
}

/// Counters from throwing random triples at a candidate distance function:
/// positivity, symmetry and the triangle inequality, each allowed `slack`.
struct AxiomProbeReport {
  int triples = 0;
  int positivity_violations = 0;
  int symmetry_violations = 0;
  int triangle_violations = 0;
  double max_symmetry_gap = 0.0;
  double max_triangle_excess = 0.0;

  bool all_hold() const {
    return positivity_violations == 0 && symmetry_violations == 0 &&
           triangle_violations == 0;
  }
};

/// `sample(rng)` draws a point, `dist(a, b)` evaluates the candidate
/// distance. A true metric passes with slack at rounding level; the KL
/// divergence shows up with symmetry and triangle violations.
template <class SamplerFn, class DistanceFn>
AxiomProbeReport probe_distance_axioms(SamplerFn&& sample, DistanceFn&& dist,
                                       int n_triples, double slack,
                                       std::uint64_t seed) {
  if (n_triples < 1) {
    throw std::invalid_argument("probe_distance_axioms: need n_triples >= 1");
  }
  SplitMix64 rng(seed);
  AxiomProbeReport rep;
  rep.triples = n_triples;
  for (int i = 0; i < n_triples; ++i) {
    const auto a = sample(rng);
    const auto b = sample(rng);
    const auto c = sample(rng);
    const double dab = dist(a, b);
    const double dba = dist(b, a);
    const double dac = dist(a, c);
    const double dcb = dist(c, b);
    if (dab < -slack || dba < -slack || dac < -slack || dcb < -slack) {
      ++rep.positivity_violations;
    }
    const double gap = std::abs(dab - dba);
    if (gap > slack) {
      ++rep.symmetry_violations;
      rep.max_symmetry_gap = std::max(rep.max_symmetry_gap, gap);
    }
    const double excess = dab - (dac + dcb);
    if (excess > slack) {
      ++rep.triangle_violations;
      rep.max_triangle_excess = std::max(rep.max_triangle_excess, excess);
    }
  }
  return rep;
}

}  // namespace infogeo
