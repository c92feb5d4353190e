#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "infogeo/density.hpp"
#include "infogeo/errors.hpp"
#include "infogeo/points.hpp"
#include "infogeo/quadrature.hpp"
#include "infogeo/rng.hpp"

namespace infogeo {

enum class MetricBackend { analytic, quadrature, monte_carlo };

inline std::string to_string(MetricBackend b) {
  switch (b) {
    case MetricBackend::analytic:
      return "analytic";
    case MetricBackend::quadrature:
      return "quadrature";
    default:
      return "monte_carlo";
  }
}

enum class ScoreSource { analytic, finite_difference };

/// Validated real symmetric metric with provenance. For metrics obtained
/// from a complex-valued integral the discarded imaginary magnitude is
/// recorded in max_imag_discarded; the symmetrization magnitude in
/// max_asym_discarded.
struct MetricTensor {
  Eigen::MatrixXd entries;
  MetricBackend backend = MetricBackend::analytic;
  double rescale_factor = 1.0;
  double max_imag_discarded = 0.0;
  double max_asym_discarded = 0.0;

  int dim() const { return static_cast<int>(entries.rows()); }
};

inline constexpr double kDefaultRealifyTol = 1e-8;
inline constexpr double kDegenerateDensityFloor = 1e-300;

/// Default central-difference step for d/dtheta_mu.
inline double fd_step(double theta_mu) {
  return 1e-5 * std::max(1.0, std::abs(theta_mu));
}

/// Central-difference score (p(theta+h e_mu, x) - p(theta-h e_mu, x)) /
/// (2h p(theta, x)). Second-order accurate in h.
inline Complex fd_score(const DensityFamily& family, const ParamPoint& theta,
                        const SamplePoint& x, int mu, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_score: h must be > 0");
  detail::check_param(family, theta);
  detail::check_sample(family, x);
  if (mu < 0 || mu >= family.param_dim) {
    throw std::invalid_argument("fd_score: axis out of range");
  }
  const Complex p = family.density(theta, x);
  if (std::abs(p) < kDegenerateDensityFloor) {
    throw DegenerateDensityError(family.name +
                                 ": density vanishes at working precision");
  }
  const Complex plus = family.density(theta.shifted(mu, h), x);
  const Complex minus = family.density(theta.shifted(mu, -h), x);
  return (plus - minus) / (2.0 * h * p);
}

/// Closed-form metric as reported by the family.
inline MetricTensor fisher_analytic(const DensityFamily& family,
                                    const ParamPoint& theta) {
  detail::check_param(family, theta);
  if (!family.has_analytic_metric()) {
    throw CapabilityMissingError(family.name + ": no analytic metric available");
  }
  MetricTensor g;
  g.entries = family.analytic_metric(theta);
  g.backend = MetricBackend::analytic;
  return g;
}

namespace detail {

/// Discard sub-tolerance imaginary parts, then symmetrize. Throws when any
/// imaginary part reaches the tolerance, naming the offending entry.
inline MetricTensor realify(const Eigen::MatrixXcd& raw, MetricBackend backend,
                            double tol) {
  const int d = static_cast<int>(raw.rows());
  double max_imag = 0.0;
  int bad_r = 0, bad_c = 0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const double im = std::abs(raw(r, c).imag());
      if (im > max_imag) {
        max_imag = im;
        bad_r = r;
        bad_c = c;
      }
    }
  }
  if (max_imag >= tol) {
    throw RealificationError(
        "metric entry (" + std::to_string(bad_r) + "," + std::to_string(bad_c) +
        ") has imaginary residue " + format_double(max_imag) +
        " >= tolerance " + format_double(tol));
  }
  const Eigen::MatrixXd real_part = raw.real();
  MetricTensor g;
  g.entries = 0.5 * (real_part + real_part.transpose());
  g.backend = backend;
  g.max_imag_discarded = max_imag;
  g.max_asym_discarded =
      0.5 * (real_part - real_part.transpose()).cwiseAbs().maxCoeff();
  return g;
}

}  // namespace detail

/// Metric entry (mu, nu) = integral of p * score_mu * score_nu over the
/// sample space, all d(d+1)/2 independent entries accumulated in one grid
/// pass. The raw complex matrix is realified at `realify_tol` and
/// symmetrized. Grid points where the density vanishes at working precision
/// contribute zero (only reachable with finite-difference scores on
/// truncated grids).
inline MetricTensor fisher_quadrature(const DensityFamily& family,
                                      const ParamPoint& theta,
                                      const QuadratureSpec& spec,
                                      ScoreSource score_source,
                                      double realify_tol = kDefaultRealifyTol) {
  detail::check_param(family, theta);
  if (score_source == ScoreSource::analytic && !family.has_score()) {
    throw CapabilityMissingError(family.name +
                                 ": analytic score requested but not available");
  }
  const int d = family.param_dim;
  const int m = d * (d + 1) / 2;

  std::vector<double> steps(static_cast<std::size_t>(d));
  for (int mu = 0; mu < d; ++mu) steps[mu] = fd_step(theta[mu]);

  std::vector<Complex> scores(static_cast<std::size_t>(d));
  auto eval = [&](const SamplePoint& x, std::vector<Complex>& out) {
    const Complex p = family.density(theta, x);
    if (std::abs(p) < kDegenerateDensityFloor) {
      std::fill(out.begin(), out.end(), Complex(0.0, 0.0));
      return;
    }
    if (score_source == ScoreSource::analytic) {
      for (int mu = 0; mu < d; ++mu) scores[mu] = family.score(theta, x, mu);
    } else {
      for (int mu = 0; mu < d; ++mu) {
        const double h = steps[mu];
        const Complex plus = family.density(theta.shifted(mu, h), x);
        const Complex minus = family.density(theta.shifted(mu, -h), x);
        scores[mu] = (plus - minus) / (2.0 * h * p);
      }
    }
    int k = 0;
    for (int mu = 0; mu < d; ++mu) {
      for (int nu = mu; nu < d; ++nu) {
        out[k++] = p * scores[mu] * scores[nu];
      }
    }
  };

  const auto flat = integrate_many(eval, family.sample_dim, m, spec);

  Eigen::MatrixXcd raw(d, d);
  int k = 0;
  for (int mu = 0; mu < d; ++mu) {
    for (int nu = mu; nu < d; ++nu) {
      raw(mu, nu) = flat[static_cast<std::size_t>(k)];
      raw(nu, mu) = flat[static_cast<std::size_t>(k)];
      ++k;
    }
  }
  return detail::realify(raw, MetricBackend::quadrature, realify_tol);
}

/// Convenience overload: analytic scores when the family has them, finite
/// differences otherwise.
inline MetricTensor fisher_quadrature(const DensityFamily& family,
                                      const ParamPoint& theta,
                                      const QuadratureSpec& spec,
                                      double realify_tol = kDefaultRealifyTol) {
  return fisher_quadrature(family, theta, spec,
                           family.has_score() ? ScoreSource::analytic
                                              : ScoreSource::finite_difference,
                           realify_tol);
}

struct MonteCarloEstimate {
  MetricTensor metric;
  std::int64_t sample_count = 0;
  Eigen::MatrixXd standard_errors;
  std::uint64_t seed = 0;
};

/// Sampling estimator of the metric: empirical mean of score_mu * score_nu
/// over draws from p_theta. Deterministic for a fixed seed; per-sample
/// streams are derived from (seed, index), so the result does not depend on
/// evaluation order. Complex families are rejected: a complex density is not
/// a samplable probability distribution, which is precisely why the
/// indefinite-metric case has no Monte Carlo route.
inline MonteCarloEstimate fisher_monte_carlo(const DensityFamily& family,
                                             const ParamPoint& theta,
                                             std::int64_t n_samples,
                                             std::uint64_t seed) {
  detail::check_param(family, theta);
  if (!family.is_real_valued) {
    throw UnsupportedForComplexError(
        family.name + ": Monte Carlo estimation needs a real, samplable density");
  }
  if (!family.has_sampler()) {
    throw CapabilityMissingError(family.name + ": no sampler available");
  }
  if (n_samples < 2) {
    throw std::invalid_argument("fisher_monte_carlo: need at least 2 samples");
  }

  const int d = family.param_dim;
  const bool analytic = family.has_score();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(d, d);
  double max_imag = 0.0;
  std::vector<double> s(static_cast<std::size_t>(d));

  for (std::int64_t i = 0; i < n_samples; ++i) {
    const SamplePoint x =
        family.sampler(theta, seed, static_cast<std::uint64_t>(i));
    for (int mu = 0; mu < d; ++mu) {
      const Complex sc = analytic
                             ? family.score(theta, x, mu)
                             : fd_score(family, theta, x, mu, fd_step(theta[mu]));
      max_imag = std::max(max_imag, std::abs(sc.imag()));
      s[static_cast<std::size_t>(mu)] = sc.real();
    }
    for (int mu = 0; mu < d; ++mu) {
      for (int nu = mu; nu < d; ++nu) {
        const double y = s[mu] * s[nu];
        sum(mu, nu) += y;
        sum_sq(mu, nu) += y * y;
      }
    }
  }

  const double n = static_cast<double>(n_samples);
  MonteCarloEstimate est;
  est.sample_count = n_samples;
  est.seed = seed;
  est.metric.entries = Eigen::MatrixXd(d, d);
  est.standard_errors = Eigen::MatrixXd(d, d);
  for (int mu = 0; mu < d; ++mu) {
    for (int nu = mu; nu < d; ++nu) {
      const double mean = sum(mu, nu) / n;
      const double var =
          std::max(0.0, (sum_sq(mu, nu) - n * mean * mean) / (n - 1.0));
      est.metric.entries(mu, nu) = mean;
      est.metric.entries(nu, mu) = mean;
      const double se = std::sqrt(var / n);
      est.standard_errors(mu, nu) = se;
      est.standard_errors(nu, mu) = se;
    }
  }
  est.metric.backend = MetricBackend::monte_carlo;
  est.metric.max_imag_discarded = max_imag;
  return est;
}

/// Multiply every entry by `factor`, tracking the cumulative rescale.
/// factor = a^2 undoes the 1/a^2 of the location families.
inline MetricTensor rescale(const MetricTensor& g, double factor) {
  if (!(factor > 0.0)) {
    throw std::invalid_argument("rescale: factor must be > 0");
  }
  MetricTensor out = g;
  out.entries *= factor;
  out.rescale_factor *= factor;
  return out;
}

struct ReparametrizationCheck {
  MetricTensor g_original;
  MetricTensor g_pulled_back;
  double max_deviation = 0.0;
};

/// Re-coordinatize the family by phi -> theta = J phi, recompute the metric
/// in phi coordinates at the phi matching `theta`, and compare against the
/// tensor transformation law J^T g J.
inline ReparametrizationCheck reparametrize_check(const DensityFamily& family,
                                                  const ParamPoint& theta,
                                                  const Eigen::MatrixXd& jacobian,
                                                  const QuadratureSpec& spec) {
  detail::check_param(family, theta);
  const int d = family.param_dim;
  if (jacobian.rows() != d || jacobian.cols() != d) {
    throw std::invalid_argument("reparametrize_check: jacobian must be " +
                                std::to_string(d) + "x" + std::to_string(d));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian);
  const double smin = svd.singularValues()(d - 1);
  if (!(smin > 0.0) || svd.singularValues()(0) / smin >= 1e8) {
    throw std::invalid_argument(
        "reparametrize_check: jacobian is singular or near-singular");
  }

  const Eigen::MatrixXd j = jacobian;
  auto to_theta = [j, d](const ParamPoint& phi) {
    Eigen::VectorXd p(d);
    for (int i = 0; i < d; ++i) p(i) = phi[i];
    const Eigen::VectorXd t = j * p;
    return ParamPoint(std::vector<double>(t.data(), t.data() + d));
  };

  DensityFamily pulled = family;
  pulled.name = family.name + "|affine";
  pulled.analytic_metric = nullptr;
  pulled.sampler = nullptr;
  pulled.density = [family, to_theta](const ParamPoint& phi,
                                      const SamplePoint& x) {
    return family.density(to_theta(phi), x);
  };
  if (family.has_score()) {
    pulled.score = [family, to_theta, j, d](const ParamPoint& phi,
                                            const SamplePoint& x, int mu) {
      const ParamPoint th = to_theta(phi);
      Complex sum(0.0, 0.0);
      for (int nu = 0; nu < d; ++nu) sum += j(nu, mu) * family.score(th, x, nu);
      return sum;
    };
  } else {
    pulled.score = nullptr;
  }
  pulled.grid_center = [family, to_theta](const ParamPoint& phi) {
    return family.grid_center(to_theta(phi));
  };

  Eigen::VectorXd t(d);
  for (int i = 0; i < d; ++i) t(i) = theta[i];
  const Eigen::VectorXd phi_vec = jacobian.colPivHouseholderQr().solve(t);
  const ParamPoint phi(std::vector<double>(phi_vec.data(), phi_vec.data() + d));

  ReparametrizationCheck check;
  check.g_original = fisher_quadrature(family, theta, spec);
  check.g_pulled_back = fisher_quadrature(pulled, phi, spec);
  const Eigen::MatrixXd expected =
      jacobian.transpose() * check.g_original.entries * jacobian;
  check.max_deviation =
      (check.g_pulled_back.entries - expected).cwiseAbs().maxCoeff();
  return check;
}

}  // namespace infogeo
