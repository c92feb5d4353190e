#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "infogeo/errors.hpp"
#include "infogeo/points.hpp"
#include "infogeo/rng.hpp"

namespace infogeo {

using Complex = std::complex<double>;

/// Finite distribution over message indices. Validated on construction:
/// nonnegative entries summing to one within 1e-12.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> probs)
      : probs_(std::move(probs)) {
    double sum = 0.0;
    for (double p : probs_) {
      if (!(p >= 0.0)) {
        throw std::invalid_argument(
            "DiscreteDistribution: probabilities must be nonnegative");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument(
          "DiscreteDistribution: probabilities must sum to 1 (got " +
          std::to_string(sum) + ")");
    }
  }
  DiscreteDistribution(std::initializer_list<double> probs)
      : DiscreteDistribution(std::vector<double>(probs)) {}

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Capability record for a parametric family of (possibly complex-valued)
/// densities p_theta(x). Families are immutable once built; density and score
/// evaluation are pure functions and safe to call concurrently.
///
/// Optional capabilities are null std::function members: an analytic score
/// (1/p) dp/dtheta_mu, a closed-form metric, and a sampler. `grid_center`
/// maps theta to the real part of the family's mean and is what quadrature
/// grids are centered on by default.
struct DensityFamily {
  std::string name;
  int param_dim = 0;
  int sample_dim = 0;
  bool is_real_valued = true;
  /// Gaussian width a; also the unit for quadrature truncation radii.
  double envelope_scale = 1.0;

  std::function<Complex(const ParamPoint&, const SamplePoint&)> density;
  std::function<Complex(const ParamPoint&, const SamplePoint&, int)> score;
  std::function<Eigen::MatrixXd(const ParamPoint&)> analytic_metric;
  std::function<SamplePoint(const ParamPoint&)> grid_center;
  std::function<SamplePoint(const ParamPoint&, std::uint64_t, std::uint64_t)>
      sampler;  // (theta, seed, sample index) -> draw

  bool has_score() const { return static_cast<bool>(score); }
  bool has_analytic_metric() const { return static_cast<bool>(analytic_metric); }
  bool has_sampler() const { return static_cast<bool>(sampler); }
};

namespace detail {

inline void check_param(const DensityFamily& f, const ParamPoint& theta) {
  if (theta.dim() != f.param_dim) {
    throw std::invalid_argument(f.name + ": parameter point has dimension " +
                                std::to_string(theta.dim()) + ", expected " +
                                std::to_string(f.param_dim));
  }
}

inline void check_sample(const DensityFamily& f, const SamplePoint& x) {
  if (x.dim() != f.sample_dim) {
    throw std::invalid_argument(f.name + ": sample point has dimension " +
                                std::to_string(x.dim()) + ", expected " +
                                std::to_string(f.sample_dim));
  }
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace detail

/// p_theta(x) with dimension checks and a finiteness guard.
inline Complex evaluate_density(const DensityFamily& family,
                                const ParamPoint& theta, const SamplePoint& x) {
  detail::check_param(family, theta);
  detail::check_sample(family, x);
  const Complex p = family.density(theta, x);
  if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
    throw NumericError(family.name + ": density overflowed at the given point");
  }
  return p;
}

/// Analytic score (1/p) dp/dtheta_mu. Throws CapabilityMissingError when the
/// family carries no closed-form score (callers then fall back to finite
/// differences, see fisher.hpp).
inline Complex evaluate_score(const DensityFamily& family,
                              const ParamPoint& theta, const SamplePoint& x,
                              int mu) {
  detail::check_param(family, theta);
  detail::check_sample(family, x);
  if (mu < 0 || mu >= family.param_dim) {
    throw std::invalid_argument(family.name + ": score axis out of range");
  }
  if (!family.has_score()) {
    throw CapabilityMissingError(family.name + ": no analytic score available");
  }
  return family.score(theta, x, mu);
}

/// Isotropic location Gaussian in `dim` dimensions with width `a`:
///   p_theta(x) = exp(-|x - theta|^2 / (2 a^2)) / (2 pi a^2)^(dim/2).
/// Score is (x_mu - theta_mu)/a^2 and the metric is identity/a^2.
inline DensityFamily make_gaussian(int dim, double a) {
  if (dim < 1) throw std::invalid_argument("make_gaussian: dim must be >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("make_gaussian: a must be > 0");

  DensityFamily f;
  f.name = "gaussian:" + std::to_string(dim) + ":" + detail::format_double(a);
  f.param_dim = dim;
  f.sample_dim = dim;
  f.is_real_valued = true;
  f.envelope_scale = a;

  const double inv_two_a2 = 1.0 / (2.0 * a * a);
  const double norm =
      std::pow(2.0 * std::numbers::pi * a * a, -0.5 * static_cast<double>(dim));
  f.density = [dim, inv_two_a2, norm](const ParamPoint& theta,
                                      const SamplePoint& x) {
    double ss = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double d = x[i] - theta[i];
      ss += d * d;
    }
    return Complex(norm * std::exp(-ss * inv_two_a2), 0.0);
  };

  const double inv_a2 = 1.0 / (a * a);
  f.score = [inv_a2](const ParamPoint& theta, const SamplePoint& x, int mu) {
    return Complex((x[mu] - theta[mu]) * inv_a2, 0.0);
  };

  f.analytic_metric = [dim, inv_a2](const ParamPoint&) {
    return Eigen::MatrixXd(inv_a2 *
                           Eigen::MatrixXd::Identity(dim, dim));
  };

  f.grid_center = [](const ParamPoint& theta) {
    return SamplePoint(theta.coords());
  };

  f.sampler = [dim, a](const ParamPoint& theta, std::uint64_t seed,
                       std::uint64_t index) {
    SplitMix64 rng(stream_key(seed, index));
    std::vector<double> c(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; i += 2) {
      double z0 = 0.0, z1 = 0.0;
      standard_normal_pair(rng, z0, z1);
      c[static_cast<std::size_t>(i)] = theta[i] + a * z0;
      if (i + 1 < dim) c[static_cast<std::size_t>(i + 1)] = theta[i + 1] + a * z1;
    }
    return SamplePoint(std::move(c));
  };

  return f;
}

/// Four-dimensional Gaussian whose axis-0 parameter enters as an imaginary
/// shift:
///   p_theta(x) = exp(-[(x0 - i theta0)^2 + sum_k (xk - thetak)^2] / (2 a^2))
///                / (2 pi a^2)^2.
/// Not real-valued and not samplable; still normalized to 1 + 0i for every
/// real theta. Score on axis 0 is i (x0 - i theta0)/a^2, the metric is
/// diag(-1, 1, 1, 1)/a^2.
inline DensityFamily make_complex_gaussian(double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("make_complex_gaussian: a must be > 0");
  }
  constexpr int dim = 4;

  DensityFamily f;
  f.name = "complex-gaussian:" + detail::format_double(a);
  f.param_dim = dim;
  f.sample_dim = dim;
  f.is_real_valued = false;
  f.envelope_scale = a;

  const double inv_two_a2 = 1.0 / (2.0 * a * a);
  const double norm = std::pow(2.0 * std::numbers::pi * a * a, -2.0);
  f.density = [inv_two_a2, norm](const ParamPoint& theta, const SamplePoint& x) {
    const Complex z0(x[0], -theta[0]);  // x0 - i theta0
    Complex sum = z0 * z0;
    for (int k = 1; k < dim; ++k) {
      const double d = x[k] - theta[k];
      sum += d * d;
    }
    return norm * std::exp(-sum * inv_two_a2);
  };

  const double inv_a2 = 1.0 / (a * a);
  f.score = [inv_a2](const ParamPoint& theta, const SamplePoint& x, int mu) {
    if (mu == 0) {
      return Complex(0.0, 1.0) * Complex(x[0], -theta[0]) * inv_a2;
    }
    return Complex((x[mu] - theta[mu]) * inv_a2, 0.0);
  };

  f.analytic_metric = [inv_a2](const ParamPoint&) {
    Eigen::MatrixXd g = inv_a2 * Eigen::MatrixXd::Identity(dim, dim);
    g(0, 0) = -inv_a2;
    return g;
  };

  // The mean on axis 0 is i theta0; its real part is 0.
  f.grid_center = [](const ParamPoint& theta) {
    return SamplePoint({0.0, theta[1], theta[2], theta[3]});
  };

  return f;
}

namespace detail {

inline double parse_strict_double(const std::string& s, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(ctx + ": cannot parse number '" + s + "'");
  }
}

inline int parse_strict_int(const std::string& s, const std::string& ctx) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(ctx + ": cannot parse integer '" + s + "'");
  }
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

using FamilySpec = std::variant<DensityFamily, DiscreteDistribution>;

/// Build a family from its string id:
///   "gaussian:<dim>:<a>", "complex-gaussian:<a>", "discrete:[p0,p1,...]".
inline FamilySpec parse_family(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);

  if (kind == "gaussian") {
    const auto parts = detail::split(rest, ':');
    if (parts.size() != 2) {
      throw std::invalid_argument("family spec '" + spec +
                                  "': expected gaussian:<dim>:<a>");
    }
    const int dim = detail::parse_strict_int(parts[0], spec);
    const double a = detail::parse_strict_double(parts[1], spec);
    return make_gaussian(dim, a);
  }
  if (kind == "complex-gaussian") {
    if (rest.empty()) {
      throw std::invalid_argument("family spec '" + spec +
                                  "': expected complex-gaussian:<a>");
    }
    return make_complex_gaussian(detail::parse_strict_double(rest, spec));
  }
  if (kind == "discrete") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']') {
      throw std::invalid_argument("family spec '" + spec +
                                  "': expected discrete:[p0,p1,...]");
    }
    std::vector<double> probs;
    for (const auto& tok : detail::split(rest.substr(1, rest.size() - 2), ',')) {
      probs.push_back(detail::parse_strict_double(tok, spec));
    }
    return DiscreteDistribution(std::move(probs));
  }
  throw std::invalid_argument("family spec '" + spec + "': unknown kind '" +
                              kind + "'");
}

}  // namespace infogeo
