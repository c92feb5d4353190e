#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "infogeo/fisher.hpp"
#include "infogeo/points.hpp"

namespace infogeo {

/// Eigenvalue sign pattern of a metric at a stated zero tolerance.
struct SignatureReport {
  int n_negative = 0;
  int n_zero = 0;
  int n_positive = 0;
  std::vector<double> eigenvalues;  // ascending
  double zero_tolerance = 0.0;
};

/// Classify eigenvalues of the symmetric matrix; |lambda| < zero_tol counts
/// as zero.
inline SignatureReport signature(const MetricTensor& g, double zero_tol) {
  if (!(zero_tol > 0.0)) {
    throw std::invalid_argument("signature: zero_tol must be > 0");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.entries);
  SignatureReport rep;
  rep.zero_tolerance = zero_tol;
  rep.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + g.dim());
  for (double lambda : rep.eigenvalues) {
    if (std::abs(lambda) < zero_tol) {
      ++rep.n_zero;
    } else if (lambda < 0.0) {
      ++rep.n_negative;
    } else {
      ++rep.n_positive;
    }
  }
  return rep;
}

/// Default tolerance: 1e-9 relative to the largest |eigenvalue|.
inline SignatureReport signature(const MetricTensor& g) {
  const double scale = g.entries.cwiseAbs().maxCoeff();
  return signature(g, 1e-9 * std::max(scale, 1e-300));
}

enum class IntervalClass { spacelike, timelike, null_like };

inline std::string to_string(IntervalClass c) {
  switch (c) {
    case IntervalClass::spacelike:
      return "spacelike";
    case IntervalClass::timelike:
      return "timelike";
    default:
      return "null";
  }
}

/// Value of the bilinear form with its causal classification.
/// s^2 < 0 is not an error: magnitude is sqrt(|s^2|).
struct IntervalResult {
  double s_squared = 0.0;
  IntervalClass classification = IntervalClass::null_like;
  double magnitude = 0.0;
};

namespace detail {

inline constexpr double kIntervalClassTol = 1e-12;

/// g(A, B) accumulated so that swapping A and B reuses the exact same
/// floating-point operations: diagonal terms first, then paired
/// off-diagonal terms g_{mu nu} (A_mu B_nu + A_nu B_mu).
inline double bilinear_form(const Eigen::MatrixXd& g, const ParamPoint& a,
                            const ParamPoint& b) {
  const int d = static_cast<int>(g.rows());
  double sum = 0.0;
  for (int mu = 0; mu < d; ++mu) sum += g(mu, mu) * (a[mu] * b[mu]);
  for (int mu = 0; mu < d; ++mu) {
    for (int nu = mu + 1; nu < d; ++nu) {
      sum += g(mu, nu) * (a[mu] * b[nu] + a[nu] * b[mu]);
    }
  }
  return sum;
}

inline IntervalResult classify(double s_squared) {
  IntervalResult r;
  r.s_squared = s_squared;
  r.magnitude = std::sqrt(std::abs(s_squared));
  if (std::abs(s_squared) <= kIntervalClassTol) {
    r.classification = IntervalClass::null_like;
  } else if (s_squared > 0.0) {
    r.classification = IntervalClass::spacelike;
  } else {
    r.classification = IntervalClass::timelike;
  }
  return r;
}

inline void check_interval_dims(const MetricTensor& g, const ParamPoint& a,
                                const ParamPoint& b) {
  if (a.dim() != g.dim() || b.dim() != g.dim()) {
    throw std::invalid_argument("interval: vectors must have dimension " +
                                std::to_string(g.dim()));
  }
}

}  // namespace detail

/// The literal two-point contraction s^2 = g_{mu nu} A^mu B^nu.
inline IntervalResult interval(const MetricTensor& g, const ParamPoint& a,
                               const ParamPoint& b) {
  detail::check_interval_dims(g, a, b);
  return detail::classify(detail::bilinear_form(g.entries, a, b));
}

/// Conventional displacement form s^2 = g_{mu nu} (A-B)^mu (A-B)^nu.
inline IntervalResult displacement_interval(const MetricTensor& g,
                                            const ParamPoint& a,
                                            const ParamPoint& b) {
  detail::check_interval_dims(g, a, b);
  std::vector<double> diff(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) diff[static_cast<std::size_t>(i)] = a[i] - b[i];
  const ParamPoint d(std::move(diff));
  return detail::classify(detail::bilinear_form(g.entries, d, d));
}

struct LorentzianConstraint {
  int row = 0;
  int col = 0;
  double target = 0.0;
  double value = 0.0;
  double residual = 0.0;
};

struct LorentzianReport {
  bool satisfied = false;
  double tolerance = 0.0;
  /// The ten independent constraints: g00 = -1, g11 = g22 = g33 = 1,
  /// all off-diagonals zero.
  std::vector<LorentzianConstraint> constraints;
};

/// Test a 4x4 metric against diag(-1, 1, 1, 1) entrywise at `tol`.
inline LorentzianReport check_lorentzian(const MetricTensor& g, double tol) {
  if (g.dim() != 4) {
    throw std::invalid_argument("check_lorentzian: metric must be 4x4, got " +
                                std::to_string(g.dim()) + "x" +
                                std::to_string(g.dim()));
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("check_lorentzian: tol must be > 0");
  }
  LorentzianReport rep;
  rep.tolerance = tol;
  rep.satisfied = true;
  auto add = [&](int r, int c, double target) {
    LorentzianConstraint con;
    con.row = r;
    con.col = c;
    con.target = target;
    con.value = g.entries(r, c);
    con.residual = std::abs(con.value - target);
    if (con.residual >= tol) rep.satisfied = false;
    rep.constraints.push_back(con);
  };
  add(0, 0, -1.0);
  for (int i = 1; i < 4; ++i) add(i, i, 1.0);
  for (int r = 0; r < 4; ++r) {
    for (int c = r + 1; c < 4; ++c) add(r, c, 0.0);
  }
  return rep;
}

}  // namespace infogeo
