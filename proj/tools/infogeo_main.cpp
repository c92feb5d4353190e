// Command-line front end: builds families from string specs, dispatches the
// library operations, and emits JSON/CSV/table reports. Exit codes: 0 all
// checks pass, 1 numeric failure, 2 usage error.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "infogeo/infogeo.hpp"

namespace {

using infogeo::Complex;
using infogeo::DensityFamily;
using infogeo::DiscreteDistribution;
using infogeo::Json;
using infogeo::MetricTensor;
using infogeo::ParamPoint;
using infogeo::QuadratureSpec;
using infogeo::SamplePoint;

struct Options {
  std::string command;
  std::string family;
  std::string family2;
  std::vector<double> theta;
  std::vector<double> theta2;
  std::vector<double> v;
  std::vector<double> epsilons{0.1, 0.05, 0.025};
  std::string backend = "quadrature";
  int nodes = 64;
  double radius = 8.0;
  std::string scheme = "gauss_hermite_tensor";
  std::int64_t samples = 100000;
  std::uint64_t seed = 42;
  std::string rescale;  // empty, "a2", or a positive number
  double zero_tol = 0.0;  // 0 selects the library default
  std::string output;     // empty selects the per-command default
  double a = 0.0;         // verify-paper scale override; 0 runs the trio
};

std::string output_format(const Options& opt, const std::string& fallback) {
  return opt.output.empty() ? fallback : opt.output;
}

DensityFamily require_continuous(const std::string& spec, const char* flag) {
  auto parsed = infogeo::parse_family(spec);
  if (!std::holds_alternative<DensityFamily>(parsed)) {
    throw std::invalid_argument(std::string(flag) + ": family '" + spec +
                                "' is discrete; a continuous family is needed");
  }
  return std::get<DensityFamily>(std::move(parsed));
}

DiscreteDistribution require_discrete(const std::string& spec,
                                      const char* flag) {
  auto parsed = infogeo::parse_family(spec);
  if (!std::holds_alternative<DiscreteDistribution>(parsed)) {
    throw std::invalid_argument(std::string(flag) + ": family '" + spec +
                                "' is continuous; a discrete family is needed");
  }
  return std::get<DiscreteDistribution>(std::move(parsed));
}

ParamPoint resolve_theta(const std::vector<double>& coords,
                         const DensityFamily& family, const char* flag) {
  if (coords.empty()) return ParamPoint::zeros(family.param_dim);
  if (static_cast<int>(coords.size()) != family.param_dim) {
    throw std::invalid_argument(std::string(flag) + ": expected " +
                                std::to_string(family.param_dim) +
                                " coordinates, got " +
                                std::to_string(coords.size()));
  }
  return ParamPoint(coords);
}

QuadratureSpec build_spec(const Options& opt, const DensityFamily& family,
                          const ParamPoint& theta) {
  QuadratureSpec spec = QuadratureSpec::defaults_for(family, theta);
  spec.scheme = infogeo::quad_scheme_from_string(opt.scheme);
  spec.nodes_per_axis = opt.nodes;
  spec.truncation_radius = opt.radius;
  if (family.sample_dim > 6) {
    throw std::invalid_argument("--family: quadrature supports at most 6 "
                                "sample dimensions");
  }
  return spec;
}

double resolve_rescale(const Options& opt, const DensityFamily& family) {
  if (opt.rescale.empty()) return 1.0;
  if (opt.rescale == "a2") return family.envelope_scale * family.envelope_scale;
  const double f = infogeo::detail::parse_strict_double(opt.rescale, "--rescale");
  if (!(f > 0.0)) throw std::invalid_argument("--rescale: factor must be > 0");
  return f;
}

MetricTensor compute_metric(const Options& opt, const DensityFamily& family,
                            const ParamPoint& theta,
                            Json* monte_carlo_extra = nullptr) {
  if (opt.backend == "analytic") {
    return fisher_analytic(family, theta);
  }
  if (opt.backend == "quadrature") {
    return fisher_quadrature(family, theta, build_spec(opt, family, theta));
  }
  if (opt.backend == "fd") {
    return fisher_quadrature(family, theta, build_spec(opt, family, theta),
                             infogeo::ScoreSource::finite_difference);
  }
  if (opt.backend == "montecarlo") {
    if (!family.is_real_valued) {
      throw std::invalid_argument(
          "--backend montecarlo: family '" + family.name +
          "' is complex-valued and cannot be sampled");
    }
    auto est = infogeo::fisher_monte_carlo(family, theta, opt.samples, opt.seed);
    if (monte_carlo_extra) {
      (*monte_carlo_extra)["standard_errors"] =
          infogeo::to_json(est.standard_errors);
      (*monte_carlo_extra)["sample_count"] = est.sample_count;
    }
    return est.metric;
  }
  throw std::invalid_argument("--backend: unknown backend '" + opt.backend +
                              "'");
}

Json resolved_config(const Options& opt) {
  Json j;
  j["command"] = opt.command;
  j["family"] = opt.family.empty() ? Json(nullptr) : Json(opt.family);
  j["family2"] = opt.family2.empty() ? Json(nullptr) : Json(opt.family2);
  j["theta"] = opt.theta;
  j["theta2"] = opt.theta2;
  j["v"] = opt.v;
  j["epsilons"] = opt.epsilons;
  j["backend"] = opt.backend;
  j["nodes"] = opt.nodes;
  j["radius"] = opt.radius;
  j["scheme"] = opt.scheme;
  j["samples"] = opt.samples;
  j["seed"] = opt.seed;
  j["rescale"] = opt.rescale.empty() ? Json(nullptr) : Json(opt.rescale);
  j["zero_tol"] = opt.zero_tol;
  j["output"] = output_format(opt, "json");
  if (opt.command == "verify-paper") j["a"] = opt.a;
  return j;
}

void emit_json(const Options& opt, Json result) {
  Json report;
  report["config"] = resolved_config(opt);
  report["result"] = std::move(result);
  std::cout << report.dump(2) << "\n";
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// --- command handlers ------------------------------------------------------

int run_entropy(const Options& opt) {
  const auto p = require_discrete(opt.family, "--family");
  const double bits = infogeo::shannon_entropy(p, infogeo::EntropyUnit::bits);
  const double nats = infogeo::shannon_entropy(p, infogeo::EntropyUnit::nats);
  const std::string format = output_format(opt, "json");
  if (format == "csv") {
    std::cout << "bits,nats\n" << fmt(bits) << "," << fmt(nats) << "\n";
  } else if (format == "table") {
    std::cout << "shannon entropy of " << opt.family << "\n"
              << "  bits: " << bits << "\n  nats: " << nats << "\n";
  } else {
    emit_json(opt, Json{{"bits", bits}, {"nats", nats}});
  }
  return 0;
}

int run_kl(const Options& opt) {
  const auto g = require_discrete(opt.family, "--family");
  const auto p = require_discrete(opt.family2, "--family2");
  const auto d = infogeo::kl_discrete(g, p);
  const std::string format = output_format(opt, "json");
  if (format == "csv") {
    std::cout << "value,is_infinite\n"
              << (d.is_infinite ? "inf" : fmt(d.value)) << ","
              << (d.is_infinite ? "true" : "false") << "\n";
  } else if (format == "table") {
    std::cout << "KL(" << opt.family << " || " << opt.family2 << ") = ";
    if (d.is_infinite) std::cout << "infinite (support violation)\n";
    else std::cout << d.value << " nats\n";
  } else {
    emit_json(opt, infogeo::to_json(d));
  }
  return 0;
}

int run_kullback(const Options& opt) {
  const auto q = require_continuous(opt.family, "--family");
  const auto p = require_continuous(opt.family2, "--family2");
  if (!q.is_real_valued || !p.is_real_valued) {
    throw std::invalid_argument(
        "kullback: the Kullback number is undefined for complex families");
  }
  const ParamPoint theta_q = resolve_theta(opt.theta, q, "--theta");
  const ParamPoint theta_p = resolve_theta(opt.theta2, p, "--theta2");
  const auto spec = build_spec(opt, q, theta_q);
  const auto d = infogeo::kullback_number(q, theta_q, p, theta_p, spec);
  const std::string format = output_format(opt, "json");
  if (format == "csv") {
    std::cout << "value,is_infinite\n"
              << (d.is_infinite ? "inf" : fmt(d.value)) << ","
              << (d.is_infinite ? "true" : "false") << "\n";
  } else if (format == "table") {
    std::cout << "I(" << opt.family << "@theta || " << opt.family2
              << "@theta2) = " << d.value << " nats\n";
  } else {
    Json result = infogeo::to_json(d);
    result["quadrature"] = infogeo::to_json(spec);
    emit_json(opt, std::move(result));
  }
  return 0;
}

int run_fisher(const Options& opt) {
  const auto family = require_continuous(opt.family, "--family");
  const ParamPoint theta = resolve_theta(opt.theta, family, "--theta");
  Json extra;
  MetricTensor g = compute_metric(opt, family, theta, &extra);
  const double factor = resolve_rescale(opt, family);
  if (factor != 1.0) {
    g = infogeo::rescale(g, factor);
    if (extra.contains("standard_errors")) {
      for (auto& row : extra["standard_errors"]) {
        for (auto& v : row) v = v.get<double>() * factor;
      }
    }
  }

  const std::string format = output_format(opt, "json");
  if (format == "csv") {
    std::cout << "mu,nu,value\n";
    for (int r = 0; r < g.dim(); ++r) {
      for (int c = 0; c < g.dim(); ++c) {
        std::cout << r << "," << c << "," << fmt(g.entries(r, c)) << "\n";
      }
    }
  } else if (format == "table") {
    std::cout << "Fisher metric (" << infogeo::to_string(g.backend)
              << " backend, rescale " << g.rescale_factor << ")\n"
              << g.entries << "\n";
  } else {
    Json result = infogeo::to_json(g);
    for (auto& [key, value] : extra.items()) result[key] = value;
    emit_json(opt, std::move(result));
  }
  return 0;
}

int run_signature(const Options& opt) {
  const auto family = require_continuous(opt.family, "--family");
  const ParamPoint theta = resolve_theta(opt.theta, family, "--theta");
  MetricTensor g = compute_metric(opt, family, theta);
  const double factor = resolve_rescale(opt, family);
  if (factor != 1.0) g = infogeo::rescale(g, factor);
  const auto rep = opt.zero_tol > 0.0 ? infogeo::signature(g, opt.zero_tol)
                                      : infogeo::signature(g);
  const std::string format = output_format(opt, "json");
  if (format == "csv") {
    std::cout << "index,eigenvalue\n";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
      std::cout << i << "," << fmt(rep.eigenvalues[i]) << "\n";
    }
  } else if (format == "table") {
    std::cout << "signature (neg, zero, pos) = (" << rep.n_negative << ", "
              << rep.n_zero << ", " << rep.n_positive << ")\neigenvalues:";
    for (double ev : rep.eigenvalues) std::cout << " " << ev;
    std::cout << "\n";
  } else {
    emit_json(opt, infogeo::to_json(rep));
  }
  return 0;
}

int run_interval(const Options& opt) {
  const auto family = require_continuous(opt.family, "--family");
  if (opt.theta.empty() || opt.theta2.empty()) {
    throw std::invalid_argument("interval: --theta and --theta2 are required");
  }
  const ParamPoint a = resolve_theta(opt.theta, family, "--theta");
  const ParamPoint b = resolve_theta(opt.theta2, family, "--theta2");
  MetricTensor g = compute_metric(opt, family, ParamPoint::zeros(family.param_dim));
  const double factor = resolve_rescale(opt, family);
  if (factor != 1.0) g = infogeo::rescale(g, factor);

  const auto literal = infogeo::interval(g, a, b);
  const auto displacement = infogeo::displacement_interval(g, a, b);
  const std::string format = output_format(opt, "json");
  if (format == "csv") {
    std::cout << "form,s_squared,classification,magnitude\n"
              << "two_point," << fmt(literal.s_squared) << ","
              << infogeo::to_string(literal.classification) << ","
              << fmt(literal.magnitude) << "\n"
              << "displacement," << fmt(displacement.s_squared) << ","
              << infogeo::to_string(displacement.classification) << ","
              << fmt(displacement.magnitude) << "\n";
  } else if (format == "table") {
    std::cout << "two-point form:    s^2 = " << literal.s_squared << " ("
              << infogeo::to_string(literal.classification)
              << "), |s| = " << literal.magnitude << "\n"
              << "displacement form: s^2 = " << displacement.s_squared << " ("
              << infogeo::to_string(displacement.classification)
              << "), |s| = " << displacement.magnitude << "\n";
  } else {
    emit_json(opt, Json{{"two_point", infogeo::to_json(literal)},
                        {"displacement", infogeo::to_json(displacement)},
                        {"metric", infogeo::to_json(g)}});
  }
  return 0;
}

int run_expansion(const Options& opt) {
  const auto family = require_continuous(opt.family, "--family");
  if (!family.is_real_valued) {
    throw std::invalid_argument(
        "expansion: the Kullback number is undefined for complex families");
  }
  const ParamPoint theta = resolve_theta(opt.theta, family, "--theta");
  std::vector<double> v = opt.v;
  if (v.empty()) {
    v.assign(static_cast<std::size_t>(family.param_dim), 0.0);
    v[0] = 1.0;
  }
  const MetricTensor g = compute_metric(opt, family, theta);
  const auto spec = build_spec(opt, family, theta);
  const auto rep =
      infogeo::expansion_residuals(family, theta, v, opt.epsilons, spec, g);

  const std::string format = output_format(opt, "json");
  if (format == "csv") {
    std::cout << "epsilon,lhs,prediction,residual\n";
    for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
      std::cout << fmt(rep.epsilons[i]) << "," << fmt(rep.lhs[i]) << ","
                << fmt(rep.quadratic_prediction[i]) << ","
                << fmt(rep.residuals[i]) << "\n";
    }
  } else if (format == "table") {
    std::cout << "epsilon        lhs            prediction     residual\n";
    for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
      std::cout << rep.epsilons[i] << "\t" << rep.lhs[i] << "\t"
                << rep.quadratic_prediction[i] << "\t" << rep.residuals[i]
                << "\n";
    }
    std::cout << "fitted order: " << rep.fitted_order << "\n";
  } else {
    emit_json(opt, infogeo::to_json(rep));
  }
  return 0;
}

// --- verify-paper ----------------------------------------------------------

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

Check check_gaussian_metric(const Options& opt, double a) {
  const auto family = infogeo::make_gaussian(3, a);
  const ParamPoint theta({0.3 * a, -0.1 * a, 0.7 * a});
  const auto g = infogeo::fisher_quadrature(family, theta,
                                            build_spec(opt, family, theta));
  const Eigen::MatrixXd expected =
      Eigen::MatrixXd::Identity(3, 3) / (a * a);
  Check c;
  c.name = "gaussian-metric a=" + infogeo::detail::format_double(a);
  c.tolerance = 1e-6;
  c.residual = (g.entries - expected).cwiseAbs().maxCoeff();
  c.passed = c.residual < c.tolerance;
  return c;
}

Check check_complex_normalization(const Options& opt, double a, double theta0) {
  const auto family = infogeo::make_complex_gaussian(a);
  const ParamPoint theta({theta0, 0.2 * a, -0.4 * a, 0.1 * a});
  const auto spec = build_spec(opt, family, theta);
  const auto r = infogeo::integrate(
      [&](const SamplePoint& x) { return family.density(theta, x); }, 4, spec);
  Check c;
  c.name = "complex-normalization a=" + infogeo::detail::format_double(a) +
           " theta0=" + infogeo::detail::format_double(theta0);
  c.tolerance = 1e-8;
  c.residual = std::abs(r.value - Complex(1.0, 0.0));
  c.passed = c.residual < c.tolerance;
  return c;
}

std::vector<Check> check_lorentzian_case(
    const Options& opt, double a, infogeo::SplitMix64& rng,
    std::vector<std::pair<std::string, infogeo::LorentzianReport>>* tables) {
  std::vector<double> coords(4);
  for (auto& x : coords) x = rng.next_symmetric(a);
  const ParamPoint theta(coords);
  const auto family = infogeo::make_complex_gaussian(a);
  const auto g = infogeo::fisher_quadrature(family, theta,
                                            build_spec(opt, family, theta));
  const auto rescaled = infogeo::rescale(g, a * a);
  const auto rep = infogeo::check_lorentzian(rescaled, 1e-6);
  double worst = 0.0;
  for (const auto& con : rep.constraints) worst = std::max(worst, con.residual);
  if (tables) {
    tables->emplace_back("a=" + infogeo::detail::format_double(a), rep);
  }

  Check metric_check;
  metric_check.name = "lorentzian-metric a=" + infogeo::detail::format_double(a);
  metric_check.tolerance = 1e-6;
  metric_check.residual = worst;
  metric_check.passed = rep.satisfied;

  const auto sig = infogeo::signature(rescaled);
  Check sig_check;
  sig_check.name = "lorentzian-signature a=" + infogeo::detail::format_double(a);
  sig_check.tolerance = 0.0;
  sig_check.residual = std::abs(sig.n_negative - 1) + sig.n_zero;
  sig_check.passed = sig.n_negative == 1 && sig.n_zero == 0;
  return {metric_check, sig_check};
}

Check check_expansion(const Options& opt, double a) {
  const auto family = infogeo::make_gaussian(1, a);
  const ParamPoint theta({0.2 * a});
  const auto g = infogeo::fisher_analytic(family, theta);
  const auto spec = build_spec(opt, family, theta);
  const auto rep = infogeo::expansion_residuals(family, theta, {1.0},
                                                {0.1, 0.05, 0.025}, spec, g);
  Check c;
  c.name = "expansion-quadratic a=" + infogeo::detail::format_double(a);
  c.tolerance = 1e-10;
  for (double r : rep.residuals) c.residual = std::max(c.residual, std::abs(r));
  c.passed = c.residual < c.tolerance;
  return c;
}

Check check_reparametrization(const Options& opt, double a,
                              infogeo::SplitMix64& rng) {
  const auto family = infogeo::make_gaussian(3, a);
  const ParamPoint theta({0.4 * a, -0.2 * a, 0.1 * a});
  const auto spec = build_spec(opt, family, theta);
  Check c;
  c.name = "reparametrization a=" + infogeo::detail::format_double(a);
  c.tolerance = 1e-6;
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::MatrixXd j(3, 3);
    do {
      for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) {
          j(r, col) = (r == col ? 1.0 : 0.0) + rng.next_symmetric(0.5);
        }
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
      if (svd.singularValues()(2) > 0.0 &&
          svd.singularValues()(0) / svd.singularValues()(2) < 100.0) {
        break;
      }
    } while (true);
    const auto check = infogeo::reparametrize_check(family, theta, j, spec);
    c.residual = std::max(c.residual, check.max_deviation);
  }
  c.passed = c.residual < c.tolerance;
  return c;
}

int run_verify_paper(const Options& opt) {
  const std::vector<double> scales =
      opt.a > 0.0 ? std::vector<double>{opt.a}
                  : std::vector<double>{0.5, 1.0, 2.0};
  infogeo::SplitMix64 rng(opt.seed);

  std::vector<Check> checks;
  std::vector<std::pair<std::string, infogeo::LorentzianReport>> tables;
  for (double a : scales) checks.push_back(check_gaussian_metric(opt, a));
  const double norm_a = opt.a > 0.0 ? opt.a : 1.0;
  for (double frac : {0.0, 0.5, 1.0}) {
    checks.push_back(check_complex_normalization(opt, norm_a, frac * norm_a));
  }
  for (double a : scales) {
    for (auto& c : check_lorentzian_case(opt, a, rng, &tables)) {
      checks.push_back(c);
    }
  }
  checks.push_back(check_expansion(opt, norm_a));
  checks.push_back(check_reparametrization(opt, norm_a, rng));

  int passed = 0;
  for (const auto& c : checks) passed += c.passed ? 1 : 0;
  const bool all_passed = passed == static_cast<int>(checks.size());

  const std::string format = output_format(opt, "table");
  if (format == "json") {
    Json rows = Json::array();
    for (const auto& c : checks) {
      rows.push_back(Json{{"name", c.name},
                          {"passed", c.passed},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance}});
    }
    emit_json(opt, Json{{"checks", std::move(rows)},
                        {"passed", passed},
                        {"total", static_cast<int>(checks.size())},
                        {"all_passed", all_passed}});
  } else if (format == "csv") {
    std::cout << "name,passed,residual,tolerance\n";
    for (const auto& c : checks) {
      std::cout << csv_quote(c.name) << "," << (c.passed ? "true" : "false")
                << "," << fmt(c.residual) << "," << fmt(c.tolerance) << "\n";
    }
  } else {
    for (const auto& c : checks) {
      std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name
                << "  (residual " << c.residual << ", tol " << c.tolerance
                << ")\n";
    }
    for (const auto& [label, rep] : tables) {
      std::cout << "\nLorentzian constraints, " << label
                << " (rescaled by a^2, tol " << rep.tolerance << "):\n";
      for (const auto& con : rep.constraints) {
        std::cout << "  g" << con.row << con.col << " = " << con.target
                  << "\tvalue " << con.value << "\tresidual " << con.residual
                  << "\n";
      }
    }
    std::cout << "\nverify-paper: " << (all_passed ? "PASS" : "FAIL") << " ("
              << passed << "/" << checks.size() << " checks)\n";
  }
  return all_passed ? 0 : 1;
}

void add_quadrature_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--nodes", opt.nodes, "Quadrature nodes per axis")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--radius", opt.radius,
                  "Truncation radius in units of the envelope scale")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--scheme", opt.scheme, "Quadrature scheme")
      ->check(CLI::IsMember({"gauss_hermite_tensor", "trapezoid_truncated"}));
}

void add_output_flag(CLI::App* cmd, Options& opt) {
  cmd->add_option("--output", opt.output, "Report format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
}

void add_backend_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--backend", opt.backend, "Metric backend")
      ->check(CLI::IsMember({"analytic", "quadrature", "fd", "montecarlo"}));
  cmd->add_option("--samples", opt.samples, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed, "Random seed");
  cmd->add_option("--rescale", opt.rescale,
                  "Rescale factor for the metric: a number or 'a2'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical information geometry: entropies, Kullback-Leibler "
      "divergences, Fisher metrics and their signatures on parametric "
      "density families"};
  app.require_subcommand(1);
  Options opt;

  auto* entropy = app.add_subcommand("entropy", "Shannon entropy of a discrete family");
  entropy->add_option("--family", opt.family, "discrete:[p0,p1,...]")->required();
  add_output_flag(entropy, opt);

  auto* kl = app.add_subcommand("kl", "Discrete Kullback-Leibler divergence");
  kl->add_option("--family", opt.family, "Assumed distribution g")->required();
  kl->add_option("--family2", opt.family2, "Reference distribution p")->required();
  add_output_flag(kl, opt);

  auto* kullback = app.add_subcommand("kullback", "Continuous Kullback number I(q||p)");
  kullback->add_option("--family", opt.family, "Family of q")->required();
  kullback->add_option("--family2", opt.family2, "Family of p")->required();
  kullback->add_option("--theta", opt.theta, "Parameters of q")->delimiter(',');
  kullback->add_option("--theta2", opt.theta2, "Parameters of p")->delimiter(',');
  add_quadrature_flags(kullback, opt);
  add_output_flag(kullback, opt);

  auto* fisher = app.add_subcommand("fisher", "Fisher information metric");
  fisher->add_option("--family", opt.family, "Density family spec")->required();
  fisher->add_option("--theta", opt.theta, "Evaluation point")->delimiter(',');
  add_backend_flags(fisher, opt);
  add_quadrature_flags(fisher, opt);
  add_output_flag(fisher, opt);

  auto* sig = app.add_subcommand("signature", "Eigenvalue signature of the metric");
  sig->add_option("--family", opt.family, "Density family spec")->required();
  sig->add_option("--theta", opt.theta, "Evaluation point")->delimiter(',');
  sig->add_option("--zero-tol", opt.zero_tol, "Zero-eigenvalue tolerance")
      ->check(CLI::PositiveNumber);
  add_backend_flags(sig, opt);
  add_quadrature_flags(sig, opt);
  add_output_flag(sig, opt);

  auto* interval = app.add_subcommand(
      "interval", "Bilinear-form interval between two coordinate vectors");
  interval->add_option("--family", opt.family, "Density family spec")->required();
  interval->add_option("--theta", opt.theta, "Vector A")->delimiter(',');
  interval->add_option("--theta2", opt.theta2, "Vector B")->delimiter(',');
  add_backend_flags(interval, opt);
  add_quadrature_flags(interval, opt);
  add_output_flag(interval, opt);

  auto* expansion = app.add_subcommand(
      "expansion", "Kullback number vs quadratic Fisher prediction");
  expansion->add_option("--family", opt.family, "Density family spec")->required();
  expansion->add_option("--theta", opt.theta, "Base point")->delimiter(',');
  expansion->add_option("--v", opt.v, "Expansion direction")->delimiter(',');
  expansion->add_option("--epsilons", opt.epsilons, "Descending step sizes")
      ->delimiter(',');
  add_backend_flags(expansion, opt);
  add_quadrature_flags(expansion, opt);
  add_output_flag(expansion, opt);

  auto* verify = app.add_subcommand(
      "verify-paper", "Run the end-to-end verification battery");
  verify->add_option("--a", opt.a, "Family scale (default: run 0.5, 1, 2)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", opt.seed, "Seed for randomized checks");
  verify->add_option("--rescale", opt.rescale, "Metric rescale for reports");
  add_quadrature_flags(verify, opt);
  add_output_flag(verify, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (entropy->parsed()) { opt.command = "entropy"; return run_entropy(opt); }
    if (kl->parsed()) { opt.command = "kl"; return run_kl(opt); }
    if (kullback->parsed()) { opt.command = "kullback"; return run_kullback(opt); }
    if (fisher->parsed()) { opt.command = "fisher"; return run_fisher(opt); }
    if (sig->parsed()) { opt.command = "signature"; return run_signature(opt); }
    if (interval->parsed()) { opt.command = "interval"; return run_interval(opt); }
    if (expansion->parsed()) { opt.command = "expansion"; return run_expansion(opt); }
    if (verify->parsed()) { opt.command = "verify-paper"; return run_verify_paper(opt); }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const infogeo::CapabilityMissingError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const infogeo::UnsupportedForComplexError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const infogeo::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
