// hypmetrics command-line front end.
//
//   hypmetrics eval --metric tau --domain '{"kind":"unit_ball","dim":2}' --x 0.1,0 --y 0,0.2
//   hypmetrics verify --check all
//   hypmetrics constants
//   hypmetrics ovals --f1 -1,0 --f2 1,0 --level 1 --resolution 256
//   hypmetrics distort --map '{"chain":[{"kind":"scaling","factor":3}]}' --domain ... --image-domain ...

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypmetrics/hypmetrics.hpp"
#include "hypmetrics/io.hpp"

namespace hm = hypmetrics;
using hm::io::json;

namespace {

enum Exit : int { kOk = 0, kParse = 2, kDomain = 3, kVerifyFailed = 4, kSolver = 5 };

int exit_code_for(hm::ErrorCode code) {
  switch (code) {
    case hm::ErrorCode::ParseError:
    case hm::ErrorCode::InvalidArgument:
    case hm::ErrorCode::DegenerateFoci:
      return kParse;
    case hm::ErrorCode::NoConvergence:
      return kSolver;
    default:
      return kDomain;
  }
}

struct Config {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  std::string output;
};

// Text starting with '@' names a file holding the JSON.
json parse_json_arg(const std::string& text, const char* what) {
  std::string body = text;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw hm::Error(hm::ErrorCode::ParseError, std::string("cannot read ") + what + " file " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw hm::Error(hm::ErrorCode::ParseError, std::string("invalid ") + what + " JSON: " + e.what());
  }
}

hm::Domain parse_domain(const std::string& text, const std::string& file) {
  if (!file.empty()) return hm::io::domain_from_json(parse_json_arg("@" + file, "domain"));
  if (text.empty()) throw hm::Error(hm::ErrorCode::ParseError, "a domain is required (--domain or --file)");
  return hm::io::domain_from_json(parse_json_arg(text, "domain"));
}

hm::MetricKind parse_metric(const std::string& name) {
  if (name == "tau") return hm::MetricKind::tau;
  if (name == "u") return hm::MetricKind::u;
  if (name == "j") return hm::MetricKind::j;
  throw hm::Error(hm::ErrorCode::ParseError, "metric must be tau, u or j");
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw hm::Error(hm::ErrorCode::ParseError, "cannot write " + cfg.output);
  out << text;
}

void emit_json(const Config& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string metric = "tau";
  std::string domain;
  std::string file;
  std::string x;
  std::string y;
};

int cmd_eval(const Config& cfg, const EvalArgs& a) {
  const hm::MetricKind metric = parse_metric(a.metric);
  const hm::Domain d = parse_domain(a.domain, a.file);
  const hm::Point x = hm::io::parse_coords(a.x);
  const hm::Point y = hm::io::parse_coords(a.y);
  emit_json(cfg, hm::io::to_json(hm::evaluate(metric, d, x, y)));
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string check = "all";
  std::string a;
  std::size_t dim = 0;
  std::string domain;
  std::string file;
  std::string metric;
};

const std::vector<std::string> kCheckNames = {
    "mobius_distortion", "bernoulli",  "uniform_tau",   "uniform_u",        "general_domain",     "bilipschitz_tau",
    "sandwich",          "metric_axioms", "monotonicity_tau", "u_non_monotonicity", "closed_forms", "inversion_identities"};

std::vector<std::size_t> dims_for(const VerifyArgs& a) {
  if (a.dim > 0) return {a.dim};
  return {2, 3};
}

std::vector<hm::Domain> domains_for(const VerifyArgs& a, const std::vector<hm::Domain>& fallback) {
  if (!a.domain.empty() || !a.file.empty()) return {parse_domain(a.domain, a.file)};
  return fallback;
}

hm::Matrix shear(std::size_t n) {
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
  if (n > 1) d[1] = 0.5;
  return hm::Matrix(n, std::move(d));
}

hm::Matrix stretch(std::size_t n) {
  std::vector<double> d(n, 1.0);
  d[0] = 2.0;
  return hm::Matrix::diagonal(d);
}

std::vector<hm::VerificationReport> run_check(const std::string& name, const VerifyArgs& a,
                                              const hm::CheckOptions& opts) {
  std::vector<hm::VerificationReport> out;
  if (name == "mobius_distortion") {
    if (!a.a.empty()) {
      out.push_back(hm::verify_mobius_distortion(hm::io::parse_coords(a.a), opts));
    } else {
      for (std::size_t n : dims_for(a)) {
        for (double s : {0.0, 0.3, 0.5, 0.9}) out.push_back(hm::verify_mobius_distortion(hm::Point::basis(n, 0, s), opts));
      }
    }
  } else if (name == "bernoulli") {
    out.push_back(hm::verify_bernoulli(opts));
  } else if (name == "uniform_tau" || name == "uniform_u") {
    const hm::MetricKind m = name == "uniform_tau" ? hm::MetricKind::tau : hm::MetricKind::u;
    for (std::size_t n : dims_for(a)) out.push_back(hm::verify_uniform_continuity(m, n, opts));
  } else if (name == "general_domain") {
    const std::vector<hm::Domain> defaults = {hm::unit_square(), hm::random_triangle(opts.seed),
                                              hm::Domain::ball(hm::Point::zero(2), 2.0)};
    for (const hm::Domain& d : domains_for(a, defaults)) out.push_back(hm::verify_general_domain_bound(d, opts));
  } else if (name == "bilipschitz_tau") {
    for (const hm::Domain& d : domains_for(a, {hm::Domain::unit_ball(2)})) {
      const std::size_t n = d.dim();
      hm::Rng rng = hm::make_stream(opts.seed, 0x51);
      const hm::Matrix rot = hm::random_orthogonal(n, rng);
      const std::vector<hm::AffineMap> maps = {
          hm::AffineMap::linear(stretch(n)), hm::AffineMap::linear(shear(n)),
          hm::AffineMap::similarity(3.0, rot, hm::Point::basis(n, 0, 1.0))};
      for (const hm::AffineMap& f : maps) out.push_back(hm::verify_bilipschitz_tau(f.bilipschitz_constant(), f, d, opts));
    }
  } else if (name == "sandwich") {
    for (const hm::Domain& d : domains_for(a, hm::canonical_variants(2))) out.push_back(hm::verify_sandwich_u_tau(d, opts));
  } else if (name == "metric_axioms") {
    std::vector<hm::MetricKind> metrics = {hm::MetricKind::tau, hm::MetricKind::u, hm::MetricKind::j};
    if (!a.metric.empty()) metrics = {parse_metric(a.metric)};
    for (const hm::Domain& d : domains_for(a, hm::canonical_variants(2))) {
      for (hm::MetricKind m : metrics) out.push_back(hm::verify_metric_axioms(d, m, opts));
    }
  } else if (name == "monotonicity_tau") {
    for (std::size_t n : dims_for(a)) out.push_back(hm::verify_monotonicity_tau(n, opts));
  } else if (name == "u_non_monotonicity") {
    out.push_back(hm::verify_u_non_monotonicity(a.dim > 0 ? a.dim : 2, opts));
  } else if (name == "closed_forms") {
    out.push_back(hm::verify_closed_forms(opts));
  } else if (name == "inversion_identities") {
    out.push_back(hm::verify_inversion_identities(opts));
  } else {
    throw hm::Error(hm::ErrorCode::ParseError, "unknown check '" + name + "'");
  }
  return out;
}

int cmd_verify(const Config& cfg, const VerifyArgs& a) {
  hm::CheckOptions opts;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  std::vector<hm::VerificationReport> reports;
  if (a.check == "all") {
    for (const std::string& name : kCheckNames) {
      for (auto& r : run_check(name, a, opts)) reports.push_back(std::move(r));
    }
  } else {
    reports = run_check(a.check, a, opts);
  }
  json arr = json::array();
  bool all_passed = true;
  for (const auto& r : reports) {
    arr.push_back(hm::io::to_json(r));
    all_passed = all_passed && r.passed;
  }
  emit_json(cfg, arr);
  return all_passed ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- constants

int cmd_constants(const Config& cfg) {
  emit_json(cfg, hm::io::to_json(hm::solve_constant_c()));
  return kOk;
}

// ---------------------------------------------------------------- ovals

struct OvalArgs {
  std::string f1;
  std::string f2;
  double level = 1.0;
  std::size_t resolution = 256;
};

int cmd_ovals(const Config& cfg, const OvalArgs& a) {
  const hm::OvalTrace trace =
      hm::cassinian_oval({hm::io::parse_coords(a.f1), hm::io::parse_coords(a.f2), a.level, a.resolution});
  std::ostringstream out;
  out << std::setprecision(17) << "x,y\n";
  for (const hm::Point& p : trace.points()) out << p[0] << ',' << p[1] << '\n';
  emit(cfg, out.str());
  return kOk;
}

// ---------------------------------------------------------------- distort

struct DistortArgs {
  std::string map;
  std::string domain;
  std::string file;
  std::string image_domain;
  std::string metric = "tau";
  std::vector<std::string> at;
  std::string radii = "1e-2,1e-3,1e-4,1e-5";
};

json witness_json(const std::optional<hm::Witness>& w) {
  if (!w) return nullptr;
  return {{"x", hm::io::to_json(w->x)}, {"y", hm::io::to_json(w->y)}};
}

int cmd_distort(const Config& cfg, const DistortArgs& a) {
  const hm::MobiusMap m = hm::io::map_from_json(parse_json_arg(a.map, "map"));
  const hm::Domain d = parse_domain(a.domain, a.file);
  const hm::Domain image = a.image_domain.empty() ? d : hm::io::domain_from_json(parse_json_arg(a.image_domain, "image domain"));
  const hm::MetricKind metric = parse_metric(a.metric);
  const hm::Point radii_pt = hm::io::parse_coords(a.radii);
  const std::vector<double> radii(radii_pt.coords().begin(), radii_pt.coords().end());
  const hm::PointMap f = [&m](const hm::Point& p) { return m(p); };

  const hm::DistortionMeasurement dm = hm::measure_distortion(f, d, image, metric, cfg.samples, cfg.seed);
  json dil = json::array();
  for (const std::string& s : a.at) {
    const hm::Point x = hm::io::parse_coords(s);
    const hm::DilatationEstimate est = hm::linear_dilatation(f, x, radii, d);
    dil.push_back({{"at", hm::io::to_json(x)}, {"H", est.value}, {"ratios", est.ratios}, {"settled", est.settled}});
  }
  emit_json(cfg, {{"metric", hm::to_string(metric)},
                  {"samples", cfg.samples},
                  {"seed", cfg.seed},
                  {"pairs_used", dm.pairs_used},
                  {"sup_ratio", hm::io::number_or_string(dm.sup_ratio)},
                  {"inf_ratio", hm::io::number_or_string(dm.inf_ratio)},
                  {"sup_witness", witness_json(dm.sup_witness)},
                  {"inf_witness", witness_json(dm.inf_witness)},
                  {"dilatation", dil}});
  return kOk;
}

template <typename T>
std::optional<T> env_number(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return static_cast<T>(n);
  } catch (const std::exception&) {
    throw hm::Error(hm::ErrorCode::ParseError, std::string(name) + " must be a nonnegative integer");
  }
}

void report_error(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic-type metrics on Euclidean domains"};
  app.require_subcommand(1);

  Config cfg;
  std::optional<std::size_t> samples_flag;
  std::optional<std::uint64_t> seed_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--samples", samples_flag, "Sample count (default 10000, env HYPMETRICS_SAMPLES)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed_flag, "RNG seed (default 42, env HYPMETRICS_SEED)");
    sub->add_option("--output", cfg.output, "Write to PATH instead of stdout");
  };

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a metric between two points");
  eval->add_option("--metric", eval_args.metric, "tau, u or j");
  eval->add_option("--domain", eval_args.domain, "Domain JSON");
  eval->add_option("--file", eval_args.file, "File holding the domain JSON");
  eval->add_option("--x", eval_args.x, "First point, comma separated")->required();
  eval->add_option("--y", eval_args.y, "Second point, comma separated")->required();
  add_common(eval);

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Run verification sweeps");
  verify->add_option("--check", verify_args.check, "Check name or 'all'");
  verify->add_option("--a", verify_args.a, "Puncture for mobius_distortion");
  verify->add_option("--dim", verify_args.dim, "Dimension for dimension-driven checks");
  verify->add_option("--domain", verify_args.domain, "Domain JSON for domain-driven checks");
  verify->add_option("--file", verify_args.file, "File holding the domain JSON");
  verify->add_option("--metric", verify_args.metric, "Restrict metric_axioms to one metric");
  add_common(verify);

  CLI::App* constants = app.add_subcommand("constants", "Solve for the uniform-continuity constant");
  add_common(constants);

  OvalArgs oval_args;
  CLI::App* ovals = app.add_subcommand("ovals", "Trace a Cassinian oval as CSV");
  ovals->add_option("--f1", oval_args.f1, "First focus")->required();
  ovals->add_option("--f2", oval_args.f2, "Second focus")->required();
  ovals->add_option("--level", oval_args.level, "Level k of |z-f1||z-f2| = k^2")->required();
  ovals->add_option("--resolution", oval_args.resolution, "Points per loop");
  add_common(ovals);

  DistortArgs distort_args;
  CLI::App* distort = app.add_subcommand("distort", "Measure metric distortion of a Mobius map");
  distort->add_option("--map", distort_args.map, "Map JSON (or @file)")->required();
  distort->add_option("--domain", distort_args.domain, "Source domain JSON");
  distort->add_option("--file", distort_args.file, "File holding the source domain JSON");
  distort->add_option("--image-domain", distort_args.image_domain, "Target domain JSON (default: source)");
  distort->add_option("--metric", distort_args.metric, "tau, u or j");
  distort->add_option("--at", distort_args.at, "Point for the linear dilatation (repeatable)");
  distort->add_option("--radii", distort_args.radii, "Decreasing radii for the dilatation");
  add_common(distort);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    cfg.samples = samples_flag.value_or(env_number<std::size_t>("HYPMETRICS_SAMPLES").value_or(cfg.samples));
    cfg.seed = seed_flag.value_or(env_number<std::uint64_t>("HYPMETRICS_SEED").value_or(cfg.seed));
    if (cfg.samples == 0) throw hm::Error(hm::ErrorCode::ParseError, "samples must be >= 1");

    if (eval->parsed()) return cmd_eval(cfg, eval_args);
    if (verify->parsed()) return cmd_verify(cfg, verify_args);
    if (constants->parsed()) return cmd_constants(cfg);
    if (ovals->parsed()) return cmd_ovals(cfg, oval_args);
    return cmd_distort(cfg, distort_args);
  } catch (const hm::Error& e) {
    report_error(hm::to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 1;
  }
}
