#include "runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "report.hpp"
#include "skewdiff/coupling.hpp"
#include "skewdiff/errors.hpp"
#include "skewdiff/gaussian.hpp"
#include "skewdiff/gdiff.hpp"
#include "skewdiff/validation.hpp"

namespace skewsim {
namespace {

using namespace skewdiff;

// Raised for parameters outside an operation's preconditions.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string experiment;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string output;
  std::string format = "json";
  std::string config;

  double t = 1.0;
  std::size_t steps = 10000;
  std::size_t paths = 1000;
  std::size_t n = 256;

  double q = 0.5;
  double q1 = 0.2;
  double q2 = 0.6;
  double x0 = 0.0;
  double x01 = 0.0;
  double x02 = 0.5;
  std::size_t cases = 20;
  double dt = 1e-3;

  double x_min = -2.0;
  double x_max = 2.0;
  std::size_t points = 41;

  std::string profile = "mixed";
  std::size_t dim = 3;
  double alpha = 0.5;
  double beta = 0.5;
  double frequency = 1.0;
  double level = 0.5;
  double big_n = 4.0;
  std::size_t probes = 200;

  double epsilon = 0.25;
  std::string offsets = "0.4,0.2,0.1,0.05";
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

McConfig mc_config(const Options& o) {
  McConfig cfg;
  cfg.horizon = o.t;
  cfg.steps = o.steps;
  cfg.paths = o.paths;
  cfg.seed = *o.seed;
  cfg.workers = o.workers;
  cfg.mollifier_n = o.n;
  return cfg;
}

Json base_parameters(const Options& o) {
  Json p;
  p["seed"] = *o.seed;
  p["t"] = o.t;
  p["steps"] = o.steps;
  p["paths"] = o.paths;
  p["n"] = o.n;
  return p;
}

Check target_check(std::string name, const TargetCheck& t) {
  return Check{std::move(name), t.estimate.mean, t.estimate.std_error, t.target, std::nullopt, t.pass};
}

Check bound_check(std::string name, const BoundCheck& b) {
  return Check{std::move(name), b.estimate.mean, b.estimate.std_error, std::nullopt, b.bound, b.pass};
}

Check exact_bound(std::string name, double value, double bound) {
  return Check{std::move(name), value, 0.0, std::nullopt, bound, value <= bound};
}

std::shared_ptr<const WienerPath> driver(const Options& o, std::size_t dims) {
  auto stream = path_stream(*o.seed, 0, 0);
  return std::make_shared<const WienerPath>(sample_wiener(make_grid(o.t, o.steps), dims, stream));
}

// --- sbm ---------------------------------------------------------------------

Report run_sbm(const Options& o) {
  require(std::abs(o.q) <= 1.0, "sbm needs |q| <= 1");
  Report r;
  r.parameters = base_parameters(o);
  r.parameters["q"] = o.q;
  r.parameters["x0"] = o.x0;
  if (o.paths == 1) {
    r.experiment = "sbm-path";
    const auto w = driver(o, 1);
    const auto path = simulate_sbm(SbmParams{o.q, o.x0, o.n}, w);
    r.columns = {"time", "x", "eta", "w"};
    for (std::size_t k = 0; k < path.x.size(); ++k) {
      r.rows.push_back({path.grid.time(k), path.x[k], path.eta[k], w->at(k)});
    }
    r.checks.push_back(exact_bound("identity-residual", path.identity_residual(), 1e-12));
    r.details["clamp"] = path.clamp;
    return r;
  }
  r.experiment = "sbm-ensemble";
  const auto law = scheme_law_check(o.q, o.x0, mc_config(o));
  r.checks.push_back(target_check("mean-local-time", law.mean));
  r.checks.push_back(exact_bound("ks", law.ks, law.ks_threshold));
  return r;
}

// --- couple ------------------------------------------------------------------

Report run_couple(const Options& o) {
  Report r;
  r.experiment = o.experiment;
  r.parameters = base_parameters(o);
  const McConfig cfg = mc_config(o);
  if (o.experiment == "corollary1") {
    require(std::abs(o.q1) < 1.0 && std::abs(o.q2) < 1.0, "corollary1 needs |q1|, |q2| < 1");
    r.parameters["x0"] = o.x0;
    r.parameters["q1"] = o.q1;
    r.parameters["q2"] = o.q2;
    r.checks.push_back(target_check("mean-distance", corollary1_experiment(o.x0, o.q1, o.q2, cfg)));
  } else if (o.experiment == "corollary2") {
    require(o.q != 0.0 && std::abs(o.q) < 1.0, "corollary2 needs q in (-1,0) or (0,1)");
    r.parameters["x01"] = o.x01;
    r.parameters["x02"] = o.x02;
    r.parameters["q"] = o.q;
    const auto c = corollary2_experiment(o.x01, o.x02, o.q, cfg);
    r.checks.push_back(bound_check("distance", c.distance));
    r.checks.push_back(bound_check("local-time", c.local_time));
  } else if (o.experiment == "remark1") {
    require(o.q == 1.0 || o.q == -1.0, "remark1 needs q = 1 or q = -1");
    require(o.q * o.x01 >= 0.0 && o.q * o.x02 >= 0.0, "remark1 needs starts on the side selected by q");
    r.parameters["x01"] = o.x01;
    r.parameters["x02"] = o.x02;
    r.parameters["q"] = o.q;
    r.checks.push_back(bound_check("squared-distance", remark1_experiment(o.x01, o.x02, o.q, cfg)));
  } else if (o.experiment == "remark2") {
    r.parameters["x01"] = o.x01;
    r.parameters["x02"] = o.x02;
    r.checks.push_back(bound_check("squared-local-time-gap", remark2_experiment(o.x01, o.x02, cfg)));
  } else if (o.experiment == "ordering") {
    require(o.q1 <= o.q2 && o.x01 <= o.x02, "ordering needs q1 <= q2 and x01 <= x02");
    r.parameters["x01"] = o.x01;
    r.parameters["x02"] = o.x02;
    r.parameters["q1"] = o.q1;
    r.parameters["q2"] = o.q2;
    const auto v = ordering_violations(SbmParams{o.q1, o.x01, o.n}, SbmParams{o.q2, o.x02, o.n}, cfg);
    const double tol = ordering_tolerance(make_grid(o.t, o.steps).dt());
    const auto report = summarize_ordering(v, tol);
    const bool exact = std::abs(o.q1) == 1.0;
    r.checks.push_back(exact_bound("violating-fraction", report.violating_fraction, exact ? 0.0 : 0.01));
    if (exact) r.checks.push_back(exact_bound("max-violation", report.max_violation, 0.0));
    r.details["max_violation"] = report.max_violation;
    r.details["median_violation"] = report.median_violation;
    r.details["tolerance"] = report.tolerance;
  } else if (o.experiment == "bound-suite") {
    require(o.dt > 0.0, "bound-suite needs dt > 0");
    r.parameters = Json::object();
    r.parameters["seed"] = *o.seed;
    r.parameters["paths"] = o.paths;
    r.parameters["n"] = o.n;
    r.parameters["cases"] = o.cases;
    r.parameters["dt"] = o.dt;
    const auto suite = bound_suite(o.cases, o.dt, cfg);
    Json cases = Json::array();
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const auto& c = suite[i];
      const std::string tag = "case" + std::to_string(i) + "/";
      r.checks.push_back(bound_check(tag + "corollary2-distance", c.corollary2.distance));
      r.checks.push_back(bound_check(tag + "corollary2-local-time", c.corollary2.local_time));
      r.checks.push_back(bound_check(tag + "remark1", c.remark1));
      r.checks.push_back(bound_check(tag + "remark2", c.remark2));
      cases.push_back(Json{{"x01", c.x01}, {"x02", c.x02}, {"q", c.q}, {"t", c.t}});
    }
    r.details["cases"] = cases;
  } else {
    throw ConfigError("unknown couple experiment '" + o.experiment + "'");
  }
  return r;
}

// --- laws --------------------------------------------------------------------

Report run_laws(const Options& o) {
  Report r;
  r.experiment = o.experiment;
  r.parameters = base_parameters(o);
  if (o.experiment == "eta-cdf") {
    r.parameters = Json{{"seed", *o.seed}, {"t", o.t}, {"paths", o.paths}, {"x0", o.x0}};
    const auto s = eta_sampler_check(LocalTimeLaw{o.x0, o.t}, o.paths, *o.seed);
    r.checks.push_back(exact_bound("ks", s.ks, s.threshold));
    r.checks.push_back(exact_bound("ks-positive", s.ks_positive, s.threshold_positive));
    r.checks.push_back(target_check("atom", check_target(s.zero_fraction, s.atom, 0.0)));
    r.checks.push_back(target_check("mean", check_target(s.mean, s.mean_target, 0.0)));
  } else if (o.experiment == "mean-local-time") {
    require(o.points >= 2 && o.x_min < o.x_max, "mean-local-time needs points >= 2 and x-min < x-max");
    r.parameters = Json{{"t", o.t}, {"x_min", o.x_min}, {"x_max", o.x_max}, {"points", o.points}};
    r.columns = {"x", "t", "mean_local_time", "closed_form"};
    double worst = 0.0;
    for (std::size_t i = 0; i < o.points; ++i) {
      const double x = o.x_min + (o.x_max - o.x_min) * static_cast<double>(i) /
                                     static_cast<double>(o.points - 1);
      const double value = expected_local_time(x, o.t);
      const double z = std::abs(x) / std::sqrt(o.t);
      const double closed = 2.0 * std::sqrt(o.t) * gaussian_density(z) - 2.0 * std::abs(x) * gaussian_tail(z);
      worst = std::max(worst, std::abs(value - closed));
      r.rows.push_back({x, o.t, value, closed});
    }
    r.checks.push_back(exact_bound("quadrature-vs-closed-form", worst, 1e-10));
  } else if (o.experiment == "scheme-law") {
    require(std::abs(o.q) <= 1.0, "scheme-law needs |q| <= 1");
    r.parameters["q"] = o.q;
    r.parameters["x0"] = o.x0;
    const auto s = scheme_law_check(o.q, o.x0, mc_config(o));
    r.checks.push_back(target_check("mean-local-time", s.mean));
    r.checks.push_back(exact_bound("ks", s.ks, s.ks_threshold));
  } else if (o.experiment == "quadratic-variation") {
    require(std::abs(o.q) < 1.0, "quadratic-variation needs |q| < 1");
    r.parameters["q"] = o.q;
    r.parameters["x0"] = o.x0;
    const auto s = quadratic_variation_check(o.q, o.x0, mc_config(o));
    r.checks.push_back(Check{"ratio", s.ratio, 0.0, 1.0, std::nullopt, s.pass});
    r.details["realized"] = s.realized;
    r.details["predicted"] = s.predicted;
    r.details["reverse_ratio"] = s.reverse_ratio;
    r.details["tolerance"] = s.tolerance;
  } else if (o.experiment == "cross-scheme") {
    require(std::abs(o.q) < 1.0, "cross-scheme needs |q| < 1");
    r.parameters["q"] = o.q;
    r.parameters["x0"] = o.x0;
    const auto s = cross_scheme_check(o.q, o.x0, mc_config(o));
    r.checks.push_back(exact_bound("ks", s.ks, s.threshold));
  } else {
    throw ConfigError("unknown laws experiment '" + o.experiment + "'");
  }
  return r;
}

// --- gdiff -------------------------------------------------------------------

GdiffCoefficients coefficients(const Options& o) {
  require(o.dim >= 2, "gdiff needs dim >= 2");
  require(o.beta >= 0.0, "gdiff needs beta >= 0");
  return make_profile(o.profile, o.dim, ProfileParams{o.alpha, o.beta, o.frequency}, o.q);
}

Json profile_parameters(const Options& o) {
  Json p = base_parameters(o);
  p["q"] = o.q;
  p["x0"] = o.x0;
  p["profile"] = o.profile;
  p["dim"] = o.dim;
  p["alpha"] = o.alpha;
  p["beta"] = o.beta;
  p["frequency"] = o.frequency;
  return p;
}

Report run_gdiff(const Options& o) {
  Report r;
  r.experiment = o.experiment;
  r.parameters = profile_parameters(o);
  if (o.experiment == "path" || o.experiment == "time-change") {
    const auto c = coefficients(o);
    const auto frame = HyperplaneFrame::canonical(o.dim);
    const Eigen::VectorXd x0 = o.x0 * frame.nu();
    const auto w = driver(o, o.dim);
    const auto path = simulate_gdiff(c, x0, frame, w, path_stream(*o.seed, 0, 1), o.n);
    if (o.experiment == "path") {
      r.columns = {"time", "eta"};
      for (std::size_t i = 0; i < o.dim; ++i) r.columns.push_back("x" + std::to_string(i + 1));
      for (std::size_t k = 0; k < path.normal.x.size(); ++k) {
        std::vector<double> row{path.grid().time(k), path.normal.eta[k]};
        const Eigen::VectorXd x = path.x(k);
        row.insert(row.end(), x.data(), x.data() + x.size());
        r.rows.push_back(std::move(row));
      }
      r.checks.push_back(exact_bound("normal-identity-residual", path.normal.identity_residual(), 1e-12));
      return r;
    }
    require(o.level >= 0.0 && o.points >= 2, "time-change needs level >= 0 and points >= 2");
    r.parameters["level"] = o.level;
    r.parameters["points"] = o.points;
    std::vector<double> levels(o.points);
    for (std::size_t i = 0; i < o.points; ++i) {
      levels[i] = o.level * static_cast<double>(i) / static_cast<double>(o.points - 1);
    }
    const auto s = time_changed_path(path, levels);
    r.columns = {"level", "time", "residual", "normal_gap"};
    double worst = 0.0;
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
      const std::size_t k = *inverse_local_time_index(path.eta(), s.levels[i]);
      const double gap = s.x[i].dot(frame.nu()) - x0.dot(frame.nu()) - o.q * s.levels[i] -
                         w->at(k, 0) * frame.nu()(0);
      worst = std::max(worst, std::abs(gap));
      r.rows.push_back({s.levels[i], s.times[i], s.residual[i], gap});
    }
    r.details["truncated"] = s.truncated;
    r.checks.push_back(exact_bound("normal-identity", worst, 10.0 * std::sqrt(path.grid().dt())));
  } else if (o.experiment == "moment") {
    require(o.profile == "constant" || o.profile == "zero", "moment needs the constant or zero profile");
    require(o.alpha == 0.0, "moment needs alpha = 0");
    const auto c = coefficients(o);
    const auto frame = HyperplaneFrame::canonical(o.dim);
    const auto m = tangential_moment_experiment(c, frame, o.x0 * frame.nu(), mc_config(o));
    for (std::size_t i = 0; i < m.coordinates.size(); ++i) {
      r.checks.push_back(target_check("s" + std::to_string(i + 1), m.coordinates[i]));
    }
  } else if (o.experiment == "rho-tail") {
    require(o.big_n > 0.0, "rho-tail needs N > 0");
    require(o.level >= 0.0, "rho-tail needs level >= 0");
    require(std::abs(o.q) <= 1.0, "rho-tail needs |q| <= 1");
    r.parameters = base_parameters(o);
    r.parameters["q"] = o.q;
    r.parameters["x0"] = o.x0;
    r.parameters["level"] = o.level;
    r.parameters["N"] = o.big_n;
    const auto t = rho_tail_experiment(o.q, o.x0, o.level, o.t, o.big_n, mc_config(o));
    r.checks.push_back(Check{"rho-tail", t.frequency.mean, t.frequency.std_error, std::nullopt, t.bound, t.pass});
  } else if (o.experiment == "small-local-time") {
    require(o.x0 == 0.0, "small-local-time needs a start on the interface (x0 = 0)");
    require(o.level > 0.0, "small-local-time needs level > 0");
    require(std::abs(o.q) <= 1.0, "small-local-time needs |q| <= 1");
    r.parameters = base_parameters(o);
    r.parameters["q"] = o.q;
    r.parameters["level"] = o.level;
    const auto s = small_local_time_check(o.x0, o.t, o.level, o.q, mc_config(o));
    r.checks.push_back(exact_bound("exact", s.exact, s.bound));
    if (s.frequency) {
      r.checks.push_back(Check{"simulated", s.frequency->mean, s.frequency->std_error, std::nullopt,
                               s.bound, s.frequency->lower() <= s.bound});
    }
  } else if (o.experiment == "coefficients") {
    require(o.probes >= 2, "coefficients needs probes >= 2");
    const auto c = coefficients(o);
    r.parameters = Json{{"seed", *o.seed}, {"profile", o.profile}, {"dim", o.dim},
                        {"alpha", o.alpha}, {"beta", o.beta}, {"frequency", o.frequency},
                        {"probes", o.probes}};
    const auto probes = make_probe_set(o.dim - 1, o.probes, *o.seed);
    const auto v = validate_coefficients(c, probes);
    const double limit = c.bound_k * (1.0 + 1e-12);
    r.checks.push_back(Check{"sup", v.sup_value, 0.0, std::nullopt, c.bound_k, v.sup_value <= limit});
    r.checks.push_back(Check{"lipschitz", v.max_quotient, 0.0, std::nullopt, c.bound_k, v.max_quotient <= limit});
    r.details["pairs_checked"] = v.pairs_checked;
  } else {
    throw ConfigError("unknown gdiff experiment '" + o.experiment + "'");
  }
  return r;
}

// --- continuity --------------------------------------------------------------

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    require(b != std::string::npos, "offsets must be a comma-separated list of numbers");
    const std::string token = item.substr(b, e - b + 1);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    require(res.ec == std::errc{} && res.ptr == token.data() + token.size(),
            "offsets must be a comma-separated list of numbers");
    out.push_back(v);
  }
  require(!out.empty(), "offsets must not be empty");
  return out;
}

Report run_continuity(const Options& o) {
  require(o.epsilon > 0.0, "continuity needs epsilon > 0");
  require(o.paths >= 2, "continuity needs paths >= 2");
  const auto scales = parse_list(o.offsets);
  const auto c = coefficients(o);
  const auto frame = HyperplaneFrame::canonical(o.dim);
  std::vector<Eigen::VectorXd> offsets{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(o.dim))};
  for (double h : scales) offsets.push_back(h * frame.nu());
  const auto est = continuity_experiment(c, frame, o.x0 * frame.nu(), offsets, o.epsilon, mc_config(o));

  Report r;
  r.experiment = "continuity";
  r.parameters = profile_parameters(o);
  r.parameters["epsilon"] = o.epsilon;
  r.parameters["offsets"] = scales;
  std::vector<TrendPoint> trend;
  r.columns = {"offset", "probability", "stderr"};
  r.rows.push_back({0.0, est[0].mean, est[0].std_error});
  for (std::size_t i = 1; i < est.size(); ++i) {
    trend.push_back({est[i].mean, est[i].half_width()});
    r.rows.push_back({scales[i - 1], est[i].mean, est[i].std_error});
  }
  const bool trend_ok = trend.size() >= 3 && monotone_trend(trend);
  r.checks.push_back(Check{"trend", est.back().mean, est.back().std_error, std::nullopt,
                           est[1].mean, trend_ok});
  r.checks.push_back(Check{"control", est[0].mean, est[0].std_error, 0.0, std::nullopt, est[0].mean == 0.0});
  Json probs = Json::array();
  for (std::size_t i = 1; i < est.size(); ++i) {
    probs.push_back(Json{{"offset", scales[i - 1]}, {"probability", est[i].mean},
                         {"stderr", est[i].std_error}});
  }
  r.details["estimates"] = probs;
  return r;
}

// --- plumbing ----------------------------------------------------------------

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Reads key=value lines ('#' starts a comment) into --key=value flags.
std::vector<std::string> config_flags(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::vector<std::string> flags;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + " is not key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config" || key.find_first_of(" \t-") == 0) {
      throw ConfigError("config line " + std::to_string(number) + " has an invalid key");
    }
    flags.push_back("--" + key + "=" + value);
  }
  return flags;
}

std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("SKEWSIM_SEED must be an unsigned integer");
  }
  return v;
}

void add_common(CLI::App& sub, Options& o) {
  sub.add_option("--seed", o.seed, "random seed (default: SKEWSIM_SEED)");
  sub.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  sub.add_option("--output", o.output, "output file (default: stdout)");
  sub.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--config", o.config, "flat key=value file; flags win");
  sub.add_option("--t", o.t, "time horizon")->check(CLI::PositiveNumber);
  sub.add_option("--steps", o.steps, "time steps")->check(CLI::PositiveNumber);
  sub.add_option("--paths", o.paths, "Monte Carlo paths");
  sub.add_option("--n", o.n, "mollifier scale")->check(CLI::PositiveNumber);
}

void add_profile(CLI::App& sub, Options& o) {
  sub.add_option("--profile", o.profile, "coefficient profile")
      ->check(CLI::IsMember(profile_names()));
  sub.add_option("--dim", o.dim, "dimension d >= 2");
  sub.add_option("--alpha", o.alpha, "drift amplitude");
  sub.add_option("--beta", o.beta, "diffusion amplitude");
  sub.add_option("--frequency", o.frequency, "profile frequency");
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed) {
  Options o;
  CLI::App app{"skewsim: skew Brownian motion and interface diffusion experiments"};
  app.name("skewsim");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* sbm = app.add_subcommand("sbm", "single path (paths = 1) or ensemble law check");
  add_common(*sbm, o);
  sbm->add_option("--q", o.q, "skewing parameter");
  sbm->add_option("--x0", o.x0, "start point");

  auto* couple = app.add_subcommand("couple", "comparison and bound experiments");
  add_common(*couple, o);
  couple->add_option("--experiment", o.experiment)->required()->check(CLI::IsMember(
      {"corollary1", "corollary2", "remark1", "remark2", "ordering", "bound-suite"}));
  couple->add_option("--q", o.q);
  couple->add_option("--q1", o.q1);
  couple->add_option("--q2", o.q2);
  couple->add_option("--x0", o.x0);
  couple->add_option("--x01", o.x01);
  couple->add_option("--x02", o.x02);
  couple->add_option("--cases", o.cases);
  couple->add_option("--dt", o.dt);

  auto* laws = app.add_subcommand("laws", "local-time law, mean local time and scheme checks");
  add_common(*laws, o);
  laws->add_option("--experiment", o.experiment)->required()->check(CLI::IsMember(
      {"eta-cdf", "mean-local-time", "scheme-law", "quadratic-variation", "cross-scheme"}));
  laws->add_option("--q", o.q);
  laws->add_option("--x0", o.x0);
  laws->add_option("--x-min", o.x_min);
  laws->add_option("--x-max", o.x_max);
  laws->add_option("--points", o.points);

  auto* gdiff = app.add_subcommand("gdiff", "interface diffusion, inverse local time and tail bounds");
  add_common(*gdiff, o);
  add_profile(*gdiff, o);
  gdiff->add_option("--experiment", o.experiment)->required()->check(CLI::IsMember(
      {"path", "time-change", "moment", "rho-tail", "small-local-time", "coefficients"}));
  gdiff->add_option("--q", o.q);
  gdiff->add_option("--x0", o.x0, "start on the normal line, x0 * nu");
  gdiff->add_option("--level", o.level, "local-time level");
  gdiff->add_option("--N", o.big_n, "tail horizon N");
  gdiff->add_option("--points", o.points);
  gdiff->add_option("--probes", o.probes);

  auto* continuity = app.add_subcommand("continuity", "shared-noise continuity in the start point");
  add_common(*continuity, o);
  add_profile(*continuity, o);
  continuity->add_option("--q", o.q);
  continuity->add_option("--x0", o.x0);
  continuity->add_option("--epsilon", o.epsilon);
  continuity->add_option("--offsets", o.offsets, "comma-separated multiples of nu");

  try {
    if (const auto cfg = find_config(args); cfg && !args.empty()) {
      const auto flags = config_flags(*cfg);
      args.insert(args.begin() + 1, flags.begin(), flags.end());
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "skewsim: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const ConfigError& e) {
    err << "skewsim: invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  }

  try {
    if (!o.seed && env_seed) o.seed = parse_seed(*env_seed);
    require(o.seed.has_value(), "a seed is required (--seed, config file or SKEWSIM_SEED)");
    require(o.paths >= 1, "paths must be >= 1");

    Report report;
    if (sbm->parsed()) {
      report = run_sbm(o);
    } else if (couple->parsed()) {
      report = run_couple(o);
    } else if (laws->parsed()) {
      report = run_laws(o);
    } else if (gdiff->parsed()) {
      report = run_gdiff(o);
    } else {
      report = run_continuity(o);
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.output.empty()) {
      file.open(o.output, std::ios::binary);
      require(static_cast<bool>(file), "cannot open output file '" + o.output + "'");
      sink = &file;
    }
    if (o.format == "csv") {
      write_csv(report, *sink);
    } else {
      write_json(report, *sink);
    }
    sink->flush();
    if (!report.pass()) {
      err << "skewsim: gate failed in " << report.experiment << '\n';
      return kGateFailed;
    }
    return kPass;
  } catch (const ConfigError& e) {
    err << "skewsim: invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::invalid_argument& e) {
    err << "skewsim: invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::domain_error& e) {
    err << "skewsim: invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::exception& e) {
    err << "skewsim: run failed: " << e.what() << '\n';
    return kGateFailed;
  }
}

}  // namespace skewsim
