#include "excesslab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "excesslab/errors.hpp"
#include "excesslab/extremal.hpp"
#include "excesslab/inequalities.hpp"
#include "excesslab/io.hpp"
#include "excesslab/scalar_analysis.hpp"
#include "excesslab/search.hpp"

namespace excesslab {
namespace {

double require_p(const RunConfig& c) {
  if (!c.p) throw DomainError("--p is required");
  return *c.p;
}

Exponents exponents_of(const RunConfig& c) {
  return make_exponents(require_p(c), c.theta.value_or(1.0));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_check(const RunConfig& c) {
  if (!c.input) throw DomainError("check needs --input");
  const JointDistribution dist = load_distribution(*c.input);
  const Exponents e = exponents_of(c);
  const std::vector<GapReport> reports{check_excess_minkowski(dist, e),
                                       check_excess_holder(dist, e)};
  if (c.format == OutputFormat::csv) {
    std::string text = std::string(kGapCsvHeader) + "\n";
    for (const GapReport& r : reports) text += gap_csv_row(r) + "\n";
    write_output(c.output, text);
  } else {
    write_output(c.output, gap_reports_json(reports));
  }
  for (const GapReport& r : reports) {
    if (!r.holds) return kExitViolation;
  }
  return kExitOk;
}

int run_sweep(const RunConfig& c) {
  if (c.format == OutputFormat::csv) throw DomainError("sweep writes JSON only");
  SweepConfig s;
  s.trials = c.trials.value_or(s.trials);
  s.seed = c.seed;
  s.threads = c.threads;
  if (c.p) s.p_range = {*c.p, *c.p};
  if (c.theta) s.theta_range = {*c.theta, *c.theta};
  const SweepSummary summary = sweep(s);
  write_output(c.output, sweep_json(summary));
  return summary.violations > 0 ? kExitViolation : kExitOk;
}

MomentSpec spec_from_input(const std::string& path, const Exponents& e) {
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
  if (j.is_object() && j.contains("atoms")) {
    return compactify(parse_distribution(text), e).spec;
  }
  auto get = [&](const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number()) {
      throw ParseError(std::string("spec needs numeric \"") + key + "\"");
    }
    return j[key].get<double>();
  };
  return make_moment_spec(get("m11"), get("m1p"), get("m21"), get("m2p"), e);
}

int run_maximize(const RunConfig& c) {
  if (!c.input) throw DomainError("maximize needs --input (distribution or spec)");
  if (c.format == OutputFormat::csv) throw DomainError("maximize writes JSON only");
  const Exponents e = make_exponents(require_p(c), 1.0);
  const MomentSpec spec = spec_from_input(*c.input, e);
  MaximizeOptions o;
  o.restarts = c.restarts.value_or(o.restarts);
  o.n_support = c.n_support.value_or(o.n_support);
  o.seed = c.seed;
  o.threads = c.threads;
  const MaximizeResult r = maximize(spec, e, o);
  write_output(c.output, maximize_json(spec, e, o, r));
  return r.feasible ? kExitOk : kExitInfeasible;
}

int run_counterexample(const RunConfig& c) {
  if (c.format == OutputFormat::csv) throw DomainError("counterexample writes JSON only");
  const Exponents e = exponents_of(c);
  if (c.inequality != "holder" && c.inequality != "minkowski") {
    throw DomainError("--inequality must be holder or minkowski");
  }
  std::optional<ViolationCertificate> cert;
  if (c.construction == "bernoulli") {
    cert = c.inequality == "holder" ? paper_counterexample(e)
                                    : minkowski_counterexample(e);
  } else if (c.construction == "random") {
    SearchOptions o;
    o.trials = c.trials.value_or(o.trials);
    o.seed = c.seed;
    o.threads = c.threads;
    cert = random_violation_search(e, o);
    if (!cert) throw NumericFault("random search found no certifiable violation");
  } else {
    throw DomainError("--construction must be bernoulli or random");
  }
  write_output(c.output, certificate_json(*cert));
  return kExitOk;
}

int run_scalar(const RunConfig& c) {
  std::vector<double> ps;
  if (c.p) {
    ps.push_back(*c.p);
  } else {
    for (int k = 1; k <= 19; ++k) ps.push_back(1.0 + 0.05 * k);
  }
  if (c.points < 2) throw DomainError("--points must be >= 2");
  std::string text;
  if (c.format == OutputFormat::csv) {
    text = std::string(kScalarCsvHeader) + "\n";
    for (double p : ps) {
      for (std::size_t i = 0; i < c.points; ++i) {
        const double s = 50.0 * static_cast<double>(i) / static_cast<double>(c.points - 1);
        text += scalar_csv_row(p, s, h_chain(p, s)) + "\n";
      }
    }
  } else {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (double p : ps) {
      for (std::size_t i = 0; i < c.points; ++i) {
        const double s = 50.0 * static_cast<double>(i) / static_cast<double>(c.points - 1);
        const HChain h = h_chain(p, s);
        rows.push_back({{"p", p}, {"s", s}, {"h", h.h}, {"h1", h.h1},
                        {"h2", h.h2}, {"h2_prime", h.h2_prime}});
      }
    }
    text = nlohmann::ordered_json{{"rows", rows}}.dump(2) + "\n";
  }
  write_output(c.output, text);
  return kExitOk;
}

}  // namespace

ParseOutcome parse_command_line(int argc, const char* const* argv,
                                std::ostream& out, std::ostream& err) {
  CLI::App app{"excesslab: (p,theta)-excess inequalities toolkit", "excesslab"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  double p = 0.0, theta = 1.0;
  std::size_t trials = 0, restarts = 0, n_support = 0;
  unsigned threads = 0;
  std::string input;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", p, "exponent p > 1");
    sub->add_option("--theta", theta, "interpolation weight in [0,1]");
    sub->add_option("--seed", cfg.seed, "random seed (default 0)");
    sub->add_option("--output", cfg.output, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", threads, "worker cap (EXCESSLAB_THREADS)");
  };
  auto* check = app.add_subcommand("check", "check both inequalities on one distribution");
  common(check);
  check->add_option("--input", input, "distribution JSON")->required();
  auto* sw = app.add_subcommand("sweep", "random sweep of both inequalities");
  common(sw);
  sw->add_option("--trials", trials, "number of random instances");
  auto* mx = app.add_subcommand("maximize", "multi-start maximization of the compactified gap");
  common(mx);
  mx->add_option("--input", input, "distribution or moment spec JSON")->required();
  mx->add_option("--restarts", restarts, "number of restarts");
  mx->add_option("--n-support", n_support, "support size (>= 2)");
  auto* ce = app.add_subcommand("counterexample", "emit a violation certificate for p > 2");
  common(ce);
  ce->add_option("--inequality", cfg.inequality, "holder or minkowski");
  ce->add_option("--construction", cfg.construction, "bernoulli or random");
  ce->add_option("--trials", trials, "random search trials");
  auto* sc = app.add_subcommand("scalar", "scan of the h-chain");
  common(sc);
  sc->add_option("--points", cfg.points, "s grid points on [0, 50]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitOk : kExitUsage};
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "check") cfg.subcommand = Subcommand::check;
  else if (name == "sweep") cfg.subcommand = Subcommand::sweep;
  else if (name == "maximize") cfg.subcommand = Subcommand::maximize;
  else if (name == "counterexample") cfg.subcommand = Subcommand::counterexample;
  else cfg.subcommand = Subcommand::scalar;

  if (sub->count("--p")) cfg.p = p;
  if (sub->count("--theta")) cfg.theta = theta;
  if (!input.empty()) cfg.input = input;
  if (sub->get_option_no_throw("--trials") && sub->count("--trials")) cfg.trials = trials;
  if (sub->get_option_no_throw("--restarts") && sub->count("--restarts")) cfg.restarts = restarts;
  if (sub->get_option_no_throw("--n-support") && sub->count("--n-support")) cfg.n_support = n_support;
  if (sub->count("--threads")) cfg.threads = threads;
  cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  return {cfg, kExitOk};
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::check: return run_check(config);
      case Subcommand::sweep: return run_sweep(config);
      case Subcommand::maximize: return run_maximize(config);
      case Subcommand::counterexample: return run_counterexample(config);
      case Subcommand::scalar: return run_scalar(config);
    }
  } catch (const std::exception& e) {
    err << "excesslab: " << e.what() << "\n";
  }
  return kExitUsage;
}

int main_entry(int argc, const char* const* argv) {
  ParseOutcome parsed = parse_command_line(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, std::cerr);
}

}  // namespace excesslab
