#include "excesslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace excesslab {
namespace {

using nlohmann::ordered_json;

// JSON has no Inf/NaN; those map to null.
ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json atoms_json(const JointDistribution& dist) {
  ordered_json arr = ordered_json::array();
  for (const Atom& a : dist.atoms()) {
    arr.push_back({{"x", a.x}, {"y", a.y}, {"w", a.w}});
  }
  return arr;
}

ordered_json report_json(const GapReport& r) {
  ordered_json j;
  j["label"] = r.label;
  if (r.exponents) {
    j["p"] = r.exponents->p();
    j["theta"] = r.exponents->theta();
  }
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["gap"] = number(r.gap);
  j["tol"] = number(r.tol);
  j["holds"] = r.holds;
  return j;
}

double field(const ordered_json& atom, const char* key) {
  const auto it = atom.find(key);
  if (it == atom.end()) throw ParseError(std::string("atom is missing \"") + key + "\"");
  if (!it->is_number()) throw ParseError(std::string("field \"") + key + "\" is not a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string("field \"") + key + "\" is not finite");
  return v;
}


}  // namespace

JointDistribution parse_distribution(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
    throw ParseError("expected an object with an \"atoms\" array");
  }
  std::vector<Atom> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_object()) throw ParseError("atoms must be objects");
    atoms.push_back({field(a, "x"), field(a, "y"), field(a, "w")});
  }
  return make_joint(std::move(atoms));
}

JointDistribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_distribution(ss.str());
}

std::string distribution_json(const JointDistribution& dist) {
  ordered_json j;
  j["atoms"] = atoms_json(dist);
  return j.dump(2) + "\n";
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string gap_csv_row(const GapReport& r) {
  std::string p = "", theta = "";
  if (r.exponents) {
    p = format_number(r.exponents->p());
    theta = format_number(r.exponents->theta());
  }
  return r.label + "," + p + "," + theta + "," + format_number(r.lhs) + "," +
         format_number(r.rhs) + "," + format_number(r.gap) + "," +
         (r.holds ? "true" : "false");
}

std::string gap_reports_json(const std::vector<GapReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const GapReport& r : reports) arr.push_back(report_json(r));
  ordered_json j;
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

std::string sweep_json(const SweepSummary& s) {
  ordered_json j;
  j["trials"] = s.trials;
  j["violations"] = s.violations;
  j["unconfirmed"] = s.unconfirmed;
  j["holder_violations"] = s.holder_violations;
  j["minkowski_violations"] = s.minkowski_violations;
  j["worst_gap"] = number(s.worst_gap);
  j["worst_relative_gap"] = number(s.worst_relative_gap);
  if (s.worst) {
    ordered_json w;
    w["p"] = s.worst->exponents.p();
    w["theta"] = s.worst->exponents.theta();
    w["inequality"] = s.worst->label;
    w["atoms"] = atoms_json(s.worst->dist);
    j["worst_instance"] = w;
  } else {
    j["worst_instance"] = nullptr;
  }
  if (s.shrunk_violation) {
    ordered_json w;
    w["p"] = s.shrunk_violation->exponents.p();
    w["theta"] = s.shrunk_violation->exponents.theta();
    w["inequality"] = s.shrunk_violation->label;
    w["atoms"] = atoms_json(s.shrunk_violation->dist);
    j["shrunk_violation"] = w;
  }
  j["seed"] = s.seed;
  return j.dump(2) + "\n";
}

std::string maximize_json(const MomentSpec& spec, const Exponents& e,
                          const MaximizeOptions& options,
                          const MaximizeResult& result) {
  ordered_json j;
  j["spec"] = {{"m11", spec.m11()},
               {"m1p", spec.m1p()},
               {"m21", spec.m21()},
               {"m2p", spec.m2p()}};
  j["p"] = e.p();
  j["seed"] = options.seed;
  j["restarts"] = options.restarts;
  j["n_support"] = options.n_support;
  j["feasible"] = result.feasible;
  j["best_value"] = number(result.value);
  if (result.feasible) {
    j["best_restart"] = result.best_restart;
    j["point"] = {{"u", result.point.u},
                  {"v", result.point.v},
                  {"w", result.point.w}};
    const LagrangeMultipliers& m = result.multipliers.multipliers;
    j["residuals"] = {{"feasibility", result.feasibility_residual},
                      {"lagrange_scaled", result.multipliers.scaled_residual}};
    j["multipliers"] = {{"alpha", m.alpha}, {"lambda", m.lambda},
                        {"mu", m.mu},       {"nu", m.nu},
                        {"rho", m.rho},     {"tau", m.tau}};
  }
  return j.dump(2) + "\n";
}

std::string certificate_json(const ViolationCertificate& c) {
  ordered_json j;
  j["inequality"] = c.inequality;
  j["p"] = c.exponents.p();
  j["theta"] = c.exponents.theta();
  j["atoms"] = atoms_json(c.dist);
  j["gap"] = c.gap;
  j["tol"] = c.tol;
  j["recheck_gap"] = c.recheck_gap;
  j["recheck_gap_decimal"] = c.recheck_decimal;
  j["construction"] = c.construction;
  j["seed"] = c.seed;
  if (c.shift) j["shift"] = *c.shift;
  if (c.scale) j["scale"] = *c.scale;
  if (c.predicted_gap) j["predicted_gap"] = *c.predicted_gap;
  return j.dump(2) + "\n";
}

std::string scalar_csv_row(double p, double s, const HChain& h) {
  return format_number(p) + "," + format_number(s) + "," + format_number(h.h) +
         "," + format_number(h.h1) + "," + format_number(h.h2) + "," +
         format_number(h.h2_prime);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

}  // namespace excesslab
