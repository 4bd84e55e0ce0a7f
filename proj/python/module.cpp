#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "excesslab/core.hpp"
#include "excesslab/extremal.hpp"
#include "excesslab/functionals.hpp"
#include "excesslab/inequalities.hpp"
#include "excesslab/io.hpp"
#include "excesslab/scalar_analysis.hpp"
#include "excesslab/search.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace excesslab;

namespace {

JointDistribution joint_from(const std::vector<std::tuple<double, double, double>>& atoms) {
  std::vector<Atom> a;
  a.reserve(atoms.size());
  for (const auto& [x, y, w] : atoms) a.push_back({x, y, w});
  return make_joint(std::move(a));
}

std::string sweep_to_json(std::size_t trials, std::uint64_t seed,
                          std::pair<double, double> p_range,
                          std::pair<double, double> theta_range,
                          std::optional<unsigned> threads) {
  SweepConfig c;
  c.trials = trials;
  c.seed = seed;
  c.p_range = {p_range.first, p_range.second};
  c.theta_range = {theta_range.first, theta_range.second};
  c.threads = threads;
  py::gil_scoped_release release;
  return sweep_json(sweep(c));
}

std::string maximize_to_json(double m11, double m1p, double m21, double m2p,
                             double p, std::size_t n_support, std::size_t restarts,
                             std::uint64_t seed, std::optional<unsigned> threads) {
  const Exponents e = make_exponents(p, 1.0);
  const MomentSpec spec = make_moment_spec(m11, m1p, m21, m2p, e);
  const MaximizeOptions o{n_support, restarts, seed, threads};
  py::gil_scoped_release release;
  return maximize_json(spec, e, o, maximize(spec, e, o));
}

}  // namespace

PYBIND11_MODULE(_excesslab, m) {
  m.doc() = "Excess Hoelder and Minkowski inequalities: checks, counterexamples, extremal search";

  py::class_<Exponents>(m, "Exponents")
      .def(py::init(&make_exponents), "p"_a, "theta"_a = 1.0)
      .def_property_readonly("p", &Exponents::p)
      .def_property_readonly("q", &Exponents::q)
      .def_property_readonly("theta", &Exponents::theta)
      .def("__repr__", [](const Exponents& e) {
        return "Exponents(p=" + format_number(e.p()) + ", theta=" + format_number(e.theta()) + ")";
      });

  py::class_<JointDistribution>(m, "JointDistribution")
      .def(py::init(&joint_from), "atoms"_a)
      .def_property_readonly("atoms", [](const JointDistribution& d) {
        std::vector<std::tuple<double, double, double>> out;
        for (const Atom& a : d.atoms()) out.emplace_back(a.x, a.y, a.w);
        return out;
      })
      .def("__len__", &JointDistribution::size)
      .def("to_json", &distribution_json);

  py::class_<GapReport>(m, "GapReport")
      .def_readonly("label", &GapReport::label)
      .def_readonly("lhs", &GapReport::lhs)
      .def_readonly("rhs", &GapReport::rhs)
      .def_readonly("gap", &GapReport::gap)
      .def_readonly("tol", &GapReport::tol)
      .def_readonly("holds", &GapReport::holds);

  m.def("excess_x", [](const JointDistribution& d, const Exponents& e) { return excess(d, Axis::X, e); });
  m.def("excess_y", [](const JointDistribution& d, const Exponents& e) { return excess(d, Axis::Y, e); });
  m.def("cov_like", &cov_like);
  m.def("delta", &delta);
  m.def("minkowski_g", &minkowski_g, "dist"_a, "e"_a, "t"_a);
  m.def("minkowski_g_prime", &minkowski_g_prime, "dist"_a, "e"_a, "t"_a);
  m.def("check_excess_holder", &check_excess_holder);
  m.def("check_excess_minkowski", &check_excess_minkowski);

  m.def("parse_distribution", &parse_distribution, "text"_a);
  m.def("_sweep_json", &sweep_to_json, "trials"_a, "seed"_a, "p_range"_a,
        "theta_range"_a, "threads"_a);
  m.def("_maximize_json", &maximize_to_json, "m11"_a, "m1p"_a, "m21"_a, "m2p"_a,
        "p"_a, "n_support"_a, "restarts"_a, "seed"_a, "threads"_a);
  m.def("_holder_certificate_json", [](const Exponents& e) {
    return certificate_json(paper_counterexample(e));
  });
  m.def("_minkowski_certificate_json", [](const Exponents& e) {
    return certificate_json(minkowski_counterexample(e));
  });

  m.def("h_chain", [](double p, double s) {
    const HChain c = h_chain(p, s);
    return py::dict("h"_a = c.h, "h1"_a = c.h1, "h2"_a = c.h2, "h2_prime"_a = c.h2_prime);
  }, "p"_a, "s"_a);
  m.def("bernoulli_second_derivative", &bernoulli_second_derivative);
  m.def("measured_second_derivative", &measured_second_derivative, "e"_a, "h"_a = 1e-12);
}
