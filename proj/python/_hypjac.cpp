// Thin binding: every entry point returns a JSON string; the python package
// decodes it. Library exceptions map onto python exception types below.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypjac/derham.hpp"
#include "hypjac/errors.hpp"
#include "hypjac/flows.hpp"
#include "hypjac/mumford.hpp"
#include "hypjac/qseries.hpp"
#include "hypjac/reduce.hpp"
#include "hypjac/symplectic.hpp"
#include "hypjac/verify.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace hypjac;
using nlohmann::json;

namespace {

std::vector<Rational> rationals(const std::vector<std::string>& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) out.push_back(parse_rational(x));
  return out;
}

std::string ring_chars(int g, int trunc) {
  const RingCharacters rc = ring_characters(g, trunc);
  json j{{"g", g}, {"trunc", trunc}, {"ch_A", rc.ch_A.to_json()}, {"ch_F", rc.ch_F.to_json()},
         {"ch_A0", rc.ch_A0.to_json()}, {"product_identity", rc.product_identity}};
  return j.dump();
}

std::string basis(int g, int deg2) {
  json out = json::array();
  for (const auto& m : basis_enum(g, deg2)) out.push_back(m.to_string());
  return out.dump();
}

std::string nf(const std::string& expr, int g, const std::vector<std::string>& f0) {
  const ReductionSystem sys = build_reduction_system(g, rationals(f0));
  return json(normal_form(parse_poly(expr, g), sys).to_string()).dump();
}

std::string to_triple(int g, const std::vector<std::pair<std::string, std::string>>& points,
                      const std::vector<std::string>& f) {
  Curve curve{g, f.empty() ? std::vector<Rational>(2 * g + 1, Rational(0)) : rationals(f)};
  curve.validate();
  std::vector<RationalPoint> pts;
  for (const auto& [z, y] : points) pts.push_back({parse_rational(z), parse_rational(y)});
  return divisor_to_triple(pts, curve).to_json().dump();
}

std::string round_trip(int g, int cases, std::uint64_t seed, unsigned bits) {
  return mumford_round_trip(g, cases, seed, bits).to_json().dump();
}

std::string flows(int g, std::uint64_t seed) {
  FlowOptions opts;
  opts.seed = seed;
  return verify_flows(g, opts).to_json().dump();
}

json refused(const WindowRefusal& e) {
  return {{"refused", true}, {"message", e.what()}, {"need_window", {e.need_lo(), e.need_hi()}}};
}

std::string cohomology(int g, std::optional<std::pair<int, int>> window, bool allow_partial) {
  const Window w = window ? Window{window->first, window->second} : required_window(g);
  try {
    return cohomology_dims(g, w, allow_partial).to_json().dump();
  } catch (const WindowRefusal& e) {
    return refused(e).dump();
  }
}

std::string descend(int g, const std::string& expr) {
  DeRhamComplex cx(g);
  const Poly x = cx.normal_form(parse_poly(expr, g));
  const int deg = x.is_zero() ? 0 : x.max_doubled_degree().value_or(0);
  DescentSolver solver(cx, hg_representatives(cx, deg - g * g));
  return solver.descend(x).to_json(solver.representatives()).dump();
}

std::string wk(int g, int k, int trunc) {
  json j = wk_dims_and_characters(g, k, trunc).to_json();
  j["phi"] = phi_kernel(g, k).to_json();
  return j.dump();
}

std::string koszul(int g, int lo, int hi) {
  try {
    return koszul_check(g, lo, hi).to_json().dump();
  } catch (const WindowRefusal& e) {
    return refused(e).dump();
  }
}

std::string criterion(int id, const std::vector<int>& genera, std::uint64_t seed) {
  return run_criterion(id, genera, seed).to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_hypjac, m) {
  m.doc() = "hypjac core bindings (JSON strings)";
  // Translators run newest first, so the base class is registered first.
  auto& base = py::register_exception<hypjac::Error>(m, "HypjacError");
  py::register_exception<hypjac::ParseError>(m, "ParseError",
                                             py::make_tuple(base, py::handle(PyExc_ValueError)));

  m.def("ring_characters", &ring_chars, py::arg("g"), py::arg("trunc"));
  m.def("basis", &basis, py::arg("g"), py::arg("deg2"));
  m.def("normal_form", &nf, py::arg("expr"), py::arg("g"), py::arg("f0") = std::vector<std::string>{});
  m.def("divisor_to_triple", &to_triple, py::arg("g"), py::arg("points"),
        py::arg("f") = std::vector<std::string>{});
  m.def("mumford_round_trip", &round_trip, py::arg("g"), py::arg("cases"), py::arg("seed") = 1,
        py::arg("precision_bits") = 256);
  m.def("verify_flows", &flows, py::arg("g"), py::arg("seed") = 1);
  m.def("cohomology", &cohomology, py::arg("g"), py::arg("window") = py::none(),
        py::arg("allow_partial") = false);
  m.def("descend", &descend, py::arg("g"), py::arg("expr"));
  m.def("wk", &wk, py::arg("g"), py::arg("k"), py::arg("trunc") = 40);
  m.def("koszul", &koszul, py::arg("g"), py::arg("lo"), py::arg("hi"));
  m.def("run_criterion", &criterion, py::arg("id"), py::arg("genera"), py::arg("seed") = 1);
}
