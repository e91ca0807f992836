#include <pybind11/pybind11.h>

#include "sdgon/errors.hpp"
#include "sdgon/expansion.hpp"
#include "sdgon/gonality.hpp"
#include "sdgon/json_io.hpp"

namespace py = pybind11;
using namespace sdgon;

// Every entry point takes and returns JSON text; the Python package wraps
// them with json.loads / json.dumps.
namespace {

Multigraph on_base(const std::string& graph, const std::string& base) {
  const Multigraph g = graph_from_json(parse_json_text(graph));
  if (base == "graph") return g;
  if (base == "g1") return build_g1(g).derived;
  throw ParseError("base must be 'graph' or 'g1'");
}

std::string g1(const std::string& graph) {
  return graph_to_json(build_g1(graph_from_json(parse_json_text(graph))).derived).dump();
}

std::string dgon_json(const std::string& graph, int k_max, bool cross_check) {
  const Multigraph g = graph_from_json(parse_json_text(graph));
  DgonOptions o;
  o.cross_check = cross_check;
  const DgonResult r = dgon(g, k_max, o);
  Json j = {{"value", nullptr}, {"exceeded", !r.value}};
  if (r.value) {
    j["value"] = *r.value;
    j["divisor"] = divisor_to_json(g, r.witness);
  }
  return j.dump();
}

std::string sdgon_json(const std::string& graph, int k_max, int l_max) {
  const Multigraph g = graph_from_json(parse_json_text(graph));
  const SdgonResult r = sdgon_search(g, k_max, l_max);
  Json j = {{"value", nullptr},
            {"exceeded", !r.value},
            {"binding", r.binding},
            {"subdivisions_checked", r.subdivisions_checked}};
  if (r.value) {
    j["value"] = *r.value;
    j["lengths"] = r.lengths;
    j["divisor"] = divisor_to_json(r.h.derived, r.divisor);
    j["witness"] = witness_to_json(witness_on_g1(g, r.h, r.divisor));
  }
  return j.dump();
}

std::string make_cert(const std::string& witness, int k) {
  const Witness w = witness_from_json(parse_json_text(witness));
  return Json{{"certificate", certificate_to_json(build_certificate(w, k < 0 ? w.start.degree() : k))},
              {"assignment", assignment_to_json(ground_truth(w))}}
      .dump();
}

std::string validate_json(const std::string& graph, const std::string& cert, const std::string& base) {
  Json out = Json::array();
  for (const auto& v : validate(on_base(graph, base), certificate_from_json(parse_json_text(cert)))) {
    out.push_back(violation_to_json(v));
  }
  return out.dump();
}

std::string build_ilp_json(const std::string& graph, const std::string& cert, const std::string& base) {
  return instance_to_json(build_ilp(on_base(graph, base), certificate_from_json(parse_json_text(cert)))).dump();
}

std::string check_json(const std::string& instance, const std::string& assignment) {
  return Json(check_assignment(instance_from_json(parse_json_text(instance)),
                               assignment_from_json(parse_json_text(assignment))))
      .dump();
}

std::string solve_json(const std::string& instance, std::int64_t cap) {
  const auto a = solve(instance_from_json(parse_json_text(instance)), cap);
  return a ? assignment_to_json(*a).dump() : "null";
}

std::string bound_json(const std::string& instance) {
  const MagnitudeBound b = magnitude_bound(instance_from_json(parse_json_text(instance)));
  return Json{{"n", b.n}, {"m", b.m}, {"a", b.a}, {"bound", b.value.str()}}.dump();
}

std::string verify_json(const std::string& graph, const std::string& cert, const std::string& assignment, int k,
                        const std::string& base, bool audit) {
  if (base != "graph" && base != "g1") throw ParseError("base must be 'graph' or 'g1'");
  const PartialCertificate c = certificate_from_json(parse_json_text(cert));
  NpOptions o;
  o.certificate_on_g1 = base == "g1";
  o.audit = audit;
  return verdict_to_json(verify_np(graph_from_json(parse_json_text(graph)), k < 0 ? c.k : k, c,
                                   assignment_from_json(parse_json_text(assignment)), o))
      .dump();
}

std::string expand_json(const std::string& graph, const std::string& cert, const std::string& assignment,
                        const std::string& base, bool strict) {
  const Witness w = expand_certificate(on_base(graph, base), certificate_from_json(parse_json_text(cert)),
                                       assignment_from_json(parse_json_text(assignment)));
  return Json{{"witness", witness_to_json(w)}, {"report", report_to_json(verify_expansion(w, strict))}}.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chip-firing gonality and certificate verification.";
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&] { return py::exception<Error>(m, "SdgonError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error.get_stored(), e.what());
    } catch (const nlohmann::json::exception& e) {
      py::set_error(error.get_stored(), e.what());
    }
  });

  m.def("g1", &g1, py::arg("graph"));
  m.def("dgon", &dgon_json, py::arg("graph"), py::arg("k_max"), py::arg("cross_check") = false);
  m.def("sdgon", &sdgon_json, py::arg("graph"), py::arg("k_max"), py::arg("l_max"));
  m.def("make_cert", &make_cert, py::arg("witness"), py::arg("k") = -1);
  m.def("validate", &validate_json, py::arg("graph"), py::arg("certificate"), py::arg("base") = "graph");
  m.def("build_ilp", &build_ilp_json, py::arg("graph"), py::arg("certificate"), py::arg("base") = "graph");
  m.def("check_assignment", &check_json, py::arg("instance"), py::arg("assignment"));
  m.def("solve_ilp", &solve_json, py::arg("instance"), py::arg("cap") = 1 << 16);
  m.def("magnitude_bound", &bound_json, py::arg("instance"));
  m.def("verify", &verify_json, py::arg("graph"), py::arg("certificate"), py::arg("assignment"),
        py::arg("k") = -1, py::arg("base") = "graph", py::arg("audit") = false);
  m.def("expand", &expand_json, py::arg("graph"), py::arg("certificate"), py::arg("assignment"),
        py::arg("base") = "graph", py::arg("strict") = false);
}
