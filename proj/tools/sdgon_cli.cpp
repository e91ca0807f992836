#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

#include "sdgon/errors.hpp"
#include "sdgon/expansion.hpp"
#include "sdgon/gonality.hpp"
#include "sdgon/json_io.hpp"

using namespace sdgon;

namespace {

enum Exit { Found = 0, NotFound = 2, Infeasible = 3, InputError = 4 };

Json read_json(const std::string& path) {
  if (path != "-") return load_json_file(path);
  std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  return parse_json_text(text);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Multigraph base_graph(const Multigraph& g, const std::string& base) {
  return base == "g1" ? build_g1(g).derived : g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisorial and stable divisorial gonality of multigraphs"};
  app.require_subcommand(1);
  std::string graph_path, cert_path, assign_path, witness_path, instance_path;
  std::string base = "graph";
  int kmax = 0, lmax = 0, k = 0;
  std::int64_t cap = 1 << 16;
  bool audit = false, cross_check = false, strict = false;
  const std::vector<std::string> bases = {"graph", "g1"};

  auto* g1 = app.add_subcommand("g1", "Subdivide every edge once");
  g1->add_option("graph", graph_path, "Graph JSON ('-' for stdin)")->required();

  auto* dg = app.add_subcommand("dgon", "Divisorial gonality, capped at --kmax");
  dg->add_option("graph", graph_path)->required();
  dg->add_option("--kmax", kmax)->required()->check(CLI::PositiveNumber);
  dg->add_flag("--cross-check", cross_check, "Re-check reachability by exhaustive search");

  auto* sd = app.add_subcommand("sdgon", "Stable divisorial gonality over subdivisions with lengths up to --lmax");
  sd->add_option("graph", graph_path)->required();
  sd->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
  sd->add_option("--lmax", lmax)->check(CLI::PositiveNumber);

  auto* mc = app.add_subcommand("make-cert", "Certificate and ground-truth assignment from a witness");
  mc->add_option("witness", witness_path)->required();
  mc->add_option("--k", k, "Degree bound (default: the divisor's degree)");

  auto* vf = app.add_subcommand("verify", "Check a certificate and assignment");
  vf->add_option("graph", graph_path)->required();
  vf->add_option("certificate", cert_path)->required();
  vf->add_option("assignment", assign_path)->required();
  vf->add_option("--k", k, "Degree bound (default: the certificate's)");
  vf->add_option("--base", base, "Certificate vertices: graph or g1")->check(CLI::IsMember(bases));
  vf->add_flag("--audit", audit, "Also expand and replay");

  auto* va = app.add_subcommand("validate", "List requirement violations of a certificate");
  va->add_option("graph", graph_path)->required();
  va->add_option("certificate", cert_path)->required();
  va->add_option("--base", base)->check(CLI::IsMember(bases));

  auto* bi = app.add_subcommand("build-ilp", "Integer program of a certificate");
  bi->add_option("graph", graph_path)->required();
  bi->add_option("certificate", cert_path)->required();
  bi->add_option("--base", base)->check(CLI::IsMember(bases));

  auto* ex = app.add_subcommand("expand", "Subdivision and firing scripts from a certificate and assignment");
  ex->add_option("graph", graph_path)->required();
  ex->add_option("certificate", cert_path)->required();
  ex->add_option("assignment", assign_path)->required();
  ex->add_option("--base", base)->check(CLI::IsMember(bases));
  ex->add_flag("--strict", strict, "No reduction fallback for interior vertices");

  auto* so = app.add_subcommand("solve-ilp", "Least solution with values in [1, cap]");
  so->add_option("instance", instance_path)->required();
  so->add_option("--cap", cap)->check(CLI::PositiveNumber);

  auto* bd = app.add_subcommand("bound", "Magnitude bound n(ma)^(2m+1) of an integer program");
  bd->add_option("instance", instance_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : InputError;
  }

  try {
    if (*g1) {
      const SubdivisionMap m = build_g1(graph_from_json(read_json(graph_path)));
      emit(graph_to_json(m.derived));
      return Found;
    }
    if (*dg) {
      const Multigraph g = graph_from_json(read_json(graph_path));
      DgonOptions o;
      o.cross_check = cross_check;
      const DgonResult r = dgon(g, kmax, o);
      Json j = {{"value", nullptr}, {"exceeded", !r.value}};
      if (r.value) {
        j["value"] = *r.value;
        j["divisor"] = divisor_to_json(g, r.witness);
      }
      emit(j);
      return r.value ? Found : NotFound;
    }
    if (*sd) {
      if (kmax == 0 || lmax == 0) {
        std::cerr << "sdgon needs both --kmax and --lmax. An uncapped search is out of reach: the subdivision "
                     "lengths it would need are bounded only by the magnitude bound of the certificate program "
                     "(see 'sdgon bound').\n";
        return InputError;
      }
      const Multigraph g = graph_from_json(read_json(graph_path));
      const SdgonResult r = sdgon_search(g, kmax, lmax);
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
      emit(j);
      return r.value ? Found : NotFound;
    }
    if (*mc) {
      const Witness w = witness_from_json(read_json(witness_path));
      const int bound = mc->count("--k") > 0 ? k : w.start.degree();
      emit({{"certificate", certificate_to_json(build_certificate(w, bound))},
            {"assignment", assignment_to_json(ground_truth(w))}});
      return Found;
    }
    if (*vf) {
      const Multigraph g = graph_from_json(read_json(graph_path));
      const PartialCertificate c = certificate_from_json(read_json(cert_path));
      NpOptions o;
      o.certificate_on_g1 = base == "g1";
      o.audit = audit;
      const NpVerdict v = verify_np(g, vf->count("--k") > 0 ? k : c.k, c, assignment_from_json(read_json(assign_path)), o);
      emit(verdict_to_json(v));
      return v.accepted() ? Found : NotFound;
    }
    if (*va) {
      const Multigraph g = base_graph(graph_from_json(read_json(graph_path)), base);
      Json violations = Json::array();
      for (const auto& x : validate(g, certificate_from_json(read_json(cert_path)))) {
        violations.push_back(violation_to_json(x));
      }
      emit({{"valid", violations.empty()}, {"violations", violations}});
      return violations.empty() ? Found : NotFound;
    }
    if (*bi) {
      const Multigraph g = base_graph(graph_from_json(read_json(graph_path)), base);
      const PartialCertificate c = certificate_from_json(read_json(cert_path));
      if (!validate(g, c).empty()) {
        std::cerr << "certificate does not validate; run 'sdgon validate'\n";
        return NotFound;
      }
      emit(instance_to_json(build_ilp(g, c)));
      return Found;
    }
    if (*ex) {
      const Multigraph g = base_graph(graph_from_json(read_json(graph_path)), base);
      const PartialCertificate c = certificate_from_json(read_json(cert_path));
      const IlpAssignment a = assignment_from_json(read_json(assign_path));
      if (!validate(g, c).empty() || !check_assignment(build_ilp(g, c), a)) {
        std::cerr << "certificate or assignment rejected; run 'sdgon verify'\n";
        return NotFound;
      }
      const Witness w = expand_certificate(g, c, a);
      const ExpansionReport r = verify_expansion(w, strict);
      emit({{"witness", witness_to_json(w)}, {"report", report_to_json(r)}});
      return r.ok() ? Found : NotFound;
    }
    if (*so) {
      const auto a = solve(instance_from_json(read_json(instance_path)), cap);
      if (!a) {
        std::cerr << "no solution with values in [1, " << cap << "]\n";
        return Infeasible;
      }
      emit(assignment_to_json(*a));
      return Found;
    }
    if (*bd) {
      const MagnitudeBound b = magnitude_bound(instance_from_json(read_json(instance_path)));
      emit({{"n", b.n}, {"m", b.m}, {"a", b.a}, {"bound", b.value.str()}});
      return Found;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InputError;
  }
  return InputError;
}
