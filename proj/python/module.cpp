#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bcn/burnside.hpp"
#include "bcn/catalog.hpp"
#include "bcn/reproduce.hpp"
#include "bcn/serialize.hpp"

namespace py = pybind11;
using namespace bcn;

namespace {

GroupLimits limits_for(const std::string& tier) {
  GroupLimits l;
  if (tier == "desk") l.max_order = 1000;
  else if (tier != "stretch") throw ParseError("tier must be desk or stretch");
  return l;
}

Json decomposition_json(const SymbolContext& ctx, const DecompositionReport& d) {
  Json s = Json::array();
  for (const auto& x : d.summands) {
    const PairClass& pc = ctx.pair_class(x.pair_class);
    Json j = invariants_json(x.invariants);
    j["label"] = x.label;
    j["H"] = cycles_of(*ctx.group(), pc.h.generators());
    j["Y"] = cycles_of(*ctx.group(), pc.y.generators());
    j["orbit_size"] = pc.orbit_size;
    s.push_back(std::move(j));
  }
  Json out = invariants_json(d.total);
  out["n"] = d.n;
  out["summands"] = std::move(s);
  return out;
}

std::string py_bc(const std::string& group, std::size_t n, const std::string& flavor, const std::string& tier, unsigned threads) {
  Burnside b(resolve_group(group, limits_for(tier)), threads);
  Json out;
  if (flavor == "bc") out = invariants_json(b.bc(n));
  else if (flavor == "bcprime") out = decomposition_json(b.context(), b.bc_prime(n));
  else throw ParseError("flavor must be bc or bcprime");
  out["group"] = group;
  out["n"] = n;
  out["flavor"] = flavor;
  return out.dump();
}

std::string py_verify(const std::string& group, std::size_t n, bool corrupt, unsigned threads) {
  Burnside b(resolve_group(group, limits_for("desk")), threads);
  auto r = b.verify_main(n, corrupt);
  Json out{{"group", group},
           {"n", n},
           {"generators", r.generators},
           {"psi_relations_mapped", r.psi_relations_mapped},
           {"phi_relations_mapped", r.phi_relations_mapped},
           {"inverse_formal", r.inverse_formal},
           {"inverse_mod_relations", r.inverse_mod_relations},
           {"surjective", r.surjective},
           {"invariants_equal", r.invariants_equal},
           {"decomposition_consistent", r.decomposition_consistent},
           {"iso", r.iso()},
           {"bc", invariants_json(r.bc)},
           {"bc_prime", invariants_json(r.bc_prime)}};
  return out.dump();
}

std::string py_cd(const std::string& group, const std::string& coefficients, unsigned long p, unsigned threads) {
  Coefficients c = Coefficients::Z;
  if (coefficients == "Q") c = Coefficients::Q;
  else if (coefficients == "F") c = Coefficients::Fp;
  else if (coefficients != "Z") throw ParseError("coefficients must be Z, Q or F");
  if (c == Coefficients::Fp && p < 2) throw ParseError("F coefficients need a prime p");
  Burnside b(resolve_group(group, limits_for("desk")), threads);
  auto r = b.cd(c, p);
  Json values = Json::array();
  for (const auto& v : r.values) values.push_back(invariants_json(v));
  Json out{{"group", group},         {"coefficients", coefficients}, {"cd", r.cd},
           {"bound", r.bound},       {"values", values},             {"largest_abelian_order", r.largest_abelian_order},
           {"conjectured_bound", r.conjectured_bound}};
  if (c == Coefficients::Fp) out["p"] = p;
  return out.dump();
}

std::string py_class_order(const std::string& group, std::size_t n, const std::string& terms) {
  Burnside b(resolve_group(group, limits_for("desk")));
  FormalSum x = sum_from_json(b.context(), Json::parse(terms));
  auto o = b.class_order(n, x);
  Json out{{"group", group}, {"n", n}, {"order", o ? Json(o->get_str()) : Json(nullptr)}, {"finite", o.has_value()}};
  if (o && o->fits_slong_p()) out["order"] = o->get_si();
  return out.dump();
}

std::string py_restrict_(const std::string& group, const std::vector<std::string>& subgroup, std::size_t n, const std::string& terms) {
  auto g = resolve_group(group, limits_for("desk"));
  SymbolContext from(g);
  auto sub = parse_group(subgroup, limits_for("desk"));
  SymbolContext to(sub);
  FormalSum x = sum_from_json(from, Json::parse(terms));
  FormalSum r = restrict_sum(from, to, x);
  Burnside b(std::make_shared<const SymbolContext>(sub));
  auto o = b.class_order(n, r);
  Json out{{"terms", sum_json(to, r)}, {"text", sum_text(to, r)}, {"order", o ? Json(o->get_str()) : Json(nullptr)}};
  return out.dump();
}

std::string py_basis(const std::string& group, const std::vector<std::string>& subgroup) {
  auto g = resolve_group(group, limits_for("desk"));
  Subgroup h = subgroup.empty() ? Subgroup::whole(g) : subgroup_from_cycles(g, subgroup);
  return basis_json(*AbelianStructure::of(h)).dump();
}

std::string py_pairs(const std::string& group) {
  auto g = resolve_group(group, limits_for("desk"));
  Json out = Json::array();
  for (const auto& pc : pair_classes(g))
    out.push_back({{"label", pc.label()},
                   {"H", cycles_of(*g, pc.h.generators())},
                   {"Y", cycles_of(*g, pc.y.generators())},
                   {"orbit_size", pc.orbit_size}});
  return out.dump();
}

std::string py_reproduce_(const std::string& table, const std::string& tier, unsigned threads) {
  ReproduceOptions o;
  o.tier = tier;
  o.threads = threads;
  Json out = Json::array();
  for (const auto& c : reproduce(table, o))
    out.push_back({{"table", c.table},
                   {"kind", c.kind},
                   {"label", c.label},
                   {"expected", c.expected},
                   {"actual", c.actual},
                   {"pass", c.pass},
                   {"skipped", c.skipped},
                   {"note", c.note},
                   {"seconds", c.seconds}});
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_bcn, m) {
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  m.def("group_order", [](const std::string& g) { return resolve_group(g, limits_for("desk"))->order(); });
  m.def("bc", &py_bc, py::arg("group"), py::arg("n"), py::arg("flavor") = "bc", py::arg("tier") = "desk", py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("verify", &py_verify, py::arg("group"), py::arg("n"), py::arg("corrupt_psi") = false, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("cd", &py_cd, py::arg("group"), py::arg("coefficients") = "Z", py::arg("p") = 0, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("class_order", &py_class_order, py::arg("group"), py::arg("n"), py::arg("terms"));
  m.def("restrict", &py_restrict_, py::arg("group"), py::arg("subgroup"), py::arg("n"), py::arg("terms"));
  m.def("basis", &py_basis, py::arg("group"), py::arg("subgroup") = std::vector<std::string>{});
  m.def("pair_classes", &py_pairs, py::arg("group"));
  m.def("reproduce", &py_reproduce_, py::arg("table"), py::arg("tier") = "desk", py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("embedded_file", [](const std::string& name) { return std::string(embedded_file(name)); });
}
