#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wd/closed.hpp"
#include "wd/error.hpp"
#include "wd/frontend/cli.hpp"
#include "wd/frontend/csv.hpp"
#include "wd/frontend/dot.hpp"
#include "wd/frontend/workspace.hpp"
#include "wd/laws.hpp"
#include "wd/partition.hpp"
#include "wd/recursion.hpp"

#include <sstream>

namespace py = pybind11;
using namespace wd;

namespace {

// (star, wire, cable) with star None for the outer star.
WiringDiagram diagram_from(std::vector<std::vector<std::string>> inner, std::vector<std::string> outer,
                           std::vector<std::string> cables,
                           const std::vector<std::tuple<py::object, std::string, std::string>>& solders) {
  std::vector<Star> stars;
  for (auto& w : inner) stars.emplace_back(std::move(w));
  std::vector<Solder> ss;
  for (const auto& [star, wire, cable] : solders) {
    ss.push_back({star.is_none() ? kOuter : star.cast<std::size_t>(), wire, cable});
  }
  return make_diagram(std::move(stars), Star(std::move(outer)), std::move(cables), ss);
}

std::vector<std::vector<Value>> sorted_rows(const Relation& r) {
  auto rows = r.rows();
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

PYBIND11_MODULE(wdoperad, m) {
  m.doc() = "Wiring diagrams, relational evaluation and fixed points";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Star>(m, "Star")
      .def(py::init<std::vector<std::string>>())
      .def_property_readonly("wires", &Star::wires)
      .def("__len__", &Star::size)
      .def("__eq__", [](const Star& a, const Star& b) { return a == b; })
      .def("__repr__", [](const Star& s) { return to_string(s); });

  py::class_<WiringDiagram>(m, "WiringDiagram")
      .def(py::init(&diagram_from), py::arg("inner"), py::arg("outer"), py::arg("cables"), py::arg("solders"))
      .def_property_readonly("arity", &WiringDiagram::arity)
      .def_property_readonly("inner", py::overload_cast<>(&WiringDiagram::inner, py::const_))
      .def_property_readonly("outer", &WiringDiagram::outer)
      .def_property_readonly("cables", &WiringDiagram::cable_names)
      .def("__eq__", [](const WiringDiagram& a, const WiringDiagram& b) { return diagrams_equal(a, b); })
      .def("__repr__", [](const WiringDiagram& d) { return to_string(d); });

  m.def("identity", &identity_diagram);
  m.def("compose", [](const WiringDiagram& o, const std::vector<WiringDiagram>& in) { return compose(o, in); });
  m.def("canonicalize", [](const WiringDiagram& d) { return canonicalize(d); });
  m.def("reindex_inner",
        [](const WiringDiagram& d, const std::vector<std::size_t>& sigma) { return reindex_inner(d, sigma); });

  py::class_<ValueDomain>(m, "ValueDomain")
      .def(py::init<std::string, std::vector<Value>>())
      .def_static("range", &ValueDomain::range)
      .def_property_readonly("name", &ValueDomain::name)
      .def_property_readonly("values", &ValueDomain::values)
      .def("__len__", &ValueDomain::size);

  py::class_<TypedStar>(m, "TypedStar")
      .def(py::init<Star, std::vector<ValueDomain>>())
      .def_static("uniform", &TypedStar::uniform)
      .def_property_readonly("star", &TypedStar::star)
      .def("__repr__", [](const TypedStar& s) { return to_string(s); });

  py::class_<TypedWiringDiagram>(m, "TypedWiringDiagram")
      .def_property_readonly("diagram", &TypedWiringDiagram::diagram)
      .def_property_readonly("inner", py::overload_cast<>(&TypedWiringDiagram::inner, py::const_))
      .def_property_readonly("outer", &TypedWiringDiagram::outer);
  m.def("lift_uniform", &lift_uniform);
  m.def("typed_compose", [](const TypedWiringDiagram& o, const std::vector<TypedWiringDiagram>& in) {
    return typed_compose(o, in);
  });

  py::class_<Relation>(m, "Relation")
      .def(py::init(&Relation::from_values))
      .def_static("complete", [](const TypedStar& s) { return Relation::complete(s); })
      .def_static("empty", [](const TypedStar& s) { return Relation::empty(s); })
      .def_property_readonly("star", &Relation::star)
      .def("rows", &sorted_rows)
      .def("__len__", &Relation::size)
      .def("__eq__", [](const Relation& a, const Relation& b) { return a == b; })
      .def("__repr__", [](const Relation& r) { return to_string(r); });
  m.def("eval", [](const TypedWiringDiagram& d, const std::vector<Relation>& rs) { return eval(d, rs); });
  m.def("eval_naive", [](const TypedWiringDiagram& d, const std::vector<Relation>& rs) {
    return eval_naive(d, rs);
  });
  m.def("union", &rel_union);

  py::class_<Partition>(m, "Partition")
      .def(py::init<Star, std::vector<std::vector<std::string>>>())
      .def_property_readonly("blocks", &Partition::blocks)
      .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; })
      .def("__repr__", [](const Partition& p) { return to_string(p); });
  m.def("eval_eq", [](const WiringDiagram& d, const std::vector<Partition>& ps) { return eval_eq(d, ps); });

  m.def("internal_hom",
        [](const std::vector<Star>& args, const Star& ret) { return internal_hom(args, ret); });
  m.def("internalize", py::overload_cast<const WiringDiagram&, std::size_t>(&internalize));
  m.def("externalize", [](const WiringDiagram& phi, const std::vector<Star>& args, const Star& ret) {
    return externalize(phi, args, ret);
  });
  m.def("apply_hom", [](const Relation& s, const std::vector<Relation>& args) { return apply_hom(s, args); });

  py::enum_<FixMode>(m, "FixMode").value("LEAST", FixMode::kLeast).value("GREATEST", FixMode::kGreatest);
  py::enum_<FixStrategy>(m, "FixStrategy")
      .value("KLEENE", FixStrategy::kKleene)
      .value("ROUND_ROBIN", FixStrategy::kRoundRobin);
  py::class_<RecursiveSetup>(m, "RecursiveSetup").def_readonly("s", &RecursiveSetup::s);
  m.def("setup_from_relation", &setup_from_relation, py::arg("s"), py::arg("budget") = 0);
  m.def(
      "fixed_point",
      [](const RecursiveSetup& s, FixMode mode, FixStrategy strategy) {
        const FixedPointResult r = fixed_point(s, mode, strategy);
        return py::make_tuple(r.limit, r.iterations);
      },
      py::arg("setup"), py::arg("mode"), py::arg("strategy") = FixStrategy::kKleene);
  m.def("factorial_setup", [](std::int64_t m) { return factorial_fixture(m).setup; });

  py::class_<frontend::Workspace>(m, "Workspace")
      .def_static("from_file", [](const std::string& p) { return frontend::Workspace::from_file(p); })
      .def("relation", &frontend::Workspace::relation)
      .def("relation_names", &frontend::Workspace::relation_names)
      .def("setup", &frontend::Workspace::setup)
      .def("query", [](frontend::Workspace& ws, const std::string& sql) {
        return ws.run_query(ws.compile(frontend::parse_query(sql)));
      });
  m.def("format_csv", &frontend::format_csv);
  m.def("emit_dot", py::overload_cast<const WiringDiagram&, const std::string&>(&frontend::emit_dot),
        py::arg("diagram"), py::arg("name") = "wd");

  m.def(
      "check_laws",
      [](std::size_t cases, std::uint64_t seed) {
        laws::GeneratorConfig cfg;
        cfg.cases = cases;
        cfg.seed = seed;
        laws::Report all = laws::check_operad_laws(cfg);
        for (auto a : {laws::Algebra::kRel, laws::Algebra::kEq}) {
          const laws::Report r = laws::check_algebra_naturality(cfg, a);
          all.suites.insert(all.suites.end(), r.suites.begin(), r.suites.end());
        }
        std::vector<std::tuple<std::string, std::size_t, std::size_t>> out;
        for (const auto& s : all.suites) out.emplace_back(s.name, s.cases, s.failures);
        return out;
      },
      py::arg("cases") = 100, py::arg("seed") = 42);

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "wd");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = frontend::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
