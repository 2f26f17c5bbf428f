// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "wd/closed.hpp"
#include "wd/frontend/workspace.hpp"
#include "wd/laws.hpp"
#include "wd/recursion.hpp"
#include "wd/relation.hpp"

using namespace wd;
using oracle::Row;
using oracle::RowSet;

namespace {

const std::string kFixtures = WD_FIXTURES;

struct Outcome {
  bool ok;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << "s";
  return os.str();
}

Value v(std::int64_t x) { return Value{x}; }
Value s(const char* x) { return Value{std::string(x)}; }

// A typed diagram with at least one inner star, from the law generator.
TypedWiringDiagram typed_with_inputs(laws::Generator& g) {
  for (;;) {
    TypedWiringDiagram d = g.typed();
    if (d.arity() > 0) return d;
  }
}

Outcome operad_laws() {
  const auto t0 = std::chrono::steady_clock::now();
  laws::GeneratorConfig cfg;
  cfg.cases = 1000;
  const laws::Report r = laws::check_operad_laws(cfg);
  const double secs = seconds_since(t0);
  std::ostringstream os;
  for (const auto& suite : r.suites) os << suite.name << " " << suite.cases - suite.failures << "/" << suite.cases << ", ";
  os << fmt_seconds(secs);
  return {r.ok() && secs < 10.0, os.str()};
}

Outcome pushout_oracle() {
  laws::GeneratorConfig cfg;
  cfg.seed = 2024;
  laws::Generator g(cfg);
  std::size_t agree = 0;
  const std::size_t n = 1000;
  for (std::size_t k = 0; k < n; ++k) {
    const laws::Tree t = laws::gen_tree(g, 2);
    std::vector<WiringDiagram> lower;
    for (const auto& c : t.children) lower.push_back(c.node);
    if (diagrams_equal(compose(t.node, lower), oracle::quotient_compose(t.node, lower))) ++agree;
  }
  return {agree == n, std::to_string(agree) + "/" + std::to_string(n) + " composites agree"};
}

Outcome rel_functoriality() {
  laws::GeneratorConfig cfg;
  cfg.cases = 500;
  cfg.max_domain = 3;
  cfg.seed = 7;
  const laws::Report r = laws::check_algebra_naturality(cfg, laws::Algebra::kRel);

  // eval against the enumeration oracle on every diagram of fresh stacks.
  laws::Generator g(cfg);
  std::size_t checked = 0, agree = 0;
  for (std::size_t k = 0; k < 500; ++k) {
    const laws::RelCase c = laws::gen_rel_case(g);
    std::vector<Relation> all, stage;
    for (std::size_t i = 0; i < c.lower.size(); ++i) {
      all.insert(all.end(), c.rels[i].begin(), c.rels[i].end());
      ++checked;
      const Relation fast = eval(c.lower[i], c.rels[i]);
      if (fast == eval_naive(c.lower[i], c.rels[i])) ++agree;
      stage.push_back(fast);
    }
    ++checked;
    if (eval(c.top, stage) == eval_naive(c.top, stage)) ++agree;
    const TypedWiringDiagram composite = typed_compose(c.top, c.lower);
    ++checked;
    if (eval(composite, all) == eval_naive(composite, all)) ++agree;
  }
  std::ostringstream os;
  os << "naturality " << r.suites.at(0).cases - r.failures() << "/" << r.suites.at(0).cases
     << ", eval = eval_naive " << agree << "/" << checked;
  return {r.ok() && agree == checked, os.str()};
}

Outcome nand_not() {
  frontend::Workspace ws = frontend::Workspace::from_file(kFixtures + "/nand/gates.wd");
  const Relation nand = ws.relation("NAND");
  const Relation not_rel = eval(ws.diagram("tie"), std::vector<Relation>{nand});
  const RowSet expected_not{{s("True"), s("False")}, {s("False"), s("True")}};
  const bool not_ok = oracle::rows_in_order(not_rel, {"in", "out"}) == expected_not;

  // AND = then_not o (id_Gate, tie), applied to two copies of NAND.
  const TypedWiringDiagram& then_not = ws.diagram("then_not");
  const std::vector<TypedWiringDiagram> parts{typed_identity(then_not.inner(0)), ws.diagram("tie")};
  const TypedWiringDiagram and_wd = typed_compose(then_not, parts);
  const std::vector<Relation> args{nand, nand};
  const Relation and_rel = eval(and_wd, args);
  const RowSet derived = oracle::rows_in_order(eval_naive(and_wd, args), {"A", "B", "out"});
  const RowSet standard{{s("True"), s("True"), s("True")},
                        {s("True"), s("False"), s("False")},
                        {s("False"), s("True"), s("False")},
                        {s("False"), s("False"), s("False")}};
  const bool and_ok = oracle::rows_in_order(and_rel, {"A", "B", "out"}) == derived && derived == standard;
  return {not_ok && and_ok, std::string("NOT ") + (not_ok ? "ok" : "wrong") + ", AND " + (and_ok ? "ok" : "wrong")};
}

Outcome three_queries() {
  const ValueDomain n = ValueDomain::range("N", 0, 81);
  const TypedStar xyz = TypedStar::uniform(make_star({"X", "Y", "Z"}), n);
  const TypedStar z1 = TypedStar::uniform(make_star({"Z"}), n);
  std::vector<std::vector<Value>> product, nine{{v(9)}};
  for (std::int64_t x = 0; x <= 81; ++x) {
    for (std::int64_t y = 0; y <= 81; ++y) {
      if (x * y <= 81) product.push_back({v(x), v(y), v(x * y)});
    }
  }
  const WiringDiagram phi1 = make_diagram(
      {xyz.star(), z1.star()}, make_star({"X", "Y"}), {"X", "Y", "Z"},
      {{0, "X", "X"}, {0, "Y", "Y"}, {0, "Z", "Z"}, {1, "Z", "Z"}, {kOuter, "X", "X"}, {kOuter, "Y", "Y"}});
  const std::vector<Relation> args{Relation::from_values(xyz, product), Relation::from_values(z1, nine)};
  const Relation r1 = eval(lift_uniform(phi1, n), args);
  const RowSet expected{{v(1), v(9)}, {v(3), v(3)}, {v(9), v(1)}};
  const bool phi1_ok = oracle::rows_in_order(r1, {"X", "Y"}) == expected;

  // The same query through the script fixture.
  frontend::Workspace ws = frontend::Workspace::from_file(kFixtures + "/queries/three.wd");
  const bool script_ok = oracle::rows_in_order(ws.relation("factors_of_nine"), {"X", "Y"}) == expected &&
                         oracle::rows_in_order(ws.relation("factors_sql"), {"X", "Y"}) == expected;

  // y. exists x. R(x)
  const WiringDiagram exists = make_diagram({make_star({"x"})}, make_star({"y"}), {"x", "y"},
                                            {{0, "x", "x"}, {kOuter, "y", "y"}});
  const TypedWiringDiagram ex = lift_uniform(exists, n);
  const TypedStar x1 = ex.inner(0);
  bool exists_ok = eval(ex, std::vector<Relation>{Relation::empty(x1)}) == Relation::empty(ex.outer());
  std::size_t probes = 1;
  for (std::int64_t k = 0; k <= 81; k += 9) {
    const std::vector<Relation> a{Relation::from_values(x1, {{v(k)}, {v(81 - k)}})};
    exists_ok = exists_ok && eval(ex, a) == Relation::complete(ex.outer());
    ++probes;
  }
  exists_ok = exists_ok && eval(ex, std::vector<Relation>{Relation::complete(x1)}) == Relation::complete(ex.outer());
  std::ostringstream os;
  os << "phi1 " << (phi1_ok ? "ok" : "wrong") << ", script " << (script_ok ? "ok" : "wrong") << ", exists "
     << (exists_ok ? "ok" : "wrong") << " on " << probes + 1 << " inputs";
  return {phi1_ok && script_ok && exists_ok, os.str()};
}

Outcome absorption() {
  laws::GeneratorConfig cfg;
  cfg.seed = 11;
  laws::Generator g(cfg);
  std::size_t ok = 0;
  const std::size_t n = 200;
  for (std::size_t k = 0; k < n; ++k) {
    const TypedWiringDiagram d = typed_with_inputs(g);
    std::vector<Relation> rels;
    for (const auto& x : d.inner()) rels.push_back(g.relation(x));
    const std::size_t i = g.between(0, d.arity() - 1);
    rels[i] = Relation::empty(d.inner(i));
    if (eval(d, rels).empty()) ++ok;
  }
  return {ok == n, std::to_string(ok) + "/" + std::to_string(n) + " results empty"};
}

Outcome join_preservation() {
  laws::GeneratorConfig cfg;
  cfg.seed = 13;
  laws::Generator g(cfg);
  std::size_t ok = 0;
  const std::size_t n = 200;
  for (std::size_t k = 0; k < n; ++k) {
    const TypedWiringDiagram d = typed_with_inputs(g);
    std::vector<Relation> rels;
    for (const auto& x : d.inner()) rels.push_back(g.relation(x));
    const std::size_t i = g.between(0, d.arity() - 1);
    const Relation a = g.relation(d.inner(i));
    const Relation b = g.relation(d.inner(i));
    auto with = [&](const Relation& r) {
      auto copy = rels;
      copy[i] = r;
      return eval(d, copy);
    };
    if (with(rel_union(a, b)) == rel_union(with(a), with(b))) ++ok;
  }
  return {ok == n, std::to_string(ok) + "/" + std::to_string(n) + " unions preserved"};
}

Outcome closed_structure() {
  laws::GeneratorConfig cfg;
  cfg.seed = 17;
  laws::Generator g(cfg);
  std::size_t ok = 0;
  const std::size_t n = 500;
  for (std::size_t k = 0; k < n; ++k) {
    const WiringDiagram psi = g.diagram();
    const std::size_t m = g.between(0, psi.arity());
    const std::vector<Star> ys(psi.inner().begin() + static_cast<std::ptrdiff_t>(m), psi.inner().end());
    const WiringDiagram phi = internalize(psi, m);
    const WiringDiagram back = externalize(phi, ys, psi.outer());
    const bool round1 = diagrams_equal(back, psi);
    const bool round2 = diagrams_equal(internalize(back, m), phi);

    std::vector<WiringDiagram> parts{phi};
    for (const auto& y : ys) parts.push_back(identity_diagram(y));
    const bool via_ev = diagrams_equal(compose(evaluation_diagram(ys, psi.outer()), parts), back);
    if (round1 && round2 && via_ev) ++ok;
  }
  return {ok == n, std::to_string(ok) + "/" + std::to_string(n) + " round trips and ev-composites agree"};
}

Outcome factorial() {
  const auto t0 = std::chrono::steady_clock::now();
  const FactorialFixture fx = factorial_fixture(120);
  const FixedPointResult gfp = fixed_point(fx.setup, FixMode::kGreatest, FixStrategy::kRoundRobin);
  const FixedPointResult lfp = fixed_point(fx.setup, FixMode::kLeast, FixStrategy::kRoundRobin);
  const double secs = seconds_since(t0);
  const FixedPointResult kleene = fixed_point(fx.setup, FixMode::kGreatest, FixStrategy::kKleene);

  const RowSet expected{{v(0), v(1)}, {v(1), v(1)}, {v(2), v(2)}, {v(3), v(6)}, {v(4), v(24)}, {v(5), v(120)}};
  const bool gfp_ok = oracle::rows_in_order(gfp.limit, {"A", "B"}) == expected &&
                      oracle::factorial_table(120) == expected && kleene.limit == gfp.limit;
  const bool lfp_ok = lfp.limit.empty();
  const bool fixed = is_fixed_point(fx.setup, gfp.limit) && is_fixed_point(fx.setup, lfp.limit);
  const bool fast = gfp.iterations <= 10 && secs < 5.0;

  // Toy lattice: every relation S on [Z => Z] for Z = two boolean wires.
  const ValueDomain b = ValueDomain::range("B", 0, 1);
  const TypedStar z = TypedStar::uniform(make_star({"p", "q"}), b);
  const TypedStar hom = internal_hom(std::vector<TypedStar>{z}, z);
  const auto point = [](int x) { return std::vector<Value>{Value{std::int64_t{x >> 1}}, Value{std::int64_t{x & 1}}}; };
  std::size_t toy_ok = 0;
  const std::size_t toy_total = 1u << 16;
  for (std::uint32_t mask = 0; mask < toy_total; ++mask) {
    std::vector<std::vector<Value>> rows;
    for (int x = 0; x < 4; ++x) {
      for (int y = 0; y < 4; ++y) {
        if (!(mask >> (4 * x + y) & 1)) continue;
        std::map<std::string, Value> by_wire{{"arg1.p", point(x)[0]}, {"arg1.q", point(x)[1]},
                                             {"ret.p", point(y)[0]}, {"ret.q", point(y)[1]}};
        std::vector<Value> row;
        for (const auto& w : hom.star().wires()) row.push_back(by_wire.at(w));
        rows.push_back(std::move(row));
      }
    }
    const RecursiveSetup setup = setup_from_relation(Relation::from_values(hom, rows));
    std::set<RowSet> found;
    for (const auto& r : enumerate_fixed_points(setup)) found.insert(oracle::rows_in_order(r, {"p", "q"}));
    std::set<RowSet> brute;
    for (std::uint8_t r : oracle::toy_fixed_points(static_cast<std::uint16_t>(mask))) {
      RowSet rs;
      for (int x = 0; x < 4; ++x) {
        if (r >> x & 1) rs.insert(point(x));
      }
      brute.insert(rs);
    }
    if (found == brute) ++toy_ok;
  }

  std::ostringstream os;
  os << "gfp " << (gfp_ok ? "ok" : "wrong") << " in " << gfp.iterations << " round-robin sweeps ("
     << kleene.iterations << " Kleene steps), lfp " << (lfp_ok ? "empty" : "nonempty") << ", "
     << fmt_seconds(secs) << ", toy " << toy_ok << "/" << toy_total;
  return {gfp_ok && lfp_ok && fixed && fast && toy_ok == toy_total, os.str()};
}

// Minimal CSV reader for the oracle side: header line, comma-separated tokens.
oracle::Table read_csv_strings(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  oracle::Table t;
  auto split = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  std::getline(in, line);
  t.wires = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row row;
    for (const auto& c : split(line)) row.push_back(Value{c});
    t.rows.insert(std::move(row));
  }
  return t;
}

Outcome wiki_query() {
  const std::string dir = kFixtures + "/wiki/";
  frontend::Workspace ws = frontend::Workspace::from_file(dir + "wiki.wd");
  const frontend::CompiledQuery& cq = ws.query("wiki");
  const Relation result = ws.run_query(cq);

  std::map<std::string, oracle::Table> tables{{"attends", read_csv_strings(dir + "attends.csv")},
                                              {"gender", read_csv_strings(dir + "gender.csv")},
                                              {"lives", read_csv_strings(dir + "lives.csv")}};
  const frontend::QueryDecl* q = nullptr;
  for (const auto& d : ws.script().decls) {
    if (const auto* p = std::get_if<frontend::QueryDecl>(&d); p && p->name == "wiki") q = p;
  }
  const RowSet expected = oracle::nested_loop_query(*q, tables);
  const bool rows_ok = oracle::rows_in_order(result, {"student", "address"}) == expected && !expected.empty();
  const bool big_enough = tables.at("attends").rows.size() >= 20;

  const Star attends = make_star({"student", "course"});
  const Star gender = make_star({"student", "gender"});
  const Star lives = make_star({"student", "address"});
  const Star value = make_star({"value"});
  const WiringDiagram hand = make_diagram(
      {attends, gender, attends, gender, lives, value, value}, make_star({"student", "address"}),
      {"s1", "s2", "course", "male", "female", "addr"},
      {{0, "student", "s1"}, {0, "course", "course"}, {1, "student", "s1"}, {1, "gender", "male"},
       {2, "student", "s2"}, {2, "course", "course"}, {3, "student", "s2"}, {3, "gender", "female"},
       {4, "student", "s1"}, {4, "address", "addr"}, {5, "value", "male"}, {6, "value", "female"},
       {kOuter, "student", "s1"}, {kOuter, "address", "addr"}});
  const bool shape_ok = diagrams_equal(forget_types(cq.diagram), hand);
  const bool consts_ok = cq.constants.size() == 2 &&
                         cq.constants[0].rows() == std::vector<std::vector<Value>>{{s("male")}} &&
                         cq.constants[1].rows() == std::vector<std::vector<Value>>{{s("female")}};

  std::ostringstream os;
  os << result.size() << " rows vs oracle " << expected.size() << ", attends has " << tables.at("attends").rows.size()
     << " rows, diagram " << (shape_ok && consts_ok ? "matches" : "differs");
  return {rows_ok && big_enough && shape_ok && consts_ok, os.str()};
}

Outcome prop_witnesses() {
  std::size_t cases = 0, failures = 0, skipped = 0;
  for (std::int64_t hi : {1, 2}) {
    const laws::Report r = laws::check_prop_witnesses(ValueDomain::range("A", 0, hi));
    for (const auto& suite : r.suites) {
      cases += suite.cases;
      failures += suite.failures;
      skipped += suite.skipped;
      for (const auto& c : suite.counterexamples) std::cerr << suite.name << ":\n" << c;
    }
  }
  return {failures == 0 && skipped == 0 && cases > 0,
          std::to_string(cases - failures) + "/" + std::to_string(cases) + " witness equalities"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"operad laws", operad_laws},
      {"pushout oracle", pushout_oracle},
      {"rel functoriality", rel_functoriality},
      {"nand to not", nand_not},
      {"three queries", three_queries},
      {"empty-relation absorption", absorption},
      {"join preservation", join_preservation},
      {"closed structure", closed_structure},
      {"factorial recursion", factorial},
      {"wiki query", wiki_query},
      {"triviality witnesses", prop_witnesses},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << "\n";
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
