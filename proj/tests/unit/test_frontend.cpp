#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "oracles.hpp"
#include "wd/error.hpp"
#include "wd/frontend/csv.hpp"
#include "wd/frontend/dot.hpp"
#include "wd/frontend/script.hpp"
#include "wd/frontend/workspace.hpp"
#include "wd/recursion.hpp"

using namespace wd;
using namespace wd::frontend;

namespace {

const std::string kFixtures = WD_FIXTURES;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error raised");
  return Error(ErrorKind::kIo, "");
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

Value sv(const char* s) { return Value{std::string(s)}; }
Value iv(std::int64_t x) { return Value{x}; }

const char* kSmall =
    "type T = {1, 'two words', x}\n"
    "type N = range 0..3\n"
    "star S(a: T, b: T)\n"
    "star P(n: N, m: N)\n"
    "rel s : S from 's.csv'\n"
    "const k : T = 'two words'\n"
    "query q = select r.a as first from s r where r.b = 1\n"
    "diagram d(S) -> [S => S] {\n"
    "  cable a, b : T;\n"
    "  solder in1.a -> a; solder in1.b -> b;\n"
    "  solder out.arg1.a -> a; solder out.arg1.b -> b;\n"
    "  solder out.ret.a -> b; solder out.ret.b -> a;\n"
    "}\n"
    "let l = d(s)\n"
    "union u = s | s\n";

}  // namespace

TEST_CASE("empty scripts") {
  CHECK(parse_script("").decls.empty());
  CHECK(parse_script("  # only a comment\n// and another\n").decls.empty());
}

TEST_CASE("scripts round trip through the printer") {
  std::vector<std::string> texts{kSmall};
  for (const char* name : {"/nand/gates.wd", "/wiki/wiki.wd", "/factorial/factorial.wd", "/queries/three.wd"}) {
    texts.push_back(slurp(kFixtures + name));
  }
  for (const auto& text : texts) {
    const Script once = parse_script(text);
    const std::string printed = print_script(once);
    CAPTURE(printed);
    const Script twice = parse_script(printed);
    CHECK(twice == once);
    CHECK(print_script(twice) == printed);
  }
}

TEST_CASE("parsed declarations") {
  const Script s = parse_syntax(kSmall);
  REQUIRE(s.decls.size() == 10);
  const auto& t = std::get<TypeDecl>(s.decls[0]);
  CHECK(t.values == std::vector<Value>{iv(1), sv("two words"), sv("x")});
  const auto& n = std::get<TypeDecl>(s.decls[1]);
  CHECK(n.is_range);
  CHECK(n.hi == 3);
  const auto& q = std::get<QueryDecl>(s.decls[6]);
  CHECK(q.select.at(0).as == "first");
  CHECK(q.where.at(0).is_literal);
  CHECK(q.where.at(0).rhs_literal == iv(1));
  const auto& d = std::get<DiagramDecl>(s.decls[7]);
  CHECK(d.outer.is_hom);
  CHECK(d.solders.size() == 6);
  CHECK(d.solders[2].star == kOuter);
  CHECK(d.solders[2].wire == "arg1.a");
  CHECK(s.positions.at(7).line == 8);
}

TEST_CASE("parse errors carry line and column") {
  const Error e = error_of([] { parse_script("type T = {a, b}\nstar S(a: T,, b: T)\n"); });
  CHECK(e.kind() == ErrorKind::kParse);
  CHECK(std::string(e.what()).rfind("2:", 0) == 0);

  const Error u = error_of([] { parse_script("type T = {a}\nrel r : Missing from 'r.csv'\n"); });
  CHECK(u.kind() == ErrorKind::kUnresolvedName);
  CHECK(std::string(u.what()).find("Missing") != std::string::npos);
  CHECK(std::string(u.what()).rfind("2:", 0) == 0);

  CHECK(error_of([] { parse_script("type T = {a}\ntype T = {b}\n"); }).kind() == ErrorKind::kInvalidArgument);
  CHECK(error_of([] { parse_script("type T = {a}\nstar S(x.y: T)\n"); }).kind() == ErrorKind::kParse);
  CHECK(error_of([] { parse_script("query q = SELECT"); }).kind() == ErrorKind::kParse);
  CHECK(error_of([] { parse_script("type T = {'unterminated}"); }).kind() == ErrorKind::kParse);
}

TEST_CASE("the factorial script is the factorial diagram") {
  Workspace ws = Workspace::from_file(kFixtures + "/factorial/factorial.wd");
  const FactorialFixture fx = factorial_fixture(24);
  CHECK(typed_diagrams_equal(ws.diagram("step"), fx.phi));
  for (std::size_t i = 0; i < 3; ++i) {
    const char* names[] = {"dec", "mult", "cond"};
    CHECK(ws.relation(names[i]) == fx.rels[i]);
  }
  const RecursiveSetup setup = ws.setup("fact");
  CHECK(setup.s == fx.setup.s);
  CHECK(oracle::rows_in_order(fixed_point(setup, FixMode::kGreatest).limit, {"A", "B"}) ==
        oracle::factorial_table(24));
}

TEST_CASE("compile_query builds the cospan") {
  const ValueDomain n = ValueDomain::range("N", 0, 5);
  const ValueDomain b = ValueDomain::range("B", 0, 1);
  const std::map<std::string, TypedStar> stars{
      {"p", TypedStar(make_star({"a", "b"}), {n, b})},
      {"r", TypedStar(make_star({"a", "c"}), {n, n})},
  };
  const StarLookup lookup = [&](const std::string& name) { return stars.at(name); };

  SUBCASE("projection without WHERE") {
    const CompiledQuery cq = compile_query(parse_query("SELECT p.a FROM p"), lookup);
    const WiringDiagram want = make_diagram({make_star({"a", "b"})}, make_star({"a"}), {"x", "y"},
                                            {{0, "a", "x"}, {0, "b", "y"}, {kOuter, "a", "x"}});
    CHECK(diagrams_equal(forget_types(cq.diagram), want));
    CHECK(cq.inputs == std::vector<std::string>{"p"});
    CHECK(cq.constants.empty());
  }
  SUBCASE("joins and constants") {
    const CompiledQuery cq = compile_query(
        parse_query("SELECT x.a, y.c AS out FROM p x, r y WHERE x.a = y.a AND y.c = 3 AND x.b = 1 AND y.a = 3"),
        lookup);
    CHECK(cq.diagram.arity() == 4);  // two aliases, two distinct constants
    CHECK(cq.diagram.outer().star() == make_star({"a", "out"}));
    REQUIRE(cq.constants.size() == 2);
    CHECK(cq.constants[0].rows() == std::vector<std::vector<Value>>{{iv(3)}});
    CHECK(cq.constants[1].star().type(0) == b);
  }
  SUBCASE("errors") {
    CHECK(error_of([&] { compile_query(parse_query("SELECT p.a FROM p WHERE p.a = p.b"), lookup); }).kind() ==
          ErrorKind::kTypeMismatch);
    CHECK(error_of([&] { compile_query(parse_query("SELECT p.a FROM p WHERE p.b = 7"), lookup); }).kind() ==
          ErrorKind::kDomain);
    CHECK(error_of([&] { compile_query(parse_query("SELECT q.a FROM p"), lookup); }).kind() ==
          ErrorKind::kUnresolvedName);
    CHECK(error_of([&] { compile_query(parse_query("SELECT p.z FROM p"), lookup); }).kind() ==
          ErrorKind::kUnresolvedName);
    CHECK(error_of([&] { compile_query(parse_query("SELECT p.a, p.a FROM p"), lookup); }).kind() ==
          ErrorKind::kDuplicateWire);
    CHECK(error_of([&] { compile_query(parse_query("SELECT x.a FROM p x, r x"), lookup); }).kind() ==
          ErrorKind::kInvalidArgument);
  }
}

TEST_CASE("queries agree with nested loops on the fixtures") {
  Workspace ws = Workspace::from_file(kFixtures + "/wiki/wiki.wd");
  std::map<std::string, oracle::Table> tables;
  for (const char* r : {"attends", "gender", "lives"}) tables[r] = oracle::table_of(ws.relation(r));
  const std::vector<std::string> sql{
      "SELECT a.course FROM attends a",
      "SELECT a.student, b.student AS other FROM attends a, attends b WHERE a.course = b.course",
      "SELECT g.student FROM gender g WHERE g.gender = 'female'",
      "SELECT L.address FROM lives L, gender g WHERE L.student = g.student AND g.gender = 'male'",
      "SELECT a.student FROM attends a, lives L WHERE a.student = L.student AND L.address = 'elm_st'",
  };
  for (const auto& text : sql) {
    CAPTURE(text);
    const QueryDecl q = parse_query(text);
    const CompiledQuery cq = ws.compile(q);
    const Relation got = ws.run_query(cq);
    std::vector<std::string> order;
    for (const auto& s : q.select) order.push_back(s.as.empty() ? s.ref.attr : s.as);
    CHECK(oracle::rows_in_order(got, order) == oracle::nested_loop_query(q, tables));
  }
}

TEST_CASE("workspace relations") {
  Workspace ws = Workspace::from_file(kFixtures + "/wiki/wiki.wd");
  CHECK(ws.kind_of("wiki") == Workspace::Kind::kRelation);
  CHECK(ws.kind_of("Attends") == Workspace::Kind::kStar);
  CHECK(ws.kind_of("nope") == std::nullopt);
  const Relation u = ws.relation("with_female");
  CHECK(u == rel_union(ws.relation("wiki_students"), ws.relation("female_students")));
  CHECK(error_of([&] { ws.relation("nope"); }).kind() == ErrorKind::kUnresolvedName);

  Workspace gates = Workspace::from_file(kFixtures + "/nand/gates.wd");
  CHECK(gates.relation("NOT") == gates.apply("tie", {"NAND"}));
  CHECK(error_of([&] { gates.apply("tie", {"NOT"}); }).kind() == ErrorKind::kStarMismatch);
  CHECK(error_of([&] { gates.apply("tie", {}); }).kind() == ErrorKind::kStarMismatch);
}

TEST_CASE("csv loading") {
  const ValueDomain bools("Bool", {sv("True"), sv("False")});
  const TypedStar gate = TypedStar::uniform(make_star({"A", "B", "out"}), bools);
  const Relation nand = load_csv_relation(kFixtures + "/nand/nand.csv", gate);
  const Relation expected = Relation::from_values(gate, {{sv("True"), sv("True"), sv("False")},
                                                         {sv("True"), sv("False"), sv("True")},
                                                         {sv("False"), sv("True"), sv("True")},
                                                         {sv("False"), sv("False"), sv("True")}});
  CHECK(nand == expected);

  // Column and row order do not matter; duplicates collapse.
  const Relation shuffled = parse_csv_relation(
      "out,B,A\nTrue,False,False\nFalse,True,True\nTrue,True,False\nTrue,False,True\nTrue,False,True\n", gate, "t");
  CHECK(shuffled == nand);
  CHECK(parse_csv_relation("A,B,out\n", gate, "t").empty());

  const Error bad = error_of([&] { load_csv_relation(kFixtures + "/bad_bool.csv", gate); });
  CHECK(bad.kind() == ErrorKind::kDomain);
  CHECK(std::string(bad.what()).find("row 3") != std::string::npos);
  CHECK(std::string(bad.what()).find("maybe") != std::string::npos);

  CHECK(error_of([&] { parse_csv_relation("A,B\nTrue,True\n", gate, "t"); }).kind() == ErrorKind::kIo);
  CHECK(error_of([&] { parse_csv_relation("A,B,out,x\n", gate, "t"); }).kind() == ErrorKind::kIo);
  CHECK(error_of([&] { parse_csv_relation("A,B,out\nTrue,True\n", gate, "t"); }).kind() == ErrorKind::kIo);
  CHECK(error_of([&] { load_csv_relation(kFixtures + "/missing.csv", gate); }).kind() == ErrorKind::kIo);
}

TEST_CASE("csv writing sorts rows and round trips") {
  const ValueDomain n = ValueDomain::range("N", 0, 12);
  const TypedStar s = TypedStar::uniform(make_star({"b", "a"}), n);
  const Relation r = Relation::from_values(s, {{iv(10), iv(2)}, {iv(9), iv(1)}, {iv(10), iv(1)}});
  CHECK(format_csv(r) == "b,a\n9,1\n10,1\n10,2\n");
  const auto path = std::filesystem::temp_directory_path() / "wd_csv_roundtrip.csv";
  write_csv(path, r);
  CHECK(load_csv_relation(path, s) == r);
  std::filesystem::remove(path);
}

TEST_CASE("dot output") {
  const Star x = make_star({"p", "q", "r"});
  const std::string id = emit_dot(identity_diagram(x), "id");
  CHECK(count(id, "subgraph") == 1);
  CHECK(count(id, "shape=circle") == 3);
  CHECK(count(id, " -- ") == 6);
  CHECK(id.rfind("graph \"id\" {", 0) == 0);

  const WiringDiagram fig = make_diagram(
      {make_star({"a", "b"}), make_star({"c", "d"}), make_star({"e", "f", "g"})}, make_star({"x", "y"}),
      {"1", "2", "3", "4", "5", "6"},
      {{0, "a", "1"}, {0, "b", "2"}, {1, "c", "2"}, {1, "d", "3"}, {2, "e", "3"}, {2, "f", "4"},
       {2, "g", "5"}, {kOuter, "x", "1"}, {kOuter, "y", "4"}});
  const std::string text = emit_dot(fig);
  CHECK(count(text, "subgraph") == 3);
  CHECK(count(text, "shape=circle") == 6);
  CHECK(count(text, " -- ") == 9);
  // Deterministic, and the same for any renaming of the cables.
  CHECK(emit_dot(fig) == text);
  CHECK(emit_dot(rename_cables(fig, {"f", "e", "d", "c", "b", "a"})) == text);

  const ValueDomain n = ValueDomain::range("N", 0, 1);
  CHECK(emit_dot(lift_uniform(fig, n)).find("1 : N") != std::string::npos);
}
