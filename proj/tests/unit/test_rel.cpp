#include <doctest.h>

#include "oracles.hpp"
#include "wd/error.hpp"
#include "wd/laws.hpp"
#include "wd/relation.hpp"

using namespace wd;

namespace {

Value v(std::int64_t x) { return Value{x}; }

const ValueDomain kN = ValueDomain::range("N", 0, 3);

TypedStar uni(std::vector<std::string> wires) { return TypedStar::uniform(make_star(std::move(wires)), kN); }

}  // namespace

TEST_CASE("relations are sets") {
  const TypedStar ab = uni({"a", "b"});
  const Relation r = Relation::from_values(ab, {{v(1), v(2)}, {v(1), v(2)}, {v(0), v(3)}});
  CHECK(r.size() == 2);
  CHECK(r.contains({0, 3}));
  CHECK_FALSE(r.contains({3, 0}));
  CHECK(Relation::complete(ab).size() == 16);
  CHECK(Relation::empty(ab).empty());
  CHECK_THROWS_AS(Relation::from_values(ab, {{v(9), v(0)}}), Error);
  CHECK_THROWS_AS(Relation::complete(ab, 10), Error);

  const Relation swapped = r.aligned_to(uni({"b", "a"}));
  CHECK(swapped.contains({2, 1}));
  CHECK(swapped == r);
  CHECK(r.subset_of(Relation::complete(ab)));
}

TEST_CASE("union and intersection") {
  const TypedStar a = uni({"a"});
  const Relation x = Relation::from_values(a, {{v(0)}, {v(1)}});
  const Relation y = Relation::from_values(a, {{v(1)}, {v(2)}});
  CHECK(rel_union(x, y).size() == 3);
  CHECK(rel_intersection(x, y) == Relation::from_values(a, {{v(1)}}));
  CHECK_THROWS_AS(rel_union(x, Relation::empty(uni({"b"}))), Error);
}

TEST_CASE("eval joins, projects and fills free outer wires") {
  // R(a,b) join S(b,c), output (a, c, free).
  const WiringDiagram wd = make_diagram({make_star({"a", "b"}), make_star({"b", "c"})}, make_star({"a", "c", "f"}),
                                        {"a", "b", "c", "f"},
                                        {{0, "a", "a"}, {0, "b", "b"}, {1, "b", "b"}, {1, "c", "c"},
                                         {kOuter, "a", "a"}, {kOuter, "c", "c"}, {kOuter, "f", "f"}});
  const TypedWiringDiagram t = lift_uniform(wd, kN);
  const Relation r = Relation::from_values(t.inner(0), {{v(0), v(1)}, {v(2), v(3)}});
  const Relation s = Relation::from_values(t.inner(1), {{v(1), v(1)}, {v(1), v(2)}});
  const std::vector<Relation> args{r, s};
  const Relation out = eval(t, args);
  CHECK(out.size() == 2 * 4);
  CHECK(out == eval_naive(t, args));
  CHECK(out == eval_uniform(wd, kN, args));
}

TEST_CASE("floating cables over an empty domain kill the result") {
  const ValueDomain empty = ValueDomain::range("E", 1, 0);
  const Star a = make_star({"a"});
  const WiringDiagram wd = make_diagram({a}, a, {"a", "z"}, {{0, "a", "a"}, {kOuter, "a", "a"}});
  const TypedStar ta = TypedStar::uniform(a, kN);
  const TypedWiringDiagram t = typecheck_diagram(wd, {ta}, ta, {kN, empty});
  const std::vector<Relation> args{Relation::complete(ta)};
  CHECK(eval(t, args).empty());
  CHECK(eval_naive(t, args).empty());
}

TEST_CASE("eval rejects relations on the wrong star") {
  const TypedWiringDiagram t = lift_uniform(identity_diagram(make_star({"a"})), kN);
  const std::vector<Relation> wrong{Relation::complete(uni({"b"}))};
  CHECK_THROWS_AS(eval(t, wrong), Error);
  CHECK_THROWS_AS(eval(t, std::vector<Relation>{}), Error);
}

TEST_CASE("eval agrees with the enumeration oracle on random diagrams") {
  laws::GeneratorConfig cfg;
  cfg.seed = 5;
  laws::Generator g(cfg);
  for (int k = 0; k < 400; ++k) {
    const TypedWiringDiagram d = g.typed();
    std::vector<Relation> rels;
    for (const auto& x : d.inner()) rels.push_back(g.relation(x));
    REQUIRE(eval(d, rels) == eval_naive(d, rels));
  }
}

TEST_CASE("eval_naive respects its bound") {
  const ValueDomain big = ValueDomain::range("Big", 0, 999);
  const Star s = make_star({"a", "b", "c"});
  const TypedWiringDiagram t = lift_uniform(identity_diagram(s), big);
  const std::vector<Relation> args{Relation::empty(t.inner(0))};
  CHECK_THROWS_AS(eval_naive(t, args, 1000), Error);
  CHECK(eval(t, args).empty());
}
