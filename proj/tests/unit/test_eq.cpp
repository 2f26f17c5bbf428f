#include <doctest.h>

#include "wd/error.hpp"
#include "wd/laws.hpp"
#include "wd/partition.hpp"

using namespace wd;

TEST_CASE("partitions normalize their blocks") {
  const Star s = make_star({"a", "b", "c", "d"});
  const Partition p(s, {{"d", "a"}, {"c"}, {"b"}});
  CHECK(p.blocks() == std::vector<std::vector<std::string>>{{"a", "d"}, {"b"}, {"c"}});
  CHECK(p.related("a", "d"));
  CHECK_FALSE(p.related("a", "b"));
  CHECK(Partition::discrete(s).finer_than(p));
  CHECK(p.finer_than(Partition::indiscrete(s)));
  CHECK_FALSE(Partition::indiscrete(s).finer_than(p));
  CHECK(to_string(p) == "{a,d | b | c}");
  CHECK_THROWS_AS(Partition(s, {{"a", "b"}, {"b", "c", "d"}}), Error);
  CHECK_THROWS_AS(Partition(s, {{"a", "b"}}), Error);
  CHECK_THROWS_AS(Partition(s, {{"a", "b", "c", "z"}}), Error);
  CHECK(Partition::indiscrete(Star{}).blocks().empty());
}

TEST_CASE("eval_eq glues through cables") {
  // Two stars chained on one cable; the outer star sees a and c.
  const WiringDiagram wd = make_diagram({make_star({"a", "b"}), make_star({"b", "c"})}, make_star({"a", "c", "d"}),
                                        {"x", "y", "z", "w"},
                                        {{0, "a", "x"}, {0, "b", "y"}, {1, "b", "y"}, {1, "c", "z"},
                                         {kOuter, "a", "x"}, {kOuter, "c", "z"}, {kOuter, "d", "w"}});
  const std::vector<Partition> linked{Partition::indiscrete(wd.inner(0)), Partition::indiscrete(wd.inner(1))};
  const Partition out = eval_eq(wd, linked);
  CHECK(out == Partition(wd.outer(), {{"a", "c"}, {"d"}}));
  const std::vector<Partition> split{Partition::discrete(wd.inner(0)), Partition::indiscrete(wd.inner(1))};
  CHECK(eval_eq(wd, split) == Partition::discrete(wd.outer()));
  CHECK(eval_eq(wd, linked) == eq_oracle(wd, linked));
}

TEST_CASE("eval_eq agrees with the graph search oracle") {
  laws::GeneratorConfig cfg;
  cfg.seed = 3;
  laws::Generator g(cfg);
  for (int k = 0; k < 500; ++k) {
    const WiringDiagram d = g.diagram();
    std::vector<Partition> parts;
    for (const auto& x : d.inner()) parts.push_back(g.partition(x));
    REQUIRE(eval_eq(d, parts) == eq_oracle(d, parts));
  }
}

TEST_CASE("eval_eq checks its inputs") {
  const WiringDiagram d = identity_diagram(make_star({"a"}));
  const std::vector<Partition> wrong{Partition::discrete(make_star({"b"}))};
  CHECK_THROWS_AS(eval_eq(d, wrong), Error);
}
