#include <doctest.h>

#include "oracles.hpp"
#include "wd/error.hpp"
#include "wd/laws.hpp"
#include "wd/wiring_diagram.hpp"

using namespace wd;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::kIo;
}

// Figure-style example: three inner stars, six cables.
WiringDiagram three_boxes() {
  return make_diagram({make_star({"a", "b"}), make_star({"c", "d"}), make_star({"e", "f", "g"})},
                      make_star({"x", "y"}), {"1", "2", "3", "4", "5", "6"},
                      {{0, "a", "1"}, {0, "b", "2"}, {1, "c", "2"}, {1, "d", "3"},
                       {2, "e", "3"}, {2, "f", "4"}, {2, "g", "5"},
                       {kOuter, "x", "1"}, {kOuter, "y", "4"}});
}

}  // namespace

TEST_CASE("stars reject duplicate wires") {
  CHECK(kind_of([] { make_star({"a", "a"}); }) == ErrorKind::kDuplicateWire);
  CHECK(make_star({"b", "a"}).size() == 2);
  CHECK(make_star({}).empty());
}

TEST_CASE("make_diagram validates the solder map") {
  const Star x = make_star({"a"});
  CHECK(kind_of([&] { make_diagram({x}, x, {"c"}, {{kOuter, "a", "c"}}); }) == ErrorKind::kUnsolderedWire);
  CHECK(kind_of([&] { make_diagram({x}, x, {"c"}, {{0, "a", "c"}, {kOuter, "a", "z"}}); }) ==
        ErrorKind::kDanglingCable);
  CHECK(kind_of([&] { make_diagram({x}, x, {"c"}, {{0, "b", "c"}, {kOuter, "a", "c"}}); }) ==
        ErrorKind::kUnknownWire);
  CHECK(kind_of([&] { make_diagram({x}, x, {"c", "c"}, {{0, "a", "c"}, {kOuter, "a", "c"}}); }) ==
        ErrorKind::kInvalidArgument);
  const WiringDiagram ok = three_boxes();
  CHECK(ok.arity() == 3);
  CHECK(ok.cable_count() == 6);
  CHECK(ok.floating_cables() == std::vector<bool>{false, false, false, false, false, true});
}

TEST_CASE("composition with identities is neutral") {
  const WiringDiagram d = three_boxes();
  std::vector<WiringDiagram> ids;
  for (const auto& s : d.inner()) ids.push_back(identity_diagram(s));
  CHECK(diagrams_equal(compose(d, ids), d));
  const std::vector<WiringDiagram> self{d};
  CHECK(diagrams_equal(compose(identity_diagram(d.outer()), self), d));
}

TEST_CASE("compose rejects mismatched interfaces") {
  const WiringDiagram d = three_boxes();
  std::vector<WiringDiagram> wrong{identity_diagram(make_star({"a", "b"})),
                                   identity_diagram(make_star({"c", "q"})),
                                   identity_diagram(make_star({"e", "f", "g"}))};
  CHECK(kind_of([&] { compose(d, wrong); }) == ErrorKind::kInterfaceMismatch);
  wrong.pop_back();
  CHECK(kind_of([&] { compose(d, wrong); }) == ErrorKind::kInterfaceMismatch);
}

TEST_CASE("composition merges cables through the interface") {
  // Outer: one inner star {p,q} with both wires on one cable. Inner: p and q
  // on separate cables feeding two stars, so the composite ties them.
  const Star pq = make_star({"p", "q"});
  const WiringDiagram outer = make_diagram({pq}, make_star({"o"}), {"k"},
                                           {{0, "p", "k"}, {0, "q", "k"}, {kOuter, "o", "k"}});
  const WiringDiagram inner = make_diagram({make_star({"u"}), make_star({"v"})}, pq, {"1", "2", "3"},
                                           {{0, "u", "1"}, {1, "v", "2"}, {kOuter, "p", "1"}, {kOuter, "q", "2"}});
  const std::vector<WiringDiagram> parts{inner};
  const WiringDiagram got = compose(outer, parts);
  const WiringDiagram want = make_diagram({make_star({"u"}), make_star({"v"})}, make_star({"o"}), {"m", "f"},
                                          {{0, "u", "m"}, {1, "v", "m"}, {kOuter, "o", "m"}});
  CHECK(diagrams_equal(got, want));
  CHECK(got.cable_count() == 2);  // the floating cable 3 survives

  const CompositionTrace tr = compose_traced(outer, parts);
  CHECK(tr.inner_cable_class[0][0] == tr.inner_cable_class[0][1]);
  CHECK(tr.outer_cable_class[0] == tr.inner_cable_class[0][0]);
  CHECK(tr.inner_cable_class[0][2] != tr.inner_cable_class[0][0]);
}

TEST_CASE("canonical form ignores cable names and order only") {
  const WiringDiagram d = three_boxes();
  const WiringDiagram renamed = rename_cables(d, {"u", "v", "w", "x", "y", "z"});
  CHECK(diagrams_equal(d, renamed));
  CHECK(canonical_key(d) == canonical_key(renamed));
  CHECK(canonicalize(renamed) == canonicalize(d));

  const WiringDiagram moved = make_diagram(d.inner(), d.outer(), {"1", "2", "3", "4", "5", "6"},
                                           {{0, "a", "1"}, {0, "b", "2"}, {1, "c", "2"}, {1, "d", "3"},
                                            {2, "e", "3"}, {2, "f", "4"}, {2, "g", "5"},
                                            {kOuter, "x", "1"}, {kOuter, "y", "5"}});
  CHECK_FALSE(diagrams_equal(d, moved));
  const WiringDiagram no_float = laws::drop_cable(d, 5);
  CHECK_FALSE(diagrams_equal(d, no_float));
}

TEST_CASE("reindexing inner stars") {
  const WiringDiagram d = three_boxes();
  const std::vector<std::size_t> sigma{2, 0, 1};
  const WiringDiagram r = reindex_inner(d, sigma);
  CHECK(r.inner(2) == d.inner(0));
  CHECK(r.inner(0) == d.inner(1));
  CHECK(diagrams_equal(reindex_inner(r, inverse_permutation(sigma)), d));
  const std::vector<std::size_t> bad{0, 0, 1};
  CHECK(kind_of([&] { reindex_inner(d, bad); }) == ErrorKind::kInvalidPermutation);
}

TEST_CASE("compose matches the label-propagation quotient") {
  laws::GeneratorConfig cfg;
  cfg.seed = 99;
  laws::Generator g(cfg);
  for (int k = 0; k < 300; ++k) {
    const laws::Tree t = laws::gen_tree(g, 2);
    std::vector<WiringDiagram> lower;
    for (const auto& c : t.children) lower.push_back(c.node);
    REQUIRE(diagrams_equal(compose(t.node, lower), oracle::quotient_compose(t.node, lower)));
  }
}

TEST_CASE("the empty diagram") {
  const WiringDiagram unit({}, Star{}, {}, {}, {});
  CHECK(unit.arity() == 0);
  CHECK(diagrams_equal(compose(unit, std::vector<WiringDiagram>{}), unit));
  const WiringDiagram loose({}, Star{}, {"a", "b"}, {}, {});
  CHECK_FALSE(diagrams_equal(unit, loose));
  CHECK(canonical_key(loose).floating == 2);
}
