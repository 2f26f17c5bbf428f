#include "wd/laws.hpp"

#include <algorithm>
#include <sstream>

#include "wd/detail/union_find.hpp"
#include "wd/error.hpp"

namespace wd::laws {

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

std::string cable_name(std::size_t c) { return "c" + std::to_string(c + 1); }

// Typed stars follow from the cable typing: every wire has its cable's type.
TypedWiringDiagram retype(const WiringDiagram& wd, std::vector<ValueDomain> cable_types) {
  std::vector<TypedStar> inner;
  for (std::size_t i = 0; i < wd.arity(); ++i) {
    std::vector<ValueDomain> types;
    for (std::size_t j = 0; j < wd.inner(i).size(); ++j) {
      types.push_back(cable_types[wd.inner_cable(i, j)]);
    }
    inner.emplace_back(wd.inner(i), std::move(types));
  }
  std::vector<ValueDomain> outer_types;
  for (std::size_t j = 0; j < wd.outer().size(); ++j) {
    outer_types.push_back(cable_types[wd.outer_cable(j)]);
  }
  TypedStar outer(wd.outer(), std::move(outer_types));
  return typecheck_diagram(wd, std::move(inner), std::move(outer), std::move(cable_types));
}

Relation project_out(const Relation& r, const std::string& wire) {
  const std::size_t drop = *r.star().star().index_of(wire);
  std::vector<std::string> wires;
  std::vector<ValueDomain> types;
  for (std::size_t j = 0; j < r.star().size(); ++j) {
    if (j == drop) continue;
    wires.push_back(r.star().wire(j));
    types.push_back(r.star().type(j));
  }
  std::vector<Tuple> tuples;
  for (const auto& t : r.tuples()) {
    Tuple u;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j != drop) u.push_back(t[j]);
    }
    tuples.push_back(std::move(u));
  }
  return Relation(TypedStar(Star(std::move(wires)), std::move(types)), std::move(tuples));
}

std::vector<std::size_t> seeded_permutation(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
  return p;
}

std::vector<WiringDiagram> child_nodes(const Tree& t) {
  std::vector<WiringDiagram> out;
  for (const auto& c : t.children) out.push_back(c.node);
  return out;
}

template <class F>
bool fails_safely(F&& check) {
  try {
    return !check();
  } catch (const std::exception&) {
    return true;
  }
}

template <class Case, class Gen, class Check, class Cands, class Desc>
SuiteResult run_suite(const std::string& name, std::size_t cases, Gen gen, Check check,
                      Cands cands, Desc desc) {
  SuiteResult r;
  r.name = name;
  for (std::size_t k = 0; k < cases; ++k) {
    Case c = gen();
    ++r.cases;
    auto fails = [&](const Case& x) { return fails_safely([&] { return check(x); }); };
    if (!fails(c)) continue;
    ++r.failures;
    if (r.counterexamples.size() < kMaxCounterexamples) {
      r.counterexamples.push_back(desc(shrink(std::move(c), cands, fails)));
    }
  }
  std::sort(r.counterexamples.begin(), r.counterexamples.end());
  r.counterexamples.erase(std::unique(r.counterexamples.begin(), r.counterexamples.end()),
                          r.counterexamples.end());
  return r;
}

}  // namespace

Generator::Generator(const GeneratorConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

std::size_t Generator::between(std::size_t lo, std::size_t hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = hi - lo + 1;
  // Rejection sampling keeps the draw unbiased and independent of the
  // standard library's distribution implementations.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return lo + static_cast<std::size_t>(x % span);
}

bool Generator::coin(double p_true) {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p_true;
}

std::vector<std::size_t> Generator::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[between(0, i - 1)]);
  return p;
}

Star Generator::star(std::size_t min_wires) {
  const std::size_t pool_size = std::max<std::size_t>(cfg_.max_wires + 2, 1);
  const std::size_t k = between(std::min(min_wires, cfg_.max_wires), cfg_.max_wires);
  auto order = permutation(pool_size);
  std::vector<std::size_t> picked(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(picked.begin(), picked.end());
  std::vector<std::string> wires;
  for (std::size_t p : picked) {
    wires.push_back(p < 26 ? std::string(1, static_cast<char>('a' + p)) : "w" + std::to_string(p));
  }
  return Star(std::move(wires));
}

WiringDiagram Generator::diagram_onto(const Star& outer) {
  const std::size_t n = between(0, cfg_.max_stars);
  std::vector<Star> inner;
  std::size_t wire_count = outer.size();
  for (std::size_t i = 0; i < n; ++i) {
    inner.push_back(star());
    wire_count += inner.back().size();
  }
  std::size_t k = between(0, cfg_.max_cables);
  if (k == 0 && wire_count > 0) k = 1;
  std::vector<std::string> cables;
  for (std::size_t c = 0; c < k; ++c) cables.push_back(cable_name(c));
  std::vector<std::vector<std::size_t>> inner_solder(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < inner[i].size(); ++j) inner_solder[i].push_back(between(0, k - 1));
  }
  std::vector<std::size_t> outer_solder;
  for (std::size_t j = 0; j < outer.size(); ++j) outer_solder.push_back(between(0, k - 1));
  return WiringDiagram(std::move(inner), outer, std::move(cables), std::move(inner_solder),
                       std::move(outer_solder));
}

WiringDiagram Generator::diagram() { return diagram_onto(star()); }

ValueDomain Generator::domain() {
  std::size_t k = between(0, cfg_.max_domain);
  if (k == 0 && cfg_.max_domain > 0 && coin(0.8)) k = between(1, cfg_.max_domain);
  return ValueDomain::range("D" + std::to_string(k), 0, static_cast<std::int64_t>(k) - 1);
}

TypedStar Generator::typed_star(std::size_t min_wires) {
  Star s = star(min_wires);
  std::vector<ValueDomain> types;
  for (std::size_t j = 0; j < s.size(); ++j) types.push_back(domain());
  return TypedStar(std::move(s), std::move(types));
}

TypedWiringDiagram Generator::typed_onto(const TypedStar& outer) {
  std::vector<ValueDomain> cable_types;
  std::vector<std::size_t> outer_solder;
  for (std::size_t j = 0; j < outer.size(); ++j) {
    std::vector<std::size_t> same;
    for (std::size_t c = 0; c < cable_types.size(); ++c) {
      if (cable_types[c] == outer.type(j)) same.push_back(c);
    }
    if (!same.empty() && coin(0.4)) {
      outer_solder.push_back(same[between(0, same.size() - 1)]);
    } else {
      outer_solder.push_back(cable_types.size());
      cable_types.push_back(outer.type(j));
    }
  }
  const std::size_t target = between(cable_types.size(), std::max(cable_types.size(), cfg_.max_cables));
  while (cable_types.size() < target) cable_types.push_back(domain());

  const std::size_t n = between(0, cfg_.max_stars);
  std::vector<Star> inner;
  std::vector<std::vector<std::size_t>> inner_solder(n);
  for (std::size_t i = 0; i < n; ++i) {
    inner.push_back(star());
    if (cable_types.empty() && !inner.back().empty()) cable_types.push_back(domain());
    for (std::size_t j = 0; j < inner.back().size(); ++j) {
      inner_solder[i].push_back(between(0, cable_types.size() - 1));
    }
  }
  std::vector<std::string> cables;
  for (std::size_t c = 0; c < cable_types.size(); ++c) cables.push_back(cable_name(c));
  WiringDiagram wd(std::move(inner), outer.star(), std::move(cables), std::move(inner_solder),
                   std::move(outer_solder));
  return retype(wd, std::move(cable_types));
}

TypedWiringDiagram Generator::typed() { return typed_onto(typed_star()); }

Relation Generator::relation(const TypedStar& star) {
  const std::uint64_t size = product_size(star);
  if (size <= 64) {
    static const double kDensity[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    const double p = kDensity[between(0, 4)];
    const Relation all = Relation::complete(star);
    std::vector<Tuple> picked;
    for (const auto& t : all.tuples()) {
      if (coin(p)) picked.push_back(t);
    }
    return Relation(star, std::move(picked));
  }
  std::vector<Tuple> picked(between(0, 12));
  for (auto& t : picked) {
    for (std::size_t j = 0; j < star.size(); ++j) {
      t.push_back(static_cast<std::uint32_t>(between(0, star.type(j).size() - 1)));
    }
  }
  return Relation(star, std::move(picked));
}

Partition Generator::partition(const Star& star) {
  std::vector<std::vector<std::string>> blocks(star.size());
  for (const auto& w : star.wires()) blocks[between(0, star.size() - 1)].push_back(w);
  blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                              [](const auto& b) { return b.empty(); }),
               blocks.end());
  return Partition(star, std::move(blocks));
}

WiringDiagram gen_diagram(const GeneratorConfig& cfg) {
  Generator g(cfg);
  return g.diagram();
}

TypedWiringDiagram gen_typed(const GeneratorConfig& cfg) {
  Generator g(cfg);
  return g.typed();
}

Relation gen_relation(const GeneratorConfig& cfg, const TypedStar& star) {
  Generator g(cfg);
  return g.relation(star);
}

namespace {

Tree gen_subtree(Generator& g, const Star& outer, std::size_t depth) {
  Tree t{g.diagram_onto(outer), {}};
  if (depth > 1) {
    for (const auto& y : t.node.inner()) t.children.push_back(gen_subtree(g, y, depth - 1));
  }
  return t;
}

}  // namespace

Tree gen_tree(Generator& g, std::size_t depth) { return gen_subtree(g, g.star(), depth); }

RelCase gen_rel_case(Generator& g) {
  RelCase c;
  c.top = g.typed();
  for (const auto& y : c.top.inner()) {
    c.lower.push_back(g.typed_onto(y));
    std::vector<Relation> rels;
    for (const auto& x : c.lower.back().inner()) rels.push_back(g.relation(x));
    c.rels.push_back(std::move(rels));
  }
  return c;
}

EqCase gen_eq_case(Generator& g) {
  EqCase c;
  c.top = g.diagram();
  for (const auto& y : c.top.inner()) {
    c.lower.push_back(g.diagram_onto(y));
    std::vector<Partition> parts;
    for (const auto& x : c.lower.back().inner()) parts.push_back(g.partition(x));
    c.parts.push_back(std::move(parts));
  }
  return c;
}

// ---- structural edits ----

WiringDiagram drop_inner_star(const WiringDiagram& wd, std::size_t i) {
  auto inner = wd.inner();
  auto solder = wd.inner_solder();
  inner.erase(inner.begin() + static_cast<std::ptrdiff_t>(i));
  solder.erase(solder.begin() + static_cast<std::ptrdiff_t>(i));
  return WiringDiagram(std::move(inner), wd.outer(), wd.cable_names(), std::move(solder),
                       wd.outer_solder());
}

WiringDiagram drop_inner_wire(const WiringDiagram& wd, std::size_t i, const std::string& wire) {
  auto inner = wd.inner();
  auto solder = wd.inner_solder();
  const std::size_t j = *inner[i].index_of(wire);
  auto wires = inner[i].wires();
  wires.erase(wires.begin() + static_cast<std::ptrdiff_t>(j));
  inner[i] = Star(std::move(wires));
  solder[i].erase(solder[i].begin() + static_cast<std::ptrdiff_t>(j));
  return WiringDiagram(std::move(inner), wd.outer(), wd.cable_names(), std::move(solder),
                       wd.outer_solder());
}

WiringDiagram drop_outer_wire(const WiringDiagram& wd, const std::string& wire) {
  const std::size_t j = *wd.outer().index_of(wire);
  auto wires = wd.outer().wires();
  wires.erase(wires.begin() + static_cast<std::ptrdiff_t>(j));
  auto solder = wd.outer_solder();
  solder.erase(solder.begin() + static_cast<std::ptrdiff_t>(j));
  return WiringDiagram(wd.inner(), Star(std::move(wires)), wd.cable_names(), wd.inner_solder(),
                       std::move(solder));
}

WiringDiagram drop_cable(const WiringDiagram& wd, std::size_t c) {
  if (!wd.floating_cables()[c]) {
    throw Error(ErrorKind::kInvalidArgument, "cable " + wd.cable_names()[c] + " is attached");
  }
  auto names = wd.cable_names();
  names.erase(names.begin() + static_cast<std::ptrdiff_t>(c));
  auto shift = [c](std::size_t x) { return x > c ? x - 1 : x; };
  auto inner = wd.inner_solder();
  for (auto& row : inner) {
    for (auto& x : row) x = shift(x);
  }
  auto outer = wd.outer_solder();
  for (auto& x : outer) x = shift(x);
  return WiringDiagram(wd.inner(), wd.outer(), std::move(names), std::move(inner),
                       std::move(outer));
}

namespace {

// Candidates that only touch a single diagram without changing its interface.
std::vector<WiringDiagram> floating_drops(const WiringDiagram& wd) {
  std::vector<WiringDiagram> out;
  const auto floating = wd.floating_cables();
  for (std::size_t c = 0; c < floating.size(); ++c) {
    if (floating[c]) out.push_back(drop_cable(wd, c));
  }
  return out;
}

TypedWiringDiagram typed_edit(const TypedWiringDiagram& twd, const WiringDiagram& edited) {
  return retype(edited, twd.cable_types());
}

std::vector<TypedWiringDiagram> typed_floating_drops(const TypedWiringDiagram& twd) {
  std::vector<TypedWiringDiagram> out;
  const auto floating = twd.diagram().floating_cables();
  for (std::size_t c = 0; c < floating.size(); ++c) {
    if (!floating[c]) continue;
    auto types = twd.cable_types();
    types.erase(types.begin() + static_cast<std::ptrdiff_t>(c));
    out.push_back(retype(drop_cable(twd.diagram(), c), std::move(types)));
  }
  return out;
}

}  // namespace

std::vector<Tree> tree_candidates(const Tree& t) {
  std::vector<Tree> out;
  const bool leaf = t.children.empty();
  // Drop an inner star (with its subtree).
  for (std::size_t i = 0; i < t.node.arity(); ++i) {
    Tree c = t;
    c.node = drop_inner_star(t.node, i);
    if (!leaf) c.children.erase(c.children.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(std::move(c));
  }
  for (const auto& w : t.node.outer().wires()) {
    Tree c = t;
    c.node = drop_outer_wire(t.node, w);
    out.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < t.node.arity(); ++i) {
    for (const auto& w : t.node.inner(i).wires()) {
      Tree c = t;
      c.node = drop_inner_wire(t.node, i, w);
      if (!leaf) c.children[i].node = drop_outer_wire(t.children[i].node, w);
      out.push_back(std::move(c));
    }
  }
  for (auto& d : floating_drops(t.node)) {
    Tree c = t;
    c.node = std::move(d);
    out.push_back(std::move(c));
  }
  // Shrink inside a child without touching its outer star.
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    for (auto& sub : tree_candidates(t.children[i])) {
      if (!(sub.node.outer() == t.children[i].node.outer())) continue;
      Tree c = t;
      c.children[i] = std::move(sub);
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<RelCase> rel_case_candidates(const RelCase& rc) {
  std::vector<RelCase> out;
  auto erase_at = [](auto& v, std::size_t i) { v.erase(v.begin() + static_cast<std::ptrdiff_t>(i)); };
  for (std::size_t i = 0; i < rc.top.arity(); ++i) {
    RelCase c = rc;
    c.top = typed_edit(rc.top, drop_inner_star(rc.top.diagram(), i));
    erase_at(c.lower, i);
    erase_at(c.rels, i);
    out.push_back(std::move(c));
  }
  for (const auto& w : rc.top.outer().star().wires()) {
    RelCase c = rc;
    c.top = typed_edit(rc.top, drop_outer_wire(rc.top.diagram(), w));
    out.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < rc.top.arity(); ++i) {
    for (const auto& w : rc.top.inner(i).star().wires()) {
      RelCase c = rc;
      c.top = typed_edit(rc.top, drop_inner_wire(rc.top.diagram(), i, w));
      c.lower[i] = typed_edit(rc.lower[i], drop_outer_wire(rc.lower[i].diagram(), w));
      out.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < rc.lower.size(); ++i) {
    for (std::size_t j = 0; j < rc.lower[i].arity(); ++j) {
      RelCase c = rc;
      c.lower[i] = typed_edit(rc.lower[i], drop_inner_star(rc.lower[i].diagram(), j));
      erase_at(c.rels[i], j);
      out.push_back(std::move(c));
    }
    for (std::size_t j = 0; j < rc.lower[i].arity(); ++j) {
      for (const auto& w : rc.lower[i].inner(j).star().wires()) {
        RelCase c = rc;
        c.lower[i] = typed_edit(rc.lower[i], drop_inner_wire(rc.lower[i].diagram(), j, w));
        c.rels[i][j] = project_out(rc.rels[i][j], w);
        out.push_back(std::move(c));
      }
      for (std::size_t k = 0; k < rc.rels[i][j].size(); ++k) {
        RelCase c = rc;
        auto tuples = rc.rels[i][j].tuples();
        erase_at(tuples, k);
        c.rels[i][j] = Relation(rc.rels[i][j].star(), std::move(tuples));
        out.push_back(std::move(c));
      }
    }
    for (auto& d : typed_floating_drops(rc.lower[i])) {
      RelCase c = rc;
      c.lower[i] = std::move(d);
      out.push_back(std::move(c));
    }
  }
  for (auto& d : typed_floating_drops(rc.top)) {
    RelCase c = rc;
    c.top = std::move(d);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<EqCase> eq_case_candidates(const EqCase& ec) {
  std::vector<EqCase> out;
  auto erase_at = [](auto& v, std::size_t i) { v.erase(v.begin() + static_cast<std::ptrdiff_t>(i)); };
  auto without = [](const Partition& p, const std::string& w) {
    std::vector<std::string> wires;
    for (const auto& x : p.star().wires()) {
      if (x != w) wires.push_back(x);
    }
    std::vector<std::vector<std::string>> blocks;
    for (auto b : p.blocks()) {
      b.erase(std::remove(b.begin(), b.end(), w), b.end());
      if (!b.empty()) blocks.push_back(std::move(b));
    }
    return Partition(Star(std::move(wires)), std::move(blocks));
  };
  for (std::size_t i = 0; i < ec.top.arity(); ++i) {
    EqCase c = ec;
    c.top = drop_inner_star(ec.top, i);
    erase_at(c.lower, i);
    erase_at(c.parts, i);
    out.push_back(std::move(c));
  }
  for (const auto& w : ec.top.outer().wires()) {
    EqCase c = ec;
    c.top = drop_outer_wire(ec.top, w);
    out.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < ec.top.arity(); ++i) {
    for (const auto& w : ec.top.inner(i).wires()) {
      EqCase c = ec;
      c.top = drop_inner_wire(ec.top, i, w);
      c.lower[i] = drop_outer_wire(ec.lower[i], w);
      out.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < ec.lower.size(); ++i) {
    for (std::size_t j = 0; j < ec.lower[i].arity(); ++j) {
      EqCase c = ec;
      c.lower[i] = drop_inner_star(ec.lower[i], j);
      erase_at(c.parts[i], j);
      out.push_back(std::move(c));
      for (const auto& w : ec.lower[i].inner(j).wires()) {
        EqCase d = ec;
        d.lower[i] = drop_inner_wire(ec.lower[i], j, w);
        d.parts[i][j] = without(ec.parts[i][j], w);
        out.push_back(std::move(d));
      }
      // Split a block into singletons.
      if (ec.parts[i][j].blocks().size() < ec.parts[i][j].star().size()) {
        EqCase d = ec;
        d.parts[i][j] = Partition::discrete(ec.parts[i][j].star());
        out.push_back(std::move(d));
      }
    }
    for (auto& dd : floating_drops(ec.lower[i])) {
      EqCase c = ec;
      c.lower[i] = std::move(dd);
      out.push_back(std::move(c));
    }
  }
  for (auto& dd : floating_drops(ec.top)) {
    EqCase c = ec;
    c.top = std::move(dd);
    out.push_back(std::move(c));
  }
  return out;
}

// ---- descriptions ----

namespace {

void describe_tree(const Tree& t, const std::string& indent, std::ostringstream& os) {
  os << indent << to_string(t.node) << "\n";
  for (const auto& c : t.children) describe_tree(c, indent + "  ", os);
}

}  // namespace

std::string describe(const Tree& t) {
  std::ostringstream os;
  describe_tree(t, "    ", os);
  return os.str();
}

std::string describe(const RelCase& c) {
  std::ostringstream os;
  os << "    top " << to_string(c.top.diagram()) << "\n";
  for (std::size_t i = 0; i < c.lower.size(); ++i) {
    os << "      " << to_string(c.lower[i].diagram()) << "\n";
    for (const auto& r : c.rels[i]) os << "        " << to_string(r) << "\n";
  }
  return os.str();
}

std::string describe(const EqCase& c) {
  std::ostringstream os;
  os << "    top " << to_string(c.top) << "\n";
  for (std::size_t i = 0; i < c.lower.size(); ++i) {
    os << "      " << to_string(c.lower[i]) << "\n";
    for (const auto& p : c.parts[i]) os << "        " << to_string(p) << "\n";
  }
  return os.str();
}

// ---- reports ----

bool Report::ok() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& s : suites) n += s.failures;
  return n;
}

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& s : suites) {
    os << (s.failures == 0 ? "PASS " : "FAIL ") << s.name << ": " << s.cases << " cases, "
       << s.failures << " failures";
    if (s.skipped != 0) os << ", " << s.skipped << " skipped";
    os << "\n";
    for (const auto& c : s.counterexamples) os << "  counterexample:\n" << c;
  }
  return os.str();
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& s : suites) os << s.name << " " << s.cases << " " << s.failures << "\n";
  return os.str();
}

// ---- law suites ----

Report check_operad_laws(const GeneratorConfig& cfg, const ComposeFn& compose_fn) {
  Report report;
  if (cfg.cases == 0) return report;
  Generator g(cfg);

  auto identity_holds = [&](const Tree& t) {
    std::vector<WiringDiagram> ids;
    for (const auto& x : t.node.inner()) ids.push_back(identity_diagram(x));
    const std::vector<WiringDiagram> self{t.node};
    return diagrams_equal(compose_fn(t.node, ids), t.node) &&
           diagrams_equal(compose_fn(identity_diagram(t.node.outer()), self), t.node);
  };
  report.suites.push_back(run_suite<Tree>(
      "identity", cfg.cases, [&] { return gen_tree(g, 1); }, identity_holds, tree_candidates,
      [](const Tree& t) { return describe(t); }));

  auto associative = [&](const Tree& t) {
    std::vector<WiringDiagram> mids, flat;
    for (const auto& c : t.children) {
      const auto leaves = child_nodes(c);
      mids.push_back(compose_fn(c.node, leaves));
      flat.insert(flat.end(), leaves.begin(), leaves.end());
    }
    const WiringDiagram top_down = compose_fn(t.node, mids);
    const WiringDiagram bottom_up = compose_fn(compose_fn(t.node, child_nodes(t)), flat);
    return diagrams_equal(top_down, bottom_up);
  };
  report.suites.push_back(run_suite<Tree>(
      "associativity", cfg.cases, [&] { return gen_tree(g, 3); }, associative, tree_candidates,
      [](const Tree& t) { return describe(t); }));

  // The permutation is a function of (seed, arity) so that shrunk cases keep a
  // well-defined one.
  struct EquivCase {
    Tree tree;
    std::uint64_t seed;
  };
  auto equivariant = [&](const EquivCase& c) {
    const Tree& t = c.tree;
    const std::size_t n = t.node.arity();
    const auto sigma = seeded_permutation(c.seed, n);
    const auto lower = child_nodes(t);
    std::vector<WiringDiagram> permuted(n);
    for (std::size_t i = 0; i < n; ++i) permuted[sigma[i]] = lower[i];
    const WiringDiagram lhs = compose_fn(reindex_inner(t.node, sigma), permuted);

    const auto inv = inverse_permutation(sigma);
    std::vector<std::size_t> old_offset(n), new_offset(n);
    std::size_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      old_offset[i] = acc;
      acc += lower[i].arity();
    }
    acc = 0;
    for (std::size_t p = 0; p < n; ++p) {
      new_offset[p] = acc;
      acc += lower[inv[p]].arity();
    }
    std::vector<std::size_t> block(acc);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < lower[i].arity(); ++j) {
        block[old_offset[i] + j] = new_offset[sigma[i]] + j;
      }
    }
    const WiringDiagram rhs = reindex_inner(compose_fn(t.node, lower), block);
    return diagrams_equal(lhs, rhs);
  };
  report.suites.push_back(run_suite<EquivCase>(
      "equivariance", cfg.cases,
      [&] {
        EquivCase c{gen_tree(g, 2), 0};
        c.seed = static_cast<std::uint64_t>(g.between(0, 1u << 30));
        return c;
      },
      equivariant,
      [](const EquivCase& c) {
        std::vector<EquivCase> out;
        for (auto& t : tree_candidates(c.tree)) out.push_back({std::move(t), c.seed});
        return out;
      },
      [](const EquivCase& c) {
        return "    permutation seed " + std::to_string(c.seed) + "\n" + describe(c.tree);
      }));
  return report;
}

Report check_algebra_naturality(const GeneratorConfig& cfg, Algebra algebra,
                                const EvalFn& eval_fn, const EqFn& eq_fn) {
  Report report;
  if (cfg.cases == 0) return report;
  Generator g(cfg);
  if (algebra == Algebra::kRel) {
    auto natural = [&](const RelCase& c) {
      std::vector<Relation> all, stage;
      for (std::size_t i = 0; i < c.lower.size(); ++i) {
        all.insert(all.end(), c.rels[i].begin(), c.rels[i].end());
        stage.push_back(eval_fn(c.lower[i], c.rels[i]));
      }
      const TypedWiringDiagram composite = typed_compose(c.top, c.lower);
      return eval_fn(composite, all) == eval_fn(c.top, stage);
    };
    report.suites.push_back(run_suite<RelCase>(
        "rel_naturality", cfg.cases, [&] { return gen_rel_case(g); }, natural,
        rel_case_candidates, [](const RelCase& c) { return describe(c); }));
  } else {
    auto natural = [&](const EqCase& c) {
      std::vector<Partition> all, stage;
      for (std::size_t i = 0; i < c.lower.size(); ++i) {
        all.insert(all.end(), c.parts[i].begin(), c.parts[i].end());
        stage.push_back(eq_fn(c.lower[i], c.parts[i]));
      }
      return eq_fn(compose(c.top, c.lower), all) == eq_fn(c.top, stage);
    };
    report.suites.push_back(run_suite<EqCase>(
        "eq_naturality", cfg.cases, [&] { return gen_eq_case(g); }, natural, eq_case_candidates,
        [](const EqCase& c) { return describe(c); }));
  }
  return report;
}

// ---- triviality witnesses ----

WiringDiagram psi_diagram() {
  const Star two = make_star({"1", "2"});
  return make_diagram({two, two}, two, {"1a", "1b", "2ab"},
                      {{0, "1", "1a"},
                       {0, "2", "2ab"},
                       {1, "1", "1b"},
                       {1, "2", "2ab"},
                       {kOuter, "1", "1a"},
                       {kOuter, "2", "2ab"}});
}

namespace {

// Every subset of the complete relation on star, in a fixed order.
std::vector<Relation> all_relations(const TypedStar& star) {
  const Relation top = Relation::complete(star);
  const std::size_t n = top.size();
  std::vector<Relation> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Tuple> ts;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) ts.push_back(top.tuples()[k]);
    }
    out.emplace_back(star, std::move(ts));
  }
  return out;
}

Star numbered_star(const std::string& prefix, std::size_t n) {
  std::vector<std::string> wires;
  for (std::size_t k = 1; k <= n; ++k) wires.push_back(prefix + std::to_string(k));
  return Star(std::move(wires));
}

struct WitnessSuite {
  SuiteResult result;
  void check(bool ok, const std::function<std::string()>& what) {
    ++result.cases;
    if (ok) return;
    ++result.failures;
    if (result.counterexamples.size() < kMaxCounterexamples) {
      result.counterexamples.push_back("    " + what() + "\n");
    }
  }
};

}  // namespace

Report check_prop_witnesses(const ValueDomain& a, const EvalFn& eval_fn) {
  Report report;
  auto guarded = [&](WitnessSuite& s, const std::function<bool()>& f,
                     const std::function<std::string()>& what) {
    bool ok = false;
    try {
      ok = f();
    } catch (const std::exception&) {
      ok = false;
    }
    s.check(ok, what);
  };

  // (i) The 0-ary diagram with cables Y and g the identity produces K_Y.
  const std::string tag = "[" + a.name() + "]";
  WitnessSuite unit{{"witness_unit" + tag, 0, 0, 0, {}}};
  for (std::size_t m = 0; m <= 3; ++m) {
    const Star y = numbered_star("y", m);
    const std::vector<std::size_t> id = [&] {
      std::vector<std::size_t> v(m);
      for (std::size_t k = 0; k < m; ++k) v[k] = k;
      return v;
    }();
    const WiringDiagram wd({}, y, y.wires(), {}, id);
    const TypedWiringDiagram twd = lift_uniform(wd, a);
    guarded(
        unit,
        [&] { return eval_fn(twd, {}) == Relation::complete(twd.outer()); },
        [&] { return "unit diagram on " + to_string(y) + " does not give the complete relation"; });
  }
  report.suites.push_back(unit.result);

  // (ii) X -> X + Y <- Y sends nonempty R to K_Y and the empty relation to itself.
  WitnessSuite proj{{"witness_projection" + tag, 0, 0, 0, {}}};
  for (std::size_t nx = 1; nx <= 2; ++nx) {
    const Star x = numbered_star("x", nx);
    const TypedStar tx = TypedStar::uniform(x, a);
    if (product_size(tx) > 16) continue;
    const auto rels = all_relations(tx);
    for (std::size_t ny = 0; ny <= 2; ++ny) {
      const Star y = numbered_star("y", ny);
      std::vector<std::string> cables;
      std::vector<std::size_t> xs, ys;
      for (const auto& w : x.wires()) {
        xs.push_back(cables.size());
        cables.push_back("x." + w);
      }
      for (const auto& w : y.wires()) {
        ys.push_back(cables.size());
        cables.push_back("y." + w);
      }
      const TypedWiringDiagram twd = lift_uniform(WiringDiagram({x}, y, cables, {xs}, ys), a);
      const Relation k_y = Relation::complete(twd.outer());
      for (const auto& r : rels) {
        const std::vector<Relation> args{r};
        guarded(
            proj,
            [&] {
              return eval_fn(twd, args) == (r.empty() ? Relation::empty(twd.outer()) : k_y);
            },
            [&] { return "projection onto " + to_string(y) + " of " + to_string(r); });
      }
    }
  }
  report.suites.push_back(proj.result);

  // (iii) Merging two one-wire stars onto one cable separates distinct values.
  WitnessSuite merge{{"witness_merge" + tag, 0, 0, 0, {}}};
  if (a.size() < 2) {
    merge.result.skipped = 1;
  } else {
    const Star s = make_star({"s"});
    const TypedWiringDiagram twd = lift_uniform(WiringDiagram({s, s}, s, {"c"}, {{0}, {0}}, {0}), a);
    const TypedStar ts = TypedStar::uniform(s, a);
    for (std::uint32_t v1 = 0; v1 < a.size(); ++v1) {
      for (std::uint32_t v2 = 0; v2 < a.size(); ++v2) {
        const std::vector<Relation> args{Relation(ts, {{v1}}), Relation(ts, {{v2}})};
        const Relation expected = v1 == v2 ? Relation(ts, {{v1}}) : Relation::empty(ts);
        guarded(
            merge, [&] { return eval_fn(twd, args) == expected; },
            [&] {
              return "merge of {" + to_string(a.value(v1)) + "} and {" + to_string(a.value(v2)) +
                     "}";
            });
      }
    }
  }
  report.suites.push_back(merge.result);

  // (iv) psi(R, K) = R for every nonempty R on a two-wire star.
  WitnessSuite psi{{"witness_psi" + tag, 0, 0, 0, {}}};
  {
    const TypedWiringDiagram twd = lift_uniform(psi_diagram(), a);
    const TypedStar two = twd.inner(0);
    if (product_size(two) <= 16) {
      const Relation k = Relation::complete(two);
      for (const auto& r : all_relations(two)) {
        if (r.empty()) continue;
        const std::vector<Relation> args{r, k};
        guarded(
            psi, [&] { return eval_fn(twd, args) == r.aligned_to(twd.outer()); },
            [&] { return "psi(R, K) != R for R = " + to_string(r); });
      }
    }
  }
  report.suites.push_back(psi.result);
  return report;
}

bool is_connected(const WiringDiagram& wd) {
  const std::size_t n = wd.arity();
  const std::size_t nodes = n + wd.cable_count();
  if (nodes == 0) return false;
  detail::UnionFind uf(nodes);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < wd.inner(i).size(); ++j) uf.unite(i, n + wd.inner_cable(i, j));
  }
  std::size_t components = 0;
  uf.dense_classes(&components);
  return components == 1;
}

}  // namespace wd::laws
