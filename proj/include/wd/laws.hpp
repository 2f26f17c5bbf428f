#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "wd/partition.hpp"
#include "wd/relation.hpp"
#include "wd/typed.hpp"
#include "wd/wiring_diagram.hpp"

namespace wd::laws {

struct GeneratorConfig {
  std::uint64_t seed = 42;
  std::size_t max_stars = 4;
  std::size_t max_wires = 5;
  std::size_t max_cables = 6;
  std::size_t max_domain = 3;
  std::size_t cases = 1000;
};

// Deterministic random instances: the same config gives the same sequence.
class Generator {
 public:
  explicit Generator(const GeneratorConfig& cfg);

  const GeneratorConfig& config() const noexcept { return cfg_; }

  // Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi);
  bool coin(double p_true = 0.5);

  Star star(std::size_t min_wires = 0);
  // Random inner stars, cables and solderings with the given outer star.
  WiringDiagram diagram_onto(const Star& outer);
  WiringDiagram diagram();

  // One of max_domain + 1 domains D0..Dk, where Dk = {0..k-1}; D0 is empty
  // and comes up rarely.
  ValueDomain domain();
  TypedWiringDiagram typed_onto(const TypedStar& outer);
  TypedWiringDiagram typed();
  TypedStar typed_star(std::size_t min_wires = 0);
  Relation relation(const TypedStar& star);
  Partition partition(const Star& star);

  // A permutation of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  GeneratorConfig cfg_;
  std::mt19937_64 rng_;
};

WiringDiagram gen_diagram(const GeneratorConfig& cfg);
TypedWiringDiagram gen_typed(const GeneratorConfig& cfg);
Relation gen_relation(const GeneratorConfig& cfg, const TypedStar& star);

// An outer diagram with one subtree per inner star; every subtree's root has
// the corresponding inner star as its outer star. Leaves have no children.
struct Tree {
  WiringDiagram node;
  std::vector<Tree> children;
};

// A two-level typed stack with relations on the inner stars of the lower level.
struct RelCase {
  TypedWiringDiagram top;
  std::vector<TypedWiringDiagram> lower;
  std::vector<std::vector<Relation>> rels;
};

struct EqCase {
  WiringDiagram top;
  std::vector<WiringDiagram> lower;
  std::vector<std::vector<Partition>> parts;
};

Tree gen_tree(Generator& g, std::size_t depth);
RelCase gen_rel_case(Generator& g);
EqCase gen_eq_case(Generator& g);

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  std::vector<std::string> counterexamples;  // shrunk, sorted
};

struct Report {
  std::vector<SuiteResult> suites;

  bool ok() const;
  std::size_t failures() const;
  // Human-readable, with counterexamples.
  std::string text() const;
  // One line per suite: "name cases failures".
  std::string summary() const;
};

using ComposeFn =
    std::function<WiringDiagram(const WiringDiagram&, std::span<const WiringDiagram>)>;
using EvalFn = std::function<Relation(const TypedWiringDiagram&, std::span<const Relation>)>;
using EqFn = std::function<Partition(const WiringDiagram&, std::span<const Partition>)>;

// Identity, associativity and equivariance on generated stacks.
Report check_operad_laws(const GeneratorConfig& cfg, const ComposeFn& compose_fn = compose);

enum class Algebra { kRel, kEq };

// The naturality square on generated two-level stacks. For Rel, the stacks
// are typed and composed with typed_compose.
Report check_algebra_naturality(const GeneratorConfig& cfg, Algebra algebra,
                                const EvalFn& eval_fn = eval, const EqFn& eq_fn = eval_eq);

// The Rel computations behind the triviality results for algebra maps out of
// Rel_A: the unit diagram gives K_Y, the projection-away diagram sends
// nonempty R to K_Y and the empty relation to the empty one, the merge diagram
// sends distinct singletons to the empty relation, and the psi diagram
// reproduces R from (R, K). Witness (iii) is skipped when |A| < 2.
Report check_prop_witnesses(const ValueDomain& a, const EvalFn& eval_fn = eval);

// The psi diagram used by witness (iv): two inner stars {1,2} and outer {1,2}.
WiringDiagram psi_diagram();

// Inner stars and cables as nodes, one edge per inner wire; true iff this
// graph has exactly one connected component.
bool is_connected(const WiringDiagram& wd);

// Greedy shrinking: repeatedly replaces x by the first candidate that still
// fails, until no candidate fails.
template <class T, class Candidates, class Fails>
T shrink(T x, Candidates candidates, Fails fails, std::size_t max_rounds = 1000) {
  for (std::size_t round = 0; round < max_rounds; ++round) {
    bool improved = false;
    for (auto& c : candidates(x)) {
      if (fails(c)) {
        x = std::move(c);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return x;
}

// Smaller variants of a tree: drop a child subtree, an outer wire, an
// interface wire (on both sides), a leaf inner star or wire, or a floating
// cable.
std::vector<Tree> tree_candidates(const Tree& t);
std::vector<RelCase> rel_case_candidates(const RelCase& c);
std::vector<EqCase> eq_case_candidates(const EqCase& c);

std::string describe(const Tree& t);
std::string describe(const RelCase& c);
std::string describe(const EqCase& c);

// Structural edits that keep a diagram valid.
WiringDiagram drop_inner_star(const WiringDiagram& wd, std::size_t i);
WiringDiagram drop_inner_wire(const WiringDiagram& wd, std::size_t i, const std::string& wire);
WiringDiagram drop_outer_wire(const WiringDiagram& wd, const std::string& wire);
// Removes cable c, which must be floating.
WiringDiagram drop_cable(const WiringDiagram& wd, std::size_t c);

}  // namespace wd::laws
