#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wd/relation.hpp"
#include "wd/typed.hpp"

namespace wd {

// A relation S on [Z => Z]. Through the closing transformation it induces the
// step function R |-> {t|ret : t in S, t|arg1 in R} on relations over Z.
struct RecursiveSetup {
  TypedStar z;
  TypedStar hom;
  Relation s;
  // Maximum number of step applications in fixed_point.
  std::uint64_t budget = 0;
  // Evaluation diagram [Z => Z], Z -> Z, built once per setup.
  TypedWiringDiagram ev;
};

// Wraps a relation on a hom star [Z => Z]; Z is read off the ret wires. A zero
// budget means |complete relation on Z| + 1.
RecursiveSetup setup_from_relation(Relation s, std::uint64_t budget = 0);

// S = eval(phi, rels), where phi lands in [Z => Z].
RecursiveSetup build_setup(const TypedWiringDiagram& phi, std::span<const Relation> rels,
                           std::uint64_t budget = 0);

Relation step(const RecursiveSetup& setup, const Relation& r);

bool is_fixed_point(const RecursiveSetup& setup, const Relation& r);

enum class FixMode { kLeast, kGreatest };

// kKleene applies step to the whole relation each round. kRoundRobin visits
// tuples in ascending order and adds (least) or removes (greatest) one tuple at
// a time against the current relation, so support propagates within a sweep.
// Both reach the same limit because step is monotone.
enum class FixStrategy { kKleene, kRoundRobin };

struct FixedPointResult {
  Relation limit;
  // Step applications (kKleene) or sweeps (kRoundRobin) performed, including
  // the one confirming the limit.
  std::size_t iterations = 0;
  // start, then the relation after each iteration that changed it.
  std::vector<Relation> chain;
};

// Iterates from the empty relation (least) or the complete relation
// (greatest). Throws kBudgetExhausted when no fixed point is reached within
// setup.budget steps.
FixedPointResult fixed_point(const RecursiveSetup& setup, FixMode mode,
                             FixStrategy strategy = FixStrategy::kKleene);

// Fixed points reached by iterating step from the complete relation, the empty
// relation, and up to `seed_bound` singleton relations. Orbits that cycle
// without settling contribute nothing. Sorted, without duplicates.
std::vector<Relation> explore_fixed_points(const RecursiveSetup& setup, std::size_t seed_bound);

// Every fixed point, found by testing all subsets of the complete relation on
// Z. Throws kBoundExceeded when there are more than max_candidates subsets.
std::vector<Relation> enumerate_fixed_points(const RecursiveSetup& setup,
                                             std::uint64_t max_candidates = 1u << 16);

// The factorial example over the domain {0..M}: Decrement(A, A'),
// Multiplication(A, B', C) restricted to A*B' <= M, and Conditional(A, C, B),
// wired into [F => F] with F = {A, B}.
struct FactorialFixture {
  ValueDomain domain;
  TypedWiringDiagram phi;
  std::vector<Relation> rels;  // decrement, multiplication, conditional
  RecursiveSetup setup;
};

FactorialFixture factorial_fixture(std::int64_t m);

}  // namespace wd
