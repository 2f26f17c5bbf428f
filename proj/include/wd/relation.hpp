#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wd/typed.hpp"

namespace wd {

// A tuple stores, for each wire of the relation's star (in star order), the
// index of its value within the wire's domain.
using Tuple = std::vector<std::uint32_t>;

// A finite set of well-typed tuples on a typed star. Tuples are kept sorted
// and duplicate-free.
class Relation {
 public:
  Relation() = default;
  Relation(TypedStar star, std::vector<Tuple> tuples);

  static Relation empty(TypedStar star);
  // All tuples; throws kBoundExceeded when the product exceeds `bound`.
  static Relation complete(TypedStar star, std::uint64_t bound = 10'000'000);
  static Relation from_values(TypedStar star, const std::vector<std::vector<Value>>& rows);

  const TypedStar& star() const noexcept { return star_; }
  const std::vector<Tuple>& tuples() const noexcept { return tuples_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }

  bool contains(const Tuple& t) const;
  std::vector<std::vector<Value>> rows() const;

  // The same relation with columns in the wire order of `target`, which must
  // be equal to star() as a typed star.
  Relation aligned_to(const TypedStar& target) const;

  bool subset_of(const Relation& other) const;

  // Same typed star and the same set of tuples, regardless of column order.
  friend bool operator==(const Relation& a, const Relation& b);

 private:
  TypedStar star_;
  std::vector<Tuple> tuples_;
};

std::string to_string(const Relation& r);

// Size of the product of the domains of `star`, saturated at UINT64_MAX.
std::uint64_t product_size(const TypedStar& star);

// Relational algebra on typed wiring diagrams: the twd-conjunction of rels.
// Joins inner relations by hash join in ascending order of size, then extends
// over cables that only the outer star uses, and finally checks that every
// floating cable has a nonempty domain.
Relation eval(const TypedWiringDiagram& twd, std::span<const Relation> rels);

inline constexpr std::uint64_t kDefaultNaiveBound = 10'000'000;

// Literal pullback-then-image: enumerates every cable assignment. Refuses
// (kBoundExceeded) when there are more than `bound` assignments.
Relation eval_naive(const TypedWiringDiagram& twd, std::span<const Relation> rels,
                    std::uint64_t bound = kDefaultNaiveBound);

// The singly-typed algebra Rel_A: every wire and cable ranges over `domain`.
// rels[i] must live on the uniformly typed inner star i.
Relation eval_uniform(const WiringDiagram& wd, const ValueDomain& domain,
                      std::span<const Relation> rels, std::uint64_t bound = kDefaultNaiveBound);

Relation rel_union(const Relation& a, const Relation& b);

Relation rel_intersection(const Relation& a, const Relation& b);

}  // namespace wd
