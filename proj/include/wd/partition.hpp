#pragma once

#include <span>
#include <string>
#include <vector>

#include "wd/star.hpp"
#include "wd/wiring_diagram.hpp"

namespace wd {

// An equivalence relation on the wires of a star, stored as sorted blocks of
// sorted wire names (blocks ordered by their first element).
class Partition {
 public:
  Partition() = default;
  Partition(Star star, std::vector<std::vector<std::string>> blocks);

  // Every wire in its own block.
  static Partition discrete(const Star& star);
  // One block holding every wire (no blocks for the empty star).
  static Partition indiscrete(const Star& star);

  const Star& star() const noexcept { return star_; }
  const std::vector<std::vector<std::string>>& blocks() const noexcept { return blocks_; }

  bool related(const std::string& a, const std::string& b) const;

  // Every block of *this lies inside a block of other.
  bool finer_than(const Partition& other) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.star_ == b.star_ && a.blocks_ == b.blocks_;
  }

 private:
  Star star_;
  std::vector<std::vector<std::string>> blocks_;
};

std::string to_string(const Partition& p);

// The Eq algebra: wires connected through the diagram (via cables and inner
// blocks) end up in the same outer block.
Partition eval_eq(const WiringDiagram& wd, std::span<const Partition> parts);

// Independent check of eval_eq by breadth-first search over the graph of
// wires, cables and within-block edges.
Partition eq_oracle(const WiringDiagram& wd, std::span<const Partition> parts);

}  // namespace wd
