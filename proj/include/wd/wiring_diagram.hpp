#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wd/star.hpp"

namespace wd {

// Marks the outer star in a (star index, wire) attachment.
inline constexpr std::size_t kOuter = std::numeric_limits<std::size_t>::max();

// One soldering instruction: wire `wire` of inner star `star` (or of the outer
// star when star == kOuter) is soldered onto cable `cable`.
struct Solder {
  std::size_t star = kOuter;
  std::string wire;
  std::string cable;
};

// A morphism X_1..X_n -> Y of the wiring diagram operad, stored as the cospan
// (X_1 + ... + X_n) -f-> C <-g- Y. Cables are opaque; two diagrams that differ
// only by a renaming of cables are the same morphism (see diagrams_equal).
class WiringDiagram {
 public:
  WiringDiagram() = default;

  // Index-based constructor. inner_solder[i][j] is the cable of wire j of inner
  // star i, outer_solder[k] the cable of outer wire k. Throws on out-of-range
  // cable indices, shape mismatches and duplicate cable names.
  WiringDiagram(std::vector<Star> inner, Star outer, std::vector<std::string> cable_names,
                std::vector<std::vector<std::size_t>> inner_solder,
                std::vector<std::size_t> outer_solder);

  std::size_t arity() const noexcept { return inner_.size(); }
  const std::vector<Star>& inner() const noexcept { return inner_; }
  const Star& inner(std::size_t i) const { return inner_.at(i); }
  const Star& outer() const noexcept { return outer_; }

  std::size_t cable_count() const noexcept { return cable_names_.size(); }
  const std::vector<std::string>& cable_names() const noexcept { return cable_names_; }

  std::size_t inner_cable(std::size_t star, std::size_t wire) const {
    return inner_solder_.at(star).at(wire);
  }
  std::size_t outer_cable(std::size_t wire) const { return outer_solder_.at(wire); }
  const std::vector<std::vector<std::size_t>>& inner_solder() const noexcept {
    return inner_solder_;
  }
  const std::vector<std::size_t>& outer_solder() const noexcept { return outer_solder_; }

  // Cables attached to no wire at all.
  std::vector<bool> floating_cables() const;

  // Structural equality (same cable names and order). Use diagrams_equal for
  // equality as morphisms.
  friend bool operator==(const WiringDiagram&, const WiringDiagram&) = default;

 private:
  std::vector<Star> inner_;
  Star outer_;
  std::vector<std::string> cable_names_;
  std::vector<std::vector<std::size_t>> inner_solder_;
  std::vector<std::size_t> outer_solder_;
};

WiringDiagram make_diagram(std::vector<Star> inner, Star outer, std::vector<std::string> cables,
                           const std::vector<Solder>& solders);

WiringDiagram identity_diagram(const Star& x);

// Operadic composition outer_wd o (inner_wds[0], ..., inner_wds[n-1]) by pushout
// of the middle square of the W-shaped diagram.
WiringDiagram compose(const WiringDiagram& outer_wd, std::span<const WiringDiagram> inner_wds);

// compose() plus the map from every input cable to its class in the composite.
struct CompositionTrace {
  WiringDiagram result;
  std::vector<std::size_t> outer_cable_class;               // cables of outer_wd
  std::vector<std::vector<std::size_t>> inner_cable_class;  // cables of inner_wds[i]
};
CompositionTrace compose_traced(const WiringDiagram& outer_wd,
                                std::span<const WiringDiagram> inner_wds);

// An attachment point of a cable: (inner star index, wire) or (kOuter, wire).
struct Attachment {
  std::size_t star = kOuter;
  std::string wire;

  friend auto operator<=>(const Attachment&, const Attachment&) = default;
};

// Isomorphism-invariant description of a diagram; two diagrams represent the
// same morphism iff their keys are equal.
struct CanonicalKey {
  std::vector<std::vector<std::string>> inner_wires;  // sorted per star
  std::vector<std::string> outer_wires;               // sorted
  std::vector<std::vector<Attachment>> attached;      // sorted per cable, cables sorted
  std::size_t floating = 0;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

CanonicalKey canonical_key(const WiringDiagram& wd);

// new_index[c] is the position of cable c in canonical order: attached cables
// sorted by their attachment lists, then floating cables in original order.
std::vector<std::size_t> canonical_cable_order(const WiringDiagram& wd);

// Renames cables to "1".."k" in canonical order.
WiringDiagram canonicalize(const WiringDiagram& wd);

bool diagrams_equal(const WiringDiagram& a, const WiringDiagram& b);

// Moves inner star i to position sigma[i].
WiringDiagram reindex_inner(const WiringDiagram& wd, std::span<const std::size_t> sigma);

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> sigma);

// Renames cables without changing the morphism; new_names must be distinct.
WiringDiagram rename_cables(const WiringDiagram& wd, std::vector<std::string> new_names);

std::string to_string(const WiringDiagram& wd);

}  // namespace wd
