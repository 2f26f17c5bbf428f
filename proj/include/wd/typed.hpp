#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wd/star.hpp"
#include "wd/wiring_diagram.hpp"

namespace wd {

// An atomic value: an integer or a text token. Integers order before text.
using Value = std::variant<std::int64_t, std::string>;

std::string to_string(const Value& v);

// A finite, named, ordered set of values. Copies share storage. Equality is
// nominal: two domains are equal iff their names are.
class ValueDomain {
 public:
  ValueDomain();
  ValueDomain(std::string name, std::vector<Value> values);

  // Integers lo..hi inclusive.
  static ValueDomain range(std::string name, std::int64_t lo, std::int64_t hi);

  const std::string& name() const noexcept;
  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  const std::vector<Value>& values() const noexcept;
  const Value& value(std::size_t i) const { return values().at(i); }

  std::optional<std::size_t> index_of(const Value& v) const;
  // Looks a value up by its printed form ("3", "True").
  std::optional<std::size_t> index_of_text(std::string_view text) const;

  // Same name and the same value list.
  bool same_extension(const ValueDomain& other) const;

  friend bool operator==(const ValueDomain& a, const ValueDomain& b) {
    return a.name() == b.name();
  }

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

// A star whose wires carry value domains; types()[i] is the domain of wire i.
class TypedStar {
 public:
  TypedStar() = default;
  TypedStar(Star star, std::vector<ValueDomain> types);

  static TypedStar uniform(const Star& star, const ValueDomain& domain);

  const Star& star() const noexcept { return star_; }
  const std::vector<ValueDomain>& types() const noexcept { return types_; }
  std::size_t size() const noexcept { return star_.size(); }
  const std::string& wire(std::size_t i) const { return star_.wire(i); }
  const ValueDomain& type(std::size_t i) const { return types_.at(i); }
  const ValueDomain& type_of(std::string_view wire) const;

  // The same typed star with wires listed in the order of `order`, which must
  // have the same wire set.
  TypedStar reordered(const Star& order) const;

  // Same wire set and the same domain on every wire.
  friend bool operator==(const TypedStar& a, const TypedStar& b);

 private:
  Star star_;
  std::vector<ValueDomain> types_;
};

std::string to_string(const TypedStar& star);

// A typed wiring diagram: an underlying cospan plus a cable typing such that
// every wire has the domain of its cable. Inner and outer typed stars list
// wires in the same order as the underlying diagram.
class TypedWiringDiagram {
 public:
  TypedWiringDiagram() = default;

  const WiringDiagram& diagram() const noexcept { return wd_; }
  const std::vector<TypedStar>& inner() const noexcept { return inner_; }
  const TypedStar& inner(std::size_t i) const { return inner_.at(i); }
  const TypedStar& outer() const noexcept { return outer_; }
  const std::vector<ValueDomain>& cable_types() const noexcept { return cable_types_; }
  const ValueDomain& cable_type(std::size_t c) const { return cable_types_.at(c); }
  std::size_t arity() const noexcept { return wd_.arity(); }
  std::size_t cable_count() const noexcept { return wd_.cable_count(); }

 private:
  friend TypedWiringDiagram typecheck_diagram(const WiringDiagram&, std::vector<TypedStar>,
                                              TypedStar, std::vector<ValueDomain>);
  WiringDiagram wd_;
  std::vector<TypedStar> inner_;
  TypedStar outer_;
  std::vector<ValueDomain> cable_types_;
};

// Validates the commuting triangle: every wire's domain equals the domain of
// the cable it is soldered onto. cable_types is indexed like wd's cables.
TypedWiringDiagram typecheck_diagram(const WiringDiagram& wd, std::vector<TypedStar> inner,
                                     TypedStar outer, std::vector<ValueDomain> cable_types);

TypedWiringDiagram typed_identity(const TypedStar& x);

TypedWiringDiagram typed_compose(const TypedWiringDiagram& outer,
                                 std::span<const TypedWiringDiagram> inner);

WiringDiagram forget_types(const TypedWiringDiagram& twd);

// Every wire and cable typed by `domain`.
TypedWiringDiagram lift_uniform(const WiringDiagram& wd, const ValueDomain& domain);

TypedWiringDiagram typed_canonicalize(const TypedWiringDiagram& twd);

bool typed_diagrams_equal(const TypedWiringDiagram& a, const TypedWiringDiagram& b);

TypedWiringDiagram typed_reindex_inner(const TypedWiringDiagram& twd,
                                       std::span<const std::size_t> sigma);

}  // namespace wd
