#include "wd/typed.hpp"

#include <algorithm>
#include <unordered_map>

#include "wd/error.hpp"

namespace wd {

std::string to_string(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return std::get<std::string>(v);
}

struct ValueDomain::Data {
  std::string name;
  std::vector<Value> values;
  std::unordered_map<std::string, std::size_t> by_text;
};

ValueDomain::ValueDomain() : ValueDomain("", {}) {}

ValueDomain::ValueDomain(std::string name, std::vector<Value> values) {
  auto data = std::make_shared<Data>();
  data->name = std::move(name);
  data->values = std::move(values);
  data->by_text.reserve(data->values.size());
  for (std::size_t i = 0; i < data->values.size(); ++i) {
    if (!data->by_text.emplace(to_string(data->values[i]), i).second) {
      throw Error(ErrorKind::kDomain, "domain '" + data->name + "' lists value '" +
                                          to_string(data->values[i]) + "' twice");
    }
  }
  data_ = std::move(data);
}

ValueDomain ValueDomain::range(std::string name, std::int64_t lo, std::int64_t hi) {
  std::vector<Value> values;
  if (hi >= lo) values.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t v = lo; v <= hi; ++v) values.emplace_back(v);
  return ValueDomain(std::move(name), std::move(values));
}

const std::string& ValueDomain::name() const noexcept { return data_->name; }
std::size_t ValueDomain::size() const noexcept { return data_->values.size(); }
const std::vector<Value>& ValueDomain::values() const noexcept { return data_->values; }

std::optional<std::size_t> ValueDomain::index_of(const Value& v) const {
  auto i = index_of_text(to_string(v));
  if (i && data_->values[*i] == v) return i;
  return std::nullopt;
}

std::optional<std::size_t> ValueDomain::index_of_text(std::string_view text) const {
  auto it = data_->by_text.find(std::string(text));
  if (it == data_->by_text.end()) return std::nullopt;
  return it->second;
}

bool ValueDomain::same_extension(const ValueDomain& other) const {
  return data_ == other.data_ || (name() == other.name() && values() == other.values());
}

TypedStar::TypedStar(Star star, std::vector<ValueDomain> types)
    : star_(std::move(star)), types_(std::move(types)) {
  if (types_.size() != star_.size()) {
    throw Error(ErrorKind::kTypeMismatch,
                "typing of " + to_string(star_) + " is not total");
  }
}

TypedStar TypedStar::uniform(const Star& star, const ValueDomain& domain) {
  return TypedStar(star, std::vector<ValueDomain>(star.size(), domain));
}

const ValueDomain& TypedStar::type_of(std::string_view wire) const {
  auto i = star_.index_of(wire);
  if (!i) throw Error(ErrorKind::kUnknownWire, "no wire '" + std::string(wire) + "'");
  return types_[*i];
}

TypedStar TypedStar::reordered(const Star& order) const {
  if (!(order == star_)) {
    throw Error(ErrorKind::kStarMismatch,
                "cannot reorder " + to_string(star_) + " as " + to_string(order));
  }
  std::vector<ValueDomain> types;
  types.reserve(order.size());
  for (const auto& w : order.wires()) types.push_back(type_of(w));
  return TypedStar(order, std::move(types));
}

bool operator==(const TypedStar& a, const TypedStar& b) {
  if (!(a.star_ == b.star_)) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a.types_[i] == b.type_of(a.wire(i)))) return false;
  }
  return true;
}

std::string to_string(const TypedStar& star) {
  std::string out = "{";
  for (std::size_t i = 0; i < star.size(); ++i) {
    if (i != 0) out += ",";
    out += star.wire(i) + ":" + star.type(i).name();
  }
  return out + "}";
}

TypedWiringDiagram typecheck_diagram(const WiringDiagram& wd, std::vector<TypedStar> inner,
                                     TypedStar outer, std::vector<ValueDomain> cable_types) {
  if (inner.size() != wd.arity()) {
    throw Error(ErrorKind::kTypeMismatch, "typing given for " + std::to_string(inner.size()) +
                                              " inner stars, diagram has " +
                                              std::to_string(wd.arity()));
  }
  if (cable_types.size() != wd.cable_count()) {
    throw Error(ErrorKind::kTypeMismatch, "cable typing is not total");
  }
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!(inner[i].star() == wd.inner(i))) {
      throw Error(ErrorKind::kStarMismatch, "typing for inner star " + std::to_string(i + 1) +
                                                " has wires " + to_string(inner[i].star()));
    }
    inner[i] = inner[i].reordered(wd.inner(i));
  }
  if (!(outer.star() == wd.outer())) {
    throw Error(ErrorKind::kStarMismatch,
                "typing for the outer star has wires " + to_string(outer.star()));
  }
  outer = outer.reordered(wd.outer());

  auto check = [&](const std::string& where, const ValueDomain& wire_type, std::size_t cable) {
    const ValueDomain& cable_type = cable_types[cable];
    if (!(wire_type == cable_type)) {
      throw Error(ErrorKind::kTypeMismatch, "wire " + where + " has type " + wire_type.name() +
                                                " but cable " + wd.cable_names()[cable] +
                                                " has type " + cable_type.name());
    }
    if (!wire_type.same_extension(cable_type)) {
      throw Error(ErrorKind::kTypeMismatch,
                  "two different domains are both named '" + wire_type.name() + "'");
    }
  };
  for (std::size_t i = 0; i < inner.size(); ++i) {
    for (std::size_t j = 0; j < inner[i].size(); ++j) {
      check("in" + std::to_string(i + 1) + "." + inner[i].wire(j), inner[i].type(j),
            wd.inner_cable(i, j));
    }
  }
  for (std::size_t j = 0; j < outer.size(); ++j) {
    check("out." + outer.wire(j), outer.type(j), wd.outer_cable(j));
  }

  TypedWiringDiagram twd;
  twd.wd_ = wd;
  twd.inner_ = std::move(inner);
  twd.outer_ = std::move(outer);
  twd.cable_types_ = std::move(cable_types);
  return twd;
}

TypedWiringDiagram typed_identity(const TypedStar& x) {
  return typecheck_diagram(identity_diagram(x.star()), {x}, x, x.types());
}

TypedWiringDiagram typed_compose(const TypedWiringDiagram& outer,
                                 std::span<const TypedWiringDiagram> inner) {
  if (inner.size() != outer.arity()) {
    throw Error(ErrorKind::kInterfaceMismatch,
                "composition needs " + std::to_string(outer.arity()) + " inner diagrams, got " +
                    std::to_string(inner.size()));
  }
  std::vector<WiringDiagram> untyped;
  untyped.reserve(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!(inner[i].outer() == outer.inner(i))) {
      throw Error(ErrorKind::kInterfaceMismatch,
                  "inner diagram " + std::to_string(i + 1) + " has outer typed star " +
                      to_string(inner[i].outer()) + " but slot " + std::to_string(i + 1) +
                      " expects " + to_string(outer.inner(i)));
    }
    untyped.push_back(inner[i].diagram());
  }
  CompositionTrace trace = compose_traced(outer.diagram(), untyped);

  // Identified cables share a domain because both legs of every identification
  // are typed by the same intermediary wire.
  std::vector<std::optional<ValueDomain>> types(trace.result.cable_count());
  auto assign = [&](std::size_t cls, const ValueDomain& d) {
    if (!types[cls]) {
      types[cls] = d;
    } else if (!(*types[cls] == d)) {
      throw std::logic_error("typed_compose: pushout identified cables of different types");
    }
  };
  for (std::size_t c = 0; c < outer.cable_count(); ++c) {
    assign(trace.outer_cable_class[c], outer.cable_type(c));
  }
  std::vector<TypedStar> stars;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    for (std::size_t c = 0; c < inner[i].cable_count(); ++c) {
      assign(trace.inner_cable_class[i][c], inner[i].cable_type(c));
    }
    for (const auto& s : inner[i].inner()) stars.push_back(s);
  }
  std::vector<ValueDomain> cable_types;
  cable_types.reserve(types.size());
  for (auto& t : types) {
    if (!t) throw std::logic_error("typed_compose: untyped cable class");
    cable_types.push_back(std::move(*t));
  }
  return typecheck_diagram(trace.result, std::move(stars), outer.outer(), std::move(cable_types));
}

WiringDiagram forget_types(const TypedWiringDiagram& twd) { return twd.diagram(); }

TypedWiringDiagram lift_uniform(const WiringDiagram& wd, const ValueDomain& domain) {
  std::vector<TypedStar> inner;
  inner.reserve(wd.arity());
  for (const auto& s : wd.inner()) inner.push_back(TypedStar::uniform(s, domain));
  return typecheck_diagram(wd, std::move(inner), TypedStar::uniform(wd.outer(), domain),
                           std::vector<ValueDomain>(wd.cable_count(), domain));
}

namespace {

// Canonical cable order with floating cables ordered by domain name so that
// typed equality does not depend on their original order.
std::vector<std::size_t> typed_cable_order(const TypedWiringDiagram& twd) {
  auto order = canonical_cable_order(twd.diagram());
  auto floating = twd.diagram().floating_cables();
  std::vector<std::size_t> fl;
  for (std::size_t c = 0; c < floating.size(); ++c) {
    if (floating[c]) fl.push_back(c);
  }
  if (fl.empty()) return order;
  std::size_t first = twd.cable_count() - fl.size();
  std::stable_sort(fl.begin(), fl.end(), [&](std::size_t a, std::size_t b) {
    return twd.cable_type(a).name() < twd.cable_type(b).name();
  });
  for (std::size_t k = 0; k < fl.size(); ++k) order[fl[k]] = first + k;
  return order;
}

}  // namespace

TypedWiringDiagram typed_canonicalize(const TypedWiringDiagram& twd) {
  auto order = typed_cable_order(twd);
  const WiringDiagram& wd = twd.diagram();
  std::vector<std::vector<std::size_t>> f = wd.inner_solder();
  for (auto& row : f) {
    for (auto& c : row) c = order[c];
  }
  std::vector<std::size_t> g = wd.outer_solder();
  for (auto& c : g) c = order[c];
  std::vector<std::string> names(wd.cable_count());
  std::vector<ValueDomain> types(wd.cable_count());
  for (std::size_t c = 0; c < wd.cable_count(); ++c) {
    names[order[c]] = std::to_string(order[c] + 1);
    types[order[c]] = twd.cable_type(c);
  }
  WiringDiagram canon(wd.inner(), wd.outer(), std::move(names), std::move(f), std::move(g));
  return typecheck_diagram(canon, twd.inner(), twd.outer(), std::move(types));
}

bool typed_diagrams_equal(const TypedWiringDiagram& a, const TypedWiringDiagram& b) {
  if (!diagrams_equal(a.diagram(), b.diagram())) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.inner(i) == b.inner(i))) return false;
  }
  if (!(a.outer() == b.outer())) return false;
  // Cables correspond through the canonical orders; compare their domains.
  auto oa = typed_cable_order(a);
  auto ob = typed_cable_order(b);
  std::vector<std::string> ta(a.cable_count()), tb(b.cable_count());
  for (std::size_t c = 0; c < a.cable_count(); ++c) ta[oa[c]] = a.cable_type(c).name();
  for (std::size_t c = 0; c < b.cable_count(); ++c) tb[ob[c]] = b.cable_type(c).name();
  return ta == tb;
}

TypedWiringDiagram typed_reindex_inner(const TypedWiringDiagram& twd,
                                       std::span<const std::size_t> sigma) {
  WiringDiagram wd = reindex_inner(twd.diagram(), sigma);
  auto inv = inverse_permutation(sigma);
  std::vector<TypedStar> inner;
  inner.reserve(inv.size());
  for (std::size_t k = 0; k < inv.size(); ++k) inner.push_back(twd.inner(inv[k]));
  return typecheck_diagram(wd, std::move(inner), twd.outer(), twd.cable_types());
}

}  // namespace wd
