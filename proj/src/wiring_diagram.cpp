#include "wd/wiring_diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "wd/detail/union_find.hpp"
#include "wd/error.hpp"

namespace wd {

namespace {

std::vector<std::string> numbered_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return names;
}

std::string star_label(std::size_t star) {
  return star == kOuter ? std::string("out") : "in" + std::to_string(star + 1);
}

}  // namespace

WiringDiagram::WiringDiagram(std::vector<Star> inner, Star outer,
                             std::vector<std::string> cable_names,
                             std::vector<std::vector<std::size_t>> inner_solder,
                             std::vector<std::size_t> outer_solder)
    : inner_(std::move(inner)),
      outer_(std::move(outer)),
      cable_names_(std::move(cable_names)),
      inner_solder_(std::move(inner_solder)),
      outer_solder_(std::move(outer_solder)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& c : cable_names_) {
    if (!seen.insert(c).second) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate cable name '" + c + "'");
    }
  }
  if (inner_solder_.size() != inner_.size()) {
    throw Error(ErrorKind::kUnsolderedWire, "solder map does not cover every inner star");
  }
  const std::size_t k = cable_names_.size();
  for (std::size_t i = 0; i < inner_.size(); ++i) {
    if (inner_solder_[i].size() != inner_[i].size()) {
      throw Error(ErrorKind::kUnsolderedWire,
                  "solder map does not cover every wire of inner star " + std::to_string(i + 1));
    }
    for (std::size_t c : inner_solder_[i]) {
      if (c >= k) {
        throw Error(ErrorKind::kDanglingCable,
                    "inner star " + std::to_string(i + 1) + " refers to a missing cable");
      }
    }
  }
  if (outer_solder_.size() != outer_.size()) {
    throw Error(ErrorKind::kUnsolderedWire, "solder map does not cover every outer wire");
  }
  for (std::size_t c : outer_solder_) {
    if (c >= k) throw Error(ErrorKind::kDanglingCable, "outer star refers to a missing cable");
  }
}

std::vector<bool> WiringDiagram::floating_cables() const {
  std::vector<bool> floating(cable_count(), true);
  for (const auto& star : inner_solder_) {
    for (std::size_t c : star) floating[c] = false;
  }
  for (std::size_t c : outer_solder_) floating[c] = false;
  return floating;
}

WiringDiagram make_diagram(std::vector<Star> inner, Star outer, std::vector<std::string> cables,
                           const std::vector<Solder>& solders) {
  std::unordered_map<std::string, std::size_t> cable_index;
  for (std::size_t c = 0; c < cables.size(); ++c) {
    if (!cable_index.emplace(cables[c], c).second) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate cable name '" + cables[c] + "'");
    }
  }
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> f(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) f[i].assign(inner[i].size(), unset);
  std::vector<std::size_t> g(outer.size(), unset);

  for (const auto& s : solders) {
    const Star* star = nullptr;
    if (s.star == kOuter) {
      star = &outer;
    } else if (s.star < inner.size()) {
      star = &inner[s.star];
    } else {
      throw Error(ErrorKind::kUnknownWire, "solder names a missing inner star " +
                                               std::to_string(s.star + 1));
    }
    auto w = star->index_of(s.wire);
    if (!w) {
      throw Error(ErrorKind::kUnknownWire,
                  "no wire '" + s.wire + "' on " + star_label(s.star));
    }
    auto c = cable_index.find(s.cable);
    if (c == cable_index.end()) {
      throw Error(ErrorKind::kDanglingCable, "wire " + star_label(s.star) + "." + s.wire +
                                                 " refers to undeclared cable '" + s.cable + "'");
    }
    std::size_t& slot = s.star == kOuter ? g[*w] : f[s.star][*w];
    if (slot != unset && slot != c->second) {
      throw Error(ErrorKind::kInvalidArgument,
                  "wire " + star_label(s.star) + "." + s.wire + " soldered onto two cables");
    }
    slot = c->second;
  }
  for (std::size_t i = 0; i < inner.size(); ++i) {
    for (std::size_t j = 0; j < inner[i].size(); ++j) {
      if (f[i][j] == unset) {
        throw Error(ErrorKind::kUnsolderedWire,
                    "wire " + star_label(i) + "." + inner[i].wire(j) + " is not soldered");
      }
    }
  }
  for (std::size_t j = 0; j < outer.size(); ++j) {
    if (g[j] == unset) {
      throw Error(ErrorKind::kUnsolderedWire, "wire out." + outer.wire(j) + " is not soldered");
    }
  }
  return WiringDiagram(std::move(inner), std::move(outer), std::move(cables), std::move(f),
                       std::move(g));
}

WiringDiagram identity_diagram(const Star& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return WiringDiagram({x}, x, x.wires(), {idx}, idx);
}

CompositionTrace compose_traced(const WiringDiagram& outer_wd,
                                std::span<const WiringDiagram> inner_wds) {
  if (inner_wds.size() != outer_wd.arity()) {
    throw Error(ErrorKind::kInterfaceMismatch,
                "composition needs " + std::to_string(outer_wd.arity()) +
                    " inner diagrams, got " + std::to_string(inner_wds.size()));
  }
  std::vector<std::size_t> offset(inner_wds.size() + 1, 0);
  for (std::size_t i = 0; i < inner_wds.size(); ++i) {
    if (!(inner_wds[i].outer() == outer_wd.inner(i))) {
      throw Error(ErrorKind::kInterfaceMismatch,
                  "inner diagram " + std::to_string(i + 1) + " has outer star " +
                      to_string(inner_wds[i].outer()) + " but slot " + std::to_string(i + 1) +
                      " expects " + to_string(outer_wd.inner(i)));
    }
    offset[i + 1] = offset[i] + inner_wds[i].cable_count();
  }
  const std::size_t outer_offset = offset.back();
  detail::UnionFind uf(outer_offset + outer_wd.cable_count());

  // Each intermediary wire y identifies its cable in the inner diagram with its
  // cable in the outer diagram.
  for (std::size_t i = 0; i < inner_wds.size(); ++i) {
    const Star& mid = outer_wd.inner(i);
    const WiringDiagram& child = inner_wds[i];
    for (std::size_t j = 0; j < mid.size(); ++j) {
      std::size_t k = *child.outer().index_of(mid.wire(j));
      uf.unite(offset[i] + child.outer_cable(k), outer_offset + outer_wd.inner_cable(i, j));
    }
  }

  std::size_t class_count = 0;
  std::vector<std::size_t> cls = uf.dense_classes(&class_count);

  std::vector<Star> stars;
  std::vector<std::vector<std::size_t>> f;
  CompositionTrace trace;
  trace.inner_cable_class.resize(inner_wds.size());
  for (std::size_t i = 0; i < inner_wds.size(); ++i) {
    const WiringDiagram& child = inner_wds[i];
    for (std::size_t s = 0; s < child.arity(); ++s) {
      stars.push_back(child.inner(s));
      std::vector<std::size_t> row;
      row.reserve(child.inner(s).size());
      for (std::size_t c : child.inner_solder()[s]) row.push_back(cls[offset[i] + c]);
      f.push_back(std::move(row));
    }
    auto& map = trace.inner_cable_class[i];
    map.reserve(child.cable_count());
    for (std::size_t c = 0; c < child.cable_count(); ++c) map.push_back(cls[offset[i] + c]);
  }
  std::vector<std::size_t> g;
  g.reserve(outer_wd.outer().size());
  for (std::size_t c : outer_wd.outer_solder()) g.push_back(cls[outer_offset + c]);
  trace.outer_cable_class.reserve(outer_wd.cable_count());
  for (std::size_t c = 0; c < outer_wd.cable_count(); ++c) {
    trace.outer_cable_class.push_back(cls[outer_offset + c]);
  }

  trace.result = WiringDiagram(std::move(stars), outer_wd.outer(), numbered_names(class_count),
                               std::move(f), std::move(g));
  return trace;
}

WiringDiagram compose(const WiringDiagram& outer_wd, std::span<const WiringDiagram> inner_wds) {
  return compose_traced(outer_wd, inner_wds).result;
}

namespace {

std::vector<std::vector<Attachment>> attachments_by_cable(const WiringDiagram& wd) {
  std::vector<std::vector<Attachment>> att(wd.cable_count());
  for (std::size_t i = 0; i < wd.arity(); ++i) {
    for (std::size_t j = 0; j < wd.inner(i).size(); ++j) {
      att[wd.inner_cable(i, j)].push_back({i, wd.inner(i).wire(j)});
    }
  }
  for (std::size_t j = 0; j < wd.outer().size(); ++j) {
    att[wd.outer_cable(j)].push_back({kOuter, wd.outer().wire(j)});
  }
  for (auto& a : att) std::sort(a.begin(), a.end());
  return att;
}

}  // namespace

std::vector<std::size_t> canonical_cable_order(const WiringDiagram& wd) {
  auto att = attachments_by_cable(wd);
  std::vector<std::size_t> attached;
  std::vector<std::size_t> floating;
  for (std::size_t c = 0; c < att.size(); ++c) {
    (att[c].empty() ? floating : attached).push_back(c);
  }
  // Attachment lists of distinct cables are disjoint and nonempty, so the
  // order is total.
  std::sort(attached.begin(), attached.end(),
            [&](std::size_t a, std::size_t b) { return att[a] < att[b]; });
  std::vector<std::size_t> new_index(wd.cable_count());
  std::size_t next = 0;
  for (std::size_t c : attached) new_index[c] = next++;
  for (std::size_t c : floating) new_index[c] = next++;
  return new_index;
}

CanonicalKey canonical_key(const WiringDiagram& wd) {
  CanonicalKey key;
  key.inner_wires.reserve(wd.arity());
  for (const auto& s : wd.inner()) key.inner_wires.push_back(s.sorted_wires());
  key.outer_wires = wd.outer().sorted_wires();
  for (auto& a : attachments_by_cable(wd)) {
    if (a.empty()) {
      ++key.floating;
    } else {
      key.attached.push_back(std::move(a));
    }
  }
  std::sort(key.attached.begin(), key.attached.end());
  return key;
}

WiringDiagram canonicalize(const WiringDiagram& wd) {
  auto order = canonical_cable_order(wd);
  std::vector<std::vector<std::size_t>> f = wd.inner_solder();
  for (auto& row : f) {
    for (auto& c : row) c = order[c];
  }
  std::vector<std::size_t> g = wd.outer_solder();
  for (auto& c : g) c = order[c];
  return WiringDiagram(wd.inner(), wd.outer(), numbered_names(wd.cable_count()), std::move(f),
                       std::move(g));
}

bool diagrams_equal(const WiringDiagram& a, const WiringDiagram& b) {
  if (a.arity() != b.arity() || a.cable_count() != b.cable_count()) return false;
  return canonical_key(a) == canonical_key(b);
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> sigma) {
  std::vector<std::size_t> inv(sigma.size(), sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] >= sigma.size() || inv[sigma[i]] != sigma.size()) {
      throw Error(ErrorKind::kInvalidPermutation, "not a permutation of the inner stars");
    }
    inv[sigma[i]] = i;
  }
  return inv;
}

WiringDiagram reindex_inner(const WiringDiagram& wd, std::span<const std::size_t> sigma) {
  if (sigma.size() != wd.arity()) {
    throw Error(ErrorKind::kInvalidPermutation,
                "permutation has " + std::to_string(sigma.size()) + " entries for " +
                    std::to_string(wd.arity()) + " inner stars");
  }
  auto inv = inverse_permutation(sigma);
  std::vector<Star> stars;
  std::vector<std::vector<std::size_t>> f;
  stars.reserve(wd.arity());
  f.reserve(wd.arity());
  for (std::size_t k = 0; k < wd.arity(); ++k) {
    stars.push_back(wd.inner(inv[k]));
    f.push_back(wd.inner_solder()[inv[k]]);
  }
  return WiringDiagram(std::move(stars), wd.outer(), wd.cable_names(), std::move(f),
                       wd.outer_solder());
}

WiringDiagram rename_cables(const WiringDiagram& wd, std::vector<std::string> new_names) {
  if (new_names.size() != wd.cable_count()) {
    throw Error(ErrorKind::kInvalidArgument, "rename_cables: wrong number of names");
  }
  return WiringDiagram(wd.inner(), wd.outer(), std::move(new_names), wd.inner_solder(),
                       wd.outer_solder());
}

std::string to_string(const WiringDiagram& wd) {
  std::string out = "(";
  for (std::size_t i = 0; i < wd.arity(); ++i) {
    if (i != 0) out += ", ";
    out += to_string(wd.inner(i));
  }
  out += ") -> " + to_string(wd.outer()) + " via [";
  std::map<std::size_t, std::vector<std::string>> att;
  for (std::size_t i = 0; i < wd.arity(); ++i) {
    for (std::size_t j = 0; j < wd.inner(i).size(); ++j) {
      att[wd.inner_cable(i, j)].push_back(star_label(i) + "." + wd.inner(i).wire(j));
    }
  }
  for (std::size_t j = 0; j < wd.outer().size(); ++j) {
    att[wd.outer_cable(j)].push_back("out." + wd.outer().wire(j));
  }
  for (std::size_t c = 0; c < wd.cable_count(); ++c) {
    if (c != 0) out += " ";
    out += wd.cable_names()[c] + ":{";
    const auto& list = att[c];
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (k != 0) out += ",";
      out += list[k];
    }
    out += "}";
  }
  out += "]";
  return out;
}

}  // namespace wd
