#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "wd/error.hpp"
#include "wd/relation.hpp"

namespace wd {

namespace {

constexpr std::uint32_t kUnbound = std::numeric_limits<std::uint32_t>::max();

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : t) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }
};

// cols[i][r] = cable soldered to the wire in column r of rels[i].
std::vector<std::vector<std::size_t>> column_cables(const TypedWiringDiagram& twd,
                                                    std::span<const Relation> rels) {
  if (rels.size() != twd.arity()) {
    throw Error(ErrorKind::kStarMismatch, "diagram has " + std::to_string(twd.arity()) +
                                              " inner stars but " + std::to_string(rels.size()) +
                                              " relations were given");
  }
  std::vector<std::vector<std::size_t>> cols(rels.size());
  for (std::size_t i = 0; i < rels.size(); ++i) {
    if (!(rels[i].star() == twd.inner(i))) {
      throw Error(ErrorKind::kStarMismatch,
                  "relation " + std::to_string(i + 1) + " lives on " +
                      to_string(rels[i].star()) + " but inner star " + std::to_string(i + 1) +
                      " is " + to_string(twd.inner(i)));
    }
    const Star& star = twd.diagram().inner(i);
    for (const auto& w : rels[i].star().star().wires()) {
      cols[i].push_back(twd.diagram().inner_cable(i, *star.index_of(w)));
    }
  }
  return cols;
}

Relation project_outer(const TypedWiringDiagram& twd, const std::vector<Tuple>& assignments) {
  const auto& g = twd.diagram().outer_solder();
  std::vector<Tuple> out;
  out.reserve(assignments.size());
  for (const auto& a : assignments) {
    Tuple t(g.size());
    for (std::size_t y = 0; y < g.size(); ++y) t[y] = a[g[y]];
    out.push_back(std::move(t));
  }
  return Relation(twd.outer(), std::move(out));
}

void dedupe(std::vector<Tuple>& rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

}  // namespace

Relation eval(const TypedWiringDiagram& twd, std::span<const Relation> rels) {
  const auto cols = column_cables(twd, rels);
  const std::size_t k = twd.cable_count();
  const std::size_t n = rels.size();
  const WiringDiagram& wd = twd.diagram();

  for (const auto& r : rels) {
    if (r.empty()) return Relation::empty(twd.outer());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rels[a].size() < rels[b].size(); });

  // last_use[c]: last join step that reads cable c; n for cables the outer
  // star reads.
  std::vector<std::size_t> last_use(k, 0);
  std::vector<bool> used(k, false);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t c : cols[order[p]]) {
      last_use[c] = p;
      used[c] = true;
    }
  }
  for (std::size_t c : wd.outer_solder()) {
    last_use[c] = n;
    used[c] = true;
  }

  std::vector<Tuple> rows{Tuple(k, kUnbound)};
  std::vector<bool> bound(k, false);

  for (std::size_t p = 0; p < n; ++p) {
    const Relation& rel = rels[order[p]];
    const auto& col = cols[order[p]];

    // Distinct cables touched by this star; tuples that put two different
    // values on one cable contribute nothing.
    std::vector<std::size_t> touched;
    std::vector<std::size_t> slot(col.size());
    for (std::size_t r = 0; r < col.size(); ++r) {
      auto it = std::find(touched.begin(), touched.end(), col[r]);
      slot[r] = static_cast<std::size_t>(it - touched.begin());
      if (it == touched.end()) touched.push_back(col[r]);
    }
    std::vector<std::size_t> key_slots, new_slots;
    for (std::size_t s = 0; s < touched.size(); ++s) {
      (bound[touched[s]] ? key_slots : new_slots).push_back(s);
    }

    std::unordered_map<Tuple, std::vector<Tuple>, TupleHash> index;
    for (const auto& t : rel.tuples()) {
      Tuple local(touched.size(), kUnbound);
      bool consistent = true;
      for (std::size_t r = 0; r < col.size() && consistent; ++r) {
        if (local[slot[r]] == kUnbound) {
          local[slot[r]] = t[r];
        } else if (local[slot[r]] != t[r]) {
          consistent = false;
        }
      }
      if (!consistent) continue;
      Tuple key, ext;
      key.reserve(key_slots.size());
      ext.reserve(new_slots.size());
      for (std::size_t s : key_slots) key.push_back(local[s]);
      for (std::size_t s : new_slots) ext.push_back(local[s]);
      index[std::move(key)].push_back(std::move(ext));
    }

    std::vector<Tuple> next;
    Tuple key(key_slots.size());
    for (const auto& row : rows) {
      for (std::size_t q = 0; q < key_slots.size(); ++q) key[q] = row[touched[key_slots[q]]];
      auto it = index.find(key);
      if (it == index.end()) continue;
      for (const auto& ext : it->second) {
        Tuple grown = row;
        for (std::size_t q = 0; q < new_slots.size(); ++q) grown[touched[new_slots[q]]] = ext[q];
        next.push_back(std::move(grown));
      }
    }
    for (std::size_t s : new_slots) bound[touched[s]] = true;

    // Forget cables no later step or outer wire reads.
    bool retired = false;
    for (std::size_t c : touched) {
      if (last_use[c] == p) {
        for (auto& row : next) row[c] = kUnbound;
        retired = true;
      }
    }
    if (retired) dedupe(next);
    rows = std::move(next);
    if (rows.empty()) return Relation::empty(twd.outer());
  }

  // Cables read only by the outer star range over their whole domain.
  for (std::size_t c : wd.outer_solder()) {
    if (bound[c]) continue;
    bound[c] = true;
    const std::size_t size = twd.cable_type(c).size();
    std::vector<Tuple> next;
    next.reserve(rows.size() * size);
    for (const auto& row : rows) {
      for (std::uint32_t v = 0; v < size; ++v) {
        Tuple grown = row;
        grown[c] = v;
        next.push_back(std::move(grown));
      }
    }
    rows = std::move(next);
  }

  // A floating cable with an empty domain empties the product of cables.
  for (std::size_t c = 0; c < k; ++c) {
    if (!used[c] && twd.cable_type(c).empty()) return Relation::empty(twd.outer());
  }
  return project_outer(twd, rows);
}

Relation eval_naive(const TypedWiringDiagram& twd, std::span<const Relation> rels,
                    std::uint64_t bound) {
  const auto cols = column_cables(twd, rels);
  const std::size_t k = twd.cable_count();

  std::uint64_t total = 1;
  for (std::size_t c = 0; c < k; ++c) {
    const std::uint64_t s = twd.cable_type(c).size();
    if (s == 0) return Relation::empty(twd.outer());
    if (total > bound / s) {
      throw Error(ErrorKind::kBoundExceeded,
                  "naive evaluation would enumerate more than " + std::to_string(bound) +
                      " cable assignments");
    }
    total *= s;
  }
  if (total > bound) {
    throw Error(ErrorKind::kBoundExceeded, "naive evaluation would enumerate more than " +
                                               std::to_string(bound) + " cable assignments");
  }

  std::vector<Tuple> image;
  Tuple assignment(k, 0);
  std::vector<Tuple> restricted(rels.size());
  for (std::size_t i = 0; i < rels.size(); ++i) restricted[i].resize(cols[i].size());
  for (std::uint64_t step = 0; step < total; ++step) {
    bool in_pullback = true;
    for (std::size_t i = 0; i < rels.size() && in_pullback; ++i) {
      for (std::size_t r = 0; r < cols[i].size(); ++r) restricted[i][r] = assignment[cols[i][r]];
      in_pullback = rels[i].contains(restricted[i]);
    }
    if (in_pullback) image.push_back(assignment);
    for (std::size_t c = k; c-- > 0;) {
      if (++assignment[c] < twd.cable_type(c).size()) break;
      assignment[c] = 0;
    }
  }
  return project_outer(twd, image);
}

Relation eval_uniform(const WiringDiagram& wd, const ValueDomain& domain,
                      std::span<const Relation> rels, std::uint64_t bound) {
  if (rels.size() != wd.arity()) {
    throw Error(ErrorKind::kStarMismatch, "diagram has " + std::to_string(wd.arity()) +
                                              " inner stars but " + std::to_string(rels.size()) +
                                              " relations were given");
  }
  // R_i as subsets of A^{X_i}, columns in the diagram's wire order.
  std::vector<Relation> aligned;
  aligned.reserve(rels.size());
  for (std::size_t i = 0; i < rels.size(); ++i) {
    aligned.push_back(rels[i].aligned_to(TypedStar::uniform(wd.inner(i), domain)));
  }
  const TypedStar outer = TypedStar::uniform(wd.outer(), domain);
  const std::uint64_t a = domain.size();
  const std::size_t k = wd.cable_count();

  // |A^C|
  std::uint64_t total = 1;
  for (std::size_t c = 0; c < k; ++c) {
    if (a == 0) return Relation::empty(outer);
    if (total > bound / a) {
      throw Error(ErrorKind::kBoundExceeded, "A^C has more than " + std::to_string(bound) +
                                                 " elements");
    }
    total *= a;
  }

  std::vector<Tuple> s;
  Tuple c_val(k, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    bool ok = true;
    for (std::size_t i = 0; i < aligned.size() && ok; ++i) {
      Tuple x(wd.inner(i).size());
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = c_val[wd.inner_cable(i, j)];
      ok = aligned[i].contains(x);
    }
    if (ok) {
      Tuple y(wd.outer().size());
      for (std::size_t j = 0; j < y.size(); ++j) y[j] = c_val[wd.outer_cable(j)];
      s.push_back(std::move(y));
    }
    for (std::size_t c = k; c-- > 0;) {
      if (++c_val[c] < a) break;
      c_val[c] = 0;
    }
  }
  return Relation(outer, std::move(s));
}

}  // namespace wd
