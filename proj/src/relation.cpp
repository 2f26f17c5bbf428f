#include "wd/relation.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "wd/error.hpp"

namespace wd {

namespace {

void normalize(std::vector<Tuple>& tuples) {
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

// col[j] = column of `from` holding wire j of `to`.
std::vector<std::size_t> column_map(const TypedStar& from, const TypedStar& to) {
  std::vector<std::size_t> col(to.size());
  for (std::size_t j = 0; j < to.size(); ++j) col[j] = *from.star().index_of(to.wire(j));
  return col;
}

}  // namespace

Relation::Relation(TypedStar star, std::vector<Tuple> tuples)
    : star_(std::move(star)), tuples_(std::move(tuples)) {
  for (const auto& t : tuples_) {
    if (t.size() != star_.size()) {
      throw Error(ErrorKind::kTypeMismatch, "tuple arity does not match " + to_string(star_));
    }
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] >= star_.type(j).size()) {
        throw Error(ErrorKind::kDomain,
                    "value index out of domain " + star_.type(j).name() + " on wire " +
                        star_.wire(j));
      }
    }
  }
  normalize(tuples_);
}

Relation Relation::empty(TypedStar star) { return Relation(std::move(star), {}); }

std::uint64_t product_size(const TypedStar& star) {
  std::uint64_t total = 1;
  for (const auto& d : star.types()) {
    if (d.size() == 0) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / d.size()) {
      total = std::numeric_limits<std::uint64_t>::max();
    } else {
      total *= d.size();
    }
  }
  return total;
}

Relation Relation::complete(TypedStar star, std::uint64_t bound) {
  const std::uint64_t total = product_size(star);
  if (total > bound) {
    throw Error(ErrorKind::kBoundExceeded,
                "complete relation on " + to_string(star) + " is too large to materialize");
  }
  std::vector<Tuple> tuples;
  tuples.reserve(static_cast<std::size_t>(total));
  Tuple t(star.size(), 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    tuples.push_back(t);
    for (std::size_t j = star.size(); j-- > 0;) {
      if (++t[j] < star.type(j).size()) break;
      t[j] = 0;
    }
  }
  return Relation(std::move(star), std::move(tuples));
}

Relation Relation::from_values(TypedStar star, const std::vector<std::vector<Value>>& rows) {
  std::vector<Tuple> tuples;
  tuples.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != star.size()) {
      throw Error(ErrorKind::kTypeMismatch, "row arity does not match " + to_string(star));
    }
    Tuple t(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      auto idx = star.type(j).index_of(row[j]);
      if (!idx) {
        throw Error(ErrorKind::kDomain, "value '" + to_string(row[j]) + "' is not in domain " +
                                            star.type(j).name() + " of wire " + star.wire(j));
      }
      t[j] = static_cast<std::uint32_t>(*idx);
    }
    tuples.push_back(std::move(t));
  }
  return Relation(std::move(star), std::move(tuples));
}

bool Relation::contains(const Tuple& t) const {
  return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

std::vector<std::vector<Value>> Relation::rows() const {
  std::vector<std::vector<Value>> out;
  out.reserve(tuples_.size());
  for (const auto& t : tuples_) {
    std::vector<Value> row;
    row.reserve(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) row.push_back(star_.type(j).value(t[j]));
    out.push_back(std::move(row));
  }
  return out;
}

Relation Relation::aligned_to(const TypedStar& target) const {
  if (!(star_ == target)) {
    throw Error(ErrorKind::kStarMismatch,
                "relation on " + to_string(star_) + " used where " + to_string(target) +
                    " is expected");
  }
  if (star_.star().wires() == target.star().wires()) return *this;
  auto col = column_map(star_, target);
  std::vector<Tuple> tuples;
  tuples.reserve(tuples_.size());
  for (const auto& t : tuples_) {
    Tuple u(col.size());
    for (std::size_t j = 0; j < col.size(); ++j) u[j] = t[col[j]];
    tuples.push_back(std::move(u));
  }
  return Relation(target.reordered(target.star()), std::move(tuples));
}

bool Relation::subset_of(const Relation& other) const {
  Relation b = other.aligned_to(star_);
  return std::includes(b.tuples_.begin(), b.tuples_.end(), tuples_.begin(), tuples_.end());
}

bool operator==(const Relation& a, const Relation& b) {
  if (!(a.star_ == b.star_) || a.size() != b.size()) return false;
  return a.tuples_ == b.aligned_to(a.star_).tuples_;
}

std::string to_string(const Relation& r) {
  std::string out = to_string(r.star()) + " = {";
  bool first = true;
  for (const auto& row : r.rows()) {
    if (!first) out += ", ";
    first = false;
    out += "(";
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j != 0) out += ",";
      out += to_string(row[j]);
    }
    out += ")";
  }
  return out + "}";
}

Relation rel_union(const Relation& a, const Relation& b) {
  Relation bb = b.aligned_to(a.star());
  std::vector<Tuple> out;
  out.reserve(a.size() + bb.size());
  std::set_union(a.tuples().begin(), a.tuples().end(), bb.tuples().begin(), bb.tuples().end(),
                 std::back_inserter(out));
  return Relation(a.star(), std::move(out));
}

Relation rel_intersection(const Relation& a, const Relation& b) {
  Relation bb = b.aligned_to(a.star());
  std::vector<Tuple> out;
  std::set_intersection(a.tuples().begin(), a.tuples().end(), bb.tuples().begin(),
                        bb.tuples().end(), std::back_inserter(out));
  return Relation(a.star(), std::move(out));
}

}  // namespace wd
