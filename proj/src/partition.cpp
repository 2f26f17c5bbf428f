#include "wd/partition.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "wd/detail/union_find.hpp"
#include "wd/error.hpp"

namespace wd {

namespace {

void normalize(std::vector<std::vector<std::string>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
}

void check_parts(const WiringDiagram& wd, std::span<const Partition> parts) {
  if (parts.size() != wd.arity()) {
    throw Error(ErrorKind::kStarMismatch, "diagram has " + std::to_string(wd.arity()) +
                                              " inner stars but " +
                                              std::to_string(parts.size()) +
                                              " partitions were given");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(parts[i].star() == wd.inner(i))) {
      throw Error(ErrorKind::kStarMismatch, "partition " + std::to_string(i + 1) + " is on " +
                                                to_string(parts[i].star()) +
                                                " but inner star " + std::to_string(i + 1) +
                                                " is " + to_string(wd.inner(i)));
    }
  }
}

Partition from_labels(const Star& star, const std::vector<std::size_t>& label) {
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t j = 0; j < star.size(); ++j) groups[label[j]].push_back(star.wire(j));
  std::vector<std::vector<std::string>> blocks;
  for (auto& [_, b] : groups) blocks.push_back(std::move(b));
  return Partition(star, std::move(blocks));
}

}  // namespace

Partition::Partition(Star star, std::vector<std::vector<std::string>> blocks)
    : star_(std::move(star)), blocks_(std::move(blocks)) {
  std::vector<int> seen(star_.size(), 0);
  for (const auto& b : blocks_) {
    if (b.empty()) throw Error(ErrorKind::kInvalidArgument, "partition has an empty block");
    for (const auto& w : b) {
      auto j = star_.index_of(w);
      if (!j) {
        throw Error(ErrorKind::kUnknownWire, "partition block names unknown wire '" + w + "'");
      }
      if (seen[*j]++ != 0) {
        throw Error(ErrorKind::kInvalidArgument, "wire '" + w + "' appears in two blocks");
      }
    }
  }
  for (std::size_t j = 0; j < star_.size(); ++j) {
    if (seen[j] == 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "wire '" + star_.wire(j) + "' is in no block of the partition");
    }
  }
  normalize(blocks_);
}

Partition Partition::discrete(const Star& star) {
  std::vector<std::vector<std::string>> blocks;
  for (const auto& w : star.wires()) blocks.push_back({w});
  return Partition(star, std::move(blocks));
}

Partition Partition::indiscrete(const Star& star) {
  if (star.empty()) return Partition(star, {});
  return Partition(star, {star.wires()});
}

bool Partition::related(const std::string& a, const std::string& b) const {
  for (const auto& blk : blocks_) {
    bool ha = std::binary_search(blk.begin(), blk.end(), a);
    bool hb = std::binary_search(blk.begin(), blk.end(), b);
    if (ha || hb) return ha && hb;
  }
  return false;
}

bool Partition::finer_than(const Partition& other) const {
  for (const auto& blk : blocks_) {
    for (std::size_t k = 1; k < blk.size(); ++k) {
      if (!other.related(blk[0], blk[k])) return false;
    }
  }
  return true;
}

std::string to_string(const Partition& p) {
  std::string out = "{";
  for (std::size_t b = 0; b < p.blocks().size(); ++b) {
    if (b != 0) out += " | ";
    for (std::size_t k = 0; k < p.blocks()[b].size(); ++k) {
      if (k != 0) out += ",";
      out += p.blocks()[b][k];
    }
  }
  return out + "}";
}

Partition eval_eq(const WiringDiagram& wd, std::span<const Partition> parts) {
  check_parts(wd, parts);
  detail::UnionFind uf(wd.cable_count());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Star& star = wd.inner(i);
    for (const auto& block : parts[i].blocks()) {
      std::size_t first = wd.inner_cable(i, *star.index_of(block.front()));
      for (const auto& w : block) uf.unite(first, wd.inner_cable(i, *star.index_of(w)));
    }
  }
  std::vector<std::size_t> label(wd.outer().size());
  for (std::size_t j = 0; j < label.size(); ++j) label[j] = uf.find(wd.outer_cable(j));
  return from_labels(wd.outer(), label);
}

Partition eq_oracle(const WiringDiagram& wd, std::span<const Partition> parts) {
  check_parts(wd, parts);
  // Nodes: cables, then inner wires, then outer wires.
  std::vector<std::size_t> inner_base(wd.arity());
  std::size_t node_count = wd.cable_count();
  for (std::size_t i = 0; i < wd.arity(); ++i) {
    inner_base[i] = node_count;
    node_count += wd.inner(i).size();
  }
  const std::size_t outer_base = node_count;
  node_count += wd.outer().size();

  std::vector<std::vector<std::size_t>> adj(node_count);
  auto edge = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (std::size_t i = 0; i < wd.arity(); ++i) {
    const Star& star = wd.inner(i);
    for (std::size_t j = 0; j < star.size(); ++j) edge(inner_base[i] + j, wd.inner_cable(i, j));
    for (const auto& block : parts[i].blocks()) {
      for (std::size_t a = 0; a < block.size(); ++a) {
        for (std::size_t b = a + 1; b < block.size(); ++b) {
          edge(inner_base[i] + *star.index_of(block[a]), inner_base[i] + *star.index_of(block[b]));
        }
      }
    }
  }
  for (std::size_t j = 0; j < wd.outer().size(); ++j) edge(outer_base + j, wd.outer_cable(j));

  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> component(node_count, unseen);
  std::size_t next = 0;
  for (std::size_t s = 0; s < node_count; ++s) {
    if (component[s] != unseen) continue;
    std::queue<std::size_t> q;
    q.push(s);
    component[s] = next;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj[u]) {
        if (component[v] == unseen) {
          component[v] = next;
          q.push(v);
        }
      }
    }
    ++next;
  }
  std::vector<std::size_t> label(wd.outer().size());
  for (std::size_t j = 0; j < label.size(); ++j) label[j] = component[outer_base + j];
  return from_labels(wd.outer(), label);
}

}  // namespace wd
