#include "wd/star.hpp"

#include <algorithm>
#include <unordered_set>

#include "wd/error.hpp"

namespace wd {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDuplicateWire: return "duplicate wire";
    case ErrorKind::kUnknownWire: return "unknown wire";
    case ErrorKind::kUnsolderedWire: return "unsoldered wire";
    case ErrorKind::kDanglingCable: return "dangling cable";
    case ErrorKind::kInterfaceMismatch: return "interface mismatch";
    case ErrorKind::kTypeMismatch: return "type mismatch";
    case ErrorKind::kStarMismatch: return "star mismatch";
    case ErrorKind::kInvalidPermutation: return "invalid permutation";
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kBoundExceeded: return "bound exceeded";
    case ErrorKind::kBudgetExhausted: return "budget exhausted";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kUnresolvedName: return "unresolved name";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

Star::Star(std::vector<std::string> wires) : wires_(std::move(wires)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& w : wires_) {
    if (!seen.insert(w).second) {
      throw Error(ErrorKind::kDuplicateWire, "duplicate wire name '" + w + "'");
    }
  }
}

std::optional<std::size_t> Star::index_of(std::string_view name) const {
  auto it = std::find(wires_.begin(), wires_.end(), name);
  if (it == wires_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - wires_.begin());
}

std::vector<std::string> Star::sorted_wires() const {
  auto out = wires_;
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Star& a, const Star& b) {
  if (a.size() != b.size()) return false;
  for (const auto& w : a.wires_) {
    if (!b.contains(w)) return false;
  }
  return true;
}

Star make_star(std::vector<std::string> names) { return Star(std::move(names)); }

std::string to_string(const Star& star) {
  std::string out = "{";
  for (std::size_t i = 0; i < star.size(); ++i) {
    if (i != 0) out += ",";
    out += star.wire(i);
  }
  out += "}";
  return out;
}

}  // namespace wd
