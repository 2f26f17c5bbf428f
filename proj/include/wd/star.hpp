#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wd {

// A star is a finite set of named wires. The stored order is only used for
// display and for column order in relations; equality ignores it.
class Star {
 public:
  Star() = default;
  explicit Star(std::vector<std::string> wires);

  std::size_t size() const noexcept { return wires_.size(); }
  bool empty() const noexcept { return wires_.empty(); }
  const std::vector<std::string>& wires() const noexcept { return wires_; }
  const std::string& wire(std::size_t i) const { return wires_.at(i); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  std::vector<std::string> sorted_wires() const;

  // Set equality on wire names.
  friend bool operator==(const Star& a, const Star& b);

 private:
  std::vector<std::string> wires_;
};

Star make_star(std::vector<std::string> names);

std::string to_string(const Star& star);

}  // namespace wd
