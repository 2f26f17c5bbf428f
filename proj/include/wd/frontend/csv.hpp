#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wd/relation.hpp"

namespace wd::frontend {

// CSV dialect: comma separated, first line is the header, no quoting, values
// are atomic tokens with surrounding whitespace trimmed, blank lines ignored.
// The header must name exactly the wires of `star`, in any order. Duplicate
// rows collapse. Errors give the 1-based data row number.
Relation parse_csv_relation(std::string_view text, const TypedStar& star,
                            const std::string& source = "<csv>");
Relation load_csv_relation(const std::filesystem::path& path, const TypedStar& star);

// Header = wire names in star order; rows sorted by value (integers
// numerically, before text).
std::string format_csv(const Relation& r);
void write_csv(const std::filesystem::path& path, const Relation& r);

}  // namespace wd::frontend
