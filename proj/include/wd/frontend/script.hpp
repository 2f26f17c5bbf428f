#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wd/typed.hpp"
#include "wd/wiring_diagram.hpp"

namespace wd::frontend {

// Syntax tree of a .wd script. Nodes carry no source positions so that
// trees compare equal across a print/parse round trip; Script keeps the
// position of each declaration separately.

struct TypeDecl {
  std::string name;
  bool is_range = false;
  std::int64_t lo = 0, hi = -1;  // is_range
  std::vector<Value> values;     // !is_range
  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct WireDecl {
  std::string wire;
  std::string type;
  friend bool operator==(const WireDecl&, const WireDecl&) = default;
};

struct StarDecl {
  std::string name;
  std::vector<WireDecl> wires;
  friend bool operator==(const StarDecl&, const StarDecl&) = default;
};

// Either a declared star name, or an internal hom [(args...) => ret] over
// declared star names.
struct StarExpr {
  bool is_hom = false;
  std::vector<std::string> args;
  std::string ret;  // the star name when !is_hom
  friend bool operator==(const StarExpr&, const StarExpr&) = default;
};

struct RelDecl {
  std::string name;
  StarExpr star;
  std::string path;
  friend bool operator==(const RelDecl&, const RelDecl&) = default;
};

// A one-row relation on the star {value: type}.
struct ConstDecl {
  std::string name;
  std::string type;
  Value value;
  friend bool operator==(const ConstDecl&, const ConstDecl&) = default;
};

struct CableDecl {
  std::vector<std::string> names;
  std::string type;
  friend bool operator==(const CableDecl&, const CableDecl&) = default;
};

struct SolderDecl {
  std::size_t star = kOuter;  // 0-based inner star, or kOuter
  std::string wire;
  std::string cable;
  friend bool operator==(const SolderDecl&, const SolderDecl&) = default;
};

struct DiagramDecl {
  std::string name;
  std::vector<StarExpr> inner;
  StarExpr outer;
  std::vector<CableDecl> cables;
  std::vector<SolderDecl> solders;
  friend bool operator==(const DiagramDecl&, const DiagramDecl&) = default;
};

struct AttrRef {
  std::string alias;
  std::string attr;
  friend bool operator==(const AttrRef&, const AttrRef&) = default;
};

struct SelectItem {
  AttrRef ref;
  std::string as;  // empty: output wire named after the attribute
  friend bool operator==(const SelectItem&, const SelectItem&) = default;
};

struct FromItem {
  std::string relation;
  std::string alias;
  friend bool operator==(const FromItem&, const FromItem&) = default;
};

// lhs = rhs_ref, or lhs = rhs_literal when is_literal.
struct Condition {
  AttrRef lhs;
  bool is_literal = false;
  AttrRef rhs_ref;
  Value rhs_literal;
  friend bool operator==(const Condition&, const Condition&) = default;
};

struct QueryDecl {
  std::string name;
  std::vector<SelectItem> select;
  std::vector<FromItem> from;
  std::vector<Condition> where;
  friend bool operator==(const QueryDecl&, const QueryDecl&) = default;
};

// Relation-valued application of a diagram to named relations.
struct LetDecl {
  std::string name;
  std::string diagram;
  std::vector<std::string> args;
  friend bool operator==(const LetDecl&, const LetDecl&) = default;
};

// A recursive setup: a diagram into [Z => Z] applied to named relations.
struct SetupDecl {
  std::string name;
  std::string diagram;
  std::vector<std::string> args;
  friend bool operator==(const SetupDecl&, const SetupDecl&) = default;
};

struct UnionDecl {
  std::string name;
  std::vector<std::string> parts;
  friend bool operator==(const UnionDecl&, const UnionDecl&) = default;
};

using Decl = std::variant<TypeDecl, StarDecl, RelDecl, ConstDecl, DiagramDecl, QueryDecl, LetDecl,
                          SetupDecl, UnionDecl>;

const std::string& decl_name(const Decl& d);

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Script {
  std::vector<Decl> decls;
  std::vector<SourcePos> positions;  // positions[i] is where decls[i] starts

  friend bool operator==(const Script& a, const Script& b) { return a.decls == b.decls; }
};

// Syntax only: lexical and grammatical errors (kParse) with line:column.
Script parse_syntax(std::string_view text);

// parse_syntax followed by name resolution and type checking of everything
// that does not need file access (CSV contents are read on demand by
// Workspace).
Script parse_script(std::string_view text);

// A bare "SELECT ... FROM ... [WHERE ...]" expression.
QueryDecl parse_query(std::string_view text);

std::string print_decl(const Decl& d);
std::string print_script(const Script& s);
std::string print_query_body(const QueryDecl& q);

// Letters, digits, '_' and '\'' (not first); no '.'.
bool is_identifier(std::string_view s);

}  // namespace wd::frontend
