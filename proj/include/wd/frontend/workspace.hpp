#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wd/frontend/script.hpp"
#include "wd/recursion.hpp"
#include "wd/relation.hpp"
#include "wd/typed.hpp"

namespace wd::frontend {

// A conjunctive query as a typed wiring diagram. Inner stars are the FROM
// aliases in order, followed by one star {value} per distinct constant.
struct CompiledQuery {
  TypedWiringDiagram diagram;
  std::vector<std::string> inputs;  // relation name for each FROM alias
  std::vector<Relation> constants;  // one-row relations for the constant stars
};

using StarLookup = std::function<TypedStar(const std::string&)>;

// Cables are the attribute occurrences modulo the WHERE equalities; each
// cable is named after the first occurrence in its class ("alias.attr").
CompiledQuery compile_query(const QueryDecl& q, const StarLookup& relation_star);

// Finds v in d by value, falling back to its printed form ('3' matches 3).
std::optional<std::size_t> find_literal(const ValueDomain& d, const Value& v);

// A resolved script. Construction checks every declaration in order
// (declaration before use) without touching the file system; relations are
// loaded or computed on first use and cached.
class Workspace {
 public:
  enum class Kind { kType, kStar, kRelation, kDiagram, kSetup };

  explicit Workspace(Script script, std::filesystem::path base_dir = {});
  // Parses the file; CSV paths are resolved relative to its directory.
  static Workspace from_file(const std::filesystem::path& path);

  const Script& script() const noexcept { return script_; }
  std::optional<Kind> kind_of(const std::string& name) const;

  const ValueDomain& domain(const std::string& name) const;
  const TypedStar& star(const std::string& name) const;
  const TypedWiringDiagram& diagram(const std::string& name) const;
  const TypedStar& relation_star(const std::string& name) const;
  const CompiledQuery& query(const std::string& name) const;

  Relation relation(const std::string& name);
  Relation apply(const std::string& diagram, const std::vector<std::string>& args);
  Relation run_query(const CompiledQuery& q);
  CompiledQuery compile(const QueryDecl& q) const;
  RecursiveSetup setup(const std::string& name);

  std::vector<std::string> relation_names() const;

 private:
  struct RelEntry {
    std::size_t decl;
    TypedStar star;
  };
  struct Application {
    std::string diagram;
    std::vector<std::string> args;
  };

  void declare(std::size_t i);
  TypedStar resolve(const StarExpr& e) const;
  void check_application(const std::string& diagram, const std::vector<std::string>& args) const;
  Relation compute(const std::string& name);

  Script script_;
  std::filesystem::path base_dir_;
  std::map<std::string, ValueDomain> domains_;
  std::map<std::string, TypedStar> stars_;
  std::map<std::string, TypedWiringDiagram> diagrams_;
  std::map<std::string, RelEntry> relations_;
  std::map<std::string, CompiledQuery> queries_;
  std::map<std::string, Application> setups_;
  std::map<std::string, Relation> cache_;
};

}  // namespace wd::frontend
