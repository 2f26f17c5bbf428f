#include "wd/frontend/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "wd/closed.hpp"
#include "wd/detail/union_find.hpp"
#include "wd/error.hpp"
#include "wd/frontend/csv.hpp"

namespace wd::frontend {

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) {
    throw Error(ErrorKind::kUnresolvedName, std::string("unknown ") + what + " '" + name + "'");
  }
  return it->second;
}

std::string at(const SourcePos& p) {
  return std::to_string(p.line) + ":" + std::to_string(p.column) + ": ";
}

}  // namespace

std::optional<std::size_t> find_literal(const ValueDomain& d, const Value& v) {
  if (auto i = d.index_of(v)) return i;
  return d.index_of_text(to_string(v));
}

CompiledQuery compile_query(const QueryDecl& q, const StarLookup& relation_star) {
  if (q.from.empty()) throw Error(ErrorKind::kInvalidArgument, "query has no FROM items");

  // One node per attribute occurrence, then one per constant star.
  std::vector<TypedStar> from_stars;
  std::map<std::string, std::size_t> alias_index;
  std::vector<std::size_t> base;
  std::vector<std::string> node_names;
  for (std::size_t k = 0; k < q.from.size(); ++k) {
    const auto& f = q.from[k];
    if (!alias_index.emplace(f.alias, k).second) {
      throw Error(ErrorKind::kInvalidArgument, "alias '" + f.alias + "' is used twice in FROM");
    }
    from_stars.push_back(relation_star(f.relation));
    base.push_back(node_names.size());
    for (const auto& w : from_stars.back().star().wires()) node_names.push_back(f.alias + "." + w);
  }
  const std::size_t occurrence_count = node_names.size();

  auto node_of = [&](const AttrRef& r) -> std::pair<std::size_t, const ValueDomain*> {
    auto it = alias_index.find(r.alias);
    if (it == alias_index.end()) {
      throw Error(ErrorKind::kUnresolvedName, "unknown alias '" + r.alias + "'");
    }
    const TypedStar& s = from_stars[it->second];
    auto j = s.star().index_of(r.attr);
    if (!j) {
      throw Error(ErrorKind::kUnresolvedName, "'" + q.from[it->second].relation +
                                                  "' has no attribute '" + r.attr + "'");
    }
    return {base[it->second] + *j, &s.type(*j)};
  };

  struct ConstantStar {
    ValueDomain domain;
    std::size_t index;
  };
  std::vector<ConstantStar> constants;
  std::vector<std::pair<std::size_t, std::size_t>> equalities;
  for (const auto& c : q.where) {
    auto [lhs, lhs_type] = node_of(c.lhs);
    if (!c.is_literal) {
      auto [rhs, rhs_type] = node_of(c.rhs_ref);
      if (!(*lhs_type == *rhs_type)) {
        throw Error(ErrorKind::kTypeMismatch,
                    "WHERE equates " + c.lhs.alias + "." + c.lhs.attr + " of type " +
                        lhs_type->name() + " with " + c.rhs_ref.alias + "." + c.rhs_ref.attr +
                        " of type " + rhs_type->name());
      }
      equalities.emplace_back(lhs, rhs);
      continue;
    }
    auto idx = find_literal(*lhs_type, c.rhs_literal);
    if (!idx) {
      throw Error(ErrorKind::kDomain, "constant " + to_string(c.rhs_literal) +
                                          " is not in domain " + lhs_type->name() + " of " +
                                          c.lhs.alias + "." + c.lhs.attr);
    }
    std::size_t k = 0;
    while (k < constants.size() &&
           !(constants[k].domain == *lhs_type && constants[k].index == *idx)) {
      ++k;
    }
    if (k == constants.size()) {
      constants.push_back({*lhs_type, *idx});
      node_names.push_back("const" + std::to_string(k + 1));
    }
    equalities.emplace_back(lhs, occurrence_count + k);
  }

  detail::UnionFind uf(node_names.size());
  for (auto [a, b] : equalities) uf.unite(a, b);
  std::size_t cable_count = 0;
  const auto cls = uf.dense_classes(&cable_count);
  std::vector<std::string> cable_names(cable_count);
  std::vector<ValueDomain> cable_types(cable_count);
  std::vector<bool> named(cable_count, false);
  for (std::size_t n = 0; n < node_names.size(); ++n) {
    if (named[cls[n]]) continue;
    named[cls[n]] = true;
    cable_names[cls[n]] = node_names[n];
  }
  for (std::size_t k = 0; k < from_stars.size(); ++k) {
    for (std::size_t j = 0; j < from_stars[k].size(); ++j) {
      cable_types[cls[base[k] + j]] = from_stars[k].type(j);
    }
  }

  std::vector<Star> inner;
  std::vector<TypedStar> inner_typed;
  std::vector<std::vector<std::size_t>> inner_solder;
  for (std::size_t k = 0; k < from_stars.size(); ++k) {
    inner.push_back(from_stars[k].star());
    inner_typed.push_back(from_stars[k]);
    std::vector<std::size_t> row;
    for (std::size_t j = 0; j < from_stars[k].size(); ++j) row.push_back(cls[base[k] + j]);
    inner_solder.push_back(std::move(row));
  }
  CompiledQuery out;
  for (std::size_t k = 0; k < constants.size(); ++k) {
    TypedStar s(make_star({"value"}), {constants[k].domain});
    inner.push_back(s.star());
    inner_typed.push_back(s);
    inner_solder.push_back({cls[occurrence_count + k]});
    out.constants.push_back(Relation(s, {{static_cast<std::uint32_t>(constants[k].index)}}));
  }

  std::vector<std::string> outer_wires;
  std::vector<ValueDomain> outer_types;
  std::vector<std::size_t> outer_solder;
  for (const auto& s : q.select) {
    auto [node, type] = node_of(s.ref);
    std::string wire = s.as.empty() ? s.ref.attr : s.as;
    for (const auto& w : outer_wires) {
      if (w == wire) {
        throw Error(ErrorKind::kDuplicateWire,
                    "SELECT produces column '" + wire + "' twice; rename one with AS");
      }
    }
    outer_wires.push_back(wire);
    outer_types.push_back(*type);
    outer_solder.push_back(cls[node]);
  }
  TypedStar outer(Star(outer_wires), std::move(outer_types));

  WiringDiagram wd(std::move(inner), outer.star(), std::move(cable_names), std::move(inner_solder),
                   std::move(outer_solder));
  out.diagram = typecheck_diagram(wd, std::move(inner_typed), outer, std::move(cable_types));
  for (const auto& f : q.from) out.inputs.push_back(f.relation);
  return out;
}

Workspace::Workspace(Script script, std::filesystem::path base_dir)
    : script_(std::move(script)), base_dir_(std::move(base_dir)) {
  for (std::size_t i = 0; i < script_.decls.size(); ++i) {
    try {
      declare(i);
    } catch (const Error& e) {
      const SourcePos pos = i < script_.positions.size() ? script_.positions[i] : SourcePos{};
      throw Error(e.kind(), at(pos) + e.what());
    }
  }
}

Workspace Workspace::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  Script s;
  try {
    s = parse_syntax(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ":" + e.what());
  }
  return Workspace(std::move(s), path.parent_path());
}

std::optional<Workspace::Kind> Workspace::kind_of(const std::string& name) const {
  if (relations_.count(name)) return Kind::kRelation;
  if (diagrams_.count(name)) return Kind::kDiagram;
  if (setups_.count(name)) return Kind::kSetup;
  if (stars_.count(name)) return Kind::kStar;
  if (domains_.count(name)) return Kind::kType;
  return std::nullopt;
}

const ValueDomain& Workspace::domain(const std::string& name) const {
  return lookup(domains_, name, "type");
}
const TypedStar& Workspace::star(const std::string& name) const {
  return lookup(stars_, name, "star");
}
const TypedWiringDiagram& Workspace::diagram(const std::string& name) const {
  return lookup(diagrams_, name, "diagram");
}
const TypedStar& Workspace::relation_star(const std::string& name) const {
  return lookup(relations_, name, "relation").star;
}
const CompiledQuery& Workspace::query(const std::string& name) const {
  return lookup(queries_, name, "query");
}

std::vector<std::string> Workspace::relation_names() const {
  std::vector<std::string> out;
  for (const auto& d : script_.decls) {
    if (relations_.count(decl_name(d)) && out.end() == std::find(out.begin(), out.end(), decl_name(d))) {
      out.push_back(decl_name(d));
    }
  }
  return out;
}

TypedStar Workspace::resolve(const StarExpr& e) const {
  if (!e.is_hom) return star(e.ret);
  std::vector<TypedStar> args;
  for (const auto& a : e.args) args.push_back(star(a));
  return internal_hom(args, star(e.ret));
}

void Workspace::check_application(const std::string& name,
                                  const std::vector<std::string>& args) const {
  const TypedWiringDiagram& d = diagram(name);
  if (args.size() != d.arity()) {
    throw Error(ErrorKind::kStarMismatch, "diagram '" + name + "' takes " +
                                              std::to_string(d.arity()) + " relations, got " +
                                              std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    const TypedStar& s = relation_star(args[i]);
    if (!(s == d.inner(i))) {
      throw Error(ErrorKind::kStarMismatch, "'" + args[i] + "' lives on " + to_string(s) +
                                                " but inner star " + std::to_string(i + 1) +
                                                " of '" + name + "' is " + to_string(d.inner(i)));
    }
  }
}

void Workspace::declare(std::size_t i) {
  const Decl& decl = script_.decls[i];
  const std::string& name = decl_name(decl);
  auto fresh = [&](const auto& m, const char* what) {
    if (m.count(name)) {
      throw Error(ErrorKind::kInvalidArgument, std::string(what) + " '" + name +
                                                   "' is declared twice");
    }
  };
  auto no_separator = [](const std::string& s, const char* what) {
    if (s.find(kTagSeparator) != std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument, std::string(what) + " '" + s + "' contains '" +
                                                   kTagSeparator + "'");
    }
  };

  if (const auto* d = std::get_if<TypeDecl>(&decl)) {
    fresh(domains_, "type");
    if (d->is_range) {
      if (d->hi < d->lo) {
        throw Error(ErrorKind::kDomain, "range " + std::to_string(d->lo) + ".." +
                                            std::to_string(d->hi) + " is empty; use {} instead");
      }
      if (d->hi - d->lo >= 10'000'000) {
        throw Error(ErrorKind::kBoundExceeded, "range type '" + name + "' is too large");
      }
      domains_.emplace(name, ValueDomain::range(name, d->lo, d->hi));
    } else {
      domains_.emplace(name, ValueDomain(name, d->values));
    }
  } else if (const auto* d = std::get_if<StarDecl>(&decl)) {
    fresh(stars_, "star");
    std::vector<std::string> wires;
    std::vector<ValueDomain> types;
    for (const auto& w : d->wires) {
      no_separator(w.wire, "wire name");
      wires.push_back(w.wire);
      types.push_back(domain(w.type));
    }
    stars_.emplace(name, TypedStar(Star(std::move(wires)), std::move(types)));
  } else if (const auto* d = std::get_if<RelDecl>(&decl)) {
    fresh(relations_, "relation");
    relations_.emplace(name, RelEntry{i, resolve(d->star)});
  } else if (const auto* d = std::get_if<ConstDecl>(&decl)) {
    fresh(relations_, "relation");
    const ValueDomain& dom = domain(d->type);
    if (!find_literal(dom, d->value)) {
      throw Error(ErrorKind::kDomain,
                  "constant " + to_string(d->value) + " is not in domain " + dom.name());
    }
    relations_.emplace(name, RelEntry{i, TypedStar(make_star({"value"}), {dom})});
  } else if (const auto* d = std::get_if<DiagramDecl>(&decl)) {
    fresh(diagrams_, "diagram");
    std::vector<TypedStar> inner;
    std::vector<Star> inner_plain;
    for (const auto& e : d->inner) {
      inner.push_back(resolve(e));
      inner_plain.push_back(inner.back().star());
    }
    TypedStar outer = resolve(d->outer);
    std::vector<std::string> cables;
    std::vector<ValueDomain> cable_types;
    for (const auto& c : d->cables) {
      for (const auto& n : c.names) {
        cables.push_back(n);
        cable_types.push_back(domain(c.type));
      }
    }
    std::vector<Solder> solders;
    for (const auto& s : d->solders) solders.push_back({s.star, s.wire, s.cable});
    WiringDiagram wd = make_diagram(inner_plain, outer.star(), cables, solders);
    diagrams_.emplace(name, typecheck_diagram(wd, std::move(inner), std::move(outer),
                                              std::move(cable_types)));
  } else if (const auto* d = std::get_if<QueryDecl>(&decl)) {
    fresh(relations_, "relation");
    for (const auto& s : d->select) {
      if (!s.as.empty()) no_separator(s.as, "output name");
    }
    CompiledQuery q = compile(*d);
    relations_.emplace(name, RelEntry{i, q.diagram.outer()});
    queries_.emplace(name, std::move(q));
  } else if (const auto* d = std::get_if<LetDecl>(&decl)) {
    fresh(relations_, "relation");
    check_application(d->diagram, d->args);
    relations_.emplace(name, RelEntry{i, diagram(d->diagram).outer()});
  } else if (const auto* d = std::get_if<SetupDecl>(&decl)) {
    fresh(setups_, "setup");
    check_application(d->diagram, d->args);
    const TypedStar& hom = diagram(d->diagram).outer();
    const TypedStar z = hom_ret(hom);
    const std::vector<TypedStar> args{z};
    if (!(internal_hom(args, z) == hom)) {
      throw Error(ErrorKind::kStarMismatch, "setup diagram '" + d->diagram +
                                                "' must land in a star [Z => Z], not " +
                                                to_string(hom));
    }
    setups_.emplace(name, Application{d->diagram, d->args});
  } else if (const auto* d = std::get_if<UnionDecl>(&decl)) {
    fresh(relations_, "relation");
    const TypedStar& first = relation_star(d->parts.front());
    for (const auto& p : d->parts) {
      if (!(relation_star(p) == first)) {
        throw Error(ErrorKind::kStarMismatch, "union '" + name + "' mixes " + to_string(first) +
                                                  " and " + to_string(relation_star(p)));
      }
    }
    relations_.emplace(name, RelEntry{i, first});
  }
}

CompiledQuery Workspace::compile(const QueryDecl& q) const {
  return compile_query(q, [this](const std::string& n) { return relation_star(n); });
}

Relation Workspace::run_query(const CompiledQuery& q) {
  std::vector<Relation> rels;
  for (const auto& n : q.inputs) rels.push_back(relation(n));
  rels.insert(rels.end(), q.constants.begin(), q.constants.end());
  return eval(q.diagram, rels);
}

Relation Workspace::apply(const std::string& name, const std::vector<std::string>& args) {
  check_application(name, args);
  std::vector<Relation> rels;
  for (const auto& a : args) rels.push_back(relation(a));
  return eval(diagram(name), rels);
}

Relation Workspace::relation(const std::string& name) {
  if (auto it = cache_.find(name); it != cache_.end()) return it->second;
  Relation r = compute(name);
  cache_.emplace(name, r);
  return r;
}

Relation Workspace::compute(const std::string& name) {
  const RelEntry& entry = lookup(relations_, name, "relation");
  const Decl& decl = script_.decls[entry.decl];
  if (const auto* d = std::get_if<RelDecl>(&decl)) {
    std::filesystem::path p(d->path);
    if (p.is_relative()) p = base_dir_ / p;
    return load_csv_relation(p, entry.star);
  }
  if (const auto* d = std::get_if<ConstDecl>(&decl)) {
    auto idx = find_literal(entry.star.type(0), d->value);
    return Relation(entry.star, {{static_cast<std::uint32_t>(*idx)}});
  }
  if (std::holds_alternative<QueryDecl>(decl)) return run_query(query(name));
  if (const auto* d = std::get_if<LetDecl>(&decl)) return apply(d->diagram, d->args);
  const auto& u = std::get<UnionDecl>(decl);
  Relation acc = relation(u.parts.front());
  for (std::size_t k = 1; k < u.parts.size(); ++k) acc = rel_union(acc, relation(u.parts[k]));
  return acc;
}

RecursiveSetup Workspace::setup(const std::string& name) {
  const Application& a = lookup(setups_, name, "setup");
  std::vector<Relation> rels;
  for (const auto& r : a.args) rels.push_back(relation(r));
  return build_setup(diagram(a.diagram), rels);
}

Script parse_script(std::string_view text) {
  Script s = parse_syntax(text);
  Workspace check(s);
  return s;
}

}  // namespace wd::frontend
