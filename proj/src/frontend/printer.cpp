#include <sstream>

#include "wd/frontend/script.hpp"

namespace wd::frontend {

namespace {

std::string quoted(const std::string& s) {
  char q = s.find('\'') == std::string::npos ? '\'' : '"';
  return q + s + q;
}

// Integers bare; text as a bare identifier when allowed and possible.
std::string literal(const Value& v, bool allow_ident) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  const auto& s = std::get<std::string>(v);
  return allow_ident && is_identifier(s) ? s : quoted(s);
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i != 0) out += sep;
    out += xs[i];
  }
  return out;
}

std::string star_expr(const StarExpr& e) {
  if (!e.is_hom) return e.ret;
  if (e.args.size() == 1) return "[" + e.args[0] + " => " + e.ret + "]";
  return "[(" + join(e.args, ", ") + ") => " + e.ret + "]";
}

std::string ref(const AttrRef& r) { return r.alias + "." + r.attr; }

struct Printer {
  std::string operator()(const TypeDecl& d) const {
    if (d.is_range) {
      return "type " + d.name + " = range " + std::to_string(d.lo) + ".." + std::to_string(d.hi);
    }
    std::vector<std::string> vals;
    for (const auto& v : d.values) vals.push_back(literal(v, true));
    return "type " + d.name + " = {" + join(vals, ", ") + "}";
  }
  std::string operator()(const StarDecl& d) const {
    std::vector<std::string> wires;
    for (const auto& w : d.wires) wires.push_back(w.wire + ": " + w.type);
    return "star " + d.name + "(" + join(wires, ", ") + ")";
  }
  std::string operator()(const RelDecl& d) const {
    return "rel " + d.name + " : " + star_expr(d.star) + " from " + quoted(d.path);
  }
  std::string operator()(const ConstDecl& d) const {
    return "const " + d.name + " : " + d.type + " = " + literal(d.value, false);
  }
  std::string operator()(const DiagramDecl& d) const {
    std::vector<std::string> inner;
    for (const auto& e : d.inner) inner.push_back(star_expr(e));
    std::ostringstream os;
    os << "diagram " << d.name << "(" << join(inner, ", ") << ") -> " << star_expr(d.outer)
       << " {\n";
    for (const auto& c : d.cables) os << "  cable " << join(c.names, ", ") << " : " << c.type << ";\n";
    for (const auto& s : d.solders) {
      os << "  solder " << (s.star == kOuter ? std::string("out") : "in" + std::to_string(s.star + 1))
         << "." << s.wire << " -> " << s.cable << ";\n";
    }
    os << "}";
    return os.str();
  }
  std::string operator()(const QueryDecl& d) const {
    return "query " + d.name + " = " + print_query_body(d);
  }
  std::string operator()(const LetDecl& d) const {
    return "let " + d.name + " = " + d.diagram + "(" + join(d.args, ", ") + ")";
  }
  std::string operator()(const SetupDecl& d) const {
    return "setup " + d.name + " = " + d.diagram + "(" + join(d.args, ", ") + ")";
  }
  std::string operator()(const UnionDecl& d) const {
    return "union " + d.name + " = " + join(d.parts, " | ");
  }
};

}  // namespace

std::string print_query_body(const QueryDecl& q) {
  std::vector<std::string> sel, from, where;
  for (const auto& s : q.select) sel.push_back(s.as.empty() ? ref(s.ref) : ref(s.ref) + " AS " + s.as);
  for (const auto& f : q.from) {
    from.push_back(f.alias == f.relation ? f.relation : f.relation + " " + f.alias);
  }
  for (const auto& c : q.where) {
    where.push_back(ref(c.lhs) + " = " + (c.is_literal ? literal(c.rhs_literal, false) : ref(c.rhs_ref)));
  }
  std::string out = "SELECT " + join(sel, ", ") + " FROM " + join(from, ", ");
  if (!where.empty()) out += " WHERE " + join(where, " AND ");
  return out;
}

std::string print_decl(const Decl& d) { return std::visit(Printer{}, d); }

std::string print_script(const Script& s) {
  std::string out;
  for (const auto& d : s.decls) out += print_decl(d) + "\n";
  return out;
}

}  // namespace wd::frontend
