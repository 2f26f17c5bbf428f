#include <cctype>
#include <algorithm>
#include <charconv>
#include <tuple>

#include "wd/error.hpp"
#include "wd/frontend/script.hpp"

namespace wd::frontend {

namespace {

enum class Tok { kIdent, kInt, kString, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::int64_t number = 0;
  SourcePos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

[[noreturn]] void fail(SourcePos pos, const std::string& msg) {
  throw Error(ErrorKind::kParse,
              std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + msg);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = {line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::kInt;
      t.text = std::string(src.substr(i, j - i));
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      if (ec != std::errc()) fail(t.pos, "integer literal out of range: " + t.text);
      advance(j - i);
    } else if (c == '\'' || c == '"') {
      std::size_t j = src.find(c, i + 1);
      if (j == std::string_view::npos) fail(t.pos, "unterminated string literal");
      std::string_view body = src.substr(i + 1, j - i - 1);
      if (body.find('\n') != std::string_view::npos) fail(t.pos, "newline in string literal");
      t.kind = Tok::kString;
      t.text = std::string(body);
      advance(j + 1 - i);
    } else {
      static const char* const kPuncts[] = {"->", "=>", "..", "(", ")", "{", "}", "[",
                                            "]",  ",",  ":",  ";", "=", "|", "."};
      bool matched = false;
      for (const char* p : kPuncts) {
        std::string_view pv(p);
        if (src.substr(i, pv.size()) == pv) {
          t.kind = Tok::kPunct;
          t.text = std::string(pv);
          advance(pv.size());
          matched = true;
          break;
        }
      }
      if (!matched) fail(t.pos, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) !=
        std::toupper(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool is_decl_keyword(std::string_view s) {
  return s == "type" || s == "star" || s == "rel" || s == "const" || s == "diagram" ||
         s == "query" || s == "let" || s == "setup" || s == "union";
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEnd:
      return "end of input";
    case Tok::kString:
      return "string '" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Script script() {
    Script s;
    while (!at_end()) {
      if (accept(";")) continue;
      s.positions.push_back(peek().pos);
      s.decls.push_back(decl());
      accept(";");
    }
    return s;
  }

  QueryDecl bare_query() {
    QueryDecl q = query_body("");
    accept(";");
    if (!at_end()) fail(peek().pos, "unexpected " + describe(peek()) + " after query");
    return q;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::kEnd; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Tok::kPunct && peek(k).text == p;
  }
  bool is_keyword(std::string_view kw, std::size_t k = 0) const {
    return peek(k).kind == Tok::kIdent && iequals(peek(k).text, kw);
  }
  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail(peek().pos, "expected '" + std::string(p) + "' but found " +
                                         describe(peek()));
  }
  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw)) fail(peek().pos, "expected " + std::string(kw) + " but found " +
                                              describe(peek()));
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::kIdent) {
      fail(peek().pos, std::string("expected ") + what + " but found " + describe(peek()));
    }
    return next().text;
  }
  std::vector<std::string> ident_list(const char* what) {
    std::vector<std::string> out{ident(what)};
    while (accept(",")) out.push_back(ident(what));
    return out;
  }

  Value literal(bool allow_ident) {
    const Token& t = peek();
    if (t.kind == Tok::kInt) return next().number;
    if (t.kind == Tok::kString || (allow_ident && t.kind == Tok::kIdent)) return next().text;
    fail(t.pos, "expected a literal but found " + describe(t));
  }

  Decl decl() {
    const Token& kw = peek();
    if (kw.kind != Tok::kIdent || !is_decl_keyword(kw.text)) {
      fail(kw.pos, "expected a declaration but found " + describe(kw));
    }
    std::string k = next().text;
    if (k == "type") return type_decl();
    if (k == "star") return star_decl();
    if (k == "rel") return rel_decl();
    if (k == "const") return const_decl();
    if (k == "diagram") return diagram_decl();
    if (k == "query") {
      std::string name = ident("query name");
      expect("=");
      return query_body(std::move(name));
    }
    if (k == "let") {
      LetDecl d;
      std::tie(d.name, d.diagram, d.args) = application();
      return d;
    }
    if (k == "setup") {
      SetupDecl d;
      std::tie(d.name, d.diagram, d.args) = application();
      return d;
    }
    UnionDecl d;
    d.name = ident("union name");
    expect("=");
    d.parts.push_back(ident("relation name"));
    while (accept("|")) d.parts.push_back(ident("relation name"));
    return d;
  }

  TypeDecl type_decl() {
    TypeDecl d;
    d.name = ident("type name");
    expect("=");
    if (is_keyword("range") && peek().text == "range") {
      next();
      d.is_range = true;
      if (peek().kind != Tok::kInt) fail(peek().pos, "expected integer after range");
      d.lo = next().number;
      expect("..");
      if (peek().kind != Tok::kInt) fail(peek().pos, "expected integer after '..'");
      d.hi = next().number;
      return d;
    }
    expect("{");
    if (!is_punct("}")) {
      d.values.push_back(literal(true));
      while (accept(",")) d.values.push_back(literal(true));
    }
    expect("}");
    return d;
  }

  StarDecl star_decl() {
    StarDecl d;
    d.name = ident("star name");
    expect("(");
    if (!is_punct(")")) {
      do {
        WireDecl w;
        w.wire = ident("wire name");
        expect(":");
        w.type = ident("type name");
        d.wires.push_back(std::move(w));
      } while (accept(","));
    }
    expect(")");
    return d;
  }

  StarExpr star_expr() {
    StarExpr e;
    if (!accept("[")) {
      e.ret = ident("star name");
      return e;
    }
    e.is_hom = true;
    if (accept("(")) {
      if (!is_punct(")")) e.args = ident_list("star name");
      expect(")");
    } else {
      e.args.push_back(ident("star name"));
    }
    expect("=>");
    e.ret = ident("star name");
    expect("]");
    return e;
  }

  RelDecl rel_decl() {
    RelDecl d;
    d.name = ident("relation name");
    expect(":");
    d.star = star_expr();
    if (!(peek().kind == Tok::kIdent && peek().text == "from")) {
      fail(peek().pos, "expected from but found " + describe(peek()));
    }
    next();
    if (peek().kind != Tok::kString) fail(peek().pos, "expected a quoted CSV path");
    d.path = next().text;
    return d;
  }

  ConstDecl const_decl() {
    ConstDecl d;
    d.name = ident("constant name");
    expect(":");
    d.type = ident("type name");
    expect("=");
    d.value = literal(true);
    return d;
  }

  DiagramDecl diagram_decl() {
    DiagramDecl d;
    d.name = ident("diagram name");
    expect("(");
    if (!is_punct(")")) {
      d.inner.push_back(star_expr());
      while (accept(",")) d.inner.push_back(star_expr());
    }
    expect(")");
    expect("->");
    d.outer = star_expr();
    expect("{");
    while (!accept("}")) {
      if (at_end()) fail(peek().pos, "unterminated diagram body");
      std::string kw = ident("cable or solder");
      if (kw == "cable") {
        CableDecl c;
        c.names = ident_list("cable name");
        expect(":");
        c.type = ident("type name");
        d.cables.push_back(std::move(c));
      } else if (kw == "solder") {
        d.solders.push_back(solder());
      } else {
        fail(toks_[pos_ - 1].pos, "expected cable or solder but found '" + kw + "'");
      }
      expect(";");
    }
    return d;
  }

  SolderDecl solder() {
    SolderDecl s;
    const Token& target = peek();
    std::string side = ident("in<k> or out");
    if (side == "out") {
      s.star = kOuter;
    } else if (side.size() > 2 && side.compare(0, 2, "in") == 0 &&
               side.find_first_not_of("0123456789", 2) == std::string::npos) {
      std::size_t k = std::stoul(side.substr(2));
      if (k == 0) fail(target.pos, "inner stars are numbered from in1");
      s.star = k - 1;
    } else {
      fail(target.pos, "expected in<k> or out but found '" + side + "'");
    }
    expect(".");
    s.wire = ident("wire name");
    while (accept(".")) s.wire += "." + ident("wire name");
    expect("->");
    s.cable = ident("cable name");
    return s;
  }

  std::tuple<std::string, std::string, std::vector<std::string>> application() {
    std::string name = ident("name");
    expect("=");
    std::string diagram = ident("diagram name");
    expect("(");
    std::vector<std::string> args;
    if (!is_punct(")")) args = ident_list("relation name");
    expect(")");
    return {std::move(name), std::move(diagram), std::move(args)};
  }

  AttrRef attr_ref() {
    AttrRef r;
    r.alias = ident("alias");
    expect(".");
    r.attr = ident("attribute");
    return r;
  }

  bool at_ref() const { return peek().kind == Tok::kIdent && is_punct(".", 1); }

  QueryDecl query_body(std::string name) {
    QueryDecl q;
    q.name = std::move(name);
    expect_keyword("SELECT");
    do {
      SelectItem item;
      item.ref = attr_ref();
      if (is_keyword("AS")) {
        next();
        item.as = ident("output name");
      }
      q.select.push_back(std::move(item));
    } while (accept(","));
    expect_keyword("FROM");
    do {
      FromItem f;
      f.relation = ident("relation name");
      f.alias = f.relation;
      if (peek().kind == Tok::kIdent && !is_keyword("WHERE") && !is_decl_keyword(peek().text)) {
        f.alias = next().text;
      }
      q.from.push_back(std::move(f));
    } while (accept(","));
    if (is_keyword("WHERE")) {
      next();
      do {
        q.where.push_back(condition());
      } while (is_keyword("AND") && (next(), true));
    }
    return q;
  }

  Condition condition() {
    Condition c;
    const Token& start = peek();
    if (at_ref()) {
      c.lhs = attr_ref();
      expect("=");
      if (at_ref()) {
        c.rhs_ref = attr_ref();
      } else {
        c.is_literal = true;
        c.rhs_literal = literal(false);
      }
      return c;
    }
    if (peek().kind != Tok::kInt && peek().kind != Tok::kString) {
      fail(start.pos, "expected alias.attribute or a literal but found " + describe(start));
    }
    c.is_literal = true;
    c.rhs_literal = literal(false);
    expect("=");
    if (!at_ref()) fail(peek().pos, "a condition needs at least one alias.attribute");
    c.lhs = attr_ref();
    return c;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s) {
    if (!ident_char(c)) return false;
  }
  return true;
}

const std::string& decl_name(const Decl& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

Script parse_syntax(std::string_view text) { return Parser(text).script(); }

QueryDecl parse_query(std::string_view text) { return Parser(text).bare_query(); }

}  // namespace wd::frontend
