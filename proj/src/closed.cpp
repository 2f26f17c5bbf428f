#include "wd/closed.hpp"

#include "wd/error.hpp"

namespace wd {

namespace {

const std::string kRet = "ret";

std::string arg_prefix(std::size_t i) { return "arg" + std::to_string(i) + kTagSeparator; }

TypedStar strip_prefix(const TypedStar& hom, const std::string& prefix) {
  std::vector<std::string> wires;
  std::vector<ValueDomain> types;
  for (std::size_t j = 0; j < hom.size(); ++j) {
    const std::string& w = hom.wire(j);
    if (w.compare(0, prefix.size(), prefix) == 0) {
      wires.push_back(w.substr(prefix.size()));
      types.push_back(hom.type(j));
    }
  }
  return TypedStar(Star(std::move(wires)), std::move(types));
}

void check_split(const WiringDiagram& psi, std::size_t m) {
  if (m > psi.arity()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot split " + std::to_string(psi.arity()) +
                                                 " inner stars after position " +
                                                 std::to_string(m));
  }
}

}  // namespace

std::string arg_tag(std::size_t i, const std::string& wire) { return arg_prefix(i) + wire; }

std::string ret_tag(const std::string& wire) { return kRet + kTagSeparator + wire; }

Star internal_hom(std::span<const Star> args, const Star& ret) {
  std::vector<std::string> wires;
  for (std::size_t i = 0; i < args.size(); ++i) {
    for (const auto& w : args[i].wires()) wires.push_back(arg_tag(i + 1, w));
  }
  for (const auto& z : ret.wires()) wires.push_back(ret_tag(z));
  return Star(std::move(wires));
}

TypedStar internal_hom(std::span<const TypedStar> args, const TypedStar& ret) {
  std::vector<Star> stars;
  std::vector<ValueDomain> types;
  for (const auto& a : args) {
    stars.push_back(a.star());
    types.insert(types.end(), a.types().begin(), a.types().end());
  }
  types.insert(types.end(), ret.types().begin(), ret.types().end());
  return TypedStar(internal_hom(stars, ret.star()), std::move(types));
}

TypedStar hom_ret(const TypedStar& hom) { return strip_prefix(hom, kRet + kTagSeparator); }

TypedStar hom_arg(const TypedStar& hom, std::size_t i) { return strip_prefix(hom, arg_prefix(i)); }

WiringDiagram evaluation_diagram(std::span<const Star> args, const Star& ret) {
  const Star hom = internal_hom(args, ret);
  std::vector<Star> inner{hom};
  inner.insert(inner.end(), args.begin(), args.end());

  // Cable names coincide with the hom wires, which list the arg wires and
  // then the ret wires in order, so hom wire j sits on cable j.
  std::vector<std::string> cables = hom.wires();
  std::vector<std::vector<std::size_t>> inner_solder(inner.size());
  for (std::size_t j = 0; j < hom.size(); ++j) inner_solder[0].push_back(j);
  std::size_t next = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    for (std::size_t j = 0; j < args[i].size(); ++j) inner_solder[i + 1].push_back(next++);
  }
  std::vector<std::size_t> outer_solder;
  for (std::size_t j = 0; j < ret.size(); ++j) outer_solder.push_back(next++);
  return WiringDiagram(std::move(inner), ret, std::move(cables), std::move(inner_solder),
                       std::move(outer_solder));
}

TypedWiringDiagram evaluation_diagram(std::span<const TypedStar> args, const TypedStar& ret) {
  std::vector<Star> stars;
  for (const auto& a : args) stars.push_back(a.star());
  WiringDiagram wd = evaluation_diagram(stars, ret.star());
  TypedStar hom = internal_hom(args, ret);
  std::vector<TypedStar> inner{hom};
  inner.insert(inner.end(), args.begin(), args.end());
  return typecheck_diagram(wd, std::move(inner), ret, hom.types());
}

WiringDiagram externalize(const WiringDiagram& phi, std::span<const Star> args, const Star& ret) {
  const Star hom = internal_hom(args, ret);
  if (!(phi.outer() == hom)) {
    throw Error(ErrorKind::kInterfaceMismatch, "codomain " + to_string(phi.outer()) +
                                                   " is not the internal hom " + to_string(hom));
  }
  std::vector<Star> inner = phi.inner();
  auto inner_solder = phi.inner_solder();
  for (std::size_t i = 0; i < args.size(); ++i) {
    inner.push_back(args[i]);
    std::vector<std::size_t> row;
    for (const auto& w : args[i].wires()) {
      row.push_back(phi.outer_cable(*phi.outer().index_of(arg_tag(i + 1, w))));
    }
    inner_solder.push_back(std::move(row));
  }
  std::vector<std::size_t> outer_solder;
  for (const auto& z : ret.wires()) {
    outer_solder.push_back(phi.outer_cable(*phi.outer().index_of(ret_tag(z))));
  }
  return WiringDiagram(std::move(inner), ret, phi.cable_names(), std::move(inner_solder),
                       std::move(outer_solder));
}

TypedWiringDiagram externalize(const TypedWiringDiagram& phi, std::span<const TypedStar> args,
                               const TypedStar& ret) {
  const TypedStar hom = internal_hom(args, ret);
  if (!(phi.outer() == hom)) {
    throw Error(ErrorKind::kInterfaceMismatch, "codomain " + to_string(phi.outer()) +
                                                   " is not the internal hom " + to_string(hom));
  }
  std::vector<Star> stars;
  for (const auto& a : args) stars.push_back(a.star());
  WiringDiagram wd = externalize(phi.diagram(), stars, ret.star());
  std::vector<TypedStar> inner = phi.inner();
  inner.insert(inner.end(), args.begin(), args.end());
  return typecheck_diagram(wd, std::move(inner), ret, phi.cable_types());
}

WiringDiagram internalize(const WiringDiagram& psi, std::size_t m) {
  check_split(psi, m);
  std::vector<Star> xs(psi.inner().begin(), psi.inner().begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<Star> ys(psi.inner().begin() + static_cast<std::ptrdiff_t>(m), psi.inner().end());
  std::vector<std::vector<std::size_t>> inner_solder(
      psi.inner_solder().begin(), psi.inner_solder().begin() + static_cast<std::ptrdiff_t>(m));
  // internal_hom lists arg wires star by star, then ret wires, matching the
  // order in which solder entries are appended here.
  std::vector<std::size_t> outer_solder;
  for (std::size_t i = m; i < psi.arity(); ++i) {
    for (std::size_t j = 0; j < psi.inner(i).size(); ++j) {
      outer_solder.push_back(psi.inner_cable(i, j));
    }
  }
  outer_solder.insert(outer_solder.end(), psi.outer_solder().begin(), psi.outer_solder().end());
  return WiringDiagram(std::move(xs), internal_hom(ys, psi.outer()), psi.cable_names(),
                       std::move(inner_solder), std::move(outer_solder));
}

TypedWiringDiagram internalize(const TypedWiringDiagram& psi, std::size_t m) {
  check_split(psi.diagram(), m);
  WiringDiagram wd = internalize(psi.diagram(), m);
  std::vector<TypedStar> xs(psi.inner().begin(),
                            psi.inner().begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<TypedStar> ys(psi.inner().begin() + static_cast<std::ptrdiff_t>(m),
                            psi.inner().end());
  return typecheck_diagram(wd, std::move(xs), internal_hom(ys, psi.outer()), psi.cable_types());
}

Relation apply_hom(const Relation& s, std::span<const Relation> args) {
  std::vector<TypedStar> arg_stars;
  for (const auto& r : args) arg_stars.push_back(r.star());
  const TypedStar ret = hom_ret(s.star());
  const TypedStar expected = internal_hom(arg_stars, ret);
  if (!(expected == s.star())) {
    throw Error(ErrorKind::kStarMismatch, "relation on " + to_string(s.star()) +
                                              " does not match the internal hom " +
                                              to_string(expected) + " of the given arguments");
  }
  std::vector<Relation> all{s.aligned_to(expected)};
  all.insert(all.end(), args.begin(), args.end());
  return eval(evaluation_diagram(arg_stars, ret), all);
}

}  // namespace wd
