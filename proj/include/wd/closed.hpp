#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wd/relation.hpp"
#include "wd/star.hpp"
#include "wd/typed.hpp"
#include "wd/wiring_diagram.hpp"

namespace wd {

// Wires of an internal hom [(Y_1..Y_n) => Z] are tagged copies "arg<i>.w"
// (i counted from 1) and "ret.z". User-facing wire names may not contain the
// separator; the script parser enforces this.
inline constexpr char kTagSeparator = '.';

std::string arg_tag(std::size_t i, const std::string& wire);
std::string ret_tag(const std::string& wire);

// The coproduct Y_1 + ... + Y_n + Z with tagged wire names.
Star internal_hom(std::span<const Star> args, const Star& ret);
TypedStar internal_hom(std::span<const TypedStar> args, const TypedStar& ret);

// The ret-part of a hom star, with tags stripped.
TypedStar hom_ret(const TypedStar& hom);
// The part tagged arg<i> (1-based), with tags stripped.
TypedStar hom_arg(const TypedStar& hom, std::size_t i);

// ev : [(Y_1..Y_n) => Z], Y_1, ..., Y_n -> Z. Cables are the wires of the Y_i
// and of Z; arg<i>.w and wire w of Y_i share a cable (the fold map), and so do
// ret.z and the outer wire z.
WiringDiagram evaluation_diagram(std::span<const Star> args, const Star& ret);
TypedWiringDiagram evaluation_diagram(std::span<const TypedStar> args, const TypedStar& ret);

// phi : X_1..X_m -> [(Y_1..Y_n) => Z]  becomes  X_1..X_m, Y_1..Y_n -> Z.
WiringDiagram externalize(const WiringDiagram& phi, std::span<const Star> args, const Star& ret);
TypedWiringDiagram externalize(const TypedWiringDiagram& phi, std::span<const TypedStar> args,
                               const TypedStar& ret);

// psi : X_1..X_m, Y_1..Y_n -> Z  becomes  X_1..X_m -> [(Y_1..Y_n) => Z], where
// the first m inner stars of psi are the X part.
WiringDiagram internalize(const WiringDiagram& psi, std::size_t m);
TypedWiringDiagram internalize(const TypedWiringDiagram& psi, std::size_t m);

// The closing transformation of Rel: eval(ev, [s, args...]). The return star
// is read off the ret-tagged wires of s.
Relation apply_hom(const Relation& s, std::span<const Relation> args);

}  // namespace wd
