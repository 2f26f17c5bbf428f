#pragma once

#include <string>

#include "wd/typed.hpp"
#include "wd/wiring_diagram.hpp"

namespace wd::frontend {

// Graphviz text for the canonical form of wd: one cluster per inner star
// holding its wires, outer wires as boxes, cables as circles, and an edge per
// soldering. Equal diagrams give byte-identical output.
std::string emit_dot(const WiringDiagram& wd, const std::string& name = "wd");
std::string emit_dot(const TypedWiringDiagram& twd, const std::string& name = "wd");

}  // namespace wd::frontend
