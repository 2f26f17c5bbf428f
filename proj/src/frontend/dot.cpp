#include "wd/frontend/dot.hpp"

#include <sstream>

namespace wd::frontend {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string render(const WiringDiagram& wd, const std::vector<std::string>& cable_labels,
                   const std::string& name) {
  std::ostringstream os;
  os << "graph " << quote(name) << " {\n";
  os << "  rankdir=LR;\n";
  for (std::size_t i = 0; i < wd.arity(); ++i) {
    const std::string tag = "in" + std::to_string(i + 1);
    os << "  subgraph " << quote("cluster_" + tag) << " {\n";
    os << "    label=" << quote(tag) << ";\n";
    for (const auto& w : wd.inner(i).sorted_wires()) {
      os << "    " << quote(tag + "." + w) << " [label=" << quote(w) << ", shape=point, xlabel="
         << quote(w) << "];\n";
    }
    os << "  }\n";
  }
  for (const auto& w : wd.outer().sorted_wires()) {
    os << "  " << quote("out." + w) << " [label=" << quote(w) << ", shape=box];\n";
  }
  for (std::size_t c = 0; c < wd.cable_count(); ++c) {
    os << "  " << quote("cable." + wd.cable_names()[c]) << " [label=" << quote(cable_labels[c])
       << ", shape=circle];\n";
  }
  for (std::size_t i = 0; i < wd.arity(); ++i) {
    const std::string tag = "in" + std::to_string(i + 1);
    for (const auto& w : wd.inner(i).sorted_wires()) {
      os << "  " << quote(tag + "." + w) << " -- "
         << quote("cable." + wd.cable_names()[wd.inner_cable(i, *wd.inner(i).index_of(w))])
         << ";\n";
    }
  }
  for (const auto& w : wd.outer().sorted_wires()) {
    os << "  " << quote("out." + w) << " -- "
       << quote("cable." + wd.cable_names()[wd.outer_cable(*wd.outer().index_of(w))]) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace

std::string emit_dot(const WiringDiagram& wd, const std::string& name) {
  WiringDiagram c = canonicalize(wd);
  return render(c, c.cable_names(), name);
}

std::string emit_dot(const TypedWiringDiagram& twd, const std::string& name) {
  TypedWiringDiagram c = typed_canonicalize(twd);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < c.cable_count(); ++k) {
    labels.push_back(c.diagram().cable_names()[k] + " : " + c.cable_type(k).name());
  }
  return render(c.diagram(), labels, name);
}

}  // namespace wd::frontend
