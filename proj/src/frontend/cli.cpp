#include "wd/frontend/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "wd/error.hpp"
#include "wd/frontend/csv.hpp"
#include "wd/frontend/dot.hpp"
#include "wd/frontend/workspace.hpp"
#include "wd/laws.hpp"

namespace wd::frontend {

namespace {

// Law failures are reported through the exit status, not as user errors.
struct LawFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIo, "cannot write " + path);
  f << text;
}

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const char* kind_label(Workspace::Kind k) {
  switch (k) {
    case Workspace::Kind::kType: return "type";
    case Workspace::Kind::kStar: return "star";
    case Workspace::Kind::kRelation: return "relation";
    case Workspace::Kind::kDiagram: return "diagram";
    case Workspace::Kind::kSetup: return "setup";
  }
  return "?";
}

bool is_query(const Workspace& ws, const std::string& name) {
  for (const auto& d : ws.script().decls) {
    if (std::holds_alternative<QueryDecl>(d) && decl_name(d) == name) return true;
  }
  return false;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wiring diagram queries over CSV relations", "wd"};
  app.require_subcommand(1);

  std::string script, name, out_path, args, sql, mode = "gfp", strategy = "kleene", summary_path;
  bool load = false, show_trace = false, show_diagram = false;
  std::uint64_t budget = 0;
  laws::GeneratorConfig cfg;
  std::size_t domain_max = 3;

  auto* check = app.add_subcommand("check", "Parse and resolve a script");
  check->add_option("script", script, "Script file")->required();
  check->add_flag("--load", load, "Also load and compute every relation");

  auto* ev = app.add_subcommand("eval", "Evaluate a relation, query or diagram to CSV");
  ev->add_option("script", script, "Script file")->required();
  ev->add_option("name", name, "Relation, query, let or diagram name")->required();
  ev->add_option("--args", args, "Comma-separated arguments when NAME is a diagram");
  ev->add_option("-o,--out", out_path, "Write the CSV here instead of stdout");

  auto* qy = app.add_subcommand("query", "Run an ad-hoc SELECT against a script");
  qy->add_option("script", script, "Script file")->required();
  qy->add_option("sql", sql, "SELECT ... FROM ... [WHERE ...]")->required();
  qy->add_option("-o,--out", out_path, "Write the CSV here instead of stdout");
  qy->add_flag("--diagram", show_diagram, "Print the compiled diagram instead of running it");

  auto* dt = app.add_subcommand("dot", "Emit a diagram or compiled query as DOT");
  dt->add_option("script", script, "Script file")->required();
  dt->add_option("name", name, "Diagram or query name")->required();
  dt->add_option("-o,--out", out_path, "Write the DOT text here instead of stdout");

  auto* fp = app.add_subcommand("fixpoint", "Least or greatest fixed point of a setup");
  fp->add_option("script", script, "Script file")->required();
  fp->add_option("name", name, "Setup name")->required();
  fp->add_option("--mode", mode, "lfp or gfp")->check(CLI::IsMember({"lfp", "gfp"}));
  fp->add_option("--strategy", strategy, "kleene or round-robin")
      ->check(CLI::IsMember({"kleene", "round-robin"}));
  fp->add_option("--budget", budget, "Maximum number of iterations (0: size of the lattice + 1)");
  fp->add_option("-o,--out", out_path, "Write the fixed point CSV here");
  fp->add_flag("--trace", show_trace, "Print the size of every iterate");

  auto* lw = app.add_subcommand("laws", "Run the property suites on random instances");
  lw->add_option("--cases", cfg.cases, "Instances per suite");
  lw->add_option("--seed", cfg.seed, "Generator seed");
  lw->add_option("--max-stars", cfg.max_stars, "Inner stars per diagram");
  lw->add_option("--max-wires", cfg.max_wires, "Wires per star");
  lw->add_option("--max-cables", cfg.max_cables, "Cables per diagram");
  lw->add_option("--max-domain", domain_max, "Largest generated domain");
  lw->add_option("--summary", summary_path, "Write 'suite cases failures' lines here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check) {
      Workspace ws = Workspace::from_file(script);
      std::size_t count = 0;
      for (const auto& d : ws.script().decls) {
        const std::string n = decl_name(d);
        if (load && ws.kind_of(n) == Workspace::Kind::kRelation) {
          out << n << ": " << ws.relation(n).size() << " tuples\n";
        }
        ++count;
      }
      out << "ok: " << count << " declarations\n";
      return 0;
    }

    if (*ev) {
      Workspace ws = Workspace::from_file(script);
      const auto kind = ws.kind_of(name);
      if (!kind) throw Error(ErrorKind::kUnresolvedName, "unknown name " + name);
      Relation r;
      if (*kind == Workspace::Kind::kDiagram) {
        r = ws.apply(name, split_args(args));
      } else if (*kind == Workspace::Kind::kRelation) {
        if (!args.empty()) throw Error(ErrorKind::kInvalidArgument, "--args needs a diagram");
        r = ws.relation(name);
      } else {
        throw Error(ErrorKind::kInvalidArgument,
                    name + " is a " + kind_label(*kind) + ", not a relation or diagram");
      }
      emit(format_csv(r), out_path, out);
      return 0;
    }

    if (*qy) {
      Workspace ws = Workspace::from_file(script);
      const QueryDecl q = parse_query(sql);
      const CompiledQuery cq = ws.compile(q);
      if (show_diagram) {
        emit(to_string(cq.diagram.diagram()) + "\n", out_path, out);
      } else {
        emit(format_csv(ws.run_query(cq)), out_path, out);
      }
      return 0;
    }

    if (*dt) {
      Workspace ws = Workspace::from_file(script);
      const auto kind = ws.kind_of(name);
      if (kind == Workspace::Kind::kDiagram) {
        emit(emit_dot(ws.diagram(name), name), out_path, out);
      } else if (is_query(ws, name)) {
        emit(emit_dot(ws.query(name).diagram, name), out_path, out);
      } else {
        throw Error(ErrorKind::kInvalidArgument, name + " is not a diagram or query");
      }
      return 0;
    }

    if (*fp) {
      Workspace ws = Workspace::from_file(script);
      RecursiveSetup setup = ws.setup(name);
      if (budget != 0) setup.budget = budget;
      const FixedPointResult res =
          fixed_point(setup, mode == "lfp" ? FixMode::kLeast : FixMode::kGreatest,
                      strategy == "kleene" ? FixStrategy::kKleene : FixStrategy::kRoundRobin);
      emit(format_csv(res.limit), out_path, out);
      if (show_trace) {
        for (std::size_t k = 0; k < res.chain.size(); ++k) {
          out << "iterate " << k << ": " << res.chain[k].size() << " tuples\n";
        }
      }
      out << "iterations: " << res.iterations << "\n";
      return 0;
    }

    if (*lw) {
      cfg.max_domain = domain_max;
      laws::Report all;
      auto add = [&](const laws::Report& r) {
        all.suites.insert(all.suites.end(), r.suites.begin(), r.suites.end());
      };
      add(laws::check_operad_laws(cfg));
      add(laws::check_algebra_naturality(cfg, laws::Algebra::kRel));
      add(laws::check_algebra_naturality(cfg, laws::Algebra::kEq));
      if (cfg.cases != 0) {
        add(laws::check_prop_witnesses(ValueDomain::range("A2", 0, 1)));
        add(laws::check_prop_witnesses(ValueDomain::range("A3", 0, 2)));
      }
      out << all.text();
      out << (all.ok() ? "all suites passed\n" : std::to_string(all.failures()) + " failures\n");
      if (!summary_path.empty()) emit(all.summary(), summary_path, out);
      if (!all.ok()) throw LawFailure("law check failed");
      return 0;
    }
  } catch (const Error& e) {
    err << "wd: error: " << e.what() << "\n";
    return 1;
  } catch (const LawFailure& e) {
    err << "wd: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "wd: internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace wd::frontend
