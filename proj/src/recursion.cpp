#include "wd/recursion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "wd/closed.hpp"
#include "wd/error.hpp"

namespace wd {

namespace {

std::uint64_t default_budget(const TypedStar& z) {
  const std::uint64_t size = product_size(z);
  return size == UINT64_MAX ? size : size + 1;
}

void check_on_z(const RecursiveSetup& setup, const Relation& r) {
  if (!(r.star() == setup.z)) {
    throw Error(ErrorKind::kStarMismatch, "relation on " + to_string(r.star()) +
                                              " given to a recursive setup over " +
                                              to_string(setup.z));
  }
}

bool contains_relation(const std::vector<Relation>& v, const Relation& r) {
  return std::find(v.begin(), v.end(), r) != v.end();
}

// Tuples of s split into (ret part, arg part), both in z's wire order; the
// hom star lists arg1 wires first, then ret wires.
std::map<Tuple, std::vector<Tuple>> supports(const RecursiveSetup& setup) {
  const std::size_t n = setup.z.size();
  std::map<Tuple, std::vector<Tuple>> index;
  for (const auto& t : setup.s.tuples()) {
    Tuple arg(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n));
    Tuple ret(t.begin() + static_cast<std::ptrdiff_t>(n), t.end());
    index[std::move(ret)].push_back(std::move(arg));
  }
  return index;
}

FixedPointResult round_robin(const RecursiveSetup& setup, FixMode mode) {
  const auto index = supports(setup);
  auto supported = [&](const Tuple& t, const std::set<Tuple>& current) {
    auto it = index.find(t);
    if (it == index.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](const Tuple& arg) { return current.count(arg) != 0; });
  };

  FixedPointResult result;
  std::set<Tuple> current;
  if (mode == FixMode::kGreatest) {
    const Relation top = Relation::complete(setup.z);
    current.insert(top.tuples().begin(), top.tuples().end());
  }
  result.chain.push_back(Relation(setup.z, {current.begin(), current.end()}));
  while (result.iterations < setup.budget) {
    ++result.iterations;
    bool changed = false;
    if (mode == FixMode::kGreatest) {
      for (auto it = current.begin(); it != current.end();) {
        if (supported(*it, current)) {
          ++it;
        } else {
          it = current.erase(it);
          changed = true;
        }
      }
    } else {
      for (const auto& [t, _] : index) {
        if (current.count(t) == 0 && supported(t, current)) {
          current.insert(t);
          changed = true;
        }
      }
    }
    if (!changed) {
      result.limit = result.chain.back();
      if (!is_fixed_point(setup, result.limit)) {
        throw std::logic_error("round-robin iteration stopped at a non-fixed point");
      }
      return result;
    }
    result.chain.push_back(Relation(setup.z, {current.begin(), current.end()}));
  }
  throw Error(ErrorKind::kBudgetExhausted,
              "no fixed point within " + std::to_string(setup.budget) + " sweeps");
}

}  // namespace

RecursiveSetup setup_from_relation(Relation s, std::uint64_t budget) {
  RecursiveSetup setup;
  setup.z = hom_ret(s.star());
  const std::vector<TypedStar> args{setup.z};
  setup.hom = internal_hom(args, setup.z);
  if (!(setup.hom == s.star())) {
    throw Error(ErrorKind::kStarMismatch,
                to_string(s.star()) + " is not a recursive star [Z => Z]");
  }
  setup.s = s.aligned_to(setup.hom);
  setup.budget = budget == 0 ? default_budget(setup.z) : budget;
  setup.ev = evaluation_diagram(args, setup.z);
  return setup;
}

RecursiveSetup build_setup(const TypedWiringDiagram& phi, std::span<const Relation> rels,
                           std::uint64_t budget) {
  const TypedStar z = hom_ret(phi.outer());
  const std::vector<TypedStar> args{z};
  if (!(internal_hom(args, z) == phi.outer())) {
    throw Error(ErrorKind::kStarMismatch,
                "codomain " + to_string(phi.outer()) + " is not a recursive star [Z => Z]");
  }
  return setup_from_relation(eval(phi, rels), budget);
}

Relation step(const RecursiveSetup& setup, const Relation& r) {
  check_on_z(setup, r);
  const std::vector<Relation> rels{setup.s, r};
  return eval(setup.ev, rels).aligned_to(setup.z);
}

bool is_fixed_point(const RecursiveSetup& setup, const Relation& r) {
  return step(setup, r) == r;
}

FixedPointResult fixed_point(const RecursiveSetup& setup, FixMode mode, FixStrategy strategy) {
  if (strategy == FixStrategy::kRoundRobin) return round_robin(setup, mode);
  FixedPointResult result;
  Relation current = mode == FixMode::kLeast ? Relation::empty(setup.z)
                                             : Relation::complete(setup.z);
  result.chain.push_back(current);
  while (result.iterations < setup.budget) {
    Relation next = step(setup, current);
    ++result.iterations;
    if (next == current) {
      result.limit = std::move(current);
      return result;
    }
    result.chain.push_back(next);
    current = std::move(next);
  }
  throw Error(ErrorKind::kBudgetExhausted,
              "no fixed point within " + std::to_string(setup.budget) + " steps");
}

std::vector<Relation> explore_fixed_points(const RecursiveSetup& setup, std::size_t seed_bound) {
  std::vector<Relation> seeds{Relation::complete(setup.z), Relation::empty(setup.z)};
  for (const auto& t : seeds.front().tuples()) {
    if (seeds.size() - 2 >= seed_bound) break;
    seeds.push_back(Relation(setup.z, {t}));
  }

  std::vector<Relation> found;
  for (const auto& seed : seeds) {
    std::vector<Relation> orbit{seed};
    for (std::uint64_t k = 0; k < setup.budget; ++k) {
      Relation next = step(setup, orbit.back());
      if (next == orbit.back()) {
        if (!contains_relation(found, next)) found.push_back(std::move(next));
        break;
      }
      if (contains_relation(orbit, next)) break;
      orbit.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end(), [](const Relation& a, const Relation& b) {
    return a.tuples() < b.tuples();
  });
  return found;
}

std::vector<Relation> enumerate_fixed_points(const RecursiveSetup& setup,
                                             std::uint64_t max_candidates) {
  const Relation top = Relation::complete(setup.z);
  const std::size_t n = top.size();
  if (n >= 64 || (std::uint64_t{1} << n) > max_candidates) {
    throw Error(ErrorKind::kBoundExceeded, "2^" + std::to_string(n) +
                                               " candidate relations exceed the bound " +
                                               std::to_string(max_candidates));
  }
  std::vector<Relation> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Tuple> ts;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) ts.push_back(top.tuples()[k]);
    }
    Relation r(setup.z, std::move(ts));
    if (is_fixed_point(setup, r)) found.push_back(std::move(r));
  }
  std::sort(found.begin(), found.end(), [](const Relation& a, const Relation& b) {
    return a.tuples() < b.tuples();
  });
  return found;
}

FactorialFixture factorial_fixture(std::int64_t m) {
  if (m < 1) {
    throw Error(ErrorKind::kInvalidArgument, "factorial fixture needs M >= 1, got " +
                                                 std::to_string(m));
  }
  FactorialFixture fx;
  fx.domain = ValueDomain::range("N", 0, m);
  const ValueDomain& n = fx.domain;
  const auto u = static_cast<std::uint32_t>(m);

  const TypedStar f(make_star({"A", "B"}), {n, n});
  const std::vector<TypedStar> args{f};
  const TypedStar hom = internal_hom(args, f);
  const TypedStar x1(make_star({"A", "A'"}), {n, n});
  const TypedStar x2(make_star({"A", "B'", "C"}), {n, n, n});
  const TypedStar x3(make_star({"A", "C", "B"}), {n, n, n});

  std::vector<Solder> solders{
      {0, "A", "A"},        {0, "A'", "A'"},      {1, "A", "A"},         {1, "B'", "B'"},
      {1, "C", "C"},        {2, "A", "A"},        {2, "C", "C"},         {2, "B", "B"},
      {kOuter, arg_tag(1, "A"), "A'"}, {kOuter, arg_tag(1, "B"), "B'"},
      {kOuter, ret_tag("A"), "A"},     {kOuter, ret_tag("B"), "B"},
  };
  WiringDiagram wd = make_diagram({x1.star(), x2.star(), x3.star()}, hom.star(),
                                  {"A", "A'", "B", "B'", "C"}, solders);
  fx.phi = typecheck_diagram(wd, {x1, x2, x3}, hom, {n, n, n, n, n});

  std::vector<Tuple> dec, mult, cond;
  for (std::uint32_t a = 0; a <= u; ++a) {
    dec.push_back({a, a > 0 ? a - 1 : 0});
    for (std::uint32_t b = 0; b <= u; ++b) {
      if (static_cast<std::uint64_t>(a) * b <= u) mult.push_back({a, b, a * b});
    }
    for (std::uint32_t c = 0; c <= u; ++c) {
      if (a == 0) {
        cond.push_back({a, c, 1});
      } else {
        cond.push_back({a, c, c});
      }
    }
  }
  fx.rels = {Relation(x1, std::move(dec)), Relation(x2, std::move(mult)),
             Relation(x3, std::move(cond))};
  fx.setup = build_setup(fx.phi, fx.rels);
  return fx;
}

}  // namespace wd
