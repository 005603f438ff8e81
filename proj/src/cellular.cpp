#include "poscoh/cellular.hpp"

#include "poscoh/errors.hpp"

#include <algorithm>

namespace poscoh {

namespace {

void saturated_chains(const Poset& p, std::vector<std::size_t>& cur, int remaining, std::vector<Simplex>& out) {
  if (remaining == 0) {
    out.push_back(Simplex{cur});
    return;
  }
  for (std::size_t y : p.upper_covers(cur.back())) {
    cur.push_back(y);
    saturated_chains(p, cur, remaining - 1, out);
    cur.pop_back();
  }
}

std::vector<std::size_t> of_corank(const Poset& p, int n) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.corank(x) == n) out.push_back(x);
  return out;
}

CochainComplex zero_complex() {
  CochainComplex c;
  c.groups.emplace_back();
  c.differentials.emplace_back(0, 0);
  return c;
}

}  // namespace

AGroup a_group(const Poset& p, std::size_t x) {
  p.require_graded("a_group");
  AGroup a;
  a.element = x;
  const int n = p.corank(x);
  std::vector<std::size_t> cur{x};
  saturated_chains(p, cur, n, a.chains);

  std::map<std::vector<std::size_t>, std::size_t> chain_index;
  for (std::size_t k = 0; k < a.chains.size(); ++k) chain_index.emplace(a.chains[k].vertices, k);
  for (int j = 0; j < n; ++j) {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < a.chains.size(); ++k) groups[face(a.chains[k], j).vertices].push_back(k);
    for (auto& [anchor, members] : groups) a.families.push_back({Simplex{anchor}, j, members});
  }
  IntMatrix rel(a.chains.size(), a.families.size());
  for (std::size_t r = 0; r < a.families.size(); ++r)
    for (std::size_t k : a.families[r].members) rel.set(k, r, 1);
  a.group = FpAbGroup(a.chains.size(), std::move(rel));
  return a;
}

AGroup a_group(const Poset& p, const std::string& x) { return a_group(p, p.index(x)); }

CellularityVerdict is_cellular(const Poset& p) {
  p.require_graded("is_cellular");
  CellularityVerdict v;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const int c = p.corank(x);
    if (c == 0) continue;
    const CohomologyReport r = reduced_hs(open_interval(p, x), 1);
    for (int m = r.min_degree; m <= r.max_degree(); ++m) {
      if (m != c - 1 && !r.at(m).is_zero()) {
        v.cellular = false;
        v.witness = std::make_pair(x, m);
        return v;
      }
    }
  }
  return v;
}

CochainComplex cellular_complex(const Presheaf& f) {
  const Poset& p = f.base();
  p.require_graded("cellular_complex");
  if (p.empty()) return zero_complex();
  const int top = p.max_corank();

  std::vector<AGroup> a;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> chain_index(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    a.push_back(a_group(p, x));
    for (std::size_t k = 0; k < a[x].chains.size(); ++k) chain_index[x].emplace(a[x].chains[k].vertices, k);
  }

  // offset of the block A_x (x) F(x) inside its degree
  std::vector<std::size_t> offset(p.size(), 0);
  std::vector<std::size_t> total(static_cast<std::size_t>(top) + 1, 0);
  for (int n = 0; n <= top; ++n)
    for (std::size_t x : of_corank(p, n)) {
      offset[x] = total[static_cast<std::size_t>(n)];
      total[static_cast<std::size_t>(n)] += a[x].chains.size() * f.dim(x);
    }

  CochainComplex c;
  for (int n = 0; n <= top; ++n) {
    const auto nn = static_cast<std::size_t>(n);
    std::size_t relations = 0;
    for (std::size_t x : of_corank(p, n)) relations += a[x].families.size() * f.dim(x);
    IntMatrix rel(total[nn], relations);
    std::size_t col = 0;
    for (std::size_t x : of_corank(p, n)) {
      const std::size_t d = f.dim(x);
      for (const auto& fam : a[x].families)
        for (std::size_t coord = 0; coord < d; ++coord, ++col)
          for (std::size_t k : fam.members) rel.set(offset[x] + k * d + coord, col, 1);
    }
    c.groups.emplace_back(total[nn], std::move(rel));

    if (n == top) {
      c.differentials.emplace_back(0, total[nn]);
      continue;
    }
    IntMatrix delta(total[nn + 1], total[nn]);
    for (std::size_t x : of_corank(p, n + 1)) {
      const Integer sign = ((n + 1) % 2 == 0) ? 1 : -1;
      const std::size_t dx = f.dim(x);
      for (std::size_t y : p.upper_covers(x)) {
        const std::size_t dy = f.dim(y);
        if (dx == 0 || dy == 0) continue;
        const IntMatrix& map = f.cover_map(x, y);
        for (std::size_t k = 0; k < a[y].chains.size(); ++k) {
          std::vector<std::size_t> extended{x};
          const auto& tail = a[y].chains[k].vertices;
          extended.insert(extended.end(), tail.begin(), tail.end());
          const std::size_t target = chain_index[x].at(extended);
          delta.add_block(offset[x] + target * dx, offset[y] + k * dy, map, sign);
        }
      }
    }
    c.differentials.push_back(std::move(delta));
  }
  return c;
}

CohomologyReport hc(const Presheaf& f) { return cohomology(cellular_complex(f)); }

CochainComplex filtration_complex(const Presheaf& f) {
  const Poset& p = f.base();
  p.require_graded("filtration_complex");
  if (p.empty()) return zero_complex();
  const int top = p.max_corank();

  auto with_bottom_corank = [&](int length, int corank) {
    std::vector<Simplex> out;
    for (auto& s : nondegenerate_simplices(p, length))
      if (p.corank(s.bottom()) == corank) out.push_back(std::move(s));
    return cochain_basis(f, std::move(out));
  };
  std::vector<CochainBasis> gens;
  for (int n = 0; n <= top; ++n) gens.push_back(with_bottom_corank(n, n));

  CochainComplex c;
  for (int n = 0; n <= top; ++n) {
    const auto nn = static_cast<std::size_t>(n);
    IntMatrix rel = n == 0 ? IntMatrix(gens[nn].rank(), 0)
                           : nerve_differential(f, with_bottom_corank(n - 1, n), gens[nn]);
    c.groups.emplace_back(gens[nn].rank(), std::move(rel));
    if (n == top)
      c.differentials.emplace_back(0, gens[nn].rank());
    else
      c.differentials.push_back(nerve_differential(f, gens[nn], gens[nn + 1]));
  }
  return c;
}

EpsilonReport epsilon_check(const Presheaf& f, int n) {
  const Poset& p = f.base();
  p.require_graded("epsilon_check");
  const Poset pn = filtration_level(p, n);
  const Poset pn1 = filtration_level(p, n - 1);
  const CohomologyReport lhs = cohomology(relative_t_complex(f.restrict_to(pn), pn1));

  CohomologyReport rhs;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p.corank(x) != n) continue;
    const Poset cell = closed_interval(p, x);
    const Poset boundary = open_interval(p, x);
    const CohomologyReport a = cohomology(relative_t_complex(f.restrict_to(cell), boundary));
    const CohomologyReport b = cohomology(relative_t_complex(constant(cell, f.dim(x)), boundary));
    const CohomologyReport c = reduced_hs(boundary, f.dim(x));
    if (!a.same_groups(b)) return {false, "coefficients F and Delta F(x) differ at '" + p.id(x) + "'"};
    const int hi = std::max(a.max_degree(), c.max_degree() + 1);
    for (int i = std::min(a.min_degree, c.min_degree + 1); i <= hi; ++i)
      if (!(a.at(i) == c.at(i - 1)))
        return {false, "relative and reduced cohomology differ at '" + p.id(x) + "' in degree " + std::to_string(i)};
    if (rhs.groups.size() < a.groups.size()) rhs.groups.resize(a.groups.size());
    for (std::size_t i = 0; i < a.groups.size(); ++i) rhs.groups[i] = direct_sum(rhs.groups[i], a.groups[i]);
  }
  if (!lhs.same_groups(rhs)) return {false, "filtration quotient in degree " + std::to_string(n) + " is not the sum over cells"};
  return {};
}

bool ComparisonReport::all_isomorphic() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeComparison& d) { return d.isomorphic; });
}

ComparisonReport compare(const Presheaf& f) {
  ComparisonReport r;
  r.cellularity = is_cellular(f.base());
  const CohomologyReport s = hs(f);
  const CohomologyReport c = hc(f);
  const int hi = std::max(s.max_degree(), c.max_degree());
  for (int n = 0; n <= hi; ++n) r.degrees.push_back({n, s.at(n), c.at(n), s.at(n) == c.at(n)});
  r.theorem_holds = !r.cellularity.cellular || r.all_isomorphic();
  return r;
}

SignTable cell_signs(const Poset& p, const std::map<std::size_t, Simplex>& generators) {
  p.require_graded("cell_signs");
  if (!has_diamond_property(p)) throw PreconditionError("cell_signs: the poset lacks the diamond property");
  std::vector<AGroup> a;
  std::vector<std::vector<Integer>> phi(p.size());
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> chain_index(p.size());
  std::vector<Simplex> chosen(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    a.push_back(a_group(p, x));
    const ReducedPresentation red = reduce_presentation(a[x].group);
    if (!(red.group.invariants() == AbelianInvariants{1, {}}) || red.group.generators() != 1)
      throw PreconditionError("cell_signs: A_" + p.id(x) + " is " + a[x].group.invariants().to_string() + ", not Z");
    for (std::size_t k = 0; k < a[x].chains.size(); ++k) chain_index[x].emplace(a[x].chains[k].vertices, k);
    phi[x].assign(a[x].chains.size(), 0);
    for (const auto& e : red.to_reduced.row(0)) phi[x][e.col] = e.value;

    auto it = generators.find(x);
    chosen[x] = it != generators.end() ? it->second : a[x].chains.front();
    auto k = chain_index[x].find(chosen[x].vertices);
    if (k == chain_index[x].end())
      throw PreconditionError("cell_signs: the chosen chain for '" + p.id(x) + "' is not a maximal chain above it");
    const Integer v = phi[x][k->second];
    if (v != 1 && v != -1)
      throw PreconditionError("cell_signs: the chosen chain for '" + p.id(x) + "' does not generate A_x");
    if (v == -1)
      for (auto& e : phi[x]) e = -e;
  }
  SignTable signs;
  for (auto [x, y] : p.covers()) {
    std::vector<std::size_t> extended{x};
    extended.insert(extended.end(), chosen[y].vertices.begin(), chosen[y].vertices.end());
    const Integer v = phi[x][chain_index[x].at(extended)];
    if (v != 1 && v != -1) throw PreconditionError("cell_signs: incidence of '" + p.id(x) + "' and '" + p.id(y) + "' is not a unit");
    signs[{x, y}] = v == 1 ? 1 : -1;
  }
  return signs;
}

DiamondTally check_sign_rule(const Poset& p, const SignTable& signs) {
  DiamondTally t;
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto& up = p.upper_covers(x);
    if (p.corank(x) == 1 && up.size() == 2) {
      ++t.diamonds;
      if (signs.at({x, up[0]}) == -signs.at({x, up[1]})) ++t.satisfied;
    }
    std::map<std::size_t, std::vector<std::size_t>> middles;
    for (std::size_t y : p.upper_covers(x))
      for (std::size_t z : p.upper_covers(y)) middles[z].push_back(y);
    for (const auto& [z, ys] : middles) {
      if (ys.size() != 2) continue;
      ++t.diamonds;
      const int lhs = signs.at({x, ys[0]}) * signs.at({ys[0], z});
      const int rhs = signs.at({x, ys[1]}) * signs.at({ys[1], z});
      if (lhs == -rhs) ++t.satisfied;
    }
  }
  return t;
}

}  // namespace poscoh
