#include "poscoh/singular.hpp"

#include "poscoh/errors.hpp"

#include <algorithm>
#include <sstream>

namespace poscoh {

namespace {

void extend_chains(const Poset& p, std::vector<std::size_t>& cur, int remaining, bool strict,
                   std::vector<Simplex>& out) {
  if (remaining == 0) {
    out.push_back(Simplex{cur});
    return;
  }
  const auto& up = p.up_set(cur.back());
  for (std::size_t y = up.find_first(); y != boost::dynamic_bitset<>::npos; y = up.find_next(y)) {
    if (strict && y == cur.back()) continue;
    cur.push_back(y);
    extend_chains(p, cur, remaining - 1, strict, out);
    cur.pop_back();
  }
}

std::vector<Simplex> chains(const Poset& p, int n, bool strict) {
  std::vector<Simplex> out;
  if (n < -1) return out;
  if (n == -1) {
    out.push_back(Simplex{});
    return out;
  }
  std::vector<std::size_t> cur;
  for (std::size_t x = 0; x < p.size(); ++x) {
    cur.assign(1, x);
    extend_chains(p, cur, n, strict, out);
  }
  return out;
}

// Builds the complex whose degree min_degree + k generators are bases[k].
CochainComplex complex_from_bases(const Presheaf& f, const std::vector<CochainBasis>& bases, int min_degree) {
  CochainComplex c;
  c.min_degree = min_degree;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    c.groups.emplace_back(bases[k].rank());
    if (k + 1 < bases.size())
      c.differentials.push_back(nerve_differential(f, bases[k], bases[k + 1]));
    else
      c.differentials.emplace_back(0, bases[k].rank());
  }
  return c;
}

// Rows = generators of `sub`, columns = generators of `full`, identity on the
// coordinates of simplices present in both. `rename` carries a simplex of
// `sub` into the indexing of `full`.
template <class Rename>
IntMatrix selection(const CochainBasis& sub, const CochainBasis& full, Rename rename) {
  IntMatrix m(sub.rank(), full.rank());
  for (std::size_t k = 0; k < sub.simplices.size(); ++k) {
    auto j = full.find(rename(sub.simplices[k]));
    if (!j) throw PreconditionError("selection: simplex missing from the ambient complex");
    const std::size_t d = sub.offsets[k + 1] - sub.offsets[k];
    for (std::size_t c = 0; c < d; ++c) m.set(sub.offsets[k] + c, full.offsets[*j] + c, 1);
  }
  return m;
}

std::vector<std::size_t> ids_to_indices(const Poset& sub, const Poset& p) {
  std::vector<std::size_t> where(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (!p.contains(sub.id(i))) throw InputError("subposet element '" + sub.id(i) + "' is not in the poset");
    where[i] = p.index(sub.id(i));
  }
  return where;
}

void require_induced(const Poset& q, const Poset& p, const std::vector<std::size_t>& where) {
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = 0; b < q.size(); ++b)
      if (q.leq(a, b) != p.leq(where[a], where[b]))
        throw InputError("'" + q.id(a) + "' and '" + q.id(b) + "' are ordered differently in the subposet");
}

std::vector<CochainBasis> t_bases(const Presheaf& f, int top) {
  std::vector<CochainBasis> bases;
  for (int n = 0; n <= top; ++n) bases.push_back(cochain_basis(f, nondegenerate_simplices(f.base(), n)));
  return bases;
}

// Cocycles of one degree of a free complex and the group they present.
struct HomologyAt {
  IntMatrix cycles;  // basis, as columns
  Lattice lattice;
  FpAbGroup group;
};

HomologyAt homology_at(const CochainComplex& c, std::size_t k) {
  const std::size_t g = c.groups[k].generators();
  IntMatrix incoming = k == 0 ? IntMatrix(g, 0) : c.differentials[k - 1];
  Lattice z(kernel_lattice(c.differentials[k]));
  IntMatrix basis = z.basis();
  FpAbGroup group(z.rank(), z.coordinates(incoming));
  return {std::move(basis), std::move(z), std::move(group)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Simplices

bool Simplex::degenerate() const {
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k)
    if (vertices[k] == vertices[k + 1]) return true;
  return false;
}

std::string Simplex::to_string(const Poset& p) const {
  if (vertices.empty()) return "*";
  std::string s;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (k) s += (vertices[k] == vertices[k - 1]) ? " <= " : " < ";
    s += p.id(vertices[k]);
  }
  return s;
}

Simplex face(const Simplex& s, int i) {
  if (i < 0 || i > s.degree()) throw PreconditionError("face index out of range");
  Simplex out = s;
  out.vertices.erase(out.vertices.begin() + (s.degree() - i));
  return out;
}

Simplex degeneracy(const Simplex& s, int i) {
  if (i < 0 || i > s.degree()) throw PreconditionError("degeneracy index out of range");
  Simplex out = s;
  const auto pos = out.vertices.begin() + (s.degree() - i);
  out.vertices.insert(pos, *pos);
  return out;
}

std::vector<Simplex> nondegenerate_simplices(const Poset& p, int n) { return chains(p, n, true); }
std::vector<Simplex> all_simplices(const Poset& p, int n) { return chains(p, n, false); }

int chain_length(const Poset& p) {
  std::vector<int> len(p.size(), 0);
  int best = -1;
  for (std::size_t x : p.linear_extension()) {
    for (std::size_t w : p.lower_covers(x)) len[x] = std::max(len[x], len[w] + 1);
    best = std::max(best, len[x]);
  }
  return best;
}

std::optional<std::size_t> CochainBasis::find(const Simplex& s) const {
  auto it = lookup.find(s.vertices);
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

CochainBasis cochain_basis(const Presheaf& f, std::vector<Simplex> simplices) {
  CochainBasis b;
  b.simplices = std::move(simplices);
  b.offsets.reserve(b.simplices.size() + 1);
  std::size_t total = 0;
  for (std::size_t k = 0; k < b.simplices.size(); ++k) {
    b.offsets.push_back(total);
    b.lookup.emplace(b.simplices[k].vertices, k);
    // the basepoint carries the augmentation group, handled by the caller
    if (!b.simplices[k].vertices.empty()) total += f.dim(b.simplices[k].bottom());
  }
  b.offsets.push_back(total);
  return b;
}

IntMatrix nerve_differential(const Presheaf& f, const CochainBasis& from, const CochainBasis& to) {
  IntMatrix d(to.rank(), from.rank());
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> memo;
  for (std::size_t r = 0; r < to.simplices.size(); ++r) {
    const Simplex& sigma = to.simplices[r];
    const int m = sigma.degree();
    const std::size_t dim = f.dim(sigma.bottom());
    if (dim == 0) continue;
    for (int i = 0; i <= m; ++i) {
      auto c = from.find(face(sigma, i));
      if (!c) continue;
      const Integer sign = (i % 2 == 0) ? 1 : -1;
      if (i < m) {
        for (std::size_t k = 0; k < dim; ++k) d.add_to(to.offsets[r] + k, from.offsets[*c] + k, sign);
      } else {
        const auto key = std::make_pair(sigma.at(m), sigma.at(m - 1));
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, f.restriction(key.first, key.second)).first;
        d.add_block(to.offsets[r], from.offsets[*c], it->second, sign);
      }
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Cohomology

AbelianInvariants CohomologyReport::at(int n) const {
  if (n < min_degree || n > max_degree()) return {};
  return groups[static_cast<std::size_t>(n - min_degree)];
}

bool CohomologyReport::same_groups(const CohomologyReport& other) const {
  const int lo = std::min(min_degree, other.min_degree);
  const int hi = std::max(max_degree(), other.max_degree());
  for (int n = lo; n <= hi; ++n)
    if (!(at(n) == other.at(n))) return false;
  return true;
}

std::string CohomologyReport::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < groups.size(); ++k)
    os << (k ? ", " : "") << "H^" << (min_degree + static_cast<int>(k)) << " = " << groups[k].to_string();
  return os.str();
}

namespace {

// Every column of m, read in the generators of the group behind `red`, is zero
// in that group.
bool vanishes_in(const ReducedPresentation& red, const IntMatrix& m) {
  const IntMatrix coords = red.to_reduced * m;
  for (std::size_t i = 0; i < coords.rows(); ++i)
    for (const auto& e : coords.row(i))
      if (red.orders[i].is_zero() || !(e.value % red.orders[i]).is_zero()) return false;
  return true;
}

struct PreparedComplex {
  std::vector<std::size_t> gens;
  std::vector<FpAbGroup> groups;  // reduced; empty when the complex is free
  std::vector<IntMatrix> diffs;   // on reduced coordinates
  std::size_t count = 0;          // degrees whose cohomology is defined
};

PreparedComplex prepare(const CochainComplex& c) {
  if (c.differentials.size() != c.groups.size()) throw BrokenComplexError("complex: one differential per degree expected");
  PreparedComplex out;
  const std::size_t n = c.groups.size();
  out.count = c.truncated ? n - 1 : n;
  // number of differentials that are actually built
  const std::size_t built = c.truncated ? n - 1 : n;
  for (std::size_t k = 0; k < built; ++k) {
    const std::size_t next = k + 1 < n ? c.groups[k + 1].generators() : 0;
    if (c.differentials[k].cols() != c.groups[k].generators() || c.differentials[k].rows() != next)
      throw BrokenComplexError("complex: differential has the wrong shape in degree " +
                               std::to_string(c.min_degree + static_cast<int>(k)));
  }
  const bool free =
      std::none_of(c.groups.begin(), c.groups.end(), [](const FpAbGroup& g) { return g.has_relations(); });
  if (free) {
    for (const auto& g : c.groups) out.gens.push_back(g.generators());
    out.diffs = c.differentials;
    for (std::size_t k = 0; k + 1 < built; ++k)
      if (!(c.differentials[k + 1] * c.differentials[k]).is_zero())
        throw BrokenComplexError("complex: d o d is not zero in degree " + std::to_string(c.min_degree + static_cast<int>(k)));
    return out;
  }
  std::vector<ReducedPresentation> red;
  for (const auto& g : c.groups) red.push_back(reduce_presentation(g));
  for (std::size_t k = 0; k < n; ++k) {
    out.groups.push_back(red[k].group);
    out.gens.push_back(red[k].group.generators());
    if (k < built && k + 1 < n) {
      if (c.groups[k].has_relations() && !vanishes_in(red[k + 1], c.differentials[k] * c.groups[k].relations()))
        throw BrokenComplexError("complex: differential does not respect relations in degree " +
                                 std::to_string(c.min_degree + static_cast<int>(k)));
      out.diffs.push_back(red[k + 1].to_reduced * c.differentials[k] * red[k].from_reduced);
    } else {
      out.diffs.emplace_back(0, red[k].group.generators());
    }
  }
  for (std::size_t k = 0; k + 2 < n && k + 1 < built; ++k)
    if (!vanishes_in(red[k + 2], c.differentials[k + 1] * c.differentials[k]))
      throw BrokenComplexError("complex: d o d is not zero in degree " + std::to_string(c.min_degree + static_cast<int>(k)));
  return out;
}

}  // namespace

void check_complex(const CochainComplex& c) { prepare(c); }

CohomologyReport cohomology(const CochainComplex& c) {
  const PreparedComplex pc = prepare(c);
  CohomologyReport report;
  report.min_degree = c.min_degree;
  const bool free =
      std::none_of(pc.groups.begin(), pc.groups.end(), [](const FpAbGroup& g) { return g.has_relations(); });

  if (free) {
    std::vector<std::vector<Integer>> factors;
    for (std::size_t k = 0; k < pc.count; ++k) factors.push_back(invariant_factors(pc.diffs[k]));
    for (std::size_t k = 0; k < pc.count; ++k) {
      AbelianInvariants h;
      const std::size_t in = k == 0 ? 0 : factors[k - 1].size();
      h.rank = pc.gens[k] - factors[k].size() - in;
      if (k > 0)
        for (const auto& d : factors[k - 1])
          if (d > 1) h.torsion.push_back(d);
      report.groups.push_back(std::move(h));
    }
    return report;
  }

  for (std::size_t k = 0; k < pc.count; ++k) {
    FpAbGroup prev = k == 0 ? FpAbGroup() : pc.groups[k - 1];
    IntMatrix in = k == 0 ? IntMatrix(pc.gens[0], 0) : pc.diffs[k - 1];
    FpAbGroup next = k + 1 < pc.groups.size() ? pc.groups[k + 1] : FpAbGroup();
    GroupMorphism f(prev, pc.groups[k], in);
    GroupMorphism g(pc.groups[k], next, pc.diffs[k]);
    report.groups.push_back(subquotient_homology(f, g).invariants());
  }
  return report;
}

CochainComplex t_complex(const Presheaf& f) {
  const int top = chain_length(f.base());
  if (top < 0) {
    CochainComplex c;
    c.groups.emplace_back();
    c.differentials.emplace_back(0, 0);
    return c;
  }
  return complex_from_bases(f, t_bases(f, top), 0);
}

CochainComplex s_complex(const Presheaf& f, int max_degree) {
  const int top = chain_length(f.base());
  if (max_degree <= top)
    throw PreconditionError("s_complex: the degree bound must exceed the longest chain length " + std::to_string(top));
  if (top < 0) return t_complex(f);
  std::vector<CochainBasis> bases;
  for (int n = 0; n <= max_degree; ++n) bases.push_back(cochain_basis(f, all_simplices(f.base(), n)));
  CochainComplex c = complex_from_bases(f, bases, 0);
  c.truncated = true;
  return c;
}

CochainComplex relative_t_complex(const Presheaf& f, const Poset& q) {
  const Poset& p = f.base();
  const std::vector<std::size_t> where = ids_to_indices(q, p);
  require_induced(q, p, where);
  boost::dynamic_bitset<> in_q(p.size());
  for (std::size_t x : where) in_q.set(x);
  const int top = chain_length(p);
  if (top < 0) return t_complex(f);
  std::vector<CochainBasis> bases;
  for (int n = 0; n <= top; ++n) {
    std::vector<Simplex> keep;
    for (auto& s : nondegenerate_simplices(p, n))
      if (!std::all_of(s.vertices.begin(), s.vertices.end(), [&](std::size_t v) { return in_q.test(v); }))
        keep.push_back(std::move(s));
    bases.push_back(cochain_basis(f, std::move(keep)));
  }
  return complex_from_bases(f, bases, 0);
}

CochainComplex reduced_t_complex(const Poset& p, std::size_t k) {
  const Presheaf f = constant(p, k);
  CochainComplex c;
  c.min_degree = -1;
  c.groups.emplace_back(k);
  const int top = std::max(chain_length(p), 0);
  std::vector<CochainBasis> bases = t_bases(f, top);
  IntMatrix aug(bases[0].rank(), k);
  for (std::size_t v = 0; v < bases[0].simplices.size(); ++v)
    for (std::size_t j = 0; j < k; ++j) aug.set(bases[0].offsets[v] + j, j, 1);
  c.differentials.push_back(std::move(aug));
  CochainComplex rest = complex_from_bases(f, bases, 0);
  c.groups.insert(c.groups.end(), rest.groups.begin(), rest.groups.end());
  c.differentials.insert(c.differentials.end(), rest.differentials.begin(), rest.differentials.end());
  return c;
}

CohomologyReport hs(const Presheaf& f) { return cohomology(t_complex(f)); }

CohomologyReport reduced_hs(const Poset& p, std::size_t k) { return cohomology(reduced_t_complex(p, k)); }

IntMatrix limit(const Presheaf& f) {
  const Poset& p = f.base();
  std::vector<std::size_t> offset(p.size() + 1, 0);
  for (std::size_t x = 0; x < p.size(); ++x) offset[x + 1] = offset[x] + f.dim(x);
  std::size_t rows = 0;
  for (auto [x, y] : p.covers()) rows += f.dim(x);
  IntMatrix constraints(rows, offset.back());
  std::size_t r = 0;
  for (auto [x, y] : p.covers()) {
    constraints.add_block(r, offset[x], IntMatrix::identity(f.dim(x)));
    constraints.add_block(r, offset[y], f.cover_map(x, y), -1);
    r += f.dim(x);
  }
  return kernel_lattice(constraints);
}

// ---------------------------------------------------------------------------
// Maps of posets and presheaves

PosetMap::PosetMap(const Poset& src, const Poset& tgt, std::vector<std::size_t> img)
    : source(&src), target(&tgt), image(std::move(img)) {
  if (image.size() != src.size()) throw PreconditionError("poset map: one image per element is required");
  for (std::size_t v : image)
    if (v >= tgt.size()) throw PreconditionError("poset map: image out of range");
  for (auto [a, b] : src.covers())
    if (!tgt.leq(image[a], image[b]))
      throw PreconditionError("poset map is not order preserving at '" + src.id(a) + "' < '" + src.id(b) + "'");
}

bool PosetMap::injective() const {
  std::vector<std::size_t> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Simplex PosetMap::apply(const Simplex& s) const {
  Simplex out;
  for (std::size_t v : s.vertices) out.vertices.push_back(image.at(v));
  return out;
}

PosetMap compose(const PosetMap& f, const PosetMap& g) {
  if (g.target != f.source) throw PreconditionError("compose: maps are not composable");
  std::vector<std::size_t> img;
  for (std::size_t v : g.image) img.push_back(f.image[v]);
  return PosetMap(*g.source, *f.target, std::move(img));
}

PosetMap inclusion(const Poset& sub, const Poset& p) {
  std::vector<std::size_t> where = ids_to_indices(sub, p);
  require_induced(sub, p, where);
  return PosetMap(sub, p, std::move(where));
}

Presheaf pullback_presheaf(const PosetMap& f, const Presheaf& fp) {
  const Poset& q = *f.source;
  std::vector<std::size_t> dims(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) dims[x] = fp.dim(f.image[x]);
  Presheaf::CoverMaps maps;
  for (auto [a, b] : q.covers())
    if (dims[a] != 0 && dims[b] != 0) maps.emplace(std::make_pair(a, b), fp.restriction(f.image[a], f.image[b]));
  return Presheaf::from_cover_maps(q, std::move(dims), std::move(maps), /*check=*/false);
}

IntMatrix pullback_matrix(const PosetMap& f, const Presheaf& fp, int n) {
  const Presheaf pulled = pullback_presheaf(f, fp);
  const CochainBasis bq = cochain_basis(pulled, nondegenerate_simplices(*f.source, n));
  const CochainBasis bp = cochain_basis(fp, nondegenerate_simplices(fp.base(), n));
  IntMatrix m(bq.rank(), bp.rank());
  for (std::size_t k = 0; k < bq.simplices.size(); ++k) {
    const Simplex image = f.apply(bq.simplices[k]);
    if (image.degenerate()) continue;
    const std::size_t j = *bp.find(image);
    for (std::size_t c = 0; c < bq.offsets[k + 1] - bq.offsets[k]; ++c) m.set(bq.offsets[k] + c, bp.offsets[j] + c, 1);
  }
  return m;
}

std::vector<Integer> pullback(const PosetMap& f, const Presheaf& fp, int n, const std::vector<Integer>& s) {
  return pullback_matrix(f, fp, n).apply(s);
}

IntMatrix pushforward_matrix(const PosetMap& f, const Presheaf& fp, int n) {
  if (!f.injective()) throw PreconditionError("pushforward requires an injective map");
  const Poset& q = *f.source;
  const Presheaf pulled = pullback_presheaf(f, fp);
  const CochainBasis bq = cochain_basis(pulled, nondegenerate_simplices(q, n));
  const CochainBasis bp = cochain_basis(fp, nondegenerate_simplices(fp.base(), n));
  std::vector<std::size_t> preimage(fp.base().size(), q.size());
  for (std::size_t x = 0; x < q.size(); ++x) preimage[f.image[x]] = x;
  IntMatrix m(bp.rank(), bq.rank());
  for (std::size_t k = 0; k < bp.simplices.size(); ++k) {
    Simplex tau;
    bool ok = true;
    for (std::size_t v : bp.simplices[k].vertices) {
      if (preimage[v] == q.size()) {
        ok = false;
        break;
      }
      tau.vertices.push_back(preimage[v]);
    }
    if (!ok) continue;
    auto j = bq.find(tau);
    if (!j) continue;  // the preimage is not a chain of Q
    for (std::size_t c = 0; c < bp.offsets[k + 1] - bp.offsets[k]; ++c) m.set(bp.offsets[k] + c, bq.offsets[*j] + c, 1);
  }
  return m;
}

std::vector<Integer> pushforward(const PosetMap& f, const Presheaf& fp, int n, const std::vector<Integer>& s) {
  return pushforward_matrix(f, fp, n).apply(s);
}

IntMatrix morphism_induced(const PresheafMorphism& kappa, int n) {
  const Poset& p = kappa.source().base();
  const std::vector<Simplex> simplices = nondegenerate_simplices(p, n);
  const CochainBasis from = cochain_basis(kappa.source(), simplices);
  const CochainBasis to = cochain_basis(kappa.target(), simplices);
  IntMatrix m(to.rank(), from.rank());
  for (std::size_t k = 0; k < simplices.size(); ++k)
    m.add_block(to.offsets[k], from.offsets[k], kappa.component(simplices[k].bottom()));
  return m;
}

// ---------------------------------------------------------------------------
// Long exact sequence of a pair

ExactnessReport pair_les_check(const Presheaf& f, const Poset& q) {
  const Poset& p = f.base();
  const std::vector<std::size_t> where = ids_to_indices(q, p);
  require_induced(q, p, where);
  const int top = chain_length(p);
  if (top < 0) return {};
  boost::dynamic_bitset<> in_q(p.size());
  for (std::size_t x : where) in_q.set(x);
  const Presheaf fq = f.restrict_to(q);
  auto rename = [&](const Simplex& s) {
    Simplex out;
    for (std::size_t v : s.vertices) out.vertices.push_back(where[v]);
    return out;
  };
  auto same = [](const Simplex& s) { return s; };

  std::vector<CochainBasis> ba = t_bases(f, top);
  std::vector<CochainBasis> br;
  std::vector<CochainBasis> bb;
  for (int n = 0; n <= top; ++n) {
    std::vector<Simplex> keep;
    for (const auto& s : ba[static_cast<std::size_t>(n)].simplices)
      if (!std::all_of(s.vertices.begin(), s.vertices.end(), [&](std::size_t v) { return in_q.test(v); }))
        keep.push_back(s);
    br.push_back(cochain_basis(f, std::move(keep)));
    bb.push_back(cochain_basis(fq, nondegenerate_simplices(q, n)));
  }
  const CochainComplex cr = complex_from_bases(f, br, 0);
  const CochainComplex ca = complex_from_bases(f, ba, 0);
  const CochainComplex cb = complex_from_bases(fq, bb, 0);

  struct Term {
    std::string name;
    HomologyAt h;
  };
  std::vector<Term> terms;
  std::vector<IntMatrix> arrows;  // arrows[j]: terms[j] -> terms[j+1]
  for (int n = 0; n <= top; ++n) {
    const auto k = static_cast<std::size_t>(n);
    HomologyAt hr = homology_at(cr, k);
    HomologyAt ha = homology_at(ca, k);
    HomologyAt hb = homology_at(cb, k);
    const IntMatrix iota = selection(br[k], ba[k], same).transpose();  // R -> A
    const IntMatrix rho = selection(bb[k], ba[k], rename);              // A -> B
    arrows.push_back(ha.lattice.coordinates(iota * hr.cycles));
    arrows.push_back(hb.lattice.coordinates(rho * ha.cycles));
    if (n < top) {
      const IntMatrix extend = selection(bb[k], ba[k], rename).transpose();
      IntMatrix lifted = ca.differentials[k] * extend * hb.cycles;
      const IntMatrix restrict_r = selection(br[k + 1], ba[k + 1], same);
      HomologyAt next = homology_at(cr, k + 1);
      arrows.push_back(next.lattice.coordinates(restrict_r * lifted));
    }
    const std::string deg = std::to_string(n);
    terms.push_back({"H^" + deg + "(P,Q)", std::move(hr)});
    terms.push_back({"H^" + deg + "(P)", std::move(ha)});
    terms.push_back({"H^" + deg + "(Q)", std::move(hb)});
  }
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const FpAbGroup& here = terms[j].h.group;
    FpAbGroup before = j == 0 ? FpAbGroup() : terms[j - 1].h.group;
    FpAbGroup after = j + 1 < terms.size() ? terms[j + 1].h.group : FpAbGroup();
    IntMatrix in = j == 0 ? IntMatrix(here.generators(), 0) : arrows[j - 1];
    IntMatrix out = j + 1 < terms.size() ? arrows[j] : IntMatrix(0, here.generators());
    try {
      FpAbGroup h = subquotient_homology(GroupMorphism(before, here, in), GroupMorphism(here, after, out));
      if (!h.invariants().is_zero()) return {false, terms[j].name};
    } catch (const BrokenComplexError&) {
      return {false, terms[j].name};
    }
  }
  return {};
}

}  // namespace poscoh
