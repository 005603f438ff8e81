#include <doctest.h>

#include "poscoh/abelian.hpp"
#include "poscoh/errors.hpp"

#include <random>

using namespace poscoh;

namespace {

// Cofactor expansion; deliberately naive so it shares nothing with the
// elimination code under test.
Integer laplace_det(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Integer term = a[0][j] * laplace_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

Integer gcd_int(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Invariant factors from gcds of k x k minors: d_k = g_k / g_{k-1}.
std::vector<Integer> minors_oracle(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<Integer>> a(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) a[i][j] = m.at(r[i], c[j]);
        g = gcd_int(g, laplace_det(a));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi, double density) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution keep(density);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) m.set(i, j, val(rng));
  return m;
}

bool is_upper_hermite(const IntMatrix& h) {
  std::size_t last_pivot = 0;
  bool zero_seen = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const auto& row = h.row(i);
    if (row.empty()) {
      zero_seen = true;
      continue;
    }
    if (zero_seen) return false;
    const std::size_t p = row.front().col;
    if (i > 0 && p <= last_pivot) return false;
    if (row.front().value <= 0) return false;
    for (std::size_t k = 0; k < i; ++k) {
      Integer above = h.at(k, p);
      if (above < 0 || above >= row.front().value) return false;
    }
    last_pivot = p;
  }
  return true;
}

}  // namespace

TEST_CASE("hnf examples") {
  auto id = hnf(IntMatrix::identity(2));
  CHECK(id.h == IntMatrix::identity(2));
  CHECK(id.u == IntMatrix::identity(2));

  auto h = hnf(IntMatrix{{2, 4}, {6, 8}});
  CHECK(h.h == IntMatrix{{2, 0}, {0, 4}});
  CHECK(h.u * IntMatrix{{2, 4}, {6, 8}} == h.h);
  CHECK(h.rank == 2);

  auto z = hnf(IntMatrix(2, 3));
  CHECK(z.h.is_zero());
  CHECK(z.u == IntMatrix::identity(2));
  CHECK(z.rank == 0);
}

TEST_CASE("snf examples") {
  auto s = snf(IntMatrix{{2, 4}, {6, 8}});
  CHECK(s.diagonal == std::vector<Integer>{2, 4});
  auto d = snf(IntMatrix{{6, 0}, {0, 4}});
  CHECK(d.diagonal == std::vector<Integer>{2, 12});
  auto i = snf(IntMatrix::identity(3));
  CHECK(i.s == IntMatrix::identity(3));
}

TEST_CASE("kernel_lattice examples") {
  auto k = kernel_lattice(IntMatrix{{1, -1}});
  REQUIRE(k.cols() == 1);
  CHECK(abs(k.at(0, 0)) == 1);
  CHECK(k.at(0, 0) == k.at(1, 0));

  CHECK(kernel_lattice(IntMatrix{{2, 4}, {6, 8}}).cols() == 0);

  IntMatrix m{{1, 1, 1}};
  auto k3 = kernel_lattice(m);
  REQUIRE(k3.cols() == 2);
  CHECK((m * k3).is_zero());
  // a basis of a saturated rank-2 sublattice of Z^3 has coprime 2x2 minors
  CHECK(minors_oracle(k3) == std::vector<Integer>{1, 1});
}

TEST_CASE("subquotient_homology examples") {
  FpAbGroup z(1);
  FpAbGroup zero;
  // Z --x2--> Z --> 0
  GroupMorphism f(z, z, IntMatrix{{2}});
  GroupMorphism g(z, zero, IntMatrix(0, 1));
  CHECK(subquotient_homology(f, g).invariants() == AbelianInvariants{0, {2}});

  FpAbGroup z2(2);
  GroupMorphism f2(z2, z2, IntMatrix{{1, -1}, {1, -1}});
  GroupMorphism g2(z2, zero, IntMatrix(0, 2));
  CHECK(subquotient_homology(f2, g2).invariants() == AbelianInvariants{1, {}});

  GroupMorphism f0(zero, zero, IntMatrix(0, 0));
  CHECK(subquotient_homology(f0, f0).invariants().is_zero());

  GroupMorphism bad(z, z, IntMatrix{{1}});
  CHECK_THROWS_AS(subquotient_homology(bad, bad), BrokenComplexError);
}

TEST_CASE("subquotient with relations in the target") {
  // Z --x2--> Z/4 --> Z/2 (reduction): exact in the middle
  FpAbGroup z(1);
  FpAbGroup z4(1, IntMatrix{{4}});
  FpAbGroup z2(1, IntMatrix{{2}});
  GroupMorphism f(z, z4, IntMatrix{{2}});
  GroupMorphism g(z4, z2, IntMatrix{{1}});
  CHECK(subquotient_homology(f, g).invariants().is_zero());
  // Z/4 --x2--> Z/4 --x2--> Z/4 is exact; with a zero map in front the
  // kernel {0, 2} survives
  GroupMorphism h(z4, z4, IntMatrix{{2}});
  GroupMorphism zero_map(z4, z4, IntMatrix{{0}});
  CHECK(subquotient_homology(h, h).invariants().is_zero());
  CHECK(subquotient_homology(zero_map, h).invariants() == AbelianInvariants{0, {2}});
}

TEST_CASE("morphism well-definedness") {
  FpAbGroup z2(1, IntMatrix{{2}});
  FpAbGroup z(1);
  CHECK_THROWS_AS(GroupMorphism(z2, z, IntMatrix{{1}}), BrokenComplexError);
  CHECK_NOTHROW(GroupMorphism(z, z2, IntMatrix{{1}}));
}

TEST_CASE("invariants formatting and direct sums") {
  AbelianInvariants a{2, {2}};
  CHECK(a.to_string() == "Z^2 + Z/2");
  CHECK(AbelianInvariants{}.to_string() == "0");
  AbelianInvariants b = direct_sum(AbelianInvariants{0, {2}}, AbelianInvariants{1, {3}});
  CHECK(b == AbelianInvariants{1, {6}});
}

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 5;
    IntMatrix m = random_matrix(rng, n, n, -5, 5, 0.8);
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    CHECK(determinant(m) == laplace_det(a));
  }
}

TEST_CASE("property: snf agrees with the gcd-of-minors oracle") {
  std::mt19937 rng(20240517);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t r = 1 + rng() % 5;
    std::size_t c = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, r, c, -6, 6, 0.6);
    SmithForm s = snf(m);
    CHECK(s.u * m * s.v == s.s);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    CHECK(s.u * s.u_inv == IntMatrix::identity(r));
    std::vector<Integer> nonzero;
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
      CHECK(s.diagonal[i] >= 0);
      if (i + 1 < s.diagonal.size() && s.diagonal[i] != 0) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
      if (s.diagonal[i] != 0) nonzero.push_back(s.diagonal[i]);
    }
    for (std::size_t i = 0; i < r; ++i)
      for (const auto& e : s.s.row(i)) CHECK(e.col == i);
    CHECK(nonzero == minors_oracle(m));
    CHECK(invariant_factors(m) == nonzero);
  }
}

TEST_CASE("property: hnf shape and unimodular transform") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t r = 1 + rng() % 5;
    std::size_t c = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, r, c, -9, 9, 0.5);
    HermiteForm h = hnf(m);
    CHECK(h.u * m == h.h);
    CHECK(abs(determinant(h.u)) == 1);
    CHECK(is_upper_hermite(h.h));
    CHECK(hnf(h.h).h == h.h);
  }
}

TEST_CASE("property: sparse invariant factors on larger sparse matrices") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t r = 10 + rng() % 15;
    std::size_t c = 10 + rng() % 15;
    IntMatrix m = random_matrix(rng, r, c, -2, 2, 0.15);
    std::vector<Integer> dense;
    for (auto& d : snf(m).diagonal)
      if (d != 0) dense.push_back(d);
    CHECK(invariant_factors(m) == dense);
  }
}

TEST_CASE("property: kernel lattice is saturated and annihilated") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t r = 1 + rng() % 4;
    std::size_t c = 1 + rng() % 6;
    IntMatrix m = random_matrix(rng, r, c, -4, 4, 0.7);
    IntMatrix k = kernel_lattice(m);
    CHECK((m * k).is_zero());
    CHECK(k.cols() + invariant_factors(m).size() == c);
    if (k.cols() > 0) {
      for (auto& d : invariant_factors(k)) CHECK(d == 1);
    }
  }
}

TEST_CASE("property: exact pairs have zero homology") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4;
    std::size_t c = 1 + rng() % 6;
    IntMatrix g = random_matrix(rng, r, c, -4, 4, 0.7);
    IntMatrix k = kernel_lattice(g);
    FpAbGroup a(k.cols()), b(c), target(r);
    CHECK(subquotient_homology(GroupMorphism(a, b, k), GroupMorphism(b, target, g)).invariants().is_zero());
  }
}

TEST_CASE("property: normal form is idempotent and presentation reduction preserves the group") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t gens = 1 + rng() % 6;
    std::size_t rels = rng() % 6;
    IntMatrix rel = random_matrix(rng, gens, rels, -4, 4, 0.4);
    FpAbGroup g(gens, rel);
    AbelianInvariants inv = g.invariants();
    std::vector<Integer> diag = inv.torsion;
    std::size_t k = inv.rank + diag.size();
    IntMatrix canon(k, diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) canon.set(inv.rank + i, i, diag[i]);
    CHECK(FpAbGroup(k, canon).invariants() == inv);

    ReducedPresentation red = reduce_presentation(g);
    CHECK(red.group.invariants() == inv);
    // the reduced coordinates are an isomorphism: from then to is identity on
    // the reduced group, and to is well defined on g
    CHECK_NOTHROW(GroupMorphism(g, red.group, red.to_reduced));
    CHECK_NOTHROW(GroupMorphism(red.group, g, red.from_reduced));
    IntMatrix round = red.to_reduced * red.from_reduced;
    CHECK(round == IntMatrix::identity(red.group.generators()));
  }
}

TEST_CASE("lattice membership and coordinates") {
  Lattice l(IntMatrix{{2, 0}, {0, 3}, {0, 0}});
  CHECK(l.rank() == 2);
  CHECK(l.contains({4, 9, 0}));
  CHECK_FALSE(l.contains({1, 0, 0}));
  CHECK_FALSE(l.contains({0, 0, 1}));
  auto c = l.coordinates(std::vector<Integer>{4, 9, 0});
  CHECK(l.basis().apply(c) == std::vector<Integer>{4, 9, 0});
  CHECK_THROWS_AS(l.coordinates(std::vector<Integer>{1, 0, 0}), PreconditionError);
}

TEST_CASE("empty shapes") {
  IntMatrix a(0, 3), b(3, 0);
  CHECK((b * a).rows() == 3);
  CHECK((b * a).is_zero());
  CHECK((a * b).rows() == 0);
  CHECK(invariant_factors(a).empty());
  CHECK(kernel_lattice(a).cols() == 3);
  CHECK(FpAbGroup().invariants().is_zero());
  CHECK(snf(IntMatrix(0, 0)).diagonal.empty());
}
