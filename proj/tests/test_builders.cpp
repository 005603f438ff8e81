#include <doctest.h>

#include "poscoh/builders.hpp"
#include "poscoh/errors.hpp"
#include "support/generators.hpp"
#include "support/khovanov_cube.hpp"

#include <algorithm>

using namespace poscoh;
using namespace poscoh::testing;

namespace {

const char* kTrefoil = "X1,5,2,4\nX3,1,4,6\nX5,3,6,2\n";
// figure-eight knot and Hopf link
const char* kFigureEight = "X4,2,5,1\nX8,6,1,5\nX6,3,7,4\nX2,7,3,8\n";
const char* kHopf = "X1,3,2,4\nX3,1,4,2\n";

AbelianInvariants free(std::size_t r) { return {r, {}}; }

std::vector<AbelianInvariants> kh_via_cellular(const std::string& pd, const KhovanovOptions& options = {}) {
  auto [p, f] = khovanov(parse_pd(pd), options);
  CohomologyReport r = hc(f);
  std::vector<AbelianInvariants> out;
  for (int n = 0; n <= p.max_corank(); ++n) out.push_back(r.at(n));
  return out;
}

}  // namespace

TEST_CASE("face posets") {
  Poset edge = face_poset({{"a", "b"}});
  CHECK(edge.size() == 3);
  CHECK(edge.upper_covers(edge.index("{a,b}")).size() == 2);
  CHECK(edge.corank(edge.index("{a,b}")) == 1);

  Poset sphere = face_poset({{"1", "2", "3"}, {"1", "2", "4"}, {"1", "3", "4"}, {"2", "3", "4"}});
  CHECK(sphere.size() == 14);
  CHECK(has_diamond_property(sphere));
  CohomologyReport r = hs(constant(sphere, 1));
  CHECK(r.at(0) == free(1));
  CHECK(r.at(1).is_zero());
  CHECK(r.at(2) == free(1));

  Poset rp2 = rp2_poset();
  std::size_t counts[4] = {0, 0, 0, 0};
  for (std::size_t x = 0; x < rp2.size(); ++x) ++counts[rp2.corank(x)];
  CHECK(counts[0] == 6);
  CHECK(counts[1] == 15);
  CHECK(counts[2] == 10);
  CHECK(counts[3] == 1);
  CHECK(rp2.corank(rp2.index("bottom")) == 3);
  CHECK(has_diamond_property(face_poset(rp2_facets())));

  CHECK_THROWS_AS(face_poset({{}}), InputError);
  CHECK_THROWS_AS(face_poset({{"a", "a"}}), InputError);
}

TEST_CASE("trees") {
  Poset t = tree_poset(2, 3);
  CHECK(t.size() == 10);
  CHECK(t.maximal_elements().size() == 6);
  CHECK(t.minimal_elements().size() == 1);
  Poset small = tree_poset(1, 2);
  CHECK(small.size() == 3);
  CHECK(small.minimal_elements().size() == 1);
  for (const Poset& p : {t, small, tree_poset(3, 3)}) {
    CohomologyReport r = hs(constant(p, 1));
    CHECK(r.at(0) == free(1));
    for (int n = 1; n <= r.max_degree(); ++n) CHECK(r.at(n).is_zero());
  }
  CHECK_THROWS_AS(tree_poset(0, 3), PreconditionError);
  CHECK_THROWS_AS(tree_poset(2, 1), PreconditionError);
}

TEST_CASE("lattice sizes and ranges") {
  CHECK(boolean_lattice(0).size() == 1);
  CHECK(boolean_lattice(4).size() == 16);
  CHECK(partition_lattice(3).size() == 5);
  CHECK(mobius(partition_lattice(3), "1|2|3", "123") == 2);
  CHECK(partition_lattice(5).size() == 52);
  CHECK(partition_lattice(4).rank(partition_lattice(4).index("12|34")) == 2);
  CHECK_THROWS_AS(boolean_lattice(7), PreconditionError);
  CHECK_THROWS_AS(partition_lattice(0), PreconditionError);
}

TEST_CASE("circle and suspension posets") {
  Poset c = circle_poset();
  CHECK(c.size() == 4);
  CHECK(c.cover_count() == 4);
  CHECK(has_diamond_property(c));
  CHECK(suspension_simplex_poset(3).size() == 9);
  CHECK(suspension_simplex_poset(1).size() == 3);
  CHECK(suspension_simplex_poset(0).size() == 2);
  Poset s = suspension_simplex_poset(3);
  CHECK(s.corank(s.index("{1,2,3}")) == 3);
  CHECK(s.corank(s.index("apex")) == 0);
  CHECK(s.upper_covers(s.index("{2}")).size() == 2);
}

TEST_CASE("Bruhat order") {
  BruhatOrder b(4);
  const Poset& p = b.poset();
  CHECK(p.size() == 23);
  CHECK(p.is_graded());
  CHECK(has_diamond_property(p));
  auto pairs = b.swap_pairs("4321");
  std::sort(pairs.begin(), pairs.end());
  CHECK(pairs == std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {4, 3}});
  CHECK(b.minimal_swap_pair("4321") == std::make_pair(2, 1));
  CHECK(b.canonical_chain("4321") == std::vector<std::string>{"4321", "4312", "4132", "1432", "1423", "1243"});
  CHECK(p.minimal_elements() == std::vector<std::size_t>{p.index("4321")});
  CHECK(p.corank(p.index("4321")) == 5);
  for (std::size_t x = 0; x < p.size(); ++x) {
    CHECK(p.corank(x) == inversions(p.id(x)) - 1);
    for (std::size_t y : p.upper_covers(x)) CHECK(inversions(p.id(x)) == inversions(p.id(y)) + 1);
  }
  for (int n = 2; n <= 5; ++n) {
    BruhatOrder bn(n);
    std::size_t factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= static_cast<std::size_t>(k);
    CHECK(bn.poset().size() == factorial - 1);
    CHECK(bn.poset().max_corank() == n * (n - 1) / 2 - 1);
  }
  CHECK_THROWS_AS(BruhatOrder(6), PreconditionError);
  CHECK_THROWS_AS(BruhatOrder(1), PreconditionError);
}

TEST_CASE("Bruhat signs") {
  BruhatOrder b(4);
  const Poset& p = b.poset();
  SignTable induced = b.induced_signs();
  CHECK(induced.size() == p.cover_count());
  DiamondTally t = check_sign_rule(p, induced);
  CHECK(t.diamonds > 0);
  CHECK(t.satisfied == t.diamonds);
  SignTable cell = cell_signs(p, b.canonical_generators());
  CHECK(cell == induced);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p.corank(x) == 0) continue;
    auto [i, j] = b.minimal_swap_pair(p.id(x));
    CHECK(cell.at({x, p.index(interchange(p.id(x), i, j))}) == 1);
  }
  // the default generator choice also satisfies the sign rule
  DiamondTally d = check_sign_rule(p, cell_signs(p));
  CHECK(d.satisfied == d.diamonds);
}

TEST_CASE("PD codes") {
  LinkDiagram d = parse_pd("# right trefoil\nX1,5,2,4\nX[3,1,4,6]\n  X5, 3, 6, 2  # last\n\n");
  REQUIRE(d.crossings.size() == 3);
  CHECK(d.crossings[1] == std::array<long, 4>{3, 1, 4, 6});
  CHECK_THROWS_AS(parse_pd("X1,2,3"), InputError);
  CHECK_THROWS_AS(parse_pd("Y1,2,3,4"), InputError);
  CHECK_THROWS_AS(parse_pd("X1,2,3,x"), InputError);
  CHECK_THROWS_AS(parse_pd("X1,2,3,4\n"), InputError);
  CHECK(parse_pd("").crossings.empty());

  LinkDiagram t = parse_pd(kTrefoil);
  CHECK(resolution_circles(t, {false, false, false}).size() == 2);
  CHECK(resolution_circles(t, {true, true, true}).size() == 3);
  for (unsigned s = 0; s < 8; ++s) {
    std::vector<bool> ones{bool(s & 1), bool(s & 2), bool(s & 4)};
    auto circles = resolution_circles(t, ones);
    CHECK(circles.size() == cube_resolution(t.crossings, s).circles.size());
  }
}

TEST_CASE("Khovanov presheaf") {
  auto [p, f] = khovanov(parse_pd(kTrefoil));
  CHECK(p.size() == 9);
  CHECK(f.dim(p.index("apex")) == 4);
  CHECK(f.dim(p.index("apex'")) == 0);
  CHECK(f.dim(p.index("{1,2,3}")) == 8);
  CHECK_FALSE(validate(f));
  CHECK(is_cellular(p).cellular);
  // the edge maps are the cube oracle's
  LinkDiagram d = parse_pd(kTrefoil);
  for (unsigned t = 1; t < 8; ++t)
    for (unsigned i = 0; i < 3; ++i) {
      if (!(t >> i & 1)) continue;
      const unsigned s = t & ~(1u << i);
      std::string lower = "{";
      for (unsigned k = 0; k < 3; ++k)
        if (t >> k & 1) lower += (lower.size() > 1 ? "," : "") + std::to_string(k + 1);
      lower += "}";
      std::string upper = "apex";
      if (s) {
        upper = "{";
        for (unsigned k = 0; k < 3; ++k)
          if (s >> k & 1) upper += (upper.size() > 1 ? "," : "") + std::to_string(k + 1);
        upper += "}";
      }
      CHECK(f.cover_map(p.index(lower), p.index(upper)) ==
            cube_edge(cube_resolution(d.crossings, s), cube_resolution(d.crossings, t)));
    }

  auto [q, g] = khovanov(parse_pd(kTrefoil), KhovanovOptions{true});
  CHECK(g.dim(q.index("apex'")) == 4);
  CHECK_FALSE(validate(g));
}

TEST_CASE("Khovanov homology against the cube complex") {
  const auto trefoil = khovanov_cube(parse_pd(kTrefoil).crossings);
  REQUIRE(trefoil.size() == 4);
  CHECK(trefoil[0] == free(2));
  CHECK(trefoil[1].is_zero());
  CHECK(trefoil[2] == free(1));
  CHECK(trefoil[3] == AbelianInvariants{1, {2}});
  CHECK(kh_via_cellular(kTrefoil) == trefoil);

  for (const char* pd : {kHopf, kFigureEight}) {
    CAPTURE(pd);
    CHECK(kh_via_cellular(pd) == khovanov_cube(parse_pd(pd).crossings));
  }
  auto unknot = kh_via_cellular("");
  REQUIRE(unknot.size() == 1);
  CHECK(unknot[0] == free(2));

  // with both apexes carrying V^c(0) an extra copy of it sits in degree 0
  auto both = kh_via_cellular(kTrefoil, KhovanovOptions{true});
  CHECK(both[0] == free(6));
  for (std::size_t i = 1; i < 4; ++i) CHECK(both[i] == trefoil[i]);
}

TEST_CASE("Khovanov homology does not depend on strand labels") {
  // relabel the trefoil strands by a permutation; circle order changes, homology must not
  const std::vector<long> relabel{0, 6, 4, 2, 5, 1, 3};
  LinkDiagram d = parse_pd(kTrefoil);
  std::string text;
  for (const auto& c : d.crossings)
    text += "X" + std::to_string(relabel[c[0]]) + "," + std::to_string(relabel[c[1]]) + "," +
            std::to_string(relabel[c[2]]) + "," + std::to_string(relabel[c[3]]) + "\n";
  CHECK(kh_via_cellular(text) == kh_via_cellular(kTrefoil));
}
