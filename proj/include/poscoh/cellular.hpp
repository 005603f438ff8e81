#pragma once

// Cellular cochains of a graded poset: the groups A_x, the complex
// C^n = sum_{|x|=n} A_x (x) F(x), cellularity, and the comparison with HS*.

#include "poscoh/abelian.hpp"
#include "poscoh/poset.hpp"
#include "poscoh/presheaf.hpp"
#include "poscoh/singular.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poscoh {

/// A compatible family: the chains that agree with `anchor` except at the
/// missing corank level.
struct CompatibleFamily {
  Simplex anchor;
  int level = 0;                       ///< corank of the missing entry
  std::vector<std::size_t> members;    ///< indices into the owning AGroup's chains
};

/// A_x presented by the maximal chains x = sigma_n < ... < sigma_0 modulo the
/// sums over compatible families.
struct AGroup {
  std::size_t element = 0;
  std::vector<Simplex> chains;
  std::vector<CompatibleFamily> families;
  FpAbGroup group;
};

AGroup a_group(const Poset& p, std::size_t x);
AGroup a_group(const Poset& p, const std::string& x);

struct CellularityVerdict {
  bool cellular = true;
  /// First element whose open interval has reduced cohomology off degree
  /// corank - 1, with that degree.
  std::optional<std::pair<std::size_t, int>> witness;
};

CellularityVerdict is_cellular(const Poset& p);

/// The complex of A_x (x) F(x). Generators of degree n are triples
/// (x, chain, coordinate) with |x| = n, ordered by x, then chain, then coordinate.
CochainComplex cellular_complex(const Presheaf& f);
CohomologyReport hc(const Presheaf& f);

/// The same complex read off the corank filtration: C^n = HS^n(P^n, P^{n-1}; F)
/// presented as a cokernel, with the connecting map of the triple as differential.
CochainComplex filtration_complex(const Presheaf& f);

struct EpsilonReport {
  bool ok = true;
  std::string failure;
};

/// Checks HS^*(P^n, P^{n-1}; F) = sum_{|x|=n} HS^*(P>=x, P>x; F) and, for every
/// x of corank n, HS^*(P>=x, P>x; F) = HS^*(P>=x, P>x; Delta F(x)) = reduced
/// HS^{*-1}(P>x; Z^dim F(x)), degree by degree.
EpsilonReport epsilon_check(const Presheaf& f, int n);

struct DegreeComparison {
  int n = 0;
  AbelianInvariants hs;
  AbelianInvariants hc;
  bool isomorphic = false;
};

struct ComparisonReport {
  CellularityVerdict cellularity;
  std::vector<DegreeComparison> degrees;
  /// False only if the poset is cellular and some degree differs.
  bool theorem_holds = true;
  bool all_isomorphic() const;
};

ComparisonReport compare(const Presheaf& f);

using SignTable = std::map<std::pair<std::size_t, std::size_t>, int>;

/// Incidence signs [x, y] for every cover x < y of a cell-poset-like P:
/// x sigma_y = [x, y] sigma_x in A_x. The generator sigma_x is the
/// lexicographically least maximal chain unless given in `generators`.
/// Throws PreconditionError without the diamond property or when some A_x is
/// not infinite cyclic, or a chosen chain does not generate it.
SignTable cell_signs(const Poset& p, const std::map<std::size_t, Simplex>& generators = {});

struct DiamondTally {
  std::size_t diamonds = 0;
  std::size_t satisfied = 0;
};

/// Counts the diamonds x < y, y' < z with [x,y][y,z] = -[x,y'][y',z]. A
/// corank-1 element with two upper covers closes a diamond with an adjoined
/// top, where the rule reads [x,y] = -[x,y'].
DiamondTally check_sign_rule(const Poset& p, const SignTable& signs);

}  // namespace poscoh
