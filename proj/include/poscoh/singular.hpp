#pragma once

// The nerve of a poset, the cochain complexes S*(P;F) and T*(P;F), their
// relative and reduced variants, and the maps between them.

#include "poscoh/abelian.hpp"
#include "poscoh/poset.hpp"
#include "poscoh/presheaf.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace poscoh {

/// A chain sigma_n <= ... <= sigma_0, stored with sigma_n first:
/// vertices[k] = sigma_{n-k}. The empty chain is the basepoint in degree -1.
struct Simplex {
  std::vector<std::size_t> vertices;

  int degree() const { return static_cast<int>(vertices.size()) - 1; }
  /// sigma_i, counted from the top.
  std::size_t at(int i) const { return vertices.at(vertices.size() - 1 - static_cast<std::size_t>(i)); }
  std::size_t bottom() const { return vertices.front(); }
  bool degenerate() const;
  std::string to_string(const Poset& p) const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

/// d_i removes sigma_i. Throws PreconditionError unless 0 <= i <= degree.
Simplex face(const Simplex& s, int i);
/// s_i repeats sigma_i.
Simplex degeneracy(const Simplex& s, int i);

/// Strict chains of length n in lexicographic order; n = -1 gives the basepoint.
std::vector<Simplex> nondegenerate_simplices(const Poset& p, int n);
/// All weak chains of length n, degenerate ones included.
std::vector<Simplex> all_simplices(const Poset& p, int n);
/// Length of the longest strict chain; -1 for the empty poset.
int chain_length(const Poset& p);

/// Generators of one cochain degree: each simplex contributes F(sigma_n).
struct CochainBasis {
  std::vector<Simplex> simplices;
  std::vector<std::size_t> offsets;  ///< offsets[k] is the first generator of simplices[k]; back() is the total
  std::map<std::vector<std::size_t>, std::size_t> lookup;

  std::size_t rank() const { return offsets.back(); }
  std::optional<std::size_t> find(const Simplex& s) const;
};

CochainBasis cochain_basis(const Presheaf& f, std::vector<Simplex> simplices);

/// The differential from degree-n cochains on `from` to degree-(n+1) cochains
/// on `to`. Face terms whose simplex is not in `from` are dropped, which is
/// exactly the relative differential when `from` omits a subcomplex.
IntMatrix nerve_differential(const Presheaf& f, const CochainBasis& from, const CochainBasis& to);

/// A graded sequence of presented groups with differentials on generators.
struct CochainComplex {
  int min_degree = 0;
  std::vector<FpAbGroup> groups;         ///< groups[k] sits in degree min_degree + k
  std::vector<IntMatrix> differentials;  ///< groups[k] -> groups[k+1]; the last maps to the zero group
  /// Set when the top group's outgoing differential was not built (S* is
  /// truncated); the top degree is then left out of the cohomology.
  bool truncated = false;

  int max_degree() const { return min_degree + static_cast<int>(groups.size()) - 1; }
};

struct CohomologyReport {
  int min_degree = 0;
  std::vector<AbelianInvariants> groups;

  /// H^n, zero outside the computed range.
  AbelianInvariants at(int n) const;
  int max_degree() const { return min_degree + static_cast<int>(groups.size()) - 1; }
  /// Equal in every degree, treating missing degrees as zero.
  bool same_groups(const CohomologyReport& other) const;
  std::string to_string() const;
};

/// Throws BrokenComplexError unless d o d vanishes modulo relations.
void check_complex(const CochainComplex& c);
CohomologyReport cohomology(const CochainComplex& c);

CochainComplex t_complex(const Presheaf& f);
/// S* in degrees 0..max_degree; requires max_degree > chain_length(P).
CochainComplex s_complex(const Presheaf& f, int max_degree);
/// T*(P, Q; F) for an induced subposet Q (given by identifiers from P).
CochainComplex relative_t_complex(const Presheaf& f, const Poset& q);
/// Z^k -> T^0(P; Z^k) -> ..., the augmentation in degree -1.
CochainComplex reduced_t_complex(const Poset& p, std::size_t k);

CohomologyReport hs(const Presheaf& f);
CohomologyReport reduced_hs(const Poset& p, std::size_t k);

/// The limit: families (a_x) with a_x = F^y_x a_y on every cover, as a basis
/// of columns in T^0 = sum_x F(x).
IntMatrix limit(const Presheaf& f);

/// An order-preserving map between posets, by indices.
struct PosetMap {
  const Poset* source = nullptr;
  const Poset* target = nullptr;
  std::vector<std::size_t> image;

  /// Throws PreconditionError unless the map is order preserving.
  PosetMap(const Poset& src, const Poset& tgt, std::vector<std::size_t> img);
  bool injective() const;
  Simplex apply(const Simplex& s) const;
};

PosetMap compose(const PosetMap& f, const PosetMap& g);  ///< f o g
/// The inclusion of an induced subposet, matched by identifiers.
PosetMap inclusion(const Poset& sub, const Poset& p);

/// f*F on the source of f.
Presheaf pullback_presheaf(const PosetMap& f, const Presheaf& fp);
/// f*: T^n(P;F) -> T^n(Q;f*F), (f*s).sigma = s.(f sigma), zero when f sigma degenerates.
IntMatrix pullback_matrix(const PosetMap& f, const Presheaf& fp, int n);
std::vector<Integer> pullback(const PosetMap& f, const Presheaf& fp, int n, const std::vector<Integer>& s);
/// f_*: T^n(Q;f*F) -> T^n(P;F) for injective f, zero off the image.
IntMatrix pushforward_matrix(const PosetMap& f, const Presheaf& fp, int n);
std::vector<Integer> pushforward(const PosetMap& f, const Presheaf& fp, int n, const std::vector<Integer>& s);

/// kappa_*: T^n(P;F) -> T^n(P;G), applying kappa at the bottom of each simplex.
IntMatrix morphism_induced(const PresheafMorphism& kappa, int n);

struct ExactnessReport {
  bool exact = true;
  std::string location;  ///< first term where exactness fails
};

/// Builds the long exact sequence of the pair (P, Q) with the connecting map
/// obtained by extending cocycles by zero, and checks exactness at every term.
ExactnessReport pair_les_check(const Presheaf& f, const Poset& q);

}  // namespace poscoh
