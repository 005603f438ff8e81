#pragma once

// Example posets and presheaves: simplicial face posets, trees, Boolean and
// partition lattices, Bruhat orders, and the Khovanov cube poset.

#include "poscoh/cellular.hpp"
#include "poscoh/poset.hpp"
#include "poscoh/presheaf.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace poscoh {

using Facets = std::vector<std::vector<std::string>>;

/// Nonempty faces of the simplicial complex generated by `facets`, ordered by
/// reverse inclusion, so corank(face) = dim(face) for pure complexes. Face
/// ids are "{a,b,...}" with sorted vertex names. With `adjoin_minimum` a
/// formal element "bottom" is placed below everything.
Poset face_poset(const Facets& facets, bool adjoin_minimum = false);

/// The minimal six-vertex triangulation of the real projective plane.
Facets rp2_facets();
/// Face poset of rp2_facets() with a bottom element adjoined.
Poset rp2_poset();

/// Rooted tree ordered away from the root: the root has `branching`
/// children, every other internal node `branching - 1`, and all leaves sit at
/// distance `depth`. Ids are paths: "r", "r.0", "r.0.1", ...
Poset tree_poset(int depth, int branching);

/// Subsets of {1..n} by inclusion; ids "{}", "{1}", "{1,2}", ...
Poset boolean_lattice(int n);
/// Set partitions of {1..n} by refinement, finer below; ids like "12|3|4".
Poset partition_lattice(int n);

/// Two vertices v0, v1 and two edges e0, e1: the cell poset of a circle.
Poset circle_poset();
/// Face poset of the boundary of a square (four vertices, four edges).
Poset square_circle_poset();
/// Nonempty subsets of {1..n} by reverse inclusion with two maxima "apex" and
/// "apex'" above the singletons: the cell poset of the suspension of the
/// (n-1)-simplex.
Poset suspension_simplex_poset(int n);

/// The Bruhat order on S_n minus the identity, with its swap-pair structure.
class BruhatOrder {
 public:
  explicit BruhatOrder(int n);

  int n() const { return n_; }
  const Poset& poset() const { return poset_; }
  /// Swap pairs (i, j), i > j, of the permutation with the given one-line id.
  std::vector<std::pair<int, int>> swap_pairs(const std::string& perm) const;
  std::pair<int, int> minimal_swap_pair(const std::string& perm) const;
  /// x, then repeatedly the result of interchanging the minimal swap pair, up to corank 0.
  std::vector<std::string> canonical_chain(const std::string& perm) const;
  /// Canonical chains as generators for cell_signs.
  std::map<std::size_t, Simplex> canonical_generators() const;
  /// Signs by induction: the minimal swap pair gives +1, other covers of a
  /// corank-1 element give -1, and the rest follow from the diamond rule.
  SignTable induced_signs() const;

 private:
  int n_;
  Poset poset_;
};

/// Interchanging the values i and j in a one-line permutation.
std::string interchange(const std::string& perm, int i, int j);
/// Number of inversions.
int inversions(const std::string& perm);

/// A planar diagram code: one 4-tuple of strand labels per crossing.
struct LinkDiagram {
  std::vector<std::array<long, 4>> crossings;
};

/// Parses lines "Xa,b,c,d" or "X[a,b,c,d]"; '#' starts a comment. Throws
/// InputError unless every label occurs exactly twice.
LinkDiagram parse_pd(const std::string& text);

/// Circles of the resolution in which the crossings whose bit is set in
/// `ones` take their 1-smoothing. Each circle is its sorted strand labels;
/// circles are sorted by least label.
std::vector<std::vector<long>> resolution_circles(const LinkDiagram& d, const std::vector<bool>& ones);

struct KhovanovOptions {
  /// Give both apexes the value V^{c(empty)}; by default "apex'" carries 0.
  bool both_apexes = false;
};

/// The suspension poset of the crossing simplex with the Khovanov presheaf:
/// F(T) = V^{(x) c(T)}, the merge and split maps of Z[X]/(X^2) on covers.
/// Tensor factors follow the circle order; basis bit 0 is 1 and bit 1 is X,
/// with the first circle most significant.
std::pair<Poset, Presheaf> khovanov(const LinkDiagram& d, const KhovanovOptions& options = {});

}  // namespace poscoh
