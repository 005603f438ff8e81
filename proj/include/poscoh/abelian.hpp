#pragma once

// Exact integer linear algebra and finitely presented abelian groups.
//
// Matrices act on column vectors: an r x c matrix is a homomorphism
// Z^c -> Z^r, and the composite g o f is the product G * F.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace poscoh {

/// Arbitrary-precision integer; expression templates off so `auto` is safe.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

/// Sparse row-major integer matrix. Rows hold their nonzero entries sorted by
/// column; zero entries are never stored.
class IntMatrix {
 public:
  struct Entry {
    std::size_t col;
    Integer value;
  };

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  /// Dense literal, one inner list per row.
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static IntMatrix from_dense(std::size_t rows, std::size_t cols,
                              const std::vector<Integer>& row_major);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Integer& v);
  void add_to(std::size_t r, std::size_t c, const Integer& v);
  const std::vector<Entry>& row(std::size_t r) const { return data_[r]; }
  /// Replaces row r; entries must be sorted by column and nonzero.
  void set_row(std::size_t r, std::vector<Entry> entries);

  std::size_t nonzeros() const;
  bool is_zero() const;
  bool is_identity() const;

  IntMatrix transpose() const;
  IntMatrix select_rows(const std::vector<std::size_t>& rows) const;
  IntMatrix select_cols(const std::vector<std::size_t>& cols) const;
  std::vector<Integer> column(std::size_t c) const;
  std::vector<Integer> dense() const;

  /// Writes `block` with its top-left corner at (r0, c0), adding to existing entries.
  void add_block(std::size_t r0, std::size_t c0, const IntMatrix& block, const Integer& scale = 1);

  std::vector<Integer> apply(const std::vector<Integer>& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix diagonal(const std::vector<Integer>& d);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

/// Determinant by fraction-free elimination (Bareiss). Square matrices only.
Integer determinant(const IntMatrix& m);

struct HermiteForm {
  IntMatrix h;  ///< row Hermite normal form, h = u * m
  IntMatrix u;  ///< unimodular
  std::size_t rank = 0;
};

/// Row Hermite normal form: upper echelon, positive pivots, entries above each
/// pivot reduced into [0, pivot).
HermiteForm hnf(const IntMatrix& m);

struct SmithForm {
  IntMatrix s;      ///< diagonal, d_1 | d_2 | ..., d_i >= 0; s = u * m * v
  IntMatrix u;      ///< unimodular
  IntMatrix u_inv;  ///< inverse of u
  IntMatrix v;      ///< unimodular
  std::vector<Integer> diagonal;  ///< the min(rows, cols) diagonal entries of s
};

/// Smith normal form with transforms, smallest-nonzero pivoting.
SmithForm snf(const IntMatrix& m);

/// Nonzero invariant factors of m in divisibility order. Uses sparse
/// elimination on unit pivots and falls back to dense Smith reduction on the
/// remainder, so it scales to the large but very sparse coboundary matrices.
std::vector<Integer> invariant_factors(const IntMatrix& m);

/// Columns form a Z-basis of {x : m x = 0}.
IntMatrix kernel_lattice(const IntMatrix& m);

/// A sublattice of Z^n held as an echelon basis, for membership tests and
/// coordinates.
class Lattice {
 public:
  /// The lattice spanned by the columns of `generators`.
  explicit Lattice(const IntMatrix& generators);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  /// Basis vectors as columns (ambient_dim x rank).
  IntMatrix basis() const;

  bool contains(const std::vector<Integer>& v) const;
  /// Coordinates of v in basis(); throws PreconditionError if v is not in the lattice.
  std::vector<Integer> coordinates(const std::vector<Integer>& v) const;
  /// Coordinates of every column of m, as the columns of the result.
  IntMatrix coordinates(const IntMatrix& m) const;

 private:
  bool reduce(std::vector<Integer>& v, std::vector<Integer>* coords) const;

  std::size_t ambient_ = 0;
  std::vector<std::vector<Integer>> basis_;  // echelon rows
  std::vector<std::size_t> pivots_;
};

/// Isomorphism type Z^rank + Z/t_1 + ... + Z/t_k with t_1 | ... | t_k, t_i > 1.
struct AbelianInvariants {
  std::size_t rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  std::string to_string() const;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// Direct sum, canonicalized back to invariant factors.
AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b);

/// Z^generators modulo the column span of `relations`.
class FpAbGroup {
 public:
  FpAbGroup() : FpAbGroup(0) {}
  /// The free group on `generators` generators.
  explicit FpAbGroup(std::size_t generators);
  FpAbGroup(std::size_t generators, IntMatrix relations);

  std::size_t generators() const { return generators_; }
  const IntMatrix& relations() const { return relations_; }
  const AbelianInvariants& invariants() const { return invariants_; }
  bool has_relations() const { return relations_.cols() > 0 && !relations_.is_zero(); }

  bool isomorphic(const FpAbGroup& other) const { return invariants_ == other.invariants_; }

 private:
  std::size_t generators_ = 0;
  IntMatrix relations_;
  AbelianInvariants invariants_;
};

/// A homomorphism of presented groups given on generators. Construction checks
/// that relations are carried into relations.
class GroupMorphism {
 public:
  GroupMorphism(FpAbGroup source, FpAbGroup target, IntMatrix matrix);

  const FpAbGroup& source() const { return source_; }
  const FpAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

 private:
  FpAbGroup source_;
  FpAbGroup target_;
  IntMatrix matrix_;
};

/// ker(g) / im(f) at the middle group of A --f--> B --g--> C. Throws
/// BrokenComplexError unless g o f vanishes modulo the relations of C.
FpAbGroup subquotient_homology(const GroupMorphism& f, const GroupMorphism& g);

/// A presentation rewritten in Smith coordinates: generators that became zero
/// are dropped, the survivors carry either no relation (free) or a single
/// relation t * e_i = 0.
struct ReducedPresentation {
  FpAbGroup group;
  std::vector<Integer> orders;  ///< 0 for free coordinates, t > 1 for torsion ones
  IntMatrix to_reduced;         ///< k x g, old generators -> reduced coordinates
  IntMatrix from_reduced;       ///< g x k, lifts of the reduced generators
};

/// Splits the relation matrix into independent blocks and Smith-reduces each.
ReducedPresentation reduce_presentation(const FpAbGroup& g);

}  // namespace poscoh
