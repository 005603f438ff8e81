#pragma once

// Presheaves of free abelian groups on a finite poset.

#include "poscoh/abelian.hpp"
#include "poscoh/poset.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poscoh {

/// Two saturated chains from y down to x whose composites differ.
struct FunctorialityViolation {
  std::size_t x = 0;
  std::size_t y = 0;
  std::vector<std::size_t> chain_a;  ///< x first, y last
  std::vector<std::size_t> chain_b;
  std::string describe(const Poset& p) const;
};

/// F: P^op -> Ab with F(x) = Z^dim(x). The cover map for x < y (y covering
/// x) is a dim(x) x dim(y) matrix, the map F(y) -> F(x).
class Presheaf {
 public:
  using CoverMaps = std::map<std::pair<std::size_t, std::size_t>, IntMatrix>;

  Presheaf() = default;

  /// Maps may be omitted on covers where either end has dimension 0. Throws
  /// InputError on shape errors, keys that are not covers, and (when
  /// `check` is set) on failures of path independence.
  static Presheaf from_cover_maps(Poset base, std::vector<std::size_t> dims, CoverMaps maps, bool check = true);

  const Poset& base() const { return base_; }
  std::size_t dim(std::size_t x) const { return dims_.at(x); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// The map F(y) -> F(x) for a cover x < y.
  const IntMatrix& cover_map(std::size_t x, std::size_t y) const;
  /// F^y_x for x <= y, composed along a saturated chain.
  IntMatrix restriction(std::size_t x, std::size_t y) const;
  IntMatrix restriction(const std::string& x, const std::string& y) const;

  /// The presheaf on an induced subposet of the base, with F^y_x as cover maps.
  Presheaf restrict_to(const Poset& sub) const;

  bool is_zero() const;

 private:
  Poset base_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<IntMatrix>> up_maps_;  // aligned with base_.upper_covers(x)
};

/// Compares the composites along all saturated chains, for every x < y, and
/// returns the first mismatch.
std::optional<FunctorialityViolation> validate(const Presheaf& f);

/// The constant presheaf with value Z^k.
Presheaf constant(const Poset& p, std::size_t k);
/// Z^k on P_{<=x}, identity maps there, zero elsewhere.
Presheaf yoneda(const Poset& p, const std::string& x, std::size_t k);

/// kappa: F -> G, one dim_G(x) x dim_F(x) matrix per element.
class PresheafMorphism {
 public:
  /// Throws InputError on base or shape mismatch and unless every naturality
  /// square on a cover commutes.
  PresheafMorphism(Presheaf source, Presheaf target, std::vector<IntMatrix> components);

  const Presheaf& source() const { return source_; }
  const Presheaf& target() const { return target_; }
  const IntMatrix& component(std::size_t x) const { return components_.at(x); }

 private:
  Presheaf source_;
  Presheaf target_;
  std::vector<IntMatrix> components_;
};

/// kappa: F|_{P>=x} -> Delta F(x) on the closed interval P_{>=x}, kappa_y = F^y_x.
PresheafMorphism canonical_to_constant(const Presheaf& f, std::size_t x);

}  // namespace poscoh
