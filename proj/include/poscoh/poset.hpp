#pragma once

// Finite posets given by their cover relation.

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poscoh {

using CoverList = std::vector<std::pair<std::string, std::string>>;

/// A finite poset. Elements are string identifiers kept in lexicographic
/// order; that order fixes the index of every element and with it the row and
/// column order of every matrix built on top of the poset.
///
/// A poset is graded when some rank function increases by exactly one along
/// every cover. Ranks are normalized so that the least rank in each connected
/// component of the Hasse diagram is 0, and corank(x) = top_rank - rank(x).
/// Induced subposets keep the ranks and the corank reference of their parent.
class Poset {
 public:
  Poset() = default;

  /// Throws InputError on unknown or duplicate identifiers, on cycles, and on
  /// cover pairs that are implied by transitivity. Explicit ranks, when given,
  /// must increase by one along each cover.
  static Poset from_covers(std::vector<std::string> elements, const CoverList& covers,
                           const std::optional<std::map<std::string, int>>& ranks = std::nullopt);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& elements() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  bool contains(const std::string& id) const;
  /// Throws InputError for unknown identifiers.
  std::size_t index(const std::string& id) const;

  bool leq(std::size_t x, std::size_t y) const { return up_[x].test(y); }
  bool less(std::size_t x, std::size_t y) const { return x != y && up_[x].test(y); }
  bool comparable(std::size_t x, std::size_t y) const { return leq(x, y) || leq(y, x); }
  /// All y with x <= y, as a bitset over indices.
  const boost::dynamic_bitset<>& up_set(std::size_t x) const { return up_[x]; }

  /// Elements covering x, ascending by index.
  const std::vector<std::size_t>& upper_covers(std::size_t x) const { return upper_[x]; }
  /// Elements covered by x, ascending by index.
  const std::vector<std::size_t>& lower_covers(std::size_t x) const { return lower_[x]; }
  /// All cover pairs (x, y), x covered by y, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  std::size_t cover_count() const;

  /// Indices ordered so that x < y implies x comes first.
  std::vector<std::size_t> linear_extension() const;
  std::vector<std::size_t> minimal_elements() const;
  std::vector<std::size_t> maximal_elements() const;

  bool is_graded() const { return graded_; }
  /// Throws UngradedError unless the poset is graded.
  void require_graded(const char* what) const;
  int rank(std::size_t x) const;
  int corank(std::size_t x) const;
  /// The rank that corank is measured from.
  int top_rank() const;
  /// Largest corank of an element; -1 for the empty poset.
  int max_corank() const;

  /// The subposet on the given indices with the induced order. Ranks and the
  /// corank reference are inherited; the result is graded when the parent is
  /// and every induced cover still raises rank by one.
  Poset induced(const std::vector<std::size_t>& subset) const;
  Poset induced(const boost::dynamic_bitset<>& subset) const;

  friend bool operator==(const Poset& a, const Poset& b);

 private:
  void build_order();

  std::vector<std::string> ids_;
  std::vector<std::vector<std::size_t>> upper_;
  std::vector<std::vector<std::size_t>> lower_;
  std::vector<boost::dynamic_bitset<>> up_;
  bool graded_ = true;
  std::vector<int> rank_;
  int top_rank_ = 0;
};

/// P^k = {x : corank(x) <= k}. Empty for k < 0.
Poset filtration_level(const Poset& p, int k);

/// P_{>x} and P_{>=x}, keeping identifiers and coranks.
Poset open_interval(const Poset& p, const std::string& x);
Poset closed_interval(const Poset& p, const std::string& x);
Poset open_interval(const Poset& p, std::size_t x);
Poset closed_interval(const Poset& p, std::size_t x);

/// Moebius function by the recursion mu(x,x) = 1, mu(x,y) = -sum_{x<=z<y} mu(x,z).
/// Throws PreconditionError unless x <= y.
std::int64_t mobius(const Poset& p, std::size_t x, std::size_t y);
std::int64_t mobius(const Poset& p, const std::string& x, const std::string& y);

/// Every interval [x, y] with rank(y) - rank(x) = 2 has exactly two middle
/// elements. False for ungraded posets.
bool has_diamond_property(const Poset& p);

/// Removes the unique maximum and re-grades the rest. Throws
/// PreconditionError when there is no unique maximum.
Poset remove_top(const Poset& p);

}  // namespace poscoh
