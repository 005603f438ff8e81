#include "poscoh/poset.hpp"

#include "poscoh/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace poscoh {

bool Poset::contains(const std::string& id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

std::size_t Poset::index(const std::string& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) throw InputError("unknown element '" + id + "'");
  return static_cast<std::size_t>(it - ids_.begin());
}

Poset Poset::from_covers(std::vector<std::string> elements, const CoverList& covers,
                         const std::optional<std::map<std::string, int>>& ranks) {
  Poset p;
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw InputError("duplicate element '" + *std::adjacent_find(elements.begin(), elements.end()) + "'");
  p.ids_ = std::move(elements);
  const std::size_t n = p.ids_.size();
  p.upper_.assign(n, {});
  p.lower_.assign(n, {});
  for (const auto& [a, b] : covers) {
    std::size_t x = p.index(a);
    std::size_t y = p.index(b);
    if (x == y) throw InputError("cycle: '" + a + "' covers itself");
    p.upper_[x].push_back(y);
    p.lower_[y].push_back(x);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (auto* v : {&p.upper_[i], &p.lower_[i]}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
  }
  p.build_order();

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y : p.upper_[x])
      for (std::size_t z : p.upper_[x])
        if (z != y && p.up_[z].test(y))
          throw InputError("cover ('" + p.ids_[x] + "', '" + p.ids_[y] + "') is implied by '" + p.ids_[z] + "'");

  p.rank_.assign(n, 0);
  if (ranks) {
    for (std::size_t i = 0; i < n; ++i) {
      auto it = ranks->find(p.ids_[i]);
      if (it == ranks->end()) throw InputError("no rank given for '" + p.ids_[i] + "'");
      p.rank_[i] = it->second;
    }
    for (const auto& [name, r] : *ranks) {
      (void)r;
      p.index(name);
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y : p.upper_[x])
        if (p.rank_[y] != p.rank_[x] + 1)
          throw InputError("given ranks are not a grading along ('" + p.ids_[x] + "', '" + p.ids_[y] + "')");
    if (n > 0) {
      int lo = *std::min_element(p.rank_.begin(), p.rank_.end());
      for (int& r : p.rank_) r -= lo;
    }
  } else {
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n && p.graded_; ++s) {
      if (seen[s]) continue;
      std::vector<std::size_t> component{s};
      std::deque<std::size_t> queue{s};
      seen[s] = 1;
      while (!queue.empty() && p.graded_) {
        std::size_t x = queue.front();
        queue.pop_front();
        auto visit = [&](std::size_t y, int r) {
          if (!seen[y]) {
            seen[y] = 1;
            p.rank_[y] = r;
            component.push_back(y);
            queue.push_back(y);
          } else if (p.rank_[y] != r) {
            p.graded_ = false;
          }
        };
        for (std::size_t y : p.upper_[x]) visit(y, p.rank_[x] + 1);
        for (std::size_t y : p.lower_[x]) visit(y, p.rank_[x] - 1);
      }
      int lo = p.rank_[s];
      for (std::size_t x : component) lo = std::min(lo, p.rank_[x]);
      for (std::size_t x : component) p.rank_[x] -= lo;
    }
    if (!p.graded_) p.rank_.clear();
  }
  p.top_rank_ = p.rank_.empty() ? 0 : *std::max_element(p.rank_.begin(), p.rank_.end());
  return p;
}

void Poset::build_order() {
  const std::size_t n = ids_.size();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t x = 0; x < n; ++x) indegree[x] = lower_[x].size();
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t x = 0; x < n; ++x)
    if (indegree[x] == 0) order.push_back(x);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t y : upper_[order[k]])
      if (--indegree[y] == 0) order.push_back(y);
  if (order.size() != n) {
    std::size_t bad = 0;
    while (indegree[bad] == 0) ++bad;
    throw InputError("cycle in the cover relation through '" + ids_[bad] + "'");
  }
  up_.assign(n, boost::dynamic_bitset<>(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    up_[*it].set(*it);
    for (std::size_t y : upper_[*it]) up_[*it] |= up_[y];
  }
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y : upper_[x]) out.emplace_back(x, y);
  return out;
}

std::size_t Poset::cover_count() const {
  std::size_t n = 0;
  for (const auto& u : upper_) n += u.size();
  return n;
}

std::vector<std::size_t> Poset::linear_extension() const {
  std::vector<std::size_t> below(size(), 0);
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = up_[x].find_first(); y != boost::dynamic_bitset<>::npos; y = up_[x].find_next(y)) ++below[y];
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  return order;
}

std::vector<std::size_t> Poset::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(); ++x)
    if (lower_[x].empty()) out.push_back(x);
  return out;
}

std::vector<std::size_t> Poset::maximal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < size(); ++x)
    if (upper_[x].empty()) out.push_back(x);
  return out;
}

void Poset::require_graded(const char* what) const {
  if (!graded_) throw UngradedError(std::string(what) + " requires a graded poset");
}

int Poset::rank(std::size_t x) const {
  require_graded("rank");
  return rank_.at(x);
}

int Poset::corank(std::size_t x) const {
  require_graded("corank");
  return top_rank_ - rank_.at(x);
}

int Poset::top_rank() const {
  require_graded("corank");
  return top_rank_;
}

int Poset::max_corank() const {
  require_graded("corank");
  int m = -1;
  for (std::size_t x = 0; x < size(); ++x) m = std::max(m, corank(x));
  return m;
}

Poset Poset::induced(const boost::dynamic_bitset<>& subset) const {
  std::vector<std::size_t> idx;
  for (std::size_t x = subset.find_first(); x != boost::dynamic_bitset<>::npos; x = subset.find_next(x))
    idx.push_back(x);
  return induced(idx);
}

Poset Poset::induced(const std::vector<std::size_t>& subset) const {
  std::vector<std::size_t> keep = subset;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const std::size_t m = keep.size();

  Poset q;
  q.ids_.reserve(m);
  for (std::size_t x : keep) q.ids_.push_back(ids_.at(x));
  q.upper_.assign(m, {});
  q.lower_.assign(m, {});
  q.up_.assign(m, boost::dynamic_bitset<>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (up_[keep[i]].test(keep[j])) q.up_[i].set(j);
  for (std::size_t i = 0; i < m; ++i) {
    boost::dynamic_bitset<> strict = q.up_[i];
    strict.reset(i);
    boost::dynamic_bitset<> beyond(m);
    for (std::size_t z = strict.find_first(); z != boost::dynamic_bitset<>::npos; z = strict.find_next(z)) {
      boost::dynamic_bitset<> above = q.up_[z];
      above.reset(z);
      beyond |= above;
    }
    strict -= beyond;
    for (std::size_t j = strict.find_first(); j != boost::dynamic_bitset<>::npos; j = strict.find_next(j)) {
      q.upper_[i].push_back(j);
      q.lower_[j].push_back(i);
    }
  }
  for (auto& l : q.lower_) std::sort(l.begin(), l.end());

  q.top_rank_ = top_rank_;
  q.graded_ = graded_;
  if (graded_) {
    for (std::size_t x : keep) q.rank_.push_back(rank_[x]);
    for (std::size_t i = 0; i < m && q.graded_; ++i)
      for (std::size_t j : q.upper_[i])
        if (q.rank_[j] != q.rank_[i] + 1) q.graded_ = false;
    if (!q.graded_) q.rank_.clear();
  }
  return q;
}

bool operator==(const Poset& a, const Poset& b) {
  return a.ids_ == b.ids_ && a.upper_ == b.upper_ && a.graded_ == b.graded_ && a.rank_ == b.rank_ &&
         a.top_rank_ == b.top_rank_;
}

Poset filtration_level(const Poset& p, int k) {
  p.require_graded("filtration_level");
  std::vector<std::size_t> keep;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.corank(x) <= k) keep.push_back(x);
  return p.induced(keep);
}

Poset open_interval(const Poset& p, std::size_t x) {
  boost::dynamic_bitset<> s = p.up_set(x);
  s.reset(x);
  return p.induced(s);
}

Poset closed_interval(const Poset& p, std::size_t x) { return p.induced(p.up_set(x)); }

Poset open_interval(const Poset& p, const std::string& x) { return open_interval(p, p.index(x)); }
Poset closed_interval(const Poset& p, const std::string& x) { return closed_interval(p, p.index(x)); }

std::int64_t mobius(const Poset& p, std::size_t x, std::size_t y) {
  if (!p.leq(x, y)) throw PreconditionError("mobius: '" + p.id(x) + "' is not below '" + p.id(y) + "'");
  std::vector<std::int64_t> mu(p.size(), 0);
  for (std::size_t z : p.linear_extension()) {
    if (!p.leq(x, z) || !p.leq(z, y)) continue;
    if (z == x) {
      mu[z] = 1;
      continue;
    }
    std::int64_t s = 0;
    for (std::size_t w = 0; w < p.size(); ++w)
      if (p.leq(x, w) && p.less(w, z)) s += mu[w];
    mu[z] = -s;
  }
  return mu[y];
}

std::int64_t mobius(const Poset& p, const std::string& x, const std::string& y) {
  return mobius(p, p.index(x), p.index(y));
}

bool has_diamond_property(const Poset& p) {
  if (!p.is_graded()) return false;
  for (std::size_t x = 0; x < p.size(); ++x) {
    std::map<std::size_t, int> middle;
    for (std::size_t z : p.upper_covers(x))
      for (std::size_t y : p.upper_covers(z)) ++middle[y];
    for (const auto& [y, count] : middle)
      if (count != 2) return false;
  }
  return true;
}

Poset remove_top(const Poset& p) {
  auto tops = p.maximal_elements();
  if (tops.size() != 1)
    throw PreconditionError("remove_top: the poset has no unique maximum");
  std::vector<std::string> ids;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (x != tops[0]) ids.push_back(p.id(x));
  CoverList covers;
  for (auto [x, y] : p.covers())
    if (y != tops[0]) covers.emplace_back(p.id(x), p.id(y));
  return Poset::from_covers(ids, covers);
}

}  // namespace poscoh
