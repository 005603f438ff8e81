#include "poscoh/builders.hpp"

#include "poscoh/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace poscoh {

namespace {

std::string braces(const std::vector<std::string>& items) {
  std::string s = "{";
  for (std::size_t k = 0; k < items.size(); ++k) s += (k ? "," : "") + items[k];
  return s + "}";
}

std::string subset_id(unsigned mask, int n) {
  std::vector<std::string> items;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) items.push_back(std::to_string(i + 1));
  return braces(items);
}

void require_range(const char* what, int n, int lo, int hi) {
  if (n < lo || n > hi)
    throw PreconditionError(std::string(what) + ": n = " + std::to_string(n) + " is outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
}

}  // namespace

// ---------------------------------------------------------------------------
// Simplicial and small examples

Poset face_poset(const Facets& facets, bool adjoin_minimum) {
  std::set<std::vector<std::string>> faces;
  for (auto facet : facets) {
    if (facet.empty()) throw InputError("face_poset: empty facet");
    std::sort(facet.begin(), facet.end());
    if (std::adjacent_find(facet.begin(), facet.end()) != facet.end())
      throw InputError("face_poset: facet " + braces(facet) + " repeats a vertex");
    if (facet.size() > 16) throw InputError("face_poset: facet " + braces(facet) + " is too large");
    const unsigned count = 1u << facet.size();
    for (unsigned mask = 1; mask < count; ++mask) {
      std::vector<std::string> face;
      for (std::size_t i = 0; i < facet.size(); ++i)
        if (mask & (1u << i)) face.push_back(facet[i]);
      faces.insert(std::move(face));
    }
  }
  std::vector<std::string> ids;
  CoverList covers;
  std::set<std::vector<std::string>> not_maximal;
  for (const auto& face : faces) {
    ids.push_back(braces(face));
    if (face.size() < 2) continue;
    for (std::size_t i = 0; i < face.size(); ++i) {
      std::vector<std::string> sub = face;
      sub.erase(sub.begin() + static_cast<long>(i));
      covers.emplace_back(braces(face), braces(sub));
      not_maximal.insert(sub);
    }
  }
  if (adjoin_minimum) {
    ids.push_back("bottom");
    for (const auto& face : faces)
      if (!not_maximal.count(face)) covers.emplace_back("bottom", braces(face));
  }
  return Poset::from_covers(ids, covers);
}

Facets rp2_facets() {
  return {{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"}, {"1", "2", "6"},
          {"2", "3", "5"}, {"3", "4", "6"}, {"2", "4", "5"}, {"3", "5", "6"}, {"2", "4", "6"}};
}

Poset rp2_poset() { return face_poset(rp2_facets(), true); }

Poset tree_poset(int depth, int branching) {
  if (depth < 1) throw PreconditionError("tree_poset: depth must be at least 1");
  if (branching < 2) throw PreconditionError("tree_poset: branching must be at least 2");
  std::vector<std::string> ids{"r"};
  CoverList covers;
  std::vector<std::string> level{"r"};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::string> next;
    const int children = d == 0 ? branching : branching - 1;
    for (const auto& parent : level)
      for (int c = 0; c < children; ++c) {
        std::string child = parent + "." + std::to_string(c);
        covers.emplace_back(parent, child);
        ids.push_back(child);
        next.push_back(std::move(child));
      }
    level = std::move(next);
  }
  return Poset::from_covers(ids, covers);
}

Poset boolean_lattice(int n) {
  require_range("boolean_lattice", n, 0, 6);
  std::vector<std::string> ids;
  CoverList covers;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    ids.push_back(subset_id(mask, n));
    for (int i = 0; i < n; ++i)
      if (!(mask & (1u << i))) covers.emplace_back(subset_id(mask, n), subset_id(mask | (1u << i), n));
  }
  return Poset::from_covers(ids, covers);
}

Poset partition_lattice(int n) {
  require_range("partition_lattice", n, 1, 6);
  using Partition = std::vector<std::vector<int>>;
  auto name = [](Partition p) {
    for (auto& b : p) std::sort(b.begin(), b.end());
    std::sort(p.begin(), p.end());
    std::string s;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) s += "|";
      for (int v : p[k]) s += std::to_string(v);
    }
    return s;
  };
  std::vector<Partition> all;
  std::function<void(int, Partition&)> grow = [&](int v, Partition& cur) {
    if (v > n) {
      all.push_back(cur);
      return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(v);
      grow(v + 1, cur);
      cur[b].pop_back();
    }
    cur.push_back({v});
    grow(v + 1, cur);
    cur.pop_back();
  };
  Partition start;
  grow(1, start);
  std::vector<std::string> ids;
  CoverList covers;
  for (const auto& p : all) {
    ids.push_back(name(p));
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b) {
        Partition q;
        for (std::size_t k = 0; k < p.size(); ++k)
          if (k != a && k != b) q.push_back(p[k]);
        std::vector<int> merged = p[a];
        merged.insert(merged.end(), p[b].begin(), p[b].end());
        q.push_back(merged);
        covers.emplace_back(name(p), name(q));
      }
  }
  return Poset::from_covers(ids, covers);
}

Poset circle_poset() {
  return Poset::from_covers({"v0", "v1", "e0", "e1"}, {{"e0", "v0"}, {"e0", "v1"}, {"e1", "v0"}, {"e1", "v1"}});
}

Poset square_circle_poset() { return face_poset({{"1", "2"}, {"2", "3"}, {"3", "4"}, {"1", "4"}}); }

Poset suspension_simplex_poset(int n) {
  require_range("suspension_simplex_poset", n, 0, 8);
  std::vector<std::string> ids{"apex", "apex'"};
  CoverList covers;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    ids.push_back(subset_id(mask, n));
    if (std::popcount(mask) == 1) {
      covers.emplace_back(subset_id(mask, n), "apex");
      covers.emplace_back(subset_id(mask, n), "apex'");
      continue;
    }
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) covers.emplace_back(subset_id(mask, n), subset_id(mask & ~(1u << i), n));
  }
  return Poset::from_covers(ids, covers);
}

// ---------------------------------------------------------------------------
// Bruhat order

std::string interchange(const std::string& perm, int i, int j) {
  std::string out = perm;
  const char ci = static_cast<char>('0' + i);
  const char cj = static_cast<char>('0' + j);
  for (char& c : out) {
    if (c == ci)
      c = cj;
    else if (c == cj)
      c = ci;
  }
  return out;
}

int inversions(const std::string& perm) {
  int count = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++count;
  return count;
}

BruhatOrder::BruhatOrder(int n) : n_(n) {
  require_range("bruhat_poset", n, 2, 5);
  std::string perm;
  for (int i = 1; i <= n; ++i) perm += static_cast<char>('0' + i);
  const std::string identity = perm;
  std::vector<std::string> ids;
  CoverList covers;
  do {
    if (perm == identity) continue;
    ids.push_back(perm);
    for (auto [i, j] : swap_pairs(perm)) {
      std::string y = interchange(perm, i, j);
      if (y != identity) covers.emplace_back(perm, y);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  poset_ = Poset::from_covers(ids, covers);
}

std::vector<std::pair<int, int>> BruhatOrder::swap_pairs(const std::string& perm) const {
  if (perm.size() != static_cast<std::size_t>(n_)) throw InputError("'" + perm + "' is not a permutation of the right size");
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b) {
      const int i = perm[a] - '0';
      const int j = perm[b] - '0';
      if (i <= j) continue;
      bool ok = true;
      for (std::size_t k = a + 1; k < b && ok; ++k) {
        const int v = perm[k] - '0';
        ok = v < j || v > i;
      }
      if (ok) out.emplace_back(i, j);
    }
  // (i, j) < (i', j') when j < j', or j = j' and i < i'
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return std::make_pair(a.second, a.first) < std::make_pair(b.second, b.first); });
  return out;
}

std::pair<int, int> BruhatOrder::minimal_swap_pair(const std::string& perm) const {
  auto pairs = swap_pairs(perm);
  if (pairs.empty()) throw PreconditionError("the identity has no swap pairs");
  return pairs.front();
}

std::vector<std::string> BruhatOrder::canonical_chain(const std::string& perm) const {
  poset_.index(perm);
  std::vector<std::string> chain{perm};
  while (inversions(chain.back()) > 1) {
    auto [i, j] = minimal_swap_pair(chain.back());
    chain.push_back(interchange(chain.back(), i, j));
  }
  return chain;
}

std::map<std::size_t, Simplex> BruhatOrder::canonical_generators() const {
  std::map<std::size_t, Simplex> out;
  for (std::size_t x = 0; x < poset_.size(); ++x) {
    Simplex s;
    for (const auto& id : canonical_chain(poset_.id(x))) s.vertices.push_back(poset_.index(id));
    out.emplace(x, std::move(s));
  }
  return out;
}

SignTable BruhatOrder::induced_signs() const {
  const Poset& p = poset_;
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.corank(a) < p.corank(b); });
  SignTable signs;
  for (std::size_t x : order) {
    if (p.corank(x) == 0) continue;
    const auto [i, j] = minimal_swap_pair(p.id(x));
    const std::size_t first = p.index(interchange(p.id(x), i, j));
    signs[{x, first}] = 1;
    std::vector<std::size_t> pending;
    for (std::size_t y : p.upper_covers(x))
      if (y != first) pending.push_back(y);
    if (p.corank(x) == 1) {
      for (std::size_t y : pending) signs[{x, y}] = -1;
      continue;
    }
    while (!pending.empty()) {
      bool progress = false;
      for (auto it = pending.begin(); it != pending.end();) {
        std::optional<int> value;
        for (std::size_t y2 : p.upper_covers(x)) {
          auto known = signs.find({x, y2});
          if (known == signs.end()) continue;
          for (std::size_t z : p.upper_covers(*it)) {
            const auto& up2 = p.upper_covers(y2);
            if (!std::binary_search(up2.begin(), up2.end(), z)) continue;
            value = -known->second * signs.at({*it, z}) * signs.at({y2, z});
            break;
          }
          if (value) break;
        }
        if (value) {
          signs[{x, *it}] = *value;
          it = pending.erase(it);
          progress = true;
        } else {
          ++it;
        }
      }
      if (!progress) throw PreconditionError("bruhat signs: no diamond resolves the covers of '" + p.id(x) + "'");
    }
  }
  return signs;
}

// ---------------------------------------------------------------------------
// Khovanov

LinkDiagram parse_pd(const std::string& text) {
  LinkDiagram d;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string s;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) continue;
    auto fail = [&] { throw InputError("PD code line " + std::to_string(line_no) + ": expected Xa,b,c,d"); };
    if (s[0] != 'X') fail();
    s.erase(0, 1);
    if (!s.empty() && s.front() == '[') {
      if (s.back() != ']') fail();
      s = s.substr(1, s.size() - 2);
    }
    std::array<long, 4> labels{};
    std::istringstream fields(s);
    std::string field;
    int k = 0;
    while (std::getline(fields, field, ',')) {
      if (k == 4 || field.empty()) fail();
      std::size_t used = 0;
      try {
        labels[static_cast<std::size_t>(k)] = std::stol(field, &used);
      } catch (const std::exception&) {
        fail();
      }
      if (used != field.size()) fail();
      ++k;
    }
    if (k != 4) fail();
    d.crossings.push_back(labels);
  }
  std::map<long, int> count;
  for (const auto& c : d.crossings)
    for (long l : c) ++count[l];
  for (const auto& [label, n] : count)
    if (n != 2)
      throw InputError("PD code: strand label " + std::to_string(label) + " occurs " + std::to_string(n) + " times");
  return d;
}

std::vector<std::vector<long>> resolution_circles(const LinkDiagram& d, const std::vector<bool>& ones) {
  if (d.crossings.empty()) return {{}};
  std::vector<long> labels;
  for (const auto& c : d.crossings) labels.insert(labels.end(), c.begin(), c.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<std::size_t> parent(labels.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto idx = [&](long l) { return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin()); };
  auto join = [&](long a, long b) {
    std::size_t ra = find(idx(a));
    std::size_t rb = find(idx(b));
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  };
  for (std::size_t k = 0; k < d.crossings.size(); ++k) {
    const auto& [a, b, c, e] = d.crossings[k];
    if (ones.at(k)) {
      join(a, e);
      join(b, c);
    } else {
      join(a, b);
      join(c, e);
    }
  }
  std::map<std::size_t, std::vector<long>> circles;
  for (std::size_t i = 0; i < labels.size(); ++i) circles[find(i)].push_back(labels[i]);
  std::vector<std::vector<long>> out;
  for (auto& [root, members] : circles) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// The map V^{(x) c0} -> V^{(x) c1} of one crossing change.
IntMatrix edge_map(const std::vector<std::vector<long>>& c0, const std::vector<std::vector<long>>& c1) {
  auto owner = [&](long label) {
    for (std::size_t k = 0; k < c1.size(); ++k)
      if (std::binary_search(c1[k].begin(), c1[k].end(), label)) return k;
    throw InputError("PD code: inconsistent strand labels");
  };
  const std::size_t n0 = c0.size();
  const std::size_t n1 = c1.size();
  // target circle of every source circle (the one holding its least label)
  std::vector<std::size_t> image(n0);
  for (std::size_t k = 0; k < n0; ++k) image[k] = owner(c0[k].front());

  std::vector<std::size_t> merged;  // two source circles
  std::size_t split_source = n0;
  std::vector<std::size_t> split_targets;
  if (n1 + 1 == n0) {
    for (std::size_t a = 0; a < n0 && merged.empty(); ++a)
      for (std::size_t b = a + 1; b < n0; ++b)
        if (image[a] == image[b]) {
          merged = {a, b};
          break;
        }
  } else if (n1 == n0 + 1) {
    for (std::size_t k = 0; k < n0; ++k) {
      std::vector<std::size_t> targets;
      for (long l : c0[k]) targets.push_back(owner(l));
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      if (targets.size() == 2) {
        split_source = k;
        split_targets = targets;
      }
    }
  }
  if (merged.empty() && split_source == n0)
    throw InputError("PD code: a crossing change neither merges nor splits circles");

  IntMatrix m(std::size_t{1} << n1, std::size_t{1} << n0);
  for (std::size_t b0 = 0; b0 < (std::size_t{1} << n0); ++b0) {
    auto bit0 = [&](std::size_t k) { return (b0 >> (n0 - 1 - k)) & 1u; };
    std::size_t base = 0;
    auto place = [&](std::size_t& word, std::size_t circle, std::size_t bit) { word |= bit << (n1 - 1 - circle); };
    for (std::size_t k = 0; k < n0; ++k) {
      if ((!merged.empty() && (k == merged[0] || k == merged[1])) || k == split_source) continue;
      place(base, image[k], bit0(k));
    }
    if (!merged.empty()) {
      const std::size_t x = bit0(merged[0]) + bit0(merged[1]);
      if (x == 2) continue;  // X * X = 0
      std::size_t w = base;
      place(w, image[merged[0]], x);
      m.add_to(w, b0, 1);
    } else {
      const std::size_t c = split_targets[0];
      const std::size_t d = split_targets[1];
      if (bit0(split_source) == 1) {
        std::size_t w = base;
        place(w, c, 1);
        place(w, d, 1);
        m.add_to(w, b0, 1);
      } else {
        std::size_t w1 = base;
        place(w1, d, 1);
        m.add_to(w1, b0, 1);
        std::size_t w2 = base;
        place(w2, c, 1);
        m.add_to(w2, b0, 1);
      }
    }
  }
  return m;
}

}  // namespace

std::pair<Poset, Presheaf> khovanov(const LinkDiagram& d, const KhovanovOptions& options) {
  const int n = static_cast<int>(d.crossings.size());
  require_range("khovanov", n, 0, 8);
  Poset p = suspension_simplex_poset(n);
  std::vector<std::vector<std::vector<long>>> circles(std::size_t{1} << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> ones(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ones[static_cast<std::size_t>(i)] = mask & (1u << i);
    circles[mask] = resolution_circles(d, ones);
  }
  std::vector<std::size_t> dims(p.size(), 0);
  const std::size_t apex_dim = std::size_t{1} << circles[0].size();
  dims[p.index("apex")] = apex_dim;
  dims[p.index("apex'")] = options.both_apexes ? apex_dim : 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) dims[p.index(subset_id(mask, n))] = std::size_t{1} << circles[mask].size();

  Presheaf::CoverMaps maps;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const std::size_t lower = p.index(subset_id(mask, n));
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      const unsigned from = mask & ~(1u << i);
      IntMatrix m = edge_map(circles[from], circles[mask]);
      if (from == 0) {
        maps.emplace(std::make_pair(lower, p.index("apex")), m);
        if (options.both_apexes) maps.emplace(std::make_pair(lower, p.index("apex'")), m);
      } else {
        maps.emplace(std::make_pair(lower, p.index(subset_id(from, n))), std::move(m));
      }
    }
  }
  Presheaf f = Presheaf::from_cover_maps(p, std::move(dims), std::move(maps));
  return {std::move(p), std::move(f)};
}

}  // namespace poscoh
