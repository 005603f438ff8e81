#include "poscoh/presheaf.hpp"

#include "poscoh/errors.hpp"

#include <algorithm>
#include <sstream>

namespace poscoh {

std::string FunctorialityViolation::describe(const Poset& p) const {
  auto chain = [&](const std::vector<std::size_t>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " < " : "") + p.id(c[i]);
    return s;
  };
  return "restrictions from '" + p.id(y) + "' to '" + p.id(x) + "' differ along " + chain(chain_a) + " and " +
         chain(chain_b);
}

Presheaf Presheaf::from_cover_maps(Poset base, std::vector<std::size_t> dims, CoverMaps maps, bool check) {
  if (dims.size() != base.size()) throw InputError("presheaf: one dimension per element is required");
  Presheaf f;
  f.base_ = std::move(base);
  f.dims_ = std::move(dims);
  const Poset& p = f.base_;
  for (const auto& [key, m] : maps) {
    auto [x, y] = key;
    if (x >= p.size() || y >= p.size()) throw InputError("presheaf: map on an unknown element");
    const auto& up = p.upper_covers(x);
    if (!std::binary_search(up.begin(), up.end(), y))
      throw InputError("presheaf: '" + p.id(x) + "<" + p.id(y) + "' is not a cover");
    if (m.rows() != f.dims_[x] || m.cols() != f.dims_[y]) {
      std::ostringstream os;
      os << "presheaf: map '" << p.id(x) << "<" << p.id(y) << "' is " << m.rows() << "x" << m.cols() << ", expected "
         << f.dims_[x] << "x" << f.dims_[y];
      throw InputError(os.str());
    }
  }
  f.up_maps_.resize(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y : p.upper_covers(x)) {
      auto it = maps.find({x, y});
      if (it != maps.end()) {
        f.up_maps_[x].push_back(std::move(it->second));
      } else if (f.dims_[x] == 0 || f.dims_[y] == 0) {
        f.up_maps_[x].emplace_back(f.dims_[x], f.dims_[y]);
      } else {
        throw InputError("presheaf: no map given for the cover '" + p.id(x) + "<" + p.id(y) + "'");
      }
    }
  }
  if (check) {
    if (auto v = validate(f)) throw InputError("presheaf is not functorial: " + v->describe(f.base_));
  }
  return f;
}

const IntMatrix& Presheaf::cover_map(std::size_t x, std::size_t y) const {
  const auto& up = base_.upper_covers(x);
  auto it = std::lower_bound(up.begin(), up.end(), y);
  if (it == up.end() || *it != y) throw PreconditionError("cover_map: '" + base_.id(x) + "<" + base_.id(y) + "' is not a cover");
  return up_maps_[x][static_cast<std::size_t>(it - up.begin())];
}

IntMatrix Presheaf::restriction(std::size_t x, std::size_t y) const {
  if (!base_.leq(x, y)) throw PreconditionError("restriction: '" + base_.id(x) + "' is not below '" + base_.id(y) + "'");
  IntMatrix acc = IntMatrix::identity(dims_[x]);
  std::size_t cur = x;
  while (cur != y) {
    const auto& up = base_.upper_covers(cur);
    std::size_t k = 0;
    while (!base_.leq(up[k], y)) ++k;
    acc = acc * up_maps_[cur][k];
    cur = up[k];
  }
  return acc;
}

IntMatrix Presheaf::restriction(const std::string& x, const std::string& y) const {
  return restriction(base_.index(x), base_.index(y));
}

Presheaf Presheaf::restrict_to(const Poset& sub) const {
  std::vector<std::size_t> dims(sub.size());
  std::vector<std::size_t> where(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    where[i] = base_.index(sub.id(i));
    dims[i] = dims_[where[i]];
  }
  CoverMaps maps;
  for (auto [a, b] : sub.covers())
    if (dims[a] != 0 && dims[b] != 0) maps.emplace(std::make_pair(a, b), restriction(where[a], where[b]));
  return from_cover_maps(sub, std::move(dims), std::move(maps), /*check=*/false);
}

bool Presheaf::is_zero() const {
  return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 0; });
}

std::optional<FunctorialityViolation> validate(const Presheaf& f) {
  const Poset& p = f.base();
  const std::vector<std::size_t> order = p.linear_extension();
  std::vector<IntMatrix> r(p.size());
  std::vector<std::size_t> pred(p.size());
  auto chain_to = [&](std::size_t x, std::size_t w) {
    std::vector<std::size_t> c{w};
    while (c.back() != x) c.push_back(pred[c.back()]);
    std::reverse(c.begin(), c.end());
    return c;
  };
  for (auto xi = order.rbegin(); xi != order.rend(); ++xi) {
    const std::size_t x = *xi;
    r[x] = IntMatrix::identity(f.dim(x));
    for (std::size_t y : order) {
      if (!p.less(x, y)) continue;
      bool first = true;
      for (std::size_t w : p.lower_covers(y)) {
        if (!p.leq(x, w)) continue;
        IntMatrix candidate = r[w] * f.cover_map(w, y);
        if (first) {
          r[y] = std::move(candidate);
          pred[y] = w;
          first = false;
        } else if (!(candidate == r[y])) {
          FunctorialityViolation v;
          v.x = x;
          v.y = y;
          v.chain_a = chain_to(x, pred[y]);
          v.chain_a.push_back(y);
          v.chain_b = chain_to(x, w);
          v.chain_b.push_back(y);
          return v;
        }
      }
    }
  }
  return std::nullopt;
}

Presheaf constant(const Poset& p, std::size_t k) {
  Presheaf::CoverMaps maps;
  if (k > 0)
    for (auto c : p.covers()) maps.emplace(c, IntMatrix::identity(k));
  return Presheaf::from_cover_maps(p, std::vector<std::size_t>(p.size(), k), std::move(maps), /*check=*/false);
}

Presheaf yoneda(const Poset& p, const std::string& x, std::size_t k) {
  const std::size_t top = p.index(x);
  std::vector<std::size_t> dims(p.size(), 0);
  for (std::size_t y = 0; y < p.size(); ++y)
    if (p.leq(y, top)) dims[y] = k;
  Presheaf::CoverMaps maps;
  if (k > 0)
    for (auto [a, b] : p.covers())
      if (dims[a] != 0 && dims[b] != 0) maps.emplace(std::make_pair(a, b), IntMatrix::identity(k));
  return Presheaf::from_cover_maps(p, std::move(dims), std::move(maps), /*check=*/false);
}

PresheafMorphism::PresheafMorphism(Presheaf source, Presheaf target, std::vector<IntMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  const Poset& p = source_.base();
  if (!(p == target_.base())) throw InputError("presheaf morphism: source and target live on different posets");
  if (components_.size() != p.size()) throw InputError("presheaf morphism: one component per element is required");
  for (std::size_t x = 0; x < p.size(); ++x)
    if (components_[x].rows() != target_.dim(x) || components_[x].cols() != source_.dim(x))
      throw InputError("presheaf morphism: component at '" + p.id(x) + "' has the wrong shape");
  for (auto [x, y] : p.covers())
    if (!(components_[x] * source_.cover_map(x, y) == target_.cover_map(x, y) * components_[y]))
      throw InputError("presheaf morphism: naturality fails on '" + p.id(x) + "<" + p.id(y) + "'");
}

PresheafMorphism canonical_to_constant(const Presheaf& f, std::size_t x) {
  const Poset cell = closed_interval(f.base(), x);
  Presheaf source = f.restrict_to(cell);
  Presheaf target = constant(cell, f.dim(x));
  std::vector<IntMatrix> kappa;
  for (std::size_t i = 0; i < cell.size(); ++i) kappa.push_back(f.restriction(x, f.base().index(cell.id(i))));
  return PresheafMorphism(std::move(source), std::move(target), std::move(kappa));
}

}  // namespace poscoh
