#include "poscoh/abelian.hpp"

#include "poscoh/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace poscoh {

namespace {

using Row = std::vector<IntMatrix::Entry>;

Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  Integer r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (!r.is_zero() && ((r < 0) != (b < 0))) --q;
  return q;
}

// a - f * b, merged by column.
Row row_axpy(const Row& a, const Integer& f, const Row& b) {
  Row out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      out.push_back({b[j].col, -f * b[j].value});
      ++j;
    } else {
      Integer v = a[i].value - f * b[j].value;
      if (!v.is_zero()) out.push_back({a[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Dense working matrix for the normal-form algorithms.
struct Dense {
  std::size_t r = 0;
  std::size_t c = 0;
  std::vector<Integer> a;

  Dense() = default;
  Dense(std::size_t rows, std::size_t cols) : r(rows), c(cols), a(rows * cols) {}

  static Dense identity(std::size_t n) {
    Dense d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = 1;
    return d;
  }
  static Dense of(const IntMatrix& m) {
    Dense d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (const auto& e : m.row(i)) d(i, e.col) = e.value;
    return d;
  }
  IntMatrix sparse() const { return IntMatrix::from_dense(r, c, a); }

  Integer& operator()(std::size_t i, std::size_t j) { return a[i * c + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a[i * c + j]; }

  // row dst += f * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    if (f.is_zero()) return;
    for (std::size_t j = 0; j < c; ++j) {
      const Integer& s = (*this)(src, j);
      if (!s.is_zero()) (*this)(dst, j) += f * s;
    }
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    if (f.is_zero()) return;
    for (std::size_t i = 0; i < r; ++i) {
      const Integer& s = (*this)(i, src);
      if (!s.is_zero()) (*this)(i, dst) += f * s;
    }
  }
  void swap_rows(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < c; ++j) std::swap((*this)(x, j), (*this)(y, j));
  }
  void swap_cols(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < r; ++i) std::swap((*this)(i, x), (*this)(i, y));
  }
  void negate_row(std::size_t x) {
    for (std::size_t j = 0; j < c; ++j) (*this)(x, j) = -(*this)(x, j);
  }
  void negate_col(std::size_t x) {
    for (std::size_t i = 0; i < r; ++i) (*this)(i, x) = -(*this)(i, x);
  }
};

// Smith reduction of `a` in place. Row operations are mirrored on u (from the
// left) and on u_inv (inverse, from the right); column operations on v.
class SmithReducer {
 public:
  SmithReducer(Dense& a, Dense* u, Dense* u_inv, Dense* v) : a_(a), u_(u), ui_(u_inv), v_(v) {}

  void run() {
    const std::size_t n = std::min(a_.r, a_.c);
    for (std::size_t t = 0; t < n; ++t) {
      if (!move_smallest_to(t, /*whole_block=*/true)) break;
      while (true) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < a_.r; ++i) {
          if (a_(i, t).is_zero()) continue;
          row_add(i, t, -(a_(i, t) / a_(t, t)));
          if (!a_(i, t).is_zero()) dirty = true;
        }
        for (std::size_t j = t + 1; j < a_.c; ++j) {
          if (a_(t, j).is_zero()) continue;
          col_add(j, t, -(a_(t, j) / a_(t, t)));
          if (!a_(t, j).is_zero()) dirty = true;
        }
        if (dirty) {
          move_smallest_to(t, /*whole_block=*/false);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < a_.r && !fixed; ++i) {
          for (std::size_t j = t + 1; j < a_.c; ++j) {
            if (!a_(i, j).is_zero() && !(a_(i, j) % a_(t, t)).is_zero()) {
              row_add(t, i, 1);
              fixed = true;
              break;
            }
          }
        }
        if (!fixed) break;
      }
      if (a_(t, t) < 0) row_negate(t);
    }
  }

 private:
  // Moves the smallest nonzero entry (of the lower-right block, or of row t
  // and column t only) to (t, t). Returns false when there is none.
  bool move_smallest_to(std::size_t t, bool whole_block) {
    std::size_t bi = a_.r;
    std::size_t bj = a_.c;
    Integer best;
    auto consider = [&](std::size_t i, std::size_t j) {
      const Integer& x = a_(i, j);
      if (x.is_zero()) return;
      Integer ax = abs_value(x);
      if (bi == a_.r || ax < best) {
        best = std::move(ax);
        bi = i;
        bj = j;
      }
    };
    if (whole_block) {
      for (std::size_t i = t; i < a_.r; ++i)
        for (std::size_t j = t; j < a_.c; ++j) consider(i, j);
    } else {
      for (std::size_t i = t; i < a_.r; ++i) consider(i, t);
      for (std::size_t j = t + 1; j < a_.c; ++j) consider(t, j);
    }
    if (bi == a_.r) return false;
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  void row_add(std::size_t dst, std::size_t src, const Integer& f) {
    if (f.is_zero()) return;
    a_.add_row(dst, src, f);
    if (u_) u_->add_row(dst, src, f);
    if (ui_) ui_->add_col(src, dst, -f);
  }
  void row_swap(std::size_t x, std::size_t y) {
    a_.swap_rows(x, y);
    if (u_) u_->swap_rows(x, y);
    if (ui_) ui_->swap_cols(x, y);
  }
  void row_negate(std::size_t x) {
    a_.negate_row(x);
    if (u_) u_->negate_row(x);
    if (ui_) ui_->negate_col(x);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& f) {
    if (f.is_zero()) return;
    a_.add_col(dst, src, f);
    if (v_) v_->add_col(dst, src, f);
  }
  void col_swap(std::size_t x, std::size_t y) {
    a_.swap_cols(x, y);
    if (v_) v_->swap_cols(x, y);
  }

  Dense& a_;
  Dense* u_;
  Dense* ui_;
  Dense* v_;
};

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.resize(rows_);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("IntMatrix literal: ragged rows");
    std::size_t j = 0;
    for (long long v : r) {
      if (v != 0) data_[i].push_back({j, Integer(v)});
      ++j;
    }
    ++i;
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Integer(1)});
  return m;
}

IntMatrix IntMatrix::from_dense(std::size_t rows, std::size_t cols, const std::vector<Integer>& row_major) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const Integer& v = row_major[i * cols + j];
      if (!v.is_zero()) m.data_[i].push_back({j, v});
    }
  return m;
}

Integer IntMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) return it->value;
  return 0;
}

void IntMatrix::set(std::size_t r, std::size_t c, const Integer& v) {
  if (r >= rows_ || c >= cols_) throw InputError("IntMatrix::set out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) {
    if (v.is_zero())
      row.erase(it);
    else
      it->value = v;
  } else if (!v.is_zero()) {
    row.insert(it, {c, v});
  }
}

void IntMatrix::add_to(std::size_t r, std::size_t c, const Integer& v) {
  if (v.is_zero()) return;
  if (r >= rows_ || c >= cols_) throw InputError("IntMatrix::add_to out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) {
    it->value += v;
    if (it->value.is_zero()) row.erase(it);
  } else {
    row.insert(it, {c, v});
  }
}

void IntMatrix::set_row(std::size_t r, std::vector<Entry> entries) { data_.at(r) = std::move(entries); }

std::size_t IntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& r) { return r.empty(); });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    if (data_[i].size() != 1 || data_[i][0].col != i || data_[i][0].value != 1) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) t.data_[e.col].push_back({i, e.value});
  return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  IntMatrix m(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) m.data_[i] = data_.at(rows[i]);
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> where(cols_, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] >= cols_) throw InputError("IntMatrix::select_cols out of range");
    where[cols[k]] = k;
  }
  IntMatrix m(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& e : data_[i])
      if (where[e.col] < cols.size()) m.data_[i].push_back({where[e.col], e.value});
    std::sort(m.data_[i].begin(), m.data_[i].end(), [](const Entry& x, const Entry& y) { return x.col < y.col; });
  }
  return m;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, c);
  return v;
}

std::vector<Integer> IntMatrix::dense() const {
  std::vector<Integer> d(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) d[i * cols_ + e.col] = e.value;
  return d;
}

void IntMatrix::add_block(std::size_t r0, std::size_t c0, const IntMatrix& block, const Integer& scale) {
  if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw InputError("IntMatrix::add_block out of range");
  for (std::size_t i = 0; i < block.rows_; ++i) {
    if (block.data_[i].empty()) continue;
    Row shifted;
    shifted.reserve(block.data_[i].size());
    for (const auto& e : block.data_[i]) shifted.push_back({c0 + e.col, e.value});
    data_[r0 + i] = row_axpy(data_[r0 + i], -scale, shifted);
  }
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& v) const {
  if (v.size() != cols_) throw InputError("IntMatrix::apply dimension mismatch");
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) out[i] += e.value * v[e.col];
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("IntMatrix product: dimension mismatch");
  IntMatrix m(a.rows_, b.cols_);
  std::vector<Integer> acc(b.cols_);
  std::vector<char> touched(b.cols_, 0);
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    used.clear();
    for (const auto& ea : a.data_[i]) {
      for (const auto& eb : b.data_[ea.col]) {
        if (!touched[eb.col]) {
          touched[eb.col] = 1;
          used.push_back(eb.col);
          acc[eb.col] = 0;
        }
        acc[eb.col] += ea.value * eb.value;
      }
    }
    std::sort(used.begin(), used.end());
    for (std::size_t c : used) {
      touched[c] = 0;
      if (!acc[c].is_zero()) m.data_[i].push_back({c, acc[c]});
    }
  }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("IntMatrix sum: shape mismatch");
  IntMatrix m(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) m.data_[i] = row_axpy(a.data_[i], -1, b.data_[i]);
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("IntMatrix difference: shape mismatch");
  IntMatrix m(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) m.data_[i] = row_axpy(a.data_[i], 1, b.data_[i]);
  return m;
}

IntMatrix operator-(const IntMatrix& a) { return Integer(-1) * a; }

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix m(a.rows_, a.cols_);
  if (s.is_zero()) return m;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    m.data_[i] = a.data_[i];
    for (auto& e : m.data_[i]) e.value *= s;
  }
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    if (a.data_[i].size() != b.data_[i].size()) return false;
    for (std::size_t k = 0; k < a.data_[i].size(); ++k)
      if (a.data_[i][k].col != b.data_[i][k].col || a.data_[i][k].value != b.data_[i][k].value) return false;
  }
  return true;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw InputError("IntMatrix::hstack: row mismatch");
  IntMatrix m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    m.data_[i] = a.data_[i];
    for (const auto& e : b.data_[i]) m.data_[i].push_back({a.cols_ + e.col, e.value});
  }
  return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw InputError("IntMatrix::vstack: column mismatch");
  IntMatrix m(a.rows_ + b.rows_, a.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) m.data_[i] = a.data_[i];
  for (std::size_t i = 0; i < b.rows_; ++i) m.data_[a.rows_ + i] = b.data_[i];
  return m;
}

IntMatrix IntMatrix::kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < b.rows_; ++k) {
      auto& row = m.data_[i * b.rows_ + k];
      for (const auto& ea : a.data_[i])
        for (const auto& eb : b.data_[k]) row.push_back({ea.col * b.cols_ + eb.col, ea.value * eb.value});
    }
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) m.data_[i].push_back({i, d[i]});
  return m;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Normal forms

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Dense a = Dense::of(m);
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Row Hermite reduction; the transform is tracked only when asked for.
HermiteForm hermite(const IntMatrix& m, bool with_transform) {
  Dense a = Dense::of(m);
  Dense u = with_transform ? Dense::identity(m.rows()) : Dense();
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    a.add_row(dst, src, f);
    if (with_transform) u.add_row(dst, src, f);
  };
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.c && r < a.r; ++col) {
    while (true) {
      std::size_t best = a.r;
      for (std::size_t i = r; i < a.r; ++i) {
        if (a(i, col).is_zero()) continue;
        if (best == a.r || abs_value(a(i, col)) < abs_value(a(best, col))) best = i;
      }
      if (best == a.r) break;
      a.swap_rows(r, best);
      if (with_transform) u.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < a.r; ++i) {
        if (a(i, col).is_zero()) continue;
        row_add(i, r, -(a(i, col) / a(r, col)));
        if (!a(i, col).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (a(r, col).is_zero()) continue;
    if (a(r, col) < 0) {
      a.negate_row(r);
      if (with_transform) u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(a(i, col), a(r, col));
      if (!q.is_zero()) row_add(i, r, -q);
    }
    ++r;
  }
  return {a.sparse(), with_transform ? u.sparse() : IntMatrix(), r};
}

}  // namespace

HermiteForm hnf(const IntMatrix& m) { return hermite(m, true); }

SmithForm snf(const IntMatrix& m) {
  Dense a = Dense::of(m);
  Dense u = Dense::identity(m.rows());
  Dense ui = Dense::identity(m.rows());
  Dense v = Dense::identity(m.cols());
  SmithReducer(a, &u, &ui, &v).run();
  SmithForm out;
  const std::size_t n = std::min(a.r, a.c);
  out.diagonal.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(a(i, i));
  out.s = a.sparse();
  out.u = u.sparse();
  out.u_inv = ui.sparse();
  out.v = v.sparse();
  return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  std::vector<Row> rows(m.rows());
  std::vector<std::set<std::size_t>> col_rows(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    rows[i] = m.row(i);
    for (const auto& e : rows[i]) col_rows[e.col].insert(i);
  }

  // Unit pivots first: each one contributes an invariant factor 1 and removes
  // a row and a column without disturbing the rest of the lattice.
  std::size_t units = 0;
  bool progress = true;
  std::vector<std::size_t> order;
  while (progress) {
    progress = false;
    order.clear();
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].empty()) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return rows[x].size() < rows[y].size(); });
    for (std::size_t r : order) {
      if (rows[r].empty()) continue;
      std::size_t pick = rows[r].size();
      for (std::size_t k = 0; k < rows[r].size(); ++k) {
        const auto& e = rows[r][k];
        if (e.value != 1 && e.value != -1) continue;
        if (pick == rows[r].size() || col_rows[e.col].size() < col_rows[rows[r][pick].col].size()) pick = k;
      }
      if (pick == rows[r].size()) continue;
      const std::size_t c = rows[r][pick].col;
      const Integer pv = rows[r][pick].value;
      std::vector<std::size_t> others;
      for (std::size_t i : col_rows[c])
        if (i != r) others.push_back(i);
      for (std::size_t i : others) {
        Integer f;
        for (const auto& e : rows[i])
          if (e.col == c) f = e.value * pv;
        Row next = row_axpy(rows[i], f, rows[r]);
        // keep the column index in sync with the new row support
        std::size_t p = 0;
        std::size_t q = 0;
        while (p < rows[i].size() || q < next.size()) {
          if (q == next.size() || (p < rows[i].size() && rows[i][p].col < next[q].col)) {
            col_rows[rows[i][p].col].erase(i);
            ++p;
          } else if (p == rows[i].size() || next[q].col < rows[i][p].col) {
            col_rows[next[q].col].insert(i);
            ++q;
          } else {
            ++p;
            ++q;
          }
        }
        rows[i] = std::move(next);
      }
      for (const auto& e : rows[r]) col_rows[e.col].erase(r);
      rows[r].clear();
      ++units;
      progress = true;
    }
  }

  std::vector<std::size_t> live_rows;
  std::vector<std::size_t> col_index(m.cols(), m.cols());
  std::size_t live_cols = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].empty()) continue;
    live_rows.push_back(i);
    for (const auto& e : rows[i])
      if (col_index[e.col] == m.cols()) col_index[e.col] = live_cols++;
  }
  std::vector<Integer> factors(units, Integer(1));
  if (!live_rows.empty()) {
    Dense rest(live_rows.size(), live_cols);
    for (std::size_t k = 0; k < live_rows.size(); ++k)
      for (const auto& e : rows[live_rows[k]]) rest(k, col_index[e.col]) = e.value;
    SmithReducer(rest, nullptr, nullptr, nullptr).run();
    for (std::size_t i = 0; i < std::min(rest.r, rest.c); ++i)
      if (!rest(i, i).is_zero()) factors.push_back(rest(i, i));
  }
  return factors;
}

IntMatrix kernel_lattice(const IntMatrix& m) {
  HermiteForm h = hnf(m.transpose());
  std::vector<std::size_t> rows;
  for (std::size_t i = h.rank; i < m.cols(); ++i) rows.push_back(i);
  return h.u.select_rows(rows).transpose();
}

// ---------------------------------------------------------------------------
// Lattice

Lattice::Lattice(const IntMatrix& generators) : ambient_(generators.rows()) {
  HermiteForm h = hermite(generators.transpose(), false);
  for (std::size_t i = 0; i < h.rank; ++i) {
    std::vector<Integer> row(ambient_);
    for (const auto& e : h.h.row(i)) row[e.col] = e.value;
    pivots_.push_back(h.h.row(i).front().col);
    basis_.push_back(std::move(row));
  }
}

IntMatrix Lattice::basis() const {
  IntMatrix b(basis_.size(), ambient_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!basis_[i][j].is_zero()) b.set(i, j, basis_[i][j]);
  return b.transpose();
}

bool Lattice::reduce(std::vector<Integer>& v, std::vector<Integer>* coords) const {
  if (v.size() != ambient_) throw PreconditionError("Lattice: vector of wrong dimension");
  if (coords) coords->assign(basis_.size(), 0);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const std::size_t p = pivots_[k];
    for (std::size_t j = (k == 0 ? 0 : pivots_[k - 1] + 1); j < p; ++j)
      if (!v[j].is_zero()) return false;
    if (v[p].is_zero()) continue;
    Integer q;
    Integer r;
    boost::multiprecision::divide_qr(v[p], basis_[k][p], q, r);
    if (!r.is_zero()) return false;
    for (std::size_t j = p; j < ambient_; ++j)
      if (!basis_[k][j].is_zero()) v[j] -= q * basis_[k][j];
    if (coords) (*coords)[k] = q;
  }
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x.is_zero(); });
}

bool Lattice::contains(const std::vector<Integer>& v) const {
  std::vector<Integer> w = v;
  return reduce(w, nullptr);
}

std::vector<Integer> Lattice::coordinates(const std::vector<Integer>& v) const {
  std::vector<Integer> w = v;
  std::vector<Integer> coords;
  if (!reduce(w, &coords)) throw PreconditionError("Lattice: vector is not in the lattice");
  return coords;
}

IntMatrix Lattice::coordinates(const IntMatrix& m) const {
  IntMatrix out(basis_.size(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::vector<Integer> coords = coordinates(m.column(c));
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (!coords[k].is_zero()) out.set(k, c, coords[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Groups

std::string AbelianInvariants::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b) {
  std::vector<Integer> all = a.torsion;
  all.insert(all.end(), b.torsion.begin(), b.torsion.end());
  AbelianInvariants out;
  out.rank = a.rank + b.rank;
  for (auto& f : invariant_factors(IntMatrix::diagonal(all)))
    if (f > 1) out.torsion.push_back(f);
  return out;
}

FpAbGroup::FpAbGroup(std::size_t generators) : FpAbGroup(generators, IntMatrix(generators, 0)) {}

FpAbGroup::FpAbGroup(std::size_t generators, IntMatrix relations)
    : generators_(generators), relations_(std::move(relations)) {
  if (relations_.rows() != generators_) throw InputError("FpAbGroup: relation matrix must have one row per generator");
  std::vector<Integer> f = invariant_factors(relations_);
  invariants_.rank = generators_ - f.size();
  for (auto& d : f)
    if (d > 1) invariants_.torsion.push_back(d);
}

GroupMorphism::GroupMorphism(FpAbGroup source, FpAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators())
    throw InputError("GroupMorphism: matrix shape does not match the groups");
  if (!source_.has_relations()) return;
  IntMatrix images = matrix_ * source_.relations();
  if (images.is_zero()) return;
  Lattice rel(target_.relations());
  for (std::size_t c = 0; c < images.cols(); ++c)
    if (!rel.contains(images.column(c)))
      throw BrokenComplexError("GroupMorphism: a relation of the source is not mapped into the relations of the target");
}

FpAbGroup subquotient_homology(const GroupMorphism& f, const GroupMorphism& g) {
  const FpAbGroup& b = f.target();
  if (b.generators() != g.source().generators() || !(b.relations() == g.source().relations()))
    throw PreconditionError("subquotient_homology: the middle groups differ");
  const FpAbGroup& c = g.target();

  IntMatrix gf = g.matrix() * f.matrix();
  if (!gf.is_zero()) {
    Lattice rel(c.relations());
    for (std::size_t k = 0; k < gf.cols(); ++k)
      if (!rel.contains(gf.column(k)))
        throw BrokenComplexError("subquotient_homology: composite is not zero modulo relations");
  }

  // x in Z^gens(B) with g x in the relation lattice of C
  IntMatrix stacked = IntMatrix::hstack(g.matrix(), -c.relations());
  IntMatrix ker = kernel_lattice(stacked);
  std::vector<std::size_t> top(b.generators());
  std::iota(top.begin(), top.end(), 0);
  Lattice cycles(ker.select_rows(top));

  IntMatrix boundaries = IntMatrix::hstack(f.matrix(), b.relations());
  return FpAbGroup(cycles.rank(), cycles.coordinates(boundaries));
}

ReducedPresentation reduce_presentation(const FpAbGroup& group) {
  const std::size_t g = group.generators();
  const IntMatrix rel_t = group.relations().transpose();  // one row per relation

  std::vector<std::size_t> parent(g);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t k = 0; k < rel_t.rows(); ++k) {
    const auto& row = rel_t.row(k);
    for (std::size_t i = 1; i < row.size(); ++i) {
      std::size_t a = find(row[0].col);
      std::size_t b = find(row[i].col);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<std::size_t>> block_gens(g);
  std::vector<std::vector<std::size_t>> block_rels(g);
  for (std::size_t i = 0; i < g; ++i) block_gens[find(i)].push_back(i);
  for (std::size_t k = 0; k < rel_t.rows(); ++k)
    if (!rel_t.row(k).empty()) block_rels[find(rel_t.row(k)[0].col)].push_back(k);

  struct Coordinate {
    std::vector<IntMatrix::Entry> to;    // row of to_reduced
    std::vector<IntMatrix::Entry> from;  // column of from_reduced
    Integer order;
  };
  std::vector<Coordinate> coords;
  for (std::size_t root = 0; root < g; ++root) {
    const auto& gens = block_gens[root];
    if (gens.empty()) continue;
    if (block_rels[root].empty()) {
      for (std::size_t x : gens) coords.push_back({{{x, Integer(1)}}, {{x, Integer(1)}}, Integer(0)});
      continue;
    }
    IntMatrix sub = rel_t.select_rows(block_rels[root]).select_cols(gens).transpose();
    SmithForm s = snf(sub);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Integer d = i < s.diagonal.size() ? s.diagonal[i] : Integer(0);
      if (d == 1) continue;
      Coordinate c;
      c.order = d;
      for (const auto& e : s.u.row(i)) c.to.push_back({gens[e.col], e.value});
      for (std::size_t j = 0; j < gens.size(); ++j) {
        Integer v = s.u_inv.at(j, i);
        if (!v.is_zero()) c.from.push_back({gens[j], v});
      }
      std::sort(c.to.begin(), c.to.end(), [](const auto& x, const auto& y) { return x.col < y.col; });
      coords.push_back(std::move(c));
    }
  }

  ReducedPresentation out;
  const std::size_t k = coords.size();
  out.to_reduced = IntMatrix(k, g);
  IntMatrix from_t(k, g);
  std::vector<std::size_t> torsion_coords;
  for (std::size_t i = 0; i < k; ++i) {
    out.to_reduced.set_row(i, coords[i].to);
    from_t.set_row(i, coords[i].from);
    out.orders.push_back(coords[i].order);
    if (!coords[i].order.is_zero()) torsion_coords.push_back(i);
  }
  out.from_reduced = from_t.transpose();
  IntMatrix rel(k, torsion_coords.size());
  for (std::size_t j = 0; j < torsion_coords.size(); ++j) rel.set(torsion_coords[j], j, coords[torsion_coords[j]].order);
  out.group = FpAbGroup(k, std::move(rel));
  return out;
}

}  // namespace poscoh
