#include "exspec/linalg.hpp"

#include <algorithm>

namespace exspec {

int32_t binom_mod(int64_t n, int64_t k, int32_t p) {
  if (k < 0 || k > n) return 0;
  // Lucas: digitwise base-p binomials.
  int64_t acc = 1;
  while (n > 0 || k > 0) {
    int64_t nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    int64_t c = 1;
    for (int64_t j = 0; j < kd; ++j) c = c * ((nd - j) % p) % p * mod_inverse(int32_t(j + 1), p) % p;
    acc = acc * c % p;
    n /= p;
    k /= p;
  }
  return static_cast<int32_t>(acc);
}

FpMatrix::FpMatrix(int32_t r, int32_t c, int32_t modulus) : rows(r), cols(c), p(modulus) {
  require_odd_prime(modulus);
  a.assign(size_t(r) * c, 0);
}

FpMatrix FpMatrix::identity(int32_t n, int32_t p) {
  FpMatrix m(n, n, p);
  for (int32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<Vec>& rows, int32_t cols, int32_t p) {
  FpMatrix m(static_cast<int32_t>(rows.size()), cols, p);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int32_t>(rows[i].size()) != cols)
      throw std::invalid_argument("row length does not match column count");
    for (int32_t j = 0; j < cols; ++j) m.at(int32_t(i), j) = mod_reduce(rows[i][j], p);
  }
  return m;
}

FpMatrix operator*(const FpMatrix& x, const FpMatrix& y) {
  if (x.p != y.p) throw std::invalid_argument("mixed moduli in matrix product");
  if (x.cols != y.rows) throw std::invalid_argument("dimension mismatch in matrix product");
  FpMatrix z(x.rows, y.cols, x.p);
  for (int32_t i = 0; i < x.rows; ++i)
    for (int32_t k = 0; k < x.cols; ++k) {
      int64_t v = x.at(i, k);
      if (v == 0) continue;
      for (int32_t j = 0; j < y.cols; ++j)
        z.at(i, j) = mod_reduce(z.at(i, j) + v * y.at(k, j), x.p);
    }
  return z;
}

FpMatrix operator-(const FpMatrix& x, const FpMatrix& y) {
  if (x.p != y.p || x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("shape or modulus mismatch in matrix difference");
  FpMatrix z(x.rows, x.cols, x.p);
  for (size_t i = 0; i < x.a.size(); ++i) z.a[i] = mod_reduce(int64_t(x.a[i]) - y.a[i], x.p);
  return z;
}

bool operator==(const FpMatrix& x, const FpMatrix& y) {
  return x.rows == y.rows && x.cols == y.cols && x.p == y.p && x.a == y.a;
}

Vec FpMatrix::apply(const Vec& x) const {
  if (static_cast<int32_t>(x.size()) != cols)
    throw std::invalid_argument("dimension mismatch in matrix apply");
  Vec y(rows, 0);
  for (int32_t i = 0; i < rows; ++i) {
    int64_t acc = 0;
    for (int32_t j = 0; j < cols; ++j) acc += int64_t(at(i, j)) * x[j];
    y[i] = mod_reduce(acc, p);
  }
  return y;
}

RowReducer::RowReducer(int32_t p, int32_t cols) : p_(p), cols_(cols) { require_odd_prime(p); }

void RowReducer::reduce_in_place(Vec& v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    int32_t c = pivot_col_[r];
    int32_t f = v[c];
    if (f == 0) continue;
    const Vec& row = rows_[r];
    for (int32_t j = c; j < cols_; ++j)
      v[j] = mod_reduce(int64_t(v[j]) - int64_t(f) * row[j], p_);
  }
}

bool RowReducer::insert(Vec v) {
  if (static_cast<int32_t>(v.size()) != cols_)
    throw std::invalid_argument("dimension mismatch: vector length != ambient");
  for (auto& x : v) x = mod_reduce(x, p_);
  reduce_in_place(v);
  int32_t lead = -1;
  for (int32_t j = 0; j < cols_; ++j)
    if (v[j] != 0) { lead = j; break; }
  if (lead < 0) return false;
  int32_t inv = mod_inverse(v[lead], p_);
  for (int32_t j = lead; j < cols_; ++j) v[j] = mod_reduce(int64_t(v[j]) * inv, p_);
  auto pos = std::lower_bound(pivot_col_.begin(), pivot_col_.end(), lead) - pivot_col_.begin();
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivot_col_.insert(pivot_col_.begin() + pos, lead);
  return true;
}

bool RowReducer::contains(Vec v) const {
  if (static_cast<int32_t>(v.size()) != cols_)
    throw std::invalid_argument("dimension mismatch: vector length != ambient");
  for (auto& x : v) x = mod_reduce(x, p_);
  reduce_in_place(v);
  return std::all_of(v.begin(), v.end(), [](int32_t x) { return x == 0; });
}

Subspace RowReducer::to_subspace() const {
  std::vector<Vec> rows = rows_;
  // zero out entries above each pivot
  for (size_t r = rows.size(); r-- > 0;) {
    int32_t c = pivot_col_[r];
    for (size_t s = 0; s < r; ++s) {
      int32_t f = rows[s][c];
      if (f == 0) continue;
      for (int32_t j = c; j < cols_; ++j)
        rows[s][j] = mod_reduce(int64_t(rows[s][j]) - int64_t(f) * rows[r][j], p_);
    }
  }
  Subspace out;
  out.ambient = cols_;
  out.p = p_;
  out.basis = FpMatrix::from_rows(rows, cols_, p_);
  out.pivots = pivot_col_;
  return out;
}

Subspace rref_basis(const std::vector<Vec>& vectors, int32_t ambient, int32_t p) {
  RowReducer red(p, ambient);
  for (const auto& v : vectors) red.insert(v);
  return red.to_subspace();
}

Subspace kernel_stack(const std::vector<FpMatrix>& maps, int32_t domain_dim, int32_t p) {
  RowReducer red(p, domain_dim);
  for (const auto& m : maps) {
    if (m.p != p) throw std::invalid_argument("mixed moduli in kernel_stack");
    if (m.cols != domain_dim) throw std::invalid_argument("column-count mismatch in kernel_stack");
    for (int32_t i = 0; i < m.rows; ++i) red.insert(m.row(i));
  }
  Subspace rowspace = red.to_subspace();
  // kernel from the free columns of the stacked RREF
  std::vector<bool> is_pivot(domain_dim, false);
  for (int32_t c : rowspace.pivots) is_pivot[c] = true;
  RowReducer ker(p, domain_dim);
  for (int32_t f = 0; f < domain_dim; ++f) {
    if (is_pivot[f]) continue;
    Vec x(domain_dim, 0);
    x[f] = 1;
    for (int32_t r = 0; r < rowspace.rank(); ++r)
      x[rowspace.pivots[r]] = mod_reduce(-int64_t(rowspace.basis.at(r, f)), p);
    ker.insert(std::move(x));
  }
  return ker.to_subspace();
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient || a.p != b.p)
    throw std::invalid_argument("ambient mismatch in intersect");
  const int32_t m = a.ambient, ra = a.rank(), rb = b.rank();
  if (ra == 0 || rb == 0) return zero_subspace(m, a.p);
  // solve u^T A = w^T B: kernel of [A^T | -B^T], read off the A-combination
  FpMatrix stacked(m, ra + rb, a.p);
  for (int32_t i = 0; i < m; ++i) {
    for (int32_t r = 0; r < ra; ++r) stacked.at(i, r) = a.basis.at(r, i);
    for (int32_t r = 0; r < rb; ++r) stacked.at(i, ra + r) = mod_reduce(-int64_t(b.basis.at(r, i)), a.p);
  }
  Subspace ker = kernel_stack({stacked}, ra + rb, a.p);
  RowReducer red(a.p, m);
  for (int32_t k = 0; k < ker.rank(); ++k) {
    Vec x(m, 0);
    for (int32_t r = 0; r < ra; ++r) {
      int64_t u = ker.basis.at(k, r);
      if (u == 0) continue;
      for (int32_t j = 0; j < m; ++j) x[j] = mod_reduce(x[j] + u * a.basis.at(r, j), a.p);
    }
    red.insert(std::move(x));
  }
  return red.to_subspace();
}

Subspace join(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient || a.p != b.p)
    throw std::invalid_argument("ambient mismatch in join");
  RowReducer red(a.p, a.ambient);
  for (int32_t i = 0; i < a.rank(); ++i) red.insert(a.basis.row(i));
  for (int32_t i = 0; i < b.rank(); ++i) red.insert(b.basis.row(i));
  return red.to_subspace();
}

bool member(const Vec& x, const Subspace& s) {
  if (static_cast<int32_t>(x.size()) != s.ambient)
    throw std::invalid_argument("dimension mismatch in member");
  RowReducer red(s.p, s.ambient);
  for (int32_t i = 0; i < s.rank(); ++i) red.insert(s.basis.row(i));
  return red.contains(x);
}

FpMatrix annihilator(const Subspace& s) {
  Subspace ker = kernel_stack({s.basis}, s.ambient, s.p);
  return ker.basis;
}

Subspace zero_subspace(int32_t ambient, int32_t p) {
  RowReducer red(p, ambient);
  return red.to_subspace();
}

Subspace full_space(int32_t ambient, int32_t p) {
  RowReducer red(p, ambient);
  for (int32_t i = 0; i < ambient; ++i) {
    Vec e(ambient, 0);
    e[i] = 1;
    red.insert(std::move(e));
  }
  return red.to_subspace();
}

}  // namespace exspec
