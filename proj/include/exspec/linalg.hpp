#pragma once

#include <vector>

#include "exspec/fp.hpp"

namespace exspec {

using Vec = std::vector<int32_t>;

/// Dense row-major matrix over F_p. Entries are reduced residues.
struct FpMatrix {
  int32_t rows = 0;
  int32_t cols = 0;
  int32_t p = 0;
  std::vector<int32_t> a;

  FpMatrix() = default;
  FpMatrix(int32_t r, int32_t c, int32_t modulus);
  static FpMatrix identity(int32_t n, int32_t p);
  static FpMatrix from_rows(const std::vector<Vec>& rows, int32_t cols, int32_t p);

  int32_t& at(int32_t i, int32_t j) { return a[size_t(i) * cols + j]; }
  int32_t at(int32_t i, int32_t j) const { return a[size_t(i) * cols + j]; }
  Vec row(int32_t i) const { return Vec(a.begin() + size_t(i) * cols, a.begin() + size_t(i + 1) * cols); }

  friend FpMatrix operator*(const FpMatrix& x, const FpMatrix& y);
  friend FpMatrix operator-(const FpMatrix& x, const FpMatrix& y);
  friend bool operator==(const FpMatrix& x, const FpMatrix& y);

  /// x |-> M x on column vectors.
  Vec apply(const Vec& x) const;
};

/// Row space in reduced row echelon form: nonzero rows, unit pivots,
/// strictly increasing pivot columns, zeros above and below each pivot.
/// Equality of subspaces is plain equality of the stored data.
struct Subspace {
  int32_t ambient = 0;
  int32_t p = 0;
  FpMatrix basis;  // rank x ambient
  std::vector<int32_t> pivots;

  int32_t rank() const { return basis.rows; }
  bool is_zero() const { return basis.rows == 0; }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient == b.ambient && a.p == b.p && a.basis == b.basis;
  }
};

/// Incremental Gaussian eliminator. Rows are kept in echelon form with unit
/// pivots; to_subspace() back-substitutes to the canonical reduced form.
class RowReducer {
 public:
  RowReducer(int32_t p, int32_t cols);

  /// Reduce v against the current rows and insert the remainder if nonzero.
  /// Returns true when the rank grew.
  bool insert(Vec v);
  /// True iff v lies in the current row space.
  bool contains(Vec v) const;
  int32_t rank() const { return static_cast<int32_t>(rows_.size()); }
  int32_t cols() const { return cols_; }
  Subspace to_subspace() const;

 private:
  void reduce_in_place(Vec& v) const;
  int32_t p_;
  int32_t cols_;
  std::vector<Vec> rows_;           // sorted by pivot column
  std::vector<int32_t> pivot_col_;
};

/// Canonical reduced basis of the span of the given vectors.
Subspace rref_basis(const std::vector<Vec>& vectors, int32_t ambient, int32_t p);

/// Common kernel  { x : M x = 0 for every M }  of maps with a shared domain.
/// An empty list of maps yields the full space.
Subspace kernel_stack(const std::vector<FpMatrix>& maps, int32_t domain_dim, int32_t p);

Subspace intersect(const Subspace& a, const Subspace& b);

/// Sum of subspaces (the joined span).
Subspace join(const Subspace& a, const Subspace& b);

bool member(const Vec& x, const Subspace& s);

/// Matrix K with  K v = 0  <=>  v in the row space of s.  (ambient-rank) rows.
FpMatrix annihilator(const Subspace& s);

/// Zero subspace / full space helpers.
Subspace zero_subspace(int32_t ambient, int32_t p);
Subspace full_space(int32_t ambient, int32_t p);

}  // namespace exspec
