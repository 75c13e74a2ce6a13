#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exspec/ring.hpp"

namespace exspec {

/// Invertible 2x2 matrix over F_p.
struct Mat2 {
  int32_t e[4];  // row-major: e[0] e[1] / e[2] e[3]
  int32_t p;

  Mat2(int64_t g11, int64_t g12, int64_t g21, int64_t g22, int32_t modulus);
  static Mat2 identity(int32_t p) { return Mat2(1, 0, 0, 1, p); }
  static Mat2 diag(int64_t x, int64_t y, int32_t p) { return Mat2(x, 0, 0, y, p); }
  static Mat2 swap(int32_t p) { return Mat2(0, 1, 1, 0, p); }

  int32_t det() const;
  Mat2 inverse() const;
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y);
  friend bool operator<(const Mat2& x, const Mat2& y) { return x.encode() < y.encode(); }

  /// Dense encoding in [0, p^4), for hashing and canonical ordering.
  int32_t encode() const { return ((e[0] * p + e[1]) * p + e[2]) * p + e[3]; }
};

/// Subgroup of GL_2(F_p) given by generators; full element list on demand.
struct MatrixGroup {
  int32_t p;
  std::vector<Mat2> gens;

  explicit MatrixGroup(int32_t modulus) : p(modulus) {}
  MatrixGroup(int32_t modulus, std::vector<Mat2> generators);

  /// Closure of the generators (identity included). Memoized.
  const std::vector<Mat2>& elements() const;
  size_t order() const { return elements().size(); }
  bool contains(const Mat2& g) const;

 private:
  mutable std::vector<Mat2> elems_;
};

enum class GroupName { T, Tw, H, Hw, SL2, SL2_2, GL2 };

GroupName group_name_from_string(const std::string& s);
std::string to_string(GroupName n);

/// Standard subgroups: T the full diagonal torus, Tw its extension by the
/// coordinate swap w, H the index-3 subgroup <diag(x,x), diag(x^3,1)> for
/// 3 | p-1, Hw its extension by w, and SL2 < SL2:2 < GL2. The unit x is the
/// smallest primitive root mod p.
MatrixGroup named_group(int32_t p, GroupName name);

/// Matrix of the right substitution action on graded_basis(P, n):
///   y1 -> g11 y1 + g12 y2,  y2 -> g21 y1 + g22 y2,  C -> C,  v -> det(g) v,
/// followed by normal-form reduction. Satisfies act(g) act(h) = act(hg).
/// Memoized per (p, n, g); thread safe.
const FpMatrix& act_matrix(Prime P, const Mat2& g, int32_t n);

/// Same substitution on the degree-n piece of F_p[y, u].
FpMatrix act_matrix_ab(Prime P, const Mat2& g, int32_t n);

/// Action on the span of the degree-2l y-monomials times v^k (an (l+1)-dim
/// invariant subspace when l <= p-1; no reduction occurs there).
FpMatrix act_matrix_svk(Prime P, const Mat2& g, int32_t l, int32_t k);

/// Fixed points of the generators on a subspace of the degree-n piece:
/// the common kernel of (act(g) - id) restricted to the subspace. Valid for
/// any group, including ones of order divisible by p.
Subspace invariants(const MatrixGroup& group, Prime P, int32_t n, const Subspace& space);
Subspace invariants_full(const MatrixGroup& group, Prime P, int32_t n);

/// Orbits of the column action on the lines (1 : i), i = 0..p-1, and (0 : 1).
/// Each orbit is sorted; the list of orbits is sorted by first element.
std::vector<std::vector<ALabel>> orbit_classes(const MatrixGroup& group);

ALabel line_image(const Mat2& g, ALabel line);

/// Every subgroup of an enumerated group, each returned with a full element
/// list. Intended for small groups only (order <= 200).
std::vector<MatrixGroup> all_subgroups(const MatrixGroup& group);

std::vector<MatrixGroup> subgroups_of_order(const MatrixGroup& group, size_t k);

}  // namespace exspec
