#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exspec/linalg.hpp"

namespace exspec {

// The graded ring under study is generated by y1, y2, C, v with
//   deg y_i = 2,  deg C = 2p-2,  deg v = 2p,
// subject to
//   y1^p y2 = y1 y2^p,   C y_i = y_i^p,   C^2 = y1^{2p-2} + y2^{2p-2} - y1^{p-1} y2^{p-1}.
// Normal-form monomials y1^a y2^b C^c v^d have a,b in [0, p-1] and (a,b) != (p-1, p-1).

/// Normal-form exponent tuple. Ordering key is (d, c, a, b), ascending.
struct Monomial {
  int16_t a = 0, b = 0, c = 0, d = 0;
  friend bool operator<(const Monomial& x, const Monomial& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.c != y.c) return x.c < y.c;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

inline int32_t monomial_degree(Prime P, const Monomial& m) {
  return 2 * (m.a + m.b) + (2 * P.p - 2) * m.c + 2 * P.p * m.d;
}

/// F_p-linear combination of normal-form monomials; zero coefficients absent.
class RingElement {
 public:
  explicit RingElement(Prime P) : p_(P) {}

  Prime prime() const { return p_; }
  const std::map<Monomial, int32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, int64_t coeff);
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  friend RingElement operator+(RingElement x, const RingElement& y) { return x += y; }
  friend RingElement operator-(RingElement x, const RingElement& y) { return x -= y; }
  friend bool operator==(const RingElement& x, const RingElement& y) {
    return x.p_.p == y.p_.p && x.terms_ == y.terms_;
  }
  RingElement scaled(int64_t c) const;

  /// Degree shared by all terms; nullopt for 0 or inhomogeneous elements.
  std::optional<int32_t> degree() const;

  std::string str() const;

 private:
  Prime p_;
  std::map<Monomial, int32_t> terms_;
};

/// Normal form of y1^a y2^b C^c v^d for arbitrary nonnegative exponents.
/// Exponents >= p are rewritten with y^p = C y; a (p-1, p-1) pair is then
/// eliminated through the C^2 relation. Each step lowers a + b, so this
/// terminates; the result has at most three terms.
RingElement reduce(Prime P, int64_t a, int64_t b, int64_t c, int64_t d);

RingElement multiply(const RingElement& x, const RingElement& y);

RingElement one(Prime P);
RingElement gen_y1(Prime P);
RingElement gen_y2(Prime P);
RingElement gen_C(Prime P);
RingElement gen_v(Prime P);
RingElement gen_V(Prime P);   // v^{p-1}
RingElement gen_D1(Prime P);  // C^p + V
RingElement gen_D2(Prime P);  // C V
RingElement monomial_elem(Prime P, int a, int b, int c, int d);
RingElement power(const RingElement& x, int e);

/// All normal monomials of degree n in the canonical (d, c, a, b) order.
/// Odd n gives the empty list. Memoized per (p, n); thread safe.
const std::vector<Monomial>& graded_basis(Prime P, int32_t n);

int32_t graded_dim(Prime P, int32_t n);

/// Index of m in graded_basis(P, n); throws if absent.
int32_t basis_index(Prime P, int32_t n, const Monomial& m);

/// Coordinates of a homogeneous element in graded_basis(P, n).
Vec to_coords(const RingElement& x, int32_t n);

RingElement from_coords(Prime P, int32_t n, const Vec& coords);

// ---------------------------------------------------------------------------
// The p+1 maximal elementary abelian subgroups are indexed by the lines of a
// 2-dimensional F_p-space: indices 0..p-1 plus "infinity".

struct ALabel {
  int32_t index;  // 0..p-1, or kInf
  static constexpr int32_t kInf = -1;
  bool is_inf() const { return index == kInf; }
  friend bool operator==(const ALabel& x, const ALabel& y) { return x.index == y.index; }
  friend bool operator<(const ALabel& x, const ALabel& y) {
    // finite labels first, ascending; infinity last
    int32_t xi = x.is_inf() ? INT32_MAX : x.index;
    int32_t yi = y.is_inf() ? INT32_MAX : y.index;
    return xi < yi;
  }
  std::string str() const { return is_inf() ? "inf" : std::to_string(index); }
};

std::vector<ALabel> all_a_labels(Prime P);

/// Polynomial in the rank-two subgroup's cohomology F_p[y, u], deg y = deg u = 2.
class PolyAB {
 public:
  explicit PolyAB(Prime P) : p_(P) {}
  Prime prime() const { return p_; }
  const std::map<std::pair<int32_t, int32_t>, int32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(int32_t ey, int32_t eu, int64_t coeff);
  PolyAB& operator+=(const PolyAB& o);
  PolyAB& operator-=(const PolyAB& o);
  friend PolyAB operator+(PolyAB x, const PolyAB& y) { return x += y; }
  friend PolyAB operator-(PolyAB x, const PolyAB& y) { return x -= y; }
  friend PolyAB operator*(const PolyAB& x, const PolyAB& y);
  friend bool operator==(const PolyAB& x, const PolyAB& y) {
    return x.p_.p == y.p_.p && x.terms_ == y.terms_;
  }
  PolyAB scaled(int64_t c) const;
  std::string str() const;

 private:
  Prime p_;
  std::map<std::pair<int32_t, int32_t>, int32_t> terms_;  // (ey, eu) -> coeff
};

/// Restriction to the subgroup labelled A:
///   y1 -> y (or 0 at infinity), y2 -> i*y (or y at infinity),
///   C -> y^{p-1}, v -> u^p - y^{p-1} u.
PolyAB restrict_to(const RingElement& x, ALabel A);

/// Monomials y^ey u^eu of degree n, ordered by ey ascending.
std::vector<std::pair<int32_t, int32_t>> ab_basis(Prime P, int32_t n);
Vec ab_coords(const PolyAB& f, int32_t n);

// ---------------------------------------------------------------------------
// Degreewise spans R{g_1, ..., g_r} for the coefficient subalgebras that occur
// in the decomposition bookkeeping.

enum class CoeffRing {
  A,     // F_p[C, V]
  D,     // F_p[D1, D2]
  FpC,   // F_p[C]
  FpD1,  // F_p[D1]
  Fpv,   // F_p[v]
  Fp,    // constants
  FpCv,  // F_p[C, v]
};

/// Coefficient-ring basis elements of the exact degree deg.
std::vector<RingElement> coeff_monomials(Prime P, CoeffRing ring, int32_t deg);

/// Degree-n piece of sum_i R g_i as a subspace of graded_basis(P, n).
/// Checks the linear-independence convention: the products r * g_i for
/// coefficient monomials r must be linearly independent; throws otherwise.
Subspace span_subspace(Prime P, int32_t n, const std::vector<RingElement>& generators,
                       CoeffRing ring, bool assert_free = true);

/// Inserts the degree-n products of one R{g_1, ..., g_r} block into an
/// eliminator; returns the number of products.
int32_t span_into(RowReducer& red, Prime P, int32_t n,
                  const std::vector<RingElement>& generators, CoeffRing ring);

// ---------------------------------------------------------------------------
// Integral-model basis: the even part of the integral cohomology mod p is the
// reduced ring plus a nilpotent complement F_p[v]{b_2, ..., b_{p-2}},
// deg b_i = 2i (empty for p = 3).

struct BMonomial {
  int32_t k;  // v-exponent
  int32_t i;  // generator index, 2 <= i <= p-2
  friend bool operator<(const BMonomial& x, const BMonomial& y) {
    return x.k != y.k ? x.k < y.k : x.i < y.i;
  }
  friend bool operator==(const BMonomial& x, const BMonomial& y) {
    return x.k == y.k && x.i == y.i;
  }
};

struct IntegralBasis {
  std::vector<Monomial> ring_part;
  std::vector<BMonomial> b_part;
  int32_t dim() const { return static_cast<int32_t>(ring_part.size() + b_part.size()); }
};

IntegralBasis integral_basis(Prime P, int32_t n);

/// b-monomials of degree n, optionally filtered by k + i = q mod (p-1).
std::vector<BMonomial> b_monomials(Prime P, int32_t n, std::optional<int32_t> q = std::nullopt);

// ---------------------------------------------------------------------------
// p = 3 only: the reduced mod-3 cohomology is the reduced ring plus a free
// F_3[v]-module on two degree-2 classes a1', a2', with
//   a1' a2' = a1' y1 = a2' y2 = y1 y2,
//   (a1')^2 = (a2')^2 = a1' y2 = a2' y1  ( = y1^2 + y2^2 - C ).

class P3Element {
 public:
  P3Element();
  static P3Element from_ring(const RingElement& r);
  static P3Element a1();
  static P3Element a2();

  const RingElement& ring_part() const { return ring_; }
  /// (k, j) -> coeff of v^k a_j', j in {1, 2}
  const std::map<std::pair<int32_t, int32_t>, int32_t>& extra_part() const { return extra_; }
  void add_extra(int32_t k, int32_t j, int64_t coeff);
  void add_ring(const RingElement& r);
  P3Element& operator+=(const P3Element& o);
  friend P3Element operator+(P3Element x, const P3Element& y) { return x += y; }
  friend bool operator==(const P3Element& x, const P3Element& y) {
    return x.ring_ == y.ring_ && x.extra_ == y.extra_;
  }
  bool is_zero() const { return ring_.is_zero() && extra_.empty(); }

 private:
  RingElement ring_;
  std::map<std::pair<int32_t, int32_t>, int32_t> extra_;
};

P3Element p3_multiply(const P3Element& x, const P3Element& y);

/// Dimension of the degree-n piece of the p = 3 extended ring.
int32_t p3_graded_dim(int32_t n);

// ---------------------------------------------------------------------------
// Optional on-disk cache for graded bases (schema-versioned). Used only when a
// directory has been set here or through EXSPEC_CACHE_DIR.
void set_cache_dir(const std::string& dir);

}  // namespace exspec
