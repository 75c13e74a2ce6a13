#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exspec/gl2.hpp"
#include "exspec/ring.hpp"

namespace exspec {

// Simple modules of the double Burnside algebra of the group under study:
//   EE(i, q)  <->  the pair (whole group, S^i x det^q),  0 <= i <= p-1, 0 <= q <= p-2
//   AA(q)     <->  (maximal elementary abelian, top symmetric power x det^q)
//   CP(i)     <->  (cyclic of order p, U_i)
//   TRIV      <->  (trivial subgroup, trivial module)

struct SimpleLabel {
  enum class Kind { EE, AA, CP, TRIV };
  Kind kind;
  int32_t i = 0;  // EE: 0..p-1, CP: 0..p-2
  int32_t q = 0;  // EE, AA: 0..p-2

  static SimpleLabel EE(int32_t i, int32_t q) { return {Kind::EE, i, q}; }
  static SimpleLabel AA(int32_t q) { return {Kind::AA, 0, q}; }
  static SimpleLabel CP(int32_t i) { return {Kind::CP, i, 0}; }
  static SimpleLabel TRIV() { return {Kind::TRIV, 0, 0}; }

  friend bool operator<(const SimpleLabel& x, const SimpleLabel& y) {
    if (x.kind != y.kind) return x.kind < y.kind;
    if (x.i != y.i) return x.i < y.i;
    return x.q < y.q;
  }
  friend bool operator==(const SimpleLabel& x, const SimpleLabel& y) {
    return x.kind == y.kind && x.i == y.i && x.q == y.q;
  }
  std::string str() const;
};

std::vector<SimpleLabel> all_simple_labels(Prime P);

void validate_label(Prime P, const SimpleLabel& s);

int32_t simple_dim(Prime P, const SimpleLabel& s);

/// Multiplicity map over simple labels. Counts may be negative only in
/// signed differences; plain factor multisets are nonnegative.
using FactorMultiset = std::map<SimpleLabel, int32_t>;

int32_t total_dim(Prime P, const FactorMultiset& f);

/// Degree-n piece of the subspace attached to the simple label s
/// (coordinates in graded_basis(P, n)). Zero for odd n. Memoized.
Subspace gamma_basis(Prime P, const SimpleLabel& s, int32_t n);

int32_t gamma_rank(Prime P, const SimpleLabel& s, int32_t n);

struct DirectSumReport {
  bool pass = true;
  std::vector<int32_t> failed_degrees;
  int32_t max_degree = 0;
};

/// Checks, for every even n <= max_degree, that the label subspaces fill the
/// graded piece with full joined rank.
DirectSumReport check_gamma_direct_sum(Prime P, int32_t max_degree);

/// Degree-n piece of the ideal generated by y1 v and y2 v. Memoized.
Subspace I_basis(Prime P, int32_t n);

/// Degree-n piece of the stated vector-space complement of that ideal.
Subspace L_basis(Prime P, int32_t n);

/// Tabulated intersection of the ideal with the label subspace. Memoized.
/// Equals intersect(I_basis(n), gamma_basis(s, n)).
Subspace i_cap_gamma_basis(Prime P, const SimpleLabel& s, int32_t n);

int32_t i_cap_gamma_rank(Prime P, const SimpleLabel& s, int32_t n);

/// Span of the nilpotent-generator monomials v^k b_i of degree n (with
/// k + i = q mod p-1 when q is given), inside the integral-model basis.
Subspace N_basis(Prime P, int32_t n, std::optional<int32_t> q = std::nullopt);

/// Composition factors of the degree-n piece of the reduced ring.
FactorMultiset he_factors(Prime P, int32_t n);

/// Composition factors of the degree-n piece of the ideal (y1 v, y2 v).
FactorMultiset i_factors(Prime P, int32_t n);

/// Composition factors of the nilpotent complement at degree n.
FactorMultiset n_factors(Prime P, int32_t n);

/// Composition factors of the full mod-p cohomology at degree n:
/// even n: he(n) + nil(n) + ideal(n + 2p);
/// odd n:  ideal(n + 2p - 1) + nil(n + 1) + positive-degree he(n + 1).
FactorMultiset hefp_factors(Prime P, int32_t n);

/// Per-degree dimension of the summand attached to s in the full mod-p
/// cohomology: the composition count of s at degree n.
int32_t summand_dim(Prime P, const SimpleLabel& s, int32_t n);

/// Composition count of s at degree n in the reduced ring only.
int32_t he_series_dim(Prime P, const SimpleLabel& s, int32_t n);

enum class Series { HE, I, HEFP };

/// Least degree with a nonzero multiplicity in the chosen series, searched
/// through 4(p^2-1) + 2p. Empty when the label never occurs (e.g. the
/// trivial label in the ideal series).
std::optional<int32_t> first_degree(Prime P, const SimpleLabel& s, Series series);

/// p = 3 only: composition factor of the degree-n piece of the quotient of
/// the extended ring by the reduced ring, computed from the twisted
/// F_3[v]-module structure of the quotient.
FactorMultiset p3_quotient_factors(int32_t n);

}  // namespace exspec
