#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exspec/gamma.hpp"
#include "exspec/gl2.hpp"

namespace exspec {

/// Automizer of a radical subgroup class. The generated group must contain
/// SL_2(F_p); the two named forms always do, custom generator lists are
/// checked by enumeration.
struct WALabel {
  enum class Kind { SL2_2, GL2, Custom };
  Kind kind = Kind::SL2_2;
  std::vector<Mat2> custom_gens;

  static WALabel sl2_2() { return {Kind::SL2_2, {}}; }
  static WALabel gl2() { return {Kind::GL2, {}}; }
  static WALabel custom(std::vector<Mat2> gens) { return {Kind::Custom, std::move(gens)}; }
  std::vector<Mat2> generators(int32_t p) const;
  std::string str() const;
};

struct RadicalClass {
  std::vector<ALabel> lines;  // sorted, a union of orbits of the outer action
  WALabel wa;
};

/// Fusion data on the extraspecial group: the outer automizer of the whole
/// group as a matrix subgroup, plus the radical subgroup classes with their
/// automizers. Validated on construction: radical classes must be disjoint
/// unions of line orbits, and custom automizers must contain SL2.
struct FusionDescriptor {
  FusionDescriptor(Prime P, std::vector<Mat2> we_generators, std::vector<RadicalClass> radicals);

  Prime prime() const { return p_; }
  const MatrixGroup& we() const { return we_; }
  const std::vector<RadicalClass>& radicals() const { return radicals_; }

 private:
  Prime p_;
  MatrixGroup we_;
  std::vector<RadicalClass> radicals_;
};

/// Named systems. The generic family names follow the finite groups they
/// realize: L3p and L3p:2 take the index-3 automizer (they require 3 | p-1),
/// L3p.3 and L3p.S3 take the full torus. The p = 7 catalog matches the
/// classification tables for that prime.
FusionDescriptor preset(const std::string& name, int32_t p);

std::vector<std::string> preset_names();

/// dim H^{2n'}(G) with 2n' = n: invariants of the outer action whose
/// restriction to every radical line lands in that line's invariants.
int32_t hg_dim(const FusionDescriptor& F, int32_t n);

/// Multiplicity of the dominant summand X_{i,q}: dim (S^i v^q)^{W}.
int32_t n_mult(const FusionDescriptor& F, int32_t i, int32_t q);

/// Multiplicity of L(1,q): dim H^{2q}(G) for q >= 1, dim H^{2(p-1)}(G) for q = 0.
int32_t m1_mult(const FusionDescriptor& F, int32_t q);

/// Multiplicity of L(2,0): line orbit count minus radical class count.
int32_t m2_zero(const FusionDescriptor& F);

/// Multiplicity of L(2,q), 1 <= q <= p-2: dimension of the invariants of the
/// module (C S^q + T^q) v^q that restrict to zero on every radical line.
int32_t m2_mult(const FusionDescriptor& F, int32_t q);

struct SummandLabel {
  enum class Kind { X, L1, L2 };
  Kind kind;
  int32_t i = 0;  // X only
  int32_t q = 0;
  static SummandLabel X(int32_t i, int32_t q) { return {Kind::X, i, q}; }
  static SummandLabel L1(int32_t q) { return {Kind::L1, 0, q}; }
  static SummandLabel L2(int32_t q) { return {Kind::L2, 0, q}; }
  friend bool operator<(const SummandLabel& a, const SummandLabel& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.i != b.i) return a.i < b.i;
    return a.q < b.q;
  }
  friend bool operator==(const SummandLabel& a, const SummandLabel& b) {
    return a.kind == b.kind && a.i == b.i && a.q == b.q;
  }
  std::string str() const;
};

/// Wedge-summand multiplicities. The trivial-module summand is not reported.
using SplitMultiset = std::map<SummandLabel, int32_t>;

SplitMultiset split(const FusionDescriptor& F);

/// Splitting of the classifying space of the group itself: every summand
/// with multiplicity the dimension of its simple module.
SplitMultiset be_split(int32_t p);

/// Entrywise signed difference split(F1) - split(F2).
std::map<SummandLabel, int32_t> compare(const FusionDescriptor& F1, const FusionDescriptor& F2);

/// True iff hg_dim agrees through half-degree `bound` (default p^2 - 1,
/// and 8 for p = 3).
bool equivalence_by_dims(const FusionDescriptor& F1, const FusionDescriptor& F2,
                         std::optional<int32_t> bound = std::nullopt);

/// p = 7: every order-24 subgroup of the 72-element extended torus contains
/// both diagonal involutions.
bool verify_remark_on_fi24();

/// p = 3: first positive half-degree with a nonzero piece in the reduced
/// series of each summand.
std::map<SummandLabel, int32_t> p3_lowest_degree_table();

/// p = 3: the two rank-one twists of the natural module have equal invariant
/// dimensions for every subgroup of GL_2(F_3) of order coprime to 3.
bool p3_pairing_check();

// JSON (de)serialization of descriptors (schema documented in the README)
// and of splitting multisets.
FusionDescriptor descriptor_from_json(const std::string& text);
std::string descriptor_to_json(const FusionDescriptor& F);
std::string split_to_json(const std::map<SummandLabel, int32_t>& s);

}  // namespace exspec
