#include "exspec/fusion.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace exspec {

std::vector<Mat2> WALabel::generators(int32_t p) const {
  switch (kind) {
    case Kind::SL2_2: return named_group(p, GroupName::SL2_2).gens;
    case Kind::GL2: return named_group(p, GroupName::GL2).gens;
    case Kind::Custom: return custom_gens;
  }
  throw std::logic_error("unreachable");
}

std::string WALabel::str() const {
  switch (kind) {
    case Kind::SL2_2: return "SL2:2";
    case Kind::GL2: return "GL2";
    case Kind::Custom: return "custom";
  }
  throw std::logic_error("unreachable");
}

namespace {

bool contains_sl2(const MatrixGroup& g) {
  const int32_t p = g.p;
  return g.contains(Mat2(1, 1, 0, 1, p)) && g.contains(Mat2(1, 0, 1, 1, p));
}

}  // namespace

FusionDescriptor::FusionDescriptor(Prime P, std::vector<Mat2> we_generators,
                                   std::vector<RadicalClass> radicals)
    : p_(P), we_(P.p, std::move(we_generators)), radicals_(std::move(radicals)) {
  for (const auto& g : we_.gens)
    if (g.p != P.p) throw std::invalid_argument("outer-automizer generator has wrong modulus");

  auto orbits = orbit_classes(we_);
  auto orbit_of = [&](ALabel a) -> const std::vector<ALabel>& {
    for (const auto& o : orbits)
      if (std::find(o.begin(), o.end(), a) != o.end()) return o;
    throw std::logic_error("label outside orbit partition");
  };
  std::set<int32_t> used;
  for (auto& rc : radicals_) {
    if (rc.lines.empty()) throw std::invalid_argument("empty radical class");
    std::sort(rc.lines.begin(), rc.lines.end());
    std::set<ALabel> lines(rc.lines.begin(), rc.lines.end());
    if (lines.size() != rc.lines.size()) throw std::invalid_argument("repeated line in radical class");
    for (const auto& a : rc.lines) {
      if (!a.is_inf() && (a.index < 0 || a.index >= P.p))
        throw std::invalid_argument("line index out of range");
      int32_t key = a.is_inf() ? P.p : a.index;
      if (!used.insert(key).second)
        throw std::invalid_argument("radical classes are not pairwise disjoint");
      for (const auto& b : orbit_of(a))
        if (!lines.count(b))
          throw std::invalid_argument("radical class is not closed under the outer action");
    }
    if (rc.wa.kind == WALabel::Kind::Custom) {
      MatrixGroup h(P.p, rc.wa.custom_gens);
      if (h.order() > 60000) throw std::invalid_argument("custom automizer too large");
      if (!contains_sl2(h))
        throw std::invalid_argument("radical automizer does not contain SL2");
    }
  }
}

// --------------------------------------------------------------------------
// presets

namespace {

FusionDescriptor make_preset(int32_t p, GroupName w, std::vector<std::pair<std::vector<int32_t>, WALabel>> rads) {
  std::vector<RadicalClass> classes;
  for (auto& [idxs, wa] : rads) {
    RadicalClass rc;
    for (int32_t i : idxs) rc.lines.push_back(i == -1 ? ALabel{ALabel::kInf} : ALabel{i});
    rc.wa = wa;
    classes.push_back(std::move(rc));
  }
  return FusionDescriptor(Prime(p), named_group(p, w).gens, std::move(classes));
}

std::vector<int32_t> range_lines(int32_t lo, int32_t hi) {
  std::vector<int32_t> out;
  for (int32_t i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"L3p",     "L3p:2",    "L3p.3",     "L3p.S3", "L3(7)", "L3(7)b", "L3(7):2",
          "L3(7):2b", "L3(7).3", "L3(7).S3", "ON",     "Fi24",  "Fi24'",  "RV1"};
}

FusionDescriptor preset(const std::string& name, int32_t p) {
  require_odd_prime(p);
  const auto s22 = WALabel::sl2_2();
  const auto gl2 = WALabel::gl2();
  auto need_p7 = [&] {
    if (p != 7) throw std::invalid_argument("preset " + name + " is specific to p = 7");
  };
  if (name == "L3p") {
    if ((p - 1) % 3 != 0)
      throw std::invalid_argument("preset L3p requires 3 | p-1; use L3p.3 for this prime");
    return make_preset(p, GroupName::H, {{{0}, s22}, {{-1}, s22}});
  }
  if (name == "L3p:2") {
    if ((p - 1) % 3 != 0)
      throw std::invalid_argument("preset L3p:2 requires 3 | p-1; use L3p.S3 for this prime");
    return make_preset(p, GroupName::Hw, {{{0, -1}, s22}});
  }
  if (name == "L3p.3") return make_preset(p, GroupName::T, {{{0}, gl2}, {{-1}, gl2}});
  if (name == "L3p.S3") return make_preset(p, GroupName::Tw, {{{0, -1}, gl2}});
  if (name == "L3(7)") { need_p7(); return preset("L3p", 7); }
  if (name == "L3(7):2") { need_p7(); return preset("L3p:2", 7); }
  if (name == "L3(7).3") { need_p7(); return preset("L3p.3", 7); }
  if (name == "L3(7).S3") { need_p7(); return preset("L3p.S3", 7); }
  if (name == "L3(7)b") {
    need_p7();
    // conjugate form of L3(7): automizer <3I, w>, radical lines 1 and 6
    return FusionDescriptor(Prime(7), {Mat2::diag(3, 3, 7), Mat2::swap(7)},
                            {RadicalClass{{ALabel{1}}, s22}, RadicalClass{{ALabel{6}}, s22}});
  }
  if (name == "L3(7):2b") {
    need_p7();
    return make_preset(7, GroupName::Hw, {{{1, 6}, s22}});
  }
  if (name == "ON") {
    need_p7();
    return make_preset(7, GroupName::Hw, {{{0, -1}, s22}, {{1, 6}, s22}});
  }
  if (name == "Fi24") {
    need_p7();
    return make_preset(7, GroupName::Tw, {{range_lines(1, 6), s22}});
  }
  if (name == "Fi24'") {
    need_p7();
    // automizer <3I, diag(2,4), w>
    return FusionDescriptor(Prime(7),
                            {Mat2::diag(3, 3, 7), Mat2::diag(2, 4, 7), Mat2::swap(7)},
                            {RadicalClass{{ALabel{1}, ALabel{2}, ALabel{4}}, s22},
                             RadicalClass{{ALabel{3}, ALabel{5}, ALabel{6}}, s22}});
  }
  if (name == "RV1") {
    need_p7();
    return make_preset(7, GroupName::Tw, {{{0, -1}, gl2}, {range_lines(1, 6), s22}});
  }
  throw std::invalid_argument("unknown preset: " + name);
}

// --------------------------------------------------------------------------
// multiplicities

namespace {

// invariants of the degree-n piece of F_p[y, u] under the automizer
Subspace a_side_invariants(Prime P, const WALabel& wa, int32_t n) {
  std::vector<FpMatrix> conds;
  const int32_t dim = n / 2 + 1;
  for (const auto& g : wa.generators(P.p))
    conds.push_back(act_matrix_ab(P, g, n) - FpMatrix::identity(dim, P.p));
  return kernel_stack(conds, dim, P.p);
}

// restriction matrix graded_basis(n) -> degree-n piece of F_p[y, u]
FpMatrix restriction_matrix(Prime P, ALabel A, int32_t n) {
  const auto& basis = graded_basis(P, n);
  FpMatrix R(n / 2 + 1, static_cast<int32_t>(basis.size()), P.p);
  for (size_t j = 0; j < basis.size(); ++j) {
    RingElement e(P);
    e.add_term(basis[j], 1);
    Vec col = ab_coords(restrict_to(e, A), n);
    for (int32_t i = 0; i < R.rows; ++i) R.at(i, int32_t(j)) = col[i];
  }
  return R;
}

}  // namespace

int32_t hg_dim(const FusionDescriptor& F, int32_t n) {
  if (n % 2 != 0) throw std::invalid_argument("odd degree in hg_dim");
  const Prime P = F.prime();
  const int32_t dim = graded_dim(P, n);
  if (dim == 0) return 0;
  std::vector<FpMatrix> conds;
  for (const auto& g : F.we().gens)
    conds.push_back(act_matrix(P, g, n) - FpMatrix::identity(dim, P.p));
  for (const auto& rc : F.radicals()) {
    Subspace inv = a_side_invariants(P, rc.wa, n);
    FpMatrix K = annihilator(inv);
    for (const auto& A : rc.lines) {
      FpMatrix R = restriction_matrix(P, A, n);
      if (K.rows > 0) conds.push_back(K * R);
    }
  }
  return kernel_stack(conds, dim, P.p).rank();
}

int32_t n_mult(const FusionDescriptor& F, int32_t i, int32_t q) {
  const Prime P = F.prime();
  if (i < 0 || i > P.p - 1 || q < 0 || q > P.p - 2)
    throw std::invalid_argument("summand index out of range");
  std::vector<FpMatrix> conds;
  for (const auto& g : F.we().gens)
    conds.push_back(act_matrix_svk(P, g, i, q) - FpMatrix::identity(i + 1, P.p));
  return kernel_stack(conds, i + 1, P.p).rank();
}

int32_t m1_mult(const FusionDescriptor& F, int32_t q) {
  const Prime P = F.prime();
  if (q < 0 || q > P.p - 2) throw std::invalid_argument("twist out of range");
  return q == 0 ? hg_dim(F, 2 * (P.p - 1)) : hg_dim(F, 2 * q);
}

int32_t m2_zero(const FusionDescriptor& F) {
  return static_cast<int32_t>(orbit_classes(F.we()).size() - F.radicals().size());
}

namespace {

// basis of (C S^q + T^q) v^q inside its graded piece
Subspace csq_module(Prime P, int32_t q) {
  const int32_t p = P.p;
  const int32_t n = 2 * (p - 1 + q) + 2 * p * q;
  RowReducer red(p, graded_dim(P, n));
  for (int32_t a = q; a >= 0; --a)  // C * S^q
    red.insert(to_coords(monomial_elem(P, a, q - a, 1, q), n));
  for (int32_t a = p - 1; a >= q; --a)  // T^q
    red.insert(to_coords(monomial_elem(P, a, p - 1 + q - a, 0, q), n));
  return red.to_subspace();
}

}  // namespace

int32_t m2_mult(const FusionDescriptor& F, int32_t q) {
  const Prime P = F.prime();
  const int32_t p = P.p;
  if (q < 1 || q > p - 2) throw std::invalid_argument("twist out of range in m2_mult");
  const int32_t n = 2 * (p - 1 + q) + 2 * p * q;
  Subspace M = csq_module(P, q);
  const int32_t r = M.rank();
  std::vector<FpMatrix> conds;
  auto restricted = [&](const FpMatrix& big) {
    FpMatrix m(big.rows, r, p);
    for (int32_t c = 0; c < r; ++c) {
      Vec img = big.apply(M.basis.row(c));
      for (int32_t i = 0; i < big.rows; ++i) m.at(i, c) = img[i];
    }
    return m;
  };
  const FpMatrix id = FpMatrix::identity(graded_dim(P, n), p);
  for (const auto& g : F.we().gens) conds.push_back(restricted(act_matrix(P, g, n) - id));
  for (const auto& rc : F.radicals())
    for (const auto& A : rc.lines) conds.push_back(restricted(restriction_matrix(P, A, n)));
  return kernel_stack(conds, r, p).rank();
}

std::string SummandLabel::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::X: os << "X(" << i << "," << q << ")"; break;
    case Kind::L1: os << "L(1," << q << ")"; break;
    case Kind::L2: os << "L(2," << q << ")"; break;
  }
  return os.str();
}

SplitMultiset split(const FusionDescriptor& F) {
  const int32_t p = F.prime().p;
  SplitMultiset out;
  auto put = [&out](SummandLabel s, int32_t c) {
    if (c != 0) out[s] = c;
  };
  for (int32_t i = 0; i <= p - 1; ++i)
    for (int32_t q = 0; q <= p - 2; ++q) put(SummandLabel::X(i, q), n_mult(F, i, q));
  for (int32_t q = 0; q <= p - 2; ++q) put(SummandLabel::L1(q), m1_mult(F, q));
  put(SummandLabel::L2(0), m2_zero(F));
  for (int32_t q = 1; q <= p - 2; ++q) put(SummandLabel::L2(q), m2_mult(F, q));
  return out;
}

SplitMultiset be_split(int32_t p) {
  Prime P(p);
  SplitMultiset out;
  for (int32_t i = 0; i <= p - 1; ++i)
    for (int32_t q = 0; q <= p - 2; ++q)
      out[SummandLabel::X(i, q)] = simple_dim(P, SimpleLabel::EE(i, q));
  for (int32_t q = 0; q <= p - 2; ++q) {
    out[SummandLabel::L1(q)] = simple_dim(P, SimpleLabel::CP(q));
    out[SummandLabel::L2(q)] = simple_dim(P, SimpleLabel::AA(q));
  }
  return out;
}

std::map<SummandLabel, int32_t> compare(const FusionDescriptor& F1, const FusionDescriptor& F2) {
  if (F1.prime().p != F2.prime().p) throw std::invalid_argument("prime mismatch in compare");
  std::map<SummandLabel, int32_t> out = split(F1);
  for (const auto& [s, c] : split(F2)) {
    out[s] -= c;
    if (out[s] == 0) out.erase(s);
  }
  return out;
}

bool equivalence_by_dims(const FusionDescriptor& F1, const FusionDescriptor& F2,
                         std::optional<int32_t> bound) {
  if (F1.prime().p != F2.prime().p) throw std::invalid_argument("prime mismatch");
  const int32_t p = F1.prime().p;
  int32_t b = bound.value_or(p == 3 ? 8 : p * p - 1);
  for (int32_t half = 0; half <= b; ++half)
    if (hg_dim(F1, 2 * half) != hg_dim(F2, 2 * half)) return false;
  return true;
}

bool verify_remark_on_fi24() {
  const int32_t p = 7;
  MatrixGroup tw = named_group(p, GroupName::Tw);
  if (tw.order() != 72) throw std::logic_error("extended torus should have order 72");
  const Mat2 u1 = Mat2::diag(-1, 1, p);
  const Mat2 u2 = Mat2::diag(1, -1, p);
  auto subs = subgroups_of_order(tw, 24);
  if (subs.empty()) return false;
  for (const auto& h : subs)
    if (!h.contains(u1) || !h.contains(u2)) return false;
  return true;
}

std::map<SummandLabel, int32_t> p3_lowest_degree_table() {
  const Prime P(3);
  std::map<SummandLabel, int32_t> out;
  auto first_half = [&](const SimpleLabel& s) {
    for (int32_t n = 2; n <= 2 * (P.p + 2) * (P.p - 1); n += 2)
      if (he_series_dim(P, s, n) > 0) return n / 2;
    throw std::logic_error("no nonzero degree for " + s.str());
  };
  for (int32_t i = 0; i <= 2; ++i)
    for (int32_t q = 0; q <= 1; ++q)
      out[SummandLabel::X(i, q)] = first_half(SimpleLabel::EE(i, q));
  for (int32_t q = 0; q <= 1; ++q) {
    out[SummandLabel::L1(q)] = first_half(SimpleLabel::CP(q));
    out[SummandLabel::L2(q)] = first_half(SimpleLabel::AA(q));
  }
  return out;
}

bool p3_pairing_check() {
  const int32_t p = 3;
  MatrixGroup gl2 = named_group(p, GroupName::GL2);
  if (gl2.order() != 48) throw std::logic_error("GL2(F3) should have order 48");
  for (const auto& h : all_subgroups(gl2)) {
    if (h.order() % 3 == 0) continue;
    // natural module and its det twist: invariants of x -> det^q g^T x
    int32_t dims[2];
    for (int32_t q = 0; q <= 1; ++q) {
      std::vector<FpMatrix> conds;
      for (const auto& g : h.elements()) {
        FpMatrix m(2, 2, p);
        int32_t twist = mod_pow(g.det(), q, p);
        m.at(0, 0) = mod_reduce(int64_t(twist) * g.e[0] - 1, p);
        m.at(1, 0) = mod_reduce(int64_t(twist) * g.e[1], p);
        m.at(0, 1) = mod_reduce(int64_t(twist) * g.e[2], p);
        m.at(1, 1) = mod_reduce(int64_t(twist) * g.e[3] - 1, p);
        conds.push_back(std::move(m));
      }
      dims[q] = kernel_stack(conds, 2, p).rank();
    }
    if (dims[0] != dims[1]) return false;
  }
  return true;
}

}  // namespace exspec
