#include "exspec/gamma.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace exspec {

std::string SimpleLabel::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::EE: os << "EE(" << i << "," << q << ")"; break;
    case Kind::AA: os << "AA(" << q << ")"; break;
    case Kind::CP: os << "CP(" << i << ")"; break;
    case Kind::TRIV: os << "TRIV"; break;
  }
  return os.str();
}

std::vector<SimpleLabel> all_simple_labels(Prime P) {
  std::vector<SimpleLabel> out;
  for (int32_t i = 0; i <= P.p - 1; ++i)
    for (int32_t q = 0; q <= P.p - 2; ++q) out.push_back(SimpleLabel::EE(i, q));
  for (int32_t q = 0; q <= P.p - 2; ++q) out.push_back(SimpleLabel::AA(q));
  for (int32_t i = 0; i <= P.p - 2; ++i) out.push_back(SimpleLabel::CP(i));
  out.push_back(SimpleLabel::TRIV());
  std::sort(out.begin(), out.end());
  return out;
}

void validate_label(Prime P, const SimpleLabel& s) {
  const int32_t p = P.p;
  bool ok = true;
  switch (s.kind) {
    case SimpleLabel::Kind::EE: ok = s.i >= 0 && s.i <= p - 1 && s.q >= 0 && s.q <= p - 2; break;
    case SimpleLabel::Kind::AA: ok = s.i == 0 && s.q >= 0 && s.q <= p - 2; break;
    case SimpleLabel::Kind::CP: ok = s.q == 0 && s.i >= 0 && s.i <= p - 2; break;
    case SimpleLabel::Kind::TRIV: ok = s.i == 0 && s.q == 0; break;
  }
  if (!ok) throw std::invalid_argument("invalid simple label " + s.str() + " for p = " + std::to_string(p));
}

int32_t simple_dim(Prime P, const SimpleLabel& s) {
  validate_label(P, s);
  switch (s.kind) {
    case SimpleLabel::Kind::EE: return s.i + 1;
    case SimpleLabel::Kind::AA: return P.p + 1;
    case SimpleLabel::Kind::CP: return s.i == 0 ? P.p + 1 : s.i + 1;
    case SimpleLabel::Kind::TRIV: return 1;
  }
  throw std::logic_error("unreachable");
}

int32_t total_dim(Prime P, const FactorMultiset& f) {
  int32_t sum = 0;
  for (const auto& [s, c] : f) sum += c * simple_dim(P, s);
  return sum;
}

// --------------------------------------------------------------------------
// generator lists

namespace {

// homogeneous monomial basis of S^i v^q
std::vector<RingElement> s_monomials(Prime P, int32_t i, int32_t q) {
  std::vector<RingElement> out;
  for (int32_t a = i; a >= 0; --a) out.push_back(monomial_elem(P, a, i - a, 0, q));
  return out;
}

// T^k v^s, 1 <= k <= p-2: monomials y1^a y2^{p-1+k-a}, k <= a <= p-1
std::vector<RingElement> t_monomials(Prime P, int32_t k, int32_t s) {
  std::vector<RingElement> out;
  for (int32_t a = P.p - 1; a >= k; --a) out.push_back(monomial_elem(P, a, P.p - 1 + k - a, 0, s));
  return out;
}

std::vector<RingElement> times(const std::vector<RingElement>& xs, const RingElement& f) {
  std::vector<RingElement> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(multiply(x, f));
  return out;
}

struct SpanBlock {
  CoeffRing ring;
  std::vector<RingElement> gens;
};

// The six-case table for EE(i, q), 1 <= i <= p-2. Congruences are mod p-1.
std::vector<SpanBlock> gamma_blocks_middle(Prime P, int32_t i, int32_t q) {
  const int32_t pm = P.p - 1;
  const int32_t s = ((i + q) % pm + pm) % pm;
  auto S = s_monomials(P, i, q);
  auto T = t_monomials(P, P.p - 1 - i, s);
  auto VS = times(S, gen_V(P));
  auto VT = times(T, gen_V(P));
  if (q % pm == 0) {
    if ((2 * i) % pm == 0) return {{CoeffRing::A, VS}, {CoeffRing::D, VT}};
    return {{CoeffRing::A, VS}, {CoeffRing::A, T}};
  }
  if (i == q) {
    if ((3 * i) % pm == 0) return {{CoeffRing::D, S}, {CoeffRing::D, VT}};
    return {{CoeffRing::D, S}, {CoeffRing::A, T}};
  }
  if ((q + 2 * i) % pm == 0) return {{CoeffRing::A, S}, {CoeffRing::D, VT}};
  return {{CoeffRing::A, S}, {CoeffRing::A, T}};
}

// The refined eight-case table for the ideal intersection.
std::vector<SpanBlock> icap_blocks_middle(Prime P, int32_t i, int32_t q) {
  const int32_t pm = P.p - 1;
  const int32_t s = ((i + q) % pm + pm) % pm;
  auto S = s_monomials(P, i, q);
  auto T = t_monomials(P, P.p - 1 - i, s);
  auto VS = times(S, gen_V(P));
  auto VT = times(T, gen_V(P));
  if (q % pm == 0) {
    if ((2 * i) % pm == 0) return {{CoeffRing::A, VS}, {CoeffRing::D, VT}};
    return {{CoeffRing::A, VS}, {CoeffRing::A, T}};
  }
  if (i == q) {
    if ((3 * i) % pm == 0) return {{CoeffRing::D, S}, {CoeffRing::D, VT}};
    if ((2 * i) % pm != 0) return {{CoeffRing::D, S}, {CoeffRing::A, T}};
    return {{CoeffRing::D, S}, {CoeffRing::A, VT}};
  }
  if ((q + 2 * i) % pm == 0) return {{CoeffRing::A, S}, {CoeffRing::D, VT}};
  if ((i + q) % pm != 0) return {{CoeffRing::A, S}, {CoeffRing::A, T}};
  return {{CoeffRing::A, S}, {CoeffRing::A, VT}};
}

// blocks of the label subspace; nullopt marks the Dickson-positive-part case
std::optional<std::vector<SpanBlock>> gamma_blocks(Prime P, const SimpleLabel& s) {
  const int32_t p = P.p;
  switch (s.kind) {
    case SimpleLabel::Kind::CP: {
      std::vector<RingElement> gens;
      if (s.i == 0) {
        gens.push_back(gen_C(P));
        for (auto& m : s_monomials(P, p - 1, 0)) gens.push_back(std::move(m));
      } else {
        gens = s_monomials(P, s.i, 0);
      }
      return std::vector<SpanBlock>{{CoeffRing::FpC, std::move(gens)}};
    }
    case SimpleLabel::Kind::AA: {
      std::vector<RingElement> gens;
      const RingElement D2 = gen_D2(P);
      for (int32_t j = 0; j <= p - 1; ++j) {
        RingElement Cj = monomial_elem(P, 0, 0, j, 0);
        if (s.q == 0) {
          RingElement f = multiply(D2, Cj);
          gens.push_back(multiply(f, gen_C(P)));
          for (const auto& m : s_monomials(P, p - 1, 0)) gens.push_back(multiply(f, m));
        } else {
          RingElement f = multiply(monomial_elem(P, 0, 0, 0, s.q), Cj);
          for (const auto& m : s_monomials(P, s.q, 0)) gens.push_back(multiply(multiply(f, gen_C(P)), m));
          for (const auto& m : t_monomials(P, s.q, 0)) gens.push_back(multiply(f, m));
        }
      }
      return std::vector<SpanBlock>{{CoeffRing::D, std::move(gens)}};
    }
    case SimpleLabel::Kind::EE: {
      if (s.i == 0 && s.q == 0) return std::nullopt;  // Dickson positive part
      if (s.i == 0)
        return std::vector<SpanBlock>{{CoeffRing::A, {monomial_elem(P, 0, 0, 0, s.q)}}};
      if (s.i == p - 1 && s.q == 0)
        return std::vector<SpanBlock>{{CoeffRing::D, times(s_monomials(P, p - 1, 0), gen_V(P))}};
      if (s.i == p - 1)
        return std::vector<SpanBlock>{{CoeffRing::A, s_monomials(P, p - 1, s.q)}};
      return gamma_blocks_middle(P, s.i, s.q);
    }
    case SimpleLabel::Kind::TRIV:
      return std::vector<SpanBlock>{{CoeffRing::Fp, {one(P)}}};
  }
  throw std::logic_error("unreachable");
}

std::optional<std::vector<SpanBlock>> icap_blocks(Prime P, const SimpleLabel& s) {
  const int32_t p = P.p;
  switch (s.kind) {
    case SimpleLabel::Kind::CP:
      return std::vector<SpanBlock>{};  // zero
    case SimpleLabel::Kind::TRIV:
      return std::vector<SpanBlock>{};  // zero
    case SimpleLabel::Kind::AA:
      return gamma_blocks(P, s);  // contained in the ideal
    case SimpleLabel::Kind::EE: {
      if (s.i == 0 && s.q == 0)
        return std::vector<SpanBlock>{{CoeffRing::D, {power(gen_D2(P), 2)}}};
      if (s.i == 0)
        return std::vector<SpanBlock>{{CoeffRing::A, {monomial_elem(P, 0, 0, 2, s.q)}}};
      if (s.i == p - 1) return gamma_blocks(P, s);
      return icap_blocks_middle(P, s.i, s.q);
    }
  }
  throw std::logic_error("unreachable");
}

// Dickson positive part: monomials D1^x D2^y, (x, y) != (0, 0)
int32_t dickson_plus_into(RowReducer& red, Prime P, int32_t n) {
  const int32_t p = P.p;
  const int32_t degD1 = 2 * p * (p - 1);
  const int32_t degD2 = degD1 + 2 * p - 2;
  int32_t count = 0;
  for (int32_t y = 0; y * degD2 <= n; ++y) {
    int32_t rem = n - y * degD2;
    if (rem % degD1 != 0) continue;
    int32_t x = rem / degD1;
    if (x == 0 && y == 0) continue;
    RingElement m = multiply(power(gen_D1(P), x), monomial_elem(P, 0, 0, y, y * (p - 1)));
    red.insert(to_coords(m, n));
    ++count;
  }
  return count;
}

int32_t blocks_into(RowReducer& red, Prime P, int32_t n,
                    const std::optional<std::vector<SpanBlock>>& blocks, const SimpleLabel& s) {
  int32_t count = 0;
  if (!blocks) {
    count = dickson_plus_into(red, P, n);
  } else {
    for (const auto& blk : *blocks) count += span_into(red, P, n, blk.gens, blk.ring);
  }
  if (red.rank() != count)
    throw std::logic_error("free-module convention violated for " + s.str() + " at degree " +
                           std::to_string(n));
  return count;
}

std::mutex g_rank_mutex;
std::map<std::tuple<int32_t, int32_t, int32_t, int32_t, int32_t, int32_t>, int32_t> g_gamma_ranks;
std::map<std::tuple<int32_t, int32_t, int32_t, int32_t, int32_t, int32_t>, int32_t> g_icap_ranks;

auto rank_key(Prime P, const SimpleLabel& s, int32_t n) {
  return std::make_tuple(P.p, int32_t(s.kind), s.i, s.q, n, 0);
}

}  // namespace

Subspace gamma_basis(Prime P, const SimpleLabel& s, int32_t n) {
  validate_label(P, s);
  RowReducer red(P.p, graded_dim(P, n));
  if (n >= 0 && n % 2 == 0) blocks_into(red, P, n, gamma_blocks(P, s), s);
  return red.to_subspace();
}

int32_t gamma_rank(Prime P, const SimpleLabel& s, int32_t n) {
  validate_label(P, s);
  if (n < 0 || n % 2 != 0) return 0;
  {
    std::lock_guard<std::mutex> lk(g_rank_mutex);
    auto it = g_gamma_ranks.find(rank_key(P, s, n));
    if (it != g_gamma_ranks.end()) return it->second;
  }
  RowReducer red(P.p, graded_dim(P, n));
  int32_t r = 0;
  blocks_into(red, P, n, gamma_blocks(P, s), s);
  r = red.rank();
  std::lock_guard<std::mutex> lk(g_rank_mutex);
  g_gamma_ranks.emplace(rank_key(P, s, n), r);
  return r;
}

Subspace i_cap_gamma_basis(Prime P, const SimpleLabel& s, int32_t n) {
  validate_label(P, s);
  RowReducer red(P.p, graded_dim(P, n));
  if (n >= 0 && n % 2 == 0) blocks_into(red, P, n, icap_blocks(P, s), s);
  return red.to_subspace();
}

int32_t i_cap_gamma_rank(Prime P, const SimpleLabel& s, int32_t n) {
  validate_label(P, s);
  if (n < 0 || n % 2 != 0) return 0;
  {
    std::lock_guard<std::mutex> lk(g_rank_mutex);
    auto it = g_icap_ranks.find(rank_key(P, s, n));
    if (it != g_icap_ranks.end()) return it->second;
  }
  RowReducer red(P.p, graded_dim(P, n));
  blocks_into(red, P, n, icap_blocks(P, s), s);
  int32_t r = red.rank();
  std::lock_guard<std::mutex> lk(g_rank_mutex);
  g_icap_ranks.emplace(rank_key(P, s, n), r);
  return r;
}

DirectSumReport check_gamma_direct_sum(Prime P, int32_t max_degree) {
  DirectSumReport report;
  report.max_degree = max_degree;
  const auto labels = all_simple_labels(P);
  for (int32_t n = 0; n <= max_degree; n += 2) {
    const int32_t dim = graded_dim(P, n);
    RowReducer joint(P.p, dim);
    int32_t total = 0;
    for (const auto& s : labels) {
      RowReducer local(P.p, dim);
      blocks_into(local, P, n, gamma_blocks(P, s), s);
      total += local.rank();
      Subspace piece = local.to_subspace();
      for (int32_t r = 0; r < piece.rank(); ++r) joint.insert(piece.basis.row(r));
    }
    if (total != dim || joint.rank() != dim) {
      report.pass = false;
      report.failed_degrees.push_back(n);
    }
  }
  return report;
}

Subspace I_basis(Prime P, int32_t n) {
  RowReducer red(P.p, graded_dim(P, n));
  if (n % 2 == 0 && n >= 2 * P.p + 2) {
    const RingElement y1v = monomial_elem(P, 1, 0, 0, 1);
    const RingElement y2v = monomial_elem(P, 0, 1, 0, 1);
    for (const auto& m : graded_basis(P, n - 2 * P.p - 2)) {
      RingElement e(P);
      e.add_term(m, 1);
      red.insert(to_coords(multiply(y1v, e), n));
      red.insert(to_coords(multiply(y2v, e), n));
    }
  }
  return red.to_subspace();
}

Subspace L_basis(Prime P, int32_t n) {
  const int32_t p = P.p;
  RowReducer red(P.p, graded_dim(P, n));
  if (n >= 0 && n % 2 == 0) {
    // subalgebra generated by y1, y2, C: the normal monomials with d = 0
    for (const auto& m : graded_basis(P, n))
      if (m.d == 0) red.insert(to_coords(monomial_elem(P, m.a, m.b, m.c, m.d), n));
    // F_p[V]{v..v^{p-2}, Cv..Cv^{p-2}}: pure (C^{0,1}, v^d) monomials, d not 0 mod p-1
    for (int32_t c = 0; c <= 1; ++c)
      for (int32_t d = 1; 2 * p * d + (2 * p - 2) * c <= n; ++d) {
        if (d % (p - 1) == 0) continue;
        if (2 * p * d + (2 * p - 2) * c != n) continue;
        red.insert(to_coords(monomial_elem(P, 0, 0, c, d), n));
      }
    span_into(red, P, n, {gen_D1(P)}, CoeffRing::FpD1);
    span_into(red, P, n, {gen_D2(P)}, CoeffRing::FpD1);
  }
  return red.to_subspace();
}

Subspace N_basis(Prime P, int32_t n, std::optional<int32_t> q) {
  IntegralBasis full = integral_basis(P, n);
  RowReducer red(P.p, full.dim());
  auto selected = b_monomials(P, n, q);
  for (const auto& bm : selected) {
    auto it = std::lower_bound(full.b_part.begin(), full.b_part.end(), bm);
    Vec e(full.dim(), 0);
    e[full.ring_part.size() + (it - full.b_part.begin())] = 1;
    red.insert(std::move(e));
  }
  return red.to_subspace();
}

namespace {

int32_t exact_count(Prime P, const SimpleLabel& s, int32_t rank) {
  int32_t d = simple_dim(P, s);
  if (rank % d != 0)
    throw std::logic_error("rank " + std::to_string(rank) + " not divisible by dim " + s.str());
  return rank / d;
}

}  // namespace

FactorMultiset he_factors(Prime P, int32_t n) {
  FactorMultiset out;
  if (n % 2 != 0) return out;
  for (const auto& s : all_simple_labels(P)) {
    int32_t c = exact_count(P, s, gamma_rank(P, s, n));
    if (c > 0) out[s] = c;
  }
  return out;
}

FactorMultiset i_factors(Prime P, int32_t n) {
  FactorMultiset out;
  if (n % 2 != 0) return out;
  for (const auto& s : all_simple_labels(P)) {
    int32_t c = exact_count(P, s, i_cap_gamma_rank(P, s, n));
    if (c > 0) out[s] = c;
  }
  return out;
}

FactorMultiset n_factors(Prime P, int32_t n) {
  FactorMultiset out;
  if (n % 2 != 0) return out;
  for (const auto& bm : b_monomials(P, n)) {
    SimpleLabel s = SimpleLabel::EE(0, (bm.k + bm.i) % (P.p - 1));
    out[s] += 1;
  }
  return out;
}

namespace {

void accumulate(FactorMultiset& into, const FactorMultiset& from) {
  for (const auto& [s, c] : from) {
    into[s] += c;
    if (into[s] == 0) into.erase(s);
  }
}

}  // namespace

FactorMultiset hefp_factors(Prime P, int32_t n) {
  if (n < 0) throw std::invalid_argument("negative degree");
  FactorMultiset out;
  if (n % 2 == 0) {
    accumulate(out, he_factors(P, n));
    accumulate(out, n_factors(P, n));
    accumulate(out, i_factors(P, n + 2 * P.p));
  } else {
    accumulate(out, i_factors(P, n + 2 * P.p - 1));
    accumulate(out, n_factors(P, n + 1));
    FactorMultiset plus = he_factors(P, n + 1);
    plus.erase(SimpleLabel::TRIV());  // positive-degree part only
    accumulate(out, plus);
  }
  return out;
}

int32_t summand_dim(Prime P, const SimpleLabel& s, int32_t n) {
  FactorMultiset f = hefp_factors(P, n);
  auto it = f.find(s);
  return it == f.end() ? 0 : it->second;
}

int32_t he_series_dim(Prime P, const SimpleLabel& s, int32_t n) {
  if (n % 2 != 0) return 0;
  return exact_count(P, s, gamma_rank(P, s, n));
}

std::optional<int32_t> first_degree(Prime P, const SimpleLabel& s, Series series) {
  validate_label(P, s);
  // large enough for every label in every series; the ideal series is the
  // slowest to start (deg D2^2 = 4(p^2-1) for the trivial twist)
  const int32_t bound = 4 * (P.p * P.p - 1) + 2 * P.p;
  for (int32_t n = 0; n <= bound; ++n) {
    int32_t count = 0;
    switch (series) {
      case Series::HE:
        if (n % 2 != 0) continue;
        count = exact_count(P, s, gamma_rank(P, s, n));
        break;
      case Series::I:
        if (n % 2 != 0) continue;
        count = exact_count(P, s, i_cap_gamma_rank(P, s, n));
        break;
      case Series::HEFP: {
        FactorMultiset f = hefp_factors(P, n);
        auto it = f.find(s);
        count = it == f.end() ? 0 : it->second;
        break;
      }
    }
    if (count > 0) return n;
  }
  return std::nullopt;
}

FactorMultiset p3_quotient_factors(int32_t n) {
  const Prime P(3);
  FactorMultiset out;
  if (n < 2 || (n - 2) % 6 != 0) return out;
  const int32_t k = (n - 2) / 6;
  // The quotient piece is spanned by v^k a1', v^k a2'; the right action sends
  // a_j' to det(g) (g_j1 a1' + g_j2 a2') and v to det(g) v. Match the twist
  // against the two candidate simple modules.
  const MatrixGroup gl2 = named_group(3, GroupName::GL2);
  std::optional<int32_t> matched;
  for (int32_t q0 = 0; q0 <= 1; ++q0) {
    bool all = true;
    for (const auto& g : gl2.gens) {
      int32_t twist_quotient = mod_pow(g.det(), k + 1, 3);
      int32_t twist_simple = mod_pow(g.det(), q0, 3);
      if (twist_quotient != twist_simple) { all = false; break; }
    }
    if (all) {
      if (matched) throw std::logic_error("ambiguous quotient label");
      matched = q0;
    }
  }
  if (!matched) throw std::logic_error("quotient piece matches no det twist");
  out[SimpleLabel::EE(1, *matched)] = 1;
  return out;
}

}  // namespace exspec
