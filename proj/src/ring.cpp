#include "exspec/ring.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>

namespace exspec {

void RingElement::add_term(const Monomial& m, int64_t coeff) {
  int32_t c = mod_reduce(coeff, p_.p);
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second = mod_reduce(int64_t(it->second) + c, p_.p);
    if (it->second == 0) terms_.erase(it);
  }
}

RingElement& RingElement::operator+=(const RingElement& o) {
  if (p_.p != o.p_.p) throw std::invalid_argument("prime mismatch in ring sum");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  if (p_.p != o.p_.p) throw std::invalid_argument("prime mismatch in ring difference");
  for (const auto& [m, c] : o.terms_) add_term(m, -int64_t(c));
  return *this;
}

RingElement RingElement::scaled(int64_t c) const {
  RingElement out(p_);
  for (const auto& [m, v] : terms_) out.add_term(m, int64_t(v) * mod_reduce(c, p_.p));
  return out;
}

std::optional<int32_t> RingElement::degree() const {
  std::optional<int32_t> deg;
  for (const auto& [m, c] : terms_) {
    int32_t d = monomial_degree(p_, m);
    if (!deg) deg = d;
    else if (*deg != d) return std::nullopt;
  }
  return deg;
}

std::string RingElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (m.a) os << "*y1^" << m.a;
    if (m.b) os << "*y2^" << m.b;
    if (m.c) os << "*C^" << m.c;
    if (m.d) os << "*v^" << m.d;
  }
  return os.str();
}

RingElement reduce(Prime P, int64_t a, int64_t b, int64_t c, int64_t d) {
  const int32_t p = P.p;
  if (a < 0 || b < 0 || c < 0 || d < 0) throw std::invalid_argument("negative exponent");
  while (a >= p) { a -= p - 1; ++c; }
  while (b >= p) { b -= p - 1; ++c; }
  RingElement out(P);
  if (a == p - 1 && b == p - 1) {
    // Y1 Y2 = C Y1 + C Y2 - C^2
    out.add_term(Monomial{int16_t(p - 1), 0, int16_t(c + 1), int16_t(d)}, 1);
    out.add_term(Monomial{0, int16_t(p - 1), int16_t(c + 1), int16_t(d)}, 1);
    out.add_term(Monomial{0, 0, int16_t(c + 2), int16_t(d)}, -1);
  } else {
    out.add_term(Monomial{int16_t(a), int16_t(b), int16_t(c), int16_t(d)}, 1);
  }
  return out;
}

RingElement multiply(const RingElement& x, const RingElement& y) {
  if (x.prime().p != y.prime().p) throw std::invalid_argument("prime mismatch in ring product");
  RingElement out(x.prime());
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      RingElement r = reduce(x.prime(), int64_t(mx.a) + my.a, int64_t(mx.b) + my.b,
                             int64_t(mx.c) + my.c, int64_t(mx.d) + my.d);
      int64_t c = int64_t(cx) * cy;
      for (const auto& [m, rc] : r.terms()) out.add_term(m, c * rc);
    }
  return out;
}

RingElement one(Prime P) { return monomial_elem(P, 0, 0, 0, 0); }
RingElement gen_y1(Prime P) { return monomial_elem(P, 1, 0, 0, 0); }
RingElement gen_y2(Prime P) { return monomial_elem(P, 0, 1, 0, 0); }
RingElement gen_C(Prime P) { return monomial_elem(P, 0, 0, 1, 0); }
RingElement gen_v(Prime P) { return monomial_elem(P, 0, 0, 0, 1); }
RingElement gen_V(Prime P) { return monomial_elem(P, 0, 0, 0, P.p - 1); }

RingElement gen_D1(Prime P) {
  RingElement out = monomial_elem(P, 0, 0, P.p, 0);
  out += gen_V(P);
  return out;
}

RingElement gen_D2(Prime P) { return monomial_elem(P, 0, 0, 1, P.p - 1); }

RingElement monomial_elem(Prime P, int a, int b, int c, int d) {
  RingElement out(P);
  out += reduce(P, a, b, c, d);
  return out;
}

RingElement power(const RingElement& x, int e) {
  if (e < 0) throw std::invalid_argument("negative power");
  RingElement acc = one(x.prime());
  for (int i = 0; i < e; ++i) acc = multiply(acc, x);
  return acc;
}

// --------------------------------------------------------------------------
// graded basis, memoized, with an optional on-disk cache

namespace {

std::mutex g_cache_mutex;
std::optional<std::string> g_cache_dir;

std::optional<std::string> cache_file(Prime P, int32_t n) {
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  std::string dir;
  if (const char* env = std::getenv("EXSPEC_CACHE_DIR"); env && *env)
    dir = env;  // the environment overrides a directory set through the API
  else if (g_cache_dir)
    dir = *g_cache_dir;
  else
    return std::nullopt;
  return dir + "/exspec-basis-v1/p" + std::to_string(P.p) + "_n" + std::to_string(n) + ".txt";
}

std::vector<Monomial> enumerate_basis(Prime P, int32_t n) {
  std::vector<Monomial> basis;
  const int32_t p = P.p;
  if (n < 0 || n % 2 != 0) return basis;
  for (int32_t d = 0; 2 * p * d <= n; ++d)
    for (int32_t c = 0; 2 * p * d + (2 * p - 2) * c <= n; ++c) {
      int32_t rem = n - 2 * p * d - (2 * p - 2) * c;
      if (rem % 2 != 0) continue;
      int32_t s = rem / 2;
      if (s > 2 * (p - 1)) continue;
      for (int32_t a = std::max(0, s - (p - 1)); a <= std::min(p - 1, s); ++a) {
        int32_t b = s - a;
        if (a == p - 1 && b == p - 1) continue;
        basis.push_back(Monomial{int16_t(a), int16_t(b), int16_t(c), int16_t(d)});
      }
    }
  return basis;
}

std::optional<std::vector<Monomial>> load_cached(Prime P, int32_t n, const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string tag;
  int file_p = 0, file_n = 0;
  size_t count = 0;
  if (!(in >> tag >> file_p >> file_n >> count)) return std::nullopt;
  if (tag != "exspec-basis-v1" || file_p != P.p || file_n != n) return std::nullopt;
  std::vector<Monomial> basis;
  int a, b, c, d;
  while (in >> a >> b >> c >> d) {
    Monomial m{int16_t(a), int16_t(b), int16_t(c), int16_t(d)};
    if (monomial_degree(P, m) != n) return std::nullopt;
    if (!basis.empty() && !(basis.back() < m)) return std::nullopt;
    basis.push_back(m);
  }
  if (!in.eof() || basis.size() != count) return std::nullopt;
  return basis;
}

void store_cached(Prime P, int32_t n, const std::vector<Monomial>& basis, const std::string& path) {
  try {
    std::filesystem::path fp(path);
    std::filesystem::create_directories(fp.parent_path());
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp);
      out << "exspec-basis-v1 " << P.p << ' ' << n << ' ' << basis.size() << '\n';
      for (const auto& m : basis) out << m.a << ' ' << m.b << ' ' << m.c << ' ' << m.d << '\n';
    }
    std::filesystem::rename(tmp, fp);
  } catch (const std::exception&) {
    // cache is best effort only
  }
}

}  // namespace

void set_cache_dir(const std::string& dir) {
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  g_cache_dir = dir;
}

const std::vector<Monomial>& graded_basis(Prime P, int32_t n) {
  static std::mutex mu;
  static std::map<std::pair<int32_t, int32_t>, std::unique_ptr<std::vector<Monomial>>> memo;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(P.p, n);
  auto it = memo.find(key);
  if (it != memo.end()) return *it->second;

  std::optional<std::vector<Monomial>> basis;
  auto path = cache_file(P, n);
  if (path) basis = load_cached(P, n, *path);
  bool fresh = !basis.has_value();
  if (fresh) basis = enumerate_basis(P, n);
  if (path && fresh) store_cached(P, n, *basis, *path);
  auto ins = memo.emplace(key, std::make_unique<std::vector<Monomial>>(std::move(*basis)));
  return *ins.first->second;
}

int32_t graded_dim(Prime P, int32_t n) { return static_cast<int32_t>(graded_basis(P, n).size()); }

int32_t basis_index(Prime P, int32_t n, const Monomial& m) {
  const auto& basis = graded_basis(P, n);
  auto it = std::lower_bound(basis.begin(), basis.end(), m);
  if (it == basis.end() || !(*it == m))
    throw std::logic_error("monomial not in graded basis of degree " + std::to_string(n));
  return static_cast<int32_t>(it - basis.begin());
}

Vec to_coords(const RingElement& x, int32_t n) {
  Vec out(graded_dim(x.prime(), n), 0);
  for (const auto& [m, c] : x.terms()) {
    if (monomial_degree(x.prime(), m) != n)
      throw std::invalid_argument("inhomogeneous element in to_coords");
    out[basis_index(x.prime(), n, m)] = c;
  }
  return out;
}

RingElement from_coords(Prime P, int32_t n, const Vec& coords) {
  const auto& basis = graded_basis(P, n);
  if (coords.size() != basis.size()) throw std::invalid_argument("coordinate length mismatch");
  RingElement out(P);
  for (size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], coords[i]);
  return out;
}

// --------------------------------------------------------------------------

std::vector<ALabel> all_a_labels(Prime P) {
  std::vector<ALabel> out;
  for (int32_t i = 0; i < P.p; ++i) out.push_back(ALabel{i});
  out.push_back(ALabel{ALabel::kInf});
  return out;
}

void PolyAB::add_term(int32_t ey, int32_t eu, int64_t coeff) {
  int32_t c = mod_reduce(coeff, p_.p);
  if (c == 0) return;
  auto key = std::make_pair(ey, eu);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second = mod_reduce(int64_t(it->second) + c, p_.p);
    if (it->second == 0) terms_.erase(it);
  }
}

PolyAB& PolyAB::operator+=(const PolyAB& o) {
  if (p_.p != o.p_.p) throw std::invalid_argument("prime mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m.first, m.second, c);
  return *this;
}

PolyAB& PolyAB::operator-=(const PolyAB& o) {
  if (p_.p != o.p_.p) throw std::invalid_argument("prime mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m.first, m.second, -int64_t(c));
  return *this;
}

PolyAB operator*(const PolyAB& x, const PolyAB& y) {
  if (x.p_.p != y.p_.p) throw std::invalid_argument("prime mismatch");
  PolyAB out(x.p_);
  for (const auto& [mx, cx] : x.terms_)
    for (const auto& [my, cy] : y.terms_)
      out.add_term(mx.first + my.first, mx.second + my.second, int64_t(cx) * cy);
  return out;
}

PolyAB PolyAB::scaled(int64_t c) const {
  PolyAB out(p_);
  for (const auto& [m, v] : terms_) out.add_term(m.first, m.second, int64_t(v) * mod_reduce(c, p_.p));
  return out;
}

std::string PolyAB::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c << "*y^" << m.first << "*u^" << m.second;
  }
  return os.str();
}

PolyAB restrict_to(const RingElement& x, ALabel A) {
  const Prime P = x.prime();
  const int32_t p = P.p;
  if (!A.is_inf() && (A.index < 0 || A.index >= p)) throw std::invalid_argument("bad subgroup label");
  PolyAB out(P);
  for (const auto& [m, coeff] : x.terms()) {
    int64_t c = coeff;
    int32_t ey;
    if (A.is_inf()) {
      if (m.a > 0) continue;  // y1 restricts to zero at infinity
      ey = m.b + (p - 1) * m.c;
    } else {
      c = c * mod_pow(A.index, m.b, p) % p;
      ey = m.a + m.b + (p - 1) * m.c;
    }
    if (c == 0) continue;
    // v -> u^p - y^{p-1} u
    for (int32_t k = 0; k <= m.d; ++k) {
      int64_t term = c * binom_mod(m.d, k, p) % p;
      if (k % 2 == 1) term = -term;
      out.add_term(ey + k * (p - 1), p * (m.d - k) + k, term);
    }
  }
  return out;
}

std::vector<std::pair<int32_t, int32_t>> ab_basis(Prime, int32_t n) {
  std::vector<std::pair<int32_t, int32_t>> out;
  if (n < 0 || n % 2 != 0) return out;
  for (int32_t ey = 0; ey <= n / 2; ++ey) out.emplace_back(ey, n / 2 - ey);
  return out;
}

Vec ab_coords(const PolyAB& f, int32_t n) {
  if (n % 2 != 0) throw std::invalid_argument("odd degree");
  Vec out(n / 2 + 1, 0);
  for (const auto& [m, c] : f.terms()) {
    if (2 * (m.first + m.second) != n)
      throw std::invalid_argument("inhomogeneous polynomial in ab_coords");
    out[m.first] = c;
  }
  return out;
}

// --------------------------------------------------------------------------

std::vector<RingElement> coeff_monomials(Prime P, CoeffRing ring, int32_t deg) {
  std::vector<RingElement> out;
  if (deg < 0) return out;
  const int32_t p = P.p;
  const int32_t degC = 2 * p - 2;
  const int32_t degv = 2 * p;
  const int32_t degV = 2 * p * (p - 1);
  const int32_t degD1 = degV;
  const int32_t degD2 = degC + degV;
  switch (ring) {
    case CoeffRing::Fp:
      if (deg == 0) out.push_back(one(P));
      break;
    case CoeffRing::FpC:
      if (deg % degC == 0) out.push_back(monomial_elem(P, 0, 0, deg / degC, 0));
      break;
    case CoeffRing::FpD1:
      if (deg % degD1 == 0) out.push_back(power(gen_D1(P), deg / degD1));
      break;
    case CoeffRing::Fpv:
      if (deg % degv == 0) out.push_back(monomial_elem(P, 0, 0, 0, deg / degv));
      break;
    case CoeffRing::A:
      for (int32_t beta = 0; beta * degV <= deg; ++beta) {
        int32_t rem = deg - beta * degV;
        if (rem % degC == 0)
          out.push_back(monomial_elem(P, 0, 0, rem / degC, beta * (p - 1)));
      }
      break;
    case CoeffRing::D:
      for (int32_t beta = 0; beta * degD2 <= deg; ++beta) {
        int32_t rem = deg - beta * degD2;
        if (rem % degD1 != 0) continue;
        RingElement m = power(gen_D1(P), rem / degD1);
        out.push_back(multiply(m, monomial_elem(P, 0, 0, beta, beta * (p - 1))));
      }
      break;
    case CoeffRing::FpCv:
      for (int32_t beta = 0; beta * degv <= deg; ++beta) {
        int32_t rem = deg - beta * degv;
        if (rem % degC == 0) out.push_back(monomial_elem(P, 0, 0, rem / degC, beta));
      }
      break;
  }
  return out;
}

int32_t span_into(RowReducer& red, Prime P, int32_t n,
                  const std::vector<RingElement>& generators, CoeffRing ring) {
  int32_t count = 0;
  for (const auto& g : generators) {
    auto deg = g.degree();
    if (!deg) throw std::invalid_argument("inhomogeneous generator in span_subspace");
    if (*deg > n) continue;
    for (const auto& r : coeff_monomials(P, ring, n - *deg)) {
      red.insert(to_coords(multiply(r, g), n));
      ++count;
    }
  }
  return count;
}

Subspace span_subspace(Prime P, int32_t n, const std::vector<RingElement>& generators,
                       CoeffRing ring, bool assert_free) {
  RowReducer red(P.p, graded_dim(P, n));
  int32_t count = span_into(red, P, n, generators, ring);
  if (assert_free && red.rank() != count)
    throw std::logic_error("span_subspace: generators are not free over the coefficient ring (degree " +
                           std::to_string(n) + ")");
  return red.to_subspace();
}

// --------------------------------------------------------------------------

std::vector<BMonomial> b_monomials(Prime P, int32_t n, std::optional<int32_t> q) {
  std::vector<BMonomial> out;
  const int32_t p = P.p;
  for (int32_t k = 0; 2 * p * k <= n; ++k) {
    int32_t rem = n - 2 * p * k;
    if (rem % 2 != 0) continue;
    int32_t i = rem / 2;
    if (i < 2 || i > p - 2) continue;
    if (q && (k + i) % (p - 1) != *q) continue;
    out.push_back(BMonomial{k, i});
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntegralBasis integral_basis(Prime P, int32_t n) {
  IntegralBasis out;
  out.ring_part = graded_basis(P, n);
  out.b_part = b_monomials(P, n);
  return out;
}

// --------------------------------------------------------------------------
// p = 3 extension

namespace {

const Prime kP3{3};

// shared value of (a1')^2 = (a2')^2 = a1' y2 = a2' y1
RingElement p3_square() {
  RingElement z = monomial_elem(kP3, 2, 0, 0, 0);
  z += monomial_elem(kP3, 0, 2, 0, 0);
  z -= gen_C(kP3);
  return z;
}

RingElement p3_y1y2() { return monomial_elem(kP3, 1, 1, 0, 0); }

RingElement times_v_power(const RingElement& r, int32_t k) {
  if (k == 0) return r;
  return multiply(r, monomial_elem(kP3, 0, 0, 0, k));
}

// a_j' * (single reduced monomial), as an element of the extended ring
P3Element aj_times_monomial(int32_t j, const Monomial& m) {
  P3Element out;
  auto rest = [&](int da, int db, int dc) {
    return monomial_elem(kP3, m.a - da, m.b - db, m.c - dc, m.d);
  };
  if (j == 1) {
    if (m.a > 0) out.add_ring(multiply(p3_y1y2(), rest(1, 0, 0)));        // a1' y1 = y1 y2
    else if (m.b > 0) out.add_ring(multiply(p3_square(), rest(0, 1, 0)));  // a1' y2 = (a1')^2
    else if (m.c > 0) out.add_ring(multiply(monomial_elem(kP3, 2, 1, 0, 0), rest(0, 0, 1)));  // a1' C = y1^2 y2
    else out.add_extra(m.d, 1, 1);
  } else {
    if (m.b > 0) out.add_ring(multiply(p3_y1y2(), rest(0, 1, 0)));
    else if (m.a > 0) out.add_ring(multiply(p3_square(), rest(1, 0, 0)));
    else if (m.c > 0) out.add_ring(multiply(monomial_elem(kP3, 1, 2, 0, 0), rest(0, 0, 1)));  // a2' C = y1 y2^2
    else out.add_extra(m.d, 2, 1);
  }
  return out;
}

}  // namespace

P3Element::P3Element() : ring_(kP3) {}

P3Element P3Element::from_ring(const RingElement& r) {
  if (r.prime().p != 3) throw std::invalid_argument("extended ring is defined only for p = 3");
  P3Element out;
  out.ring_ = r;
  return out;
}

P3Element P3Element::a1() {
  P3Element out;
  out.add_extra(0, 1, 1);
  return out;
}

P3Element P3Element::a2() {
  P3Element out;
  out.add_extra(0, 2, 1);
  return out;
}

void P3Element::add_extra(int32_t k, int32_t j, int64_t coeff) {
  int32_t c = mod_reduce(coeff, 3);
  if (c == 0) return;
  auto key = std::make_pair(k, j);
  auto it = extra_.find(key);
  if (it == extra_.end()) {
    extra_.emplace(key, c);
  } else {
    it->second = mod_reduce(it->second + c, 3);
    if (it->second == 0) extra_.erase(it);
  }
}

void P3Element::add_ring(const RingElement& r) { ring_ += r; }

P3Element& P3Element::operator+=(const P3Element& o) {
  ring_ += o.ring_;
  for (const auto& [k, c] : o.extra_) add_extra(k.first, k.second, c);
  return *this;
}

P3Element p3_multiply(const P3Element& x, const P3Element& y) {
  P3Element out;
  out.add_ring(multiply(x.ring_part(), y.ring_part()));
  auto extra_times_ring = [&out](int32_t k, int32_t j, int64_t c, const RingElement& r) {
    for (const auto& [m, cm] : r.terms()) {
      P3Element part = aj_times_monomial(j, m);
      int64_t f = c * cm;
      out.add_ring(times_v_power(part.ring_part(), k).scaled(f));
      for (const auto& [km, ce] : part.extra_part())
        out.add_extra(km.first + k, km.second, int64_t(ce) * f);
    }
  };
  for (const auto& [k, c] : y.extra_part()) extra_times_ring(k.first, k.second, c, x.ring_part());
  for (const auto& [k, c] : x.extra_part()) extra_times_ring(k.first, k.second, c, y.ring_part());
  for (const auto& [k1, c1] : x.extra_part())
    for (const auto& [k2, c2] : y.extra_part()) {
      RingElement base = (k1.second == k2.second) ? p3_square() : p3_y1y2();
      out.add_ring(times_v_power(base, k1.first + k2.first).scaled(int64_t(c1) * c2));
    }
  return out;
}

int32_t p3_graded_dim(int32_t n) {
  int32_t extra = (n >= 2 && (n - 2) % 6 == 0) ? 2 : 0;
  return graded_dim(kP3, n) + extra;
}

}  // namespace exspec
