#include "exspec/gl2.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>

namespace exspec {

Mat2::Mat2(int64_t g11, int64_t g12, int64_t g21, int64_t g22, int32_t modulus) : p(modulus) {
  require_odd_prime(modulus);
  e[0] = mod_reduce(g11, p);
  e[1] = mod_reduce(g12, p);
  e[2] = mod_reduce(g21, p);
  e[3] = mod_reduce(g22, p);
  if (det() == 0) throw std::invalid_argument("singular matrix in GL2");
}

int32_t Mat2::det() const { return mod_reduce(int64_t(e[0]) * e[3] - int64_t(e[1]) * e[2], p); }

Mat2 Mat2::inverse() const {
  int32_t di = mod_inverse(det(), p);
  return Mat2(int64_t(e[3]) * di, -int64_t(e[1]) * di, -int64_t(e[2]) * di, int64_t(e[0]) * di, p);
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  if (x.p != y.p) throw std::invalid_argument("mixed moduli in GL2 product");
  return Mat2(int64_t(x.e[0]) * y.e[0] + int64_t(x.e[1]) * y.e[2],
              int64_t(x.e[0]) * y.e[1] + int64_t(x.e[1]) * y.e[3],
              int64_t(x.e[2]) * y.e[0] + int64_t(x.e[3]) * y.e[2],
              int64_t(x.e[2]) * y.e[1] + int64_t(x.e[3]) * y.e[3], x.p);
}

bool operator==(const Mat2& x, const Mat2& y) {
  return x.p == y.p && std::equal(x.e, x.e + 4, y.e);
}

MatrixGroup::MatrixGroup(int32_t modulus, std::vector<Mat2> generators)
    : p(modulus), gens(std::move(generators)) {
  for (const auto& g : gens)
    if (g.p != p) throw std::invalid_argument("generator modulus mismatch");
}

const std::vector<Mat2>& MatrixGroup::elements() const {
  // lazy fill guarded so enumerated groups can be shared across threads
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  if (!elems_.empty()) return elems_;
  std::set<int32_t> seen;
  std::vector<Mat2> frontier{Mat2::identity(p)};
  seen.insert(frontier[0].encode());
  std::vector<Mat2> all = frontier;
  while (!frontier.empty()) {
    std::vector<Mat2> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Mat2 y = x * g;
        if (seen.insert(y.encode()).second) {
          next.push_back(y);
          all.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  elems_ = std::move(all);
  return elems_;
}

bool MatrixGroup::contains(const Mat2& g) const {
  const auto& el = elements();
  return std::binary_search(el.begin(), el.end(), g);
}

GroupName group_name_from_string(const std::string& s) {
  if (s == "T") return GroupName::T;
  if (s == "Tw") return GroupName::Tw;
  if (s == "H") return GroupName::H;
  if (s == "Hw") return GroupName::Hw;
  if (s == "SL2") return GroupName::SL2;
  if (s == "SL2:2") return GroupName::SL2_2;
  if (s == "GL2") return GroupName::GL2;
  throw std::invalid_argument("unknown group name: " + s);
}

std::string to_string(GroupName n) {
  switch (n) {
    case GroupName::T: return "T";
    case GroupName::Tw: return "Tw";
    case GroupName::H: return "H";
    case GroupName::Hw: return "Hw";
    case GroupName::SL2: return "SL2";
    case GroupName::SL2_2: return "SL2:2";
    case GroupName::GL2: return "GL2";
  }
  throw std::logic_error("unreachable");
}

MatrixGroup named_group(int32_t p, GroupName name) {
  require_odd_prime(p);
  const int32_t xi = primitive_root(p);
  auto needs_cube_root = [&] {
    if ((p - 1) % 3 != 0)
      throw std::invalid_argument("group " + to_string(name) + " requires 3 | p-1, p = " +
                                  std::to_string(p));
  };
  std::vector<Mat2> gens;
  switch (name) {
    case GroupName::T:
      gens = {Mat2::diag(xi, xi, p), Mat2::diag(xi, 1, p)};
      break;
    case GroupName::Tw:
      gens = {Mat2::diag(xi, xi, p), Mat2::diag(xi, 1, p), Mat2::swap(p)};
      break;
    case GroupName::H:
      needs_cube_root();
      gens = {Mat2::diag(xi, xi, p), Mat2::diag(mod_pow(xi, 3, p), 1, p)};
      break;
    case GroupName::Hw:
      needs_cube_root();
      gens = {Mat2::diag(xi, xi, p), Mat2::diag(mod_pow(xi, 3, p), 1, p), Mat2::swap(p)};
      break;
    case GroupName::SL2:
      gens = {Mat2(1, 1, 0, 1, p), Mat2(1, 0, 1, 1, p)};
      break;
    case GroupName::SL2_2:
      gens = {Mat2(1, 1, 0, 1, p), Mat2(1, 0, 1, 1, p), Mat2::diag(1, -1, p)};
      break;
    case GroupName::GL2:
      gens = {Mat2(1, 1, 0, 1, p), Mat2(1, 0, 1, 1, p), Mat2::diag(xi, 1, p)};
      break;
  }
  return MatrixGroup(p, std::move(gens));
}

const FpMatrix& act_matrix(Prime P, const Mat2& g, int32_t n) {
  if (g.p != P.p) throw std::invalid_argument("matrix modulus mismatch");
  if (n % 2 != 0) throw std::invalid_argument("odd degree in act_matrix");
  static std::mutex mu;
  static std::map<std::tuple<int32_t, int32_t, int32_t>, std::unique_ptr<FpMatrix>> memo;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_tuple(P.p, n, g.encode());
  auto it = memo.find(key);
  if (it != memo.end()) return *it->second;

  const auto& basis = graded_basis(P, n);
  const int32_t dim = static_cast<int32_t>(basis.size());
  const int32_t p = P.p;
  auto out = std::make_unique<FpMatrix>(dim, dim, p);
  const int32_t dg = g.det();
  for (int32_t j = 0; j < dim; ++j) {
    const Monomial& m = basis[j];
    const int64_t dpow = mod_pow(dg, m.d, p);
    // (g11 y1 + g12 y2)^a (g21 y1 + g22 y2)^b, exponent by exponent
    for (int32_t s = 0; s <= m.a; ++s)
      for (int32_t t = 0; t <= m.b; ++t) {
        int64_t coeff = dpow;
        coeff = coeff * binom_mod(m.a, s, p) % p * binom_mod(m.b, t, p) % p;
        coeff = coeff * mod_pow(g.e[0], s, p) % p * mod_pow(g.e[1], m.a - s, p) % p;
        coeff = coeff * mod_pow(g.e[2], t, p) % p * mod_pow(g.e[3], m.b - t, p) % p;
        if (coeff == 0) continue;
        RingElement r = reduce(P, s + t, int64_t(m.a) - s + m.b - t, m.c, m.d);
        for (const auto& [rm, rc] : r.terms()) {
          int32_t i = basis_index(P, n, rm);
          out->at(i, j) = mod_reduce(out->at(i, j) + coeff * rc, p);
        }
      }
  }
  auto ins = memo.emplace(key, std::move(out));
  return *ins.first->second;
}

FpMatrix act_matrix_ab(Prime P, const Mat2& g, int32_t n) {
  if (g.p != P.p) throw std::invalid_argument("matrix modulus mismatch");
  if (n % 2 != 0) throw std::invalid_argument("odd degree in act_matrix_ab");
  const int32_t p = P.p;
  const int32_t half = n / 2;
  FpMatrix out(half + 1, half + 1, p);
  for (int32_t j = 0; j <= half; ++j) {
    const int32_t ey = j, eu = half - j;  // y^ey u^eu
    for (int32_t s = 0; s <= ey; ++s)
      for (int32_t t = 0; t <= eu; ++t) {
        int64_t coeff = binom_mod(ey, s, p) * binom_mod(eu, t, p) % p;
        coeff = coeff * mod_pow(g.e[0], s, p) % p * mod_pow(g.e[1], ey - s, p) % p;
        coeff = coeff * mod_pow(g.e[2], t, p) % p * mod_pow(g.e[3], eu - t, p) % p;
        if (coeff == 0) continue;
        out.at(s + t, j) = mod_reduce(out.at(s + t, j) + coeff, p);
      }
  }
  return out;
}

FpMatrix act_matrix_svk(Prime P, const Mat2& g, int32_t l, int32_t k) {
  if (l < 0 || l > P.p - 1) throw std::invalid_argument("svk exponent out of range");
  const int32_t p = P.p;
  FpMatrix out = act_matrix_ab(P, g, 2 * l);
  const int64_t dpow = mod_pow(g.det(), k, p);
  for (auto& x : out.a) x = mod_reduce(x * dpow, p);
  return out;
}

Subspace invariants(const MatrixGroup& group, Prime P, int32_t n, const Subspace& space) {
  if (space.ambient != graded_dim(P, n))
    throw std::invalid_argument("subspace ambient does not match graded piece");
  const int32_t p = P.p;
  const int32_t r = space.rank();
  if (r == 0) return space;
  std::vector<FpMatrix> conds;
  for (const auto& g : group.gens) {
    const FpMatrix& A = act_matrix(P, g, n);
    // (A - I) B^T, columns indexed by the subspace basis
    FpMatrix m(space.ambient, r, p);
    for (int32_t c = 0; c < r; ++c) {
      Vec img = A.apply(space.basis.row(c));
      for (int32_t i = 0; i < space.ambient; ++i)
        m.at(i, c) = mod_reduce(int64_t(img[i]) - space.basis.at(c, i), p);
    }
    conds.push_back(std::move(m));
  }
  Subspace coeffs = kernel_stack(conds, r, p);
  RowReducer red(p, space.ambient);
  for (int32_t i = 0; i < coeffs.rank(); ++i) {
    Vec x(space.ambient, 0);
    for (int32_t c = 0; c < r; ++c) {
      int64_t u = coeffs.basis.at(i, c);
      if (u == 0) continue;
      for (int32_t j = 0; j < space.ambient; ++j)
        x[j] = mod_reduce(x[j] + u * space.basis.at(c, j), p);
    }
    red.insert(std::move(x));
  }
  return red.to_subspace();
}

Subspace invariants_full(const MatrixGroup& group, Prime P, int32_t n) {
  std::vector<FpMatrix> conds;
  const int32_t dim = graded_dim(P, n);
  for (const auto& g : group.gens)
    conds.push_back(act_matrix(P, g, n) - FpMatrix::identity(dim, P.p));
  return kernel_stack(conds, dim, P.p);
}

ALabel line_image(const Mat2& g, ALabel line) {
  // column action on (1 : i) and (0 : 1)
  int64_t x, y;
  if (line.is_inf()) {
    x = g.e[1];
    y = g.e[3];
  } else {
    x = mod_reduce(g.e[0] + int64_t(g.e[1]) * line.index, g.p);
    y = mod_reduce(g.e[2] + int64_t(g.e[3]) * line.index, g.p);
  }
  if (x % g.p == 0) return ALabel{ALabel::kInf};
  return ALabel{mod_reduce(y * mod_inverse(int32_t(x % g.p), g.p), g.p)};
}

std::vector<std::vector<ALabel>> orbit_classes(const MatrixGroup& group) {
  const int32_t p = group.p;
  auto idx = [p](ALabel a) { return a.is_inf() ? p : a.index; };
  std::vector<int32_t> parent(p + 1);
  for (int32_t i = 0; i <= p; ++i) parent[i] = i;
  std::function<int32_t(int32_t)> find = [&](int32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int32_t x, int32_t y) { parent[find(x)] = find(y); };
  std::vector<ALabel> labels;
  for (int32_t i = 0; i < p; ++i) labels.push_back(ALabel{i});
  labels.push_back(ALabel{ALabel::kInf});
  for (const auto& g : group.gens)
    for (const auto& a : labels) unite(idx(a), idx(line_image(g, a)));
  std::map<int32_t, std::vector<ALabel>> classes;
  for (const auto& a : labels) classes[find(idx(a))].push_back(a);
  std::vector<std::vector<ALabel>> out;
  for (auto& [root, members] : classes) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

std::vector<MatrixGroup> all_subgroups(const MatrixGroup& group) {
  const auto& el = group.elements();
  if (el.size() > 200) throw std::invalid_argument("group too large to enumerate subgroups");
  const int32_t p = group.p;

  auto closure_key = [&](const std::vector<Mat2>& gens) {
    MatrixGroup h(p, gens);
    const auto& e = h.elements();
    std::vector<int32_t> key;
    key.reserve(e.size());
    for (const auto& g : e) key.push_back(g.encode());
    return std::make_pair(key, h);
  };

  std::map<std::vector<int32_t>, MatrixGroup> found;
  {
    auto [k, h] = closure_key({});
    found.emplace(std::move(k), std::move(h));
  }
  for (const auto& g : el) {
    auto [k, h] = closure_key({g});
    found.emplace(std::move(k), std::move(h));
  }
  // saturate: extend every known subgroup by every element
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<std::vector<int32_t>, MatrixGroup>> fresh;
    for (const auto& [key, h] : found) {
      for (const auto& g : el) {
        if (h.contains(g)) continue;
        std::vector<Mat2> gens = h.gens;
        gens.push_back(g);
        auto [k2, h2] = closure_key(gens);
        if (!found.count(k2)) fresh.emplace_back(std::move(k2), std::move(h2));
      }
    }
    for (auto& [k, h] : fresh)
      if (found.emplace(std::move(k), std::move(h)).second) grew = true;
  }
  std::vector<MatrixGroup> out;
  out.reserve(found.size());
  for (auto& [key, h] : found) out.push_back(std::move(h));
  return out;
}

std::vector<MatrixGroup> subgroups_of_order(const MatrixGroup& group, size_t k) {
  std::vector<MatrixGroup> out;
  if (group.order() % k != 0) return out;  // Lagrange
  for (auto& h : all_subgroups(group))
    if (h.order() == k) out.push_back(std::move(h));
  return out;
}

}  // namespace exspec
