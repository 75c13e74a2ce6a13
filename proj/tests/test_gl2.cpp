#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "exspec/gl2.hpp"

using namespace exspec;

namespace {

// invariants of the span of the degree-2l y-monomials times v^k
Subspace svk_invariants(Prime P, const MatrixGroup& g, int32_t l, int32_t k) {
  std::vector<FpMatrix> conds;
  for (const auto& m : g.gens)
    conds.push_back(act_matrix_svk(P, m, l, k) - FpMatrix::identity(l + 1, P.p));
  return kernel_stack(conds, l + 1, P.p);
}

// span of signed monomial combinations inside S^l v^k; coordinates indexed by
// the y1-exponent
Subspace svk_span(Prime P, int32_t l,
                  const std::vector<std::vector<std::pair<int32_t, int32_t>>>& rows) {
  std::vector<Vec> vecs;
  for (const auto& row : rows) {
    Vec v(l + 1, 0);
    for (auto [e1, coeff] : row) v[e1] = mod_reduce(coeff, P.p);
    vecs.push_back(v);
  }
  return rref_basis(vecs, l + 1, P.p);
}

}  // namespace

TEST_CASE("Mat2 arithmetic and validation") {
  Mat2 g(1, 2, 3, 4, 7);  // det = -2 = 5
  CHECK(g.det() == 5);
  CHECK(g * g.inverse() == Mat2::identity(7));
  CHECK_THROWS_AS(Mat2(1, 2, 2, 4, 7), std::invalid_argument);
}

TEST_CASE("named groups") {
  MatrixGroup h7 = named_group(7, GroupName::H);
  REQUIRE(h7.gens.size() == 2);
  CHECK(h7.gens[0] == Mat2::diag(3, 3, 7));  // smallest primitive root mod 7 is 3
  CHECK(h7.gens[1] == Mat2::diag(6, 1, 7));  // 3^3 = 6
  CHECK(h7.order() == 12);

  CHECK_THROWS_AS(named_group(5, GroupName::H), std::invalid_argument);

  CHECK(named_group(3, GroupName::GL2).order() == 48);
  CHECK(named_group(3, GroupName::SL2).order() == 24);
  CHECK(named_group(7, GroupName::T).order() == 36);
  CHECK(named_group(7, GroupName::Tw).order() == 72);
  CHECK(named_group(7, GroupName::SL2_2).order() == 672);
  CHECK(named_group(7, GroupName::GL2).order() == 2016);
}

TEST_CASE("action on generators") {
  Prime P(7);
  const int32_t p = 7, xi = 3;
  const FpMatrix& a = act_matrix(P, Mat2::diag(xi, 1, p), 2);
  Monomial y1{1, 0, 0, 0}, y2{0, 1, 0, 0};
  Vec e_y1(2, 0);
  e_y1[basis_index(P, 2, y1)] = 1;
  Vec img = a.apply(e_y1);
  CHECK(img[basis_index(P, 2, y1)] == xi);
  CHECK(img[basis_index(P, 2, y2)] == 0);

  CHECK(act_matrix(P, Mat2::identity(p), 10) == FpMatrix::identity(graded_dim(P, 10), p));

  // w negates v
  const FpMatrix& w = act_matrix(P, Mat2::swap(p), 2 * p);
  Monomial v{0, 0, 0, 1};
  Vec e_v(graded_dim(P, 2 * p), 0);
  e_v[basis_index(P, 2 * p, v)] = 1;
  Vec wimg = w.apply(e_v);
  CHECK(wimg[basis_index(P, 2 * p, v)] == p - 1);
}

TEST_CASE("act reverses matrix order") {
  std::mt19937 rng(99);
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    auto random_mat = [&] {
      while (true) {
        int64_t a = rng() % p, b = rng() % p, c = rng() % p, d = rng() % p;
        if (mod_reduce(a * d - b * c, p) != 0) return Mat2(a, b, c, d, p);
      }
    };
    for (int32_t n = 0; n <= 24; n += 2)
      for (int trial = 0; trial < 4; ++trial) {
        Mat2 g = random_mat(), h = random_mat();
        CHECK(act_matrix(P, g, n) * act_matrix(P, h, n) == act_matrix(P, h * g, n));
      }
  }
}

TEST_CASE("svk action agrees with the graded action") {
  Prime P(5);
  const int32_t p = 5;
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    int32_t l = 1 + int32_t(rng() % (p - 1)), k = int32_t(rng() % (p - 1));
    Mat2 g(1 + int32_t(rng() % (p - 1)), int32_t(rng() % p), 0, 1 + int32_t(rng() % (p - 1)), p);
    const int32_t n = 2 * l + 2 * p * k;
    const FpMatrix& big = act_matrix(P, g, n);
    FpMatrix small = act_matrix_svk(P, g, l, k);
    for (int32_t j = 0; j <= l; ++j) {
      Vec e(graded_dim(P, n), 0);
      e[basis_index(P, n, Monomial{int16_t(j), int16_t(l - j), 0, int16_t(k)})] = 1;
      Vec img = big.apply(e);
      for (int32_t i = 0; i <= l; ++i)
        CHECK(img[basis_index(P, n, Monomial{int16_t(i), int16_t(l - i), 0, int16_t(k)})] ==
              small.at(i, j));
    }
  }
}

TEST_CASE("torus invariants in low modules") {
  for (int32_t p : {5, 7}) {
    Prime P(p);
    MatrixGroup T = named_group(p, GroupName::T);
    Subspace inv = svk_invariants(P, T, p - 1, 0);
    CHECK(inv.rank() == 2);
    CHECK(inv == svk_span(P, p - 1, {{{0, 1}}, {{p - 1, 1}}}));
    CHECK(svk_invariants(P, T, 1, 0).rank() == 0);
    for (int32_t i = 1; i <= (p - 1) / 2; ++i) {
      Subspace s = svk_invariants(P, T, 2 * i, p - 1 - i);
      CHECK(s.rank() == 1);
      CHECK(s == svk_span(P, 2 * i, {{{i, 1}}}));
    }
  }
}

namespace {

void check_torus_table(int32_t p) {
  Prime P(p);
  MatrixGroup T = named_group(p, GroupName::T);
  MatrixGroup Tw = named_group(p, GroupName::Tw);
  for (int32_t l = 1; l <= p - 1; ++l)
    for (int32_t k = 0; k <= p - 2; ++k) {
      Subspace expected_t = svk_span(P, l, {});
      if (l == p - 1 && k == 0) {
        expected_t = svk_span(P, l, {{{0, 1}}, {{p - 1, 1}}});
      } else if (l % 2 == 0 && l / 2 >= 1 && l / 2 <= (p - 1) / 2 && k == p - 1 - l / 2) {
        expected_t = svk_span(P, l, {{{l / 2, 1}}});
      }
      CHECK(svk_invariants(P, T, l, k) == expected_t);

      Subspace expected_tw = svk_span(P, l, {});
      if (l == p - 1 && k == 0) {
        expected_tw = svk_span(P, l, {{{0, 1}, {p - 1, 1}}});
      } else if (l % 4 == 0 && l / 4 >= 1 && l / 4 <= (p - 1) / 4 && k == p - 1 - l / 2) {
        expected_tw = svk_span(P, l, {{{l / 2, 1}}});
      }
      CHECK(svk_invariants(P, Tw, l, k) == expected_tw);
    }
}

void check_h_table(int32_t p) {
  Prime P(p);
  const int32_t m = (p - 1) / 3, nn = m / 2;
  MatrixGroup H = named_group(p, GroupName::H);
  MatrixGroup Hw = named_group(p, GroupName::Hw);
  for (int32_t l = 1; l <= p - 1; ++l)
    for (int32_t k = 0; k <= p - 2; ++k) {
      Subspace eh = svk_span(P, l, {});
      Subspace ehw = svk_span(P, l, {});
      const int32_t i = l / 2;
      if (l == p - 1 && k == 0) {
        eh = svk_span(P, l, {{{0, 1}}, {{m, 1}}, {{2 * m, 1}}, {{3 * m, 1}}});
        ehw = svk_span(P, l, {{{0, 1}, {3 * m, 1}}, {{m, 1}, {2 * m, 1}}});
      } else if (l % 2 == 0 && i >= nn && i < 3 * nn && k == 3 * nn - i) {
        eh = svk_span(P, l, {{{i - nn, 1}}, {{i + nn, 1}}});
        int32_t sign = (3 * nn - i) % 2 == 0 ? 1 : -1;
        ehw = svk_span(P, l, {{{i - nn, 1}, {i + nn, sign}}});
      } else if (l % 2 == 0 && i >= 1 && i < m && k == (p - 1) - i) {
        eh = svk_span(P, l, {{{i, 1}}});
        if (i % 2 == 0) ehw = svk_span(P, l, {{{i, 1}}});
      } else if (l % 2 == 0 && i >= m && i <= 3 * nn && k == (p - 1) - i) {
        eh = svk_span(P, l, {{{i - m, 1}}, {{i, 1}}, {{i + m, 1}}});
        if (i % 2 == 0)
          ehw = svk_span(P, l, {{{i - m, 1}, {i + m, 1}}, {{i, 1}}});
        else
          ehw = svk_span(P, l, {{{i - m, 1}, {i + m, -1}}});
      }
      CHECK(svk_invariants(P, H, l, k) == eh);
      CHECK(svk_invariants(P, Hw, l, k) == ehw);
    }
}

}  // namespace

TEST_CASE("full torus invariant tables at p = 7 and p = 13") {
  check_torus_table(7);
  check_torus_table(13);
}

TEST_CASE("full H and Hw invariant tables at p = 7 and p = 13") {
  check_h_table(7);
  check_h_table(13);
}

TEST_CASE("orbit classes") {
  MatrixGroup H = named_group(7, GroupName::H);
  auto classes = orbit_classes(H);
  REQUIRE(classes.size() == 5);
  CHECK(classes[0] == std::vector<ALabel>{ALabel{0}});
  CHECK(classes[1] == std::vector<ALabel>{ALabel{1}, ALabel{6}});
  CHECK(classes[2] == std::vector<ALabel>{ALabel{2}, ALabel{5}});
  CHECK(classes[3] == std::vector<ALabel>{ALabel{3}, ALabel{4}});
  CHECK(classes[4] == std::vector<ALabel>{ALabel{ALabel::kInf}});

  CHECK(orbit_classes(named_group(7, GroupName::Hw)).size() == 3);
  CHECK(orbit_classes(named_group(7, GroupName::GL2)).size() == 1);
  CHECK(orbit_classes(named_group(7, GroupName::T)).size() == 3);
  CHECK(orbit_classes(named_group(7, GroupName::Tw)).size() == 2);
}

TEST_CASE("subgroup enumeration of the extended torus at p = 7") {
  MatrixGroup tw = named_group(7, GroupName::Tw);
  CHECK(tw.order() == 72);
  CHECK(tw.contains(Mat2::diag(-1, 1, 7)));
  CHECK(tw.contains(Mat2::diag(1, -1, 7)));
  CHECK(subgroups_of_order(tw, 5).empty());  // 5 does not divide 72
  auto whole = subgroups_of_order(tw, 72);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].order() == 72);
  auto idx3 = subgroups_of_order(tw, 24);
  CHECK(!idx3.empty());
  for (const auto& h : idx3) {
    CHECK(h.contains(Mat2::diag(-1, 1, 7)));
    CHECK(h.contains(Mat2::diag(1, -1, 7)));
  }
}

TEST_CASE("subgroup enumeration sees the full lattice of GL2(F3)") {
  MatrixGroup gl2 = named_group(3, GroupName::GL2);
  auto subs = all_subgroups(gl2);
  auto count_of_order = [&](size_t k) {
    size_t c = 0;
    for (const auto& h : subs) c += h.order() == k ? 1 : 0;
    return c;
  };
  CHECK(count_of_order(48) == 1);
  CHECK(count_of_order(24) == 1);  // the determinant-one subgroup is the only index-2 one
  CHECK(count_of_order(16) == 3);  // Sylow 2
  CHECK(count_of_order(3) == 4);   // Sylow 3 are cyclic
  CHECK(count_of_order(1) == 1);
  CHECK(subs.size() == 55);
}

TEST_CASE("graded invariants match the kernel route") {
  Prime P(5);
  MatrixGroup T = named_group(5, GroupName::T);
  for (int32_t n : {8, 12, 20}) {
    Subspace a = invariants_full(T, P, n);
    Subspace b = invariants(T, P, n, full_space(graded_dim(P, n), 5));
    CHECK(a == b);
  }
}

TEST_CASE("A-side invariant dimensions match the classical invariant rings") {
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    MatrixGroup gl2 = named_group(p, GroupName::GL2);
    MatrixGroup s22 = named_group(p, GroupName::SL2_2);
    const int32_t dd1 = 2 * (p * p - p), dd2 = 2 * (p * p - 1);
    const int32_t dl2 = 4 * (p + 1);  // square of the Euler form
    for (int32_t n = 0; n <= dd2 + 4; n += 2) {
      int32_t expect_gl2 = 0, expect_s22 = 0;
      for (int32_t e = 0; e * dd1 <= n; ++e) {
        if ((n - e * dd1) % dd2 == 0) ++expect_gl2;
        if ((n - e * dd1) % dl2 == 0) ++expect_s22;
      }
      std::vector<FpMatrix> cg, cs;
      for (const auto& g : gl2.gens)
        cg.push_back(act_matrix_ab(P, g, n) - FpMatrix::identity(n / 2 + 1, p));
      for (const auto& g : s22.gens)
        cs.push_back(act_matrix_ab(P, g, n) - FpMatrix::identity(n / 2 + 1, p));
      CHECK(kernel_stack(cg, n / 2 + 1, p).rank() == expect_gl2);
      CHECK(kernel_stack(cs, n / 2 + 1, p).rank() == expect_s22);
    }
  }
}

TEST_CASE("restrictions of the Dickson lifts are GL2-invariant") {
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    MatrixGroup gl2 = named_group(p, GroupName::GL2);
    for (const RingElement& d : {gen_D1(P), gen_D2(P)}) {
      const int32_t n = *d.degree();
      PolyAB r = restrict_to(d, ALabel{0});
      Vec coords = ab_coords(r, n);
      for (const auto& g : gl2.gens)
        CHECK(act_matrix_ab(P, g, n).apply(coords) == coords);
    }
  }
}
