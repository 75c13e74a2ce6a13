#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "exspec/ring.hpp"

using namespace exspec;

namespace {

RingElement random_homogeneous(Prime P, int32_t n, std::mt19937& rng) {
  RingElement out(P);
  const auto& basis = graded_basis(P, n);
  for (const auto& m : basis)
    if (rng() % 3 == 0) out.add_term(m, int64_t(rng() % P.p));
  return out;
}

}  // namespace

TEST_CASE("reduce: y^p picks up a factor of C") {
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    RingElement r = reduce(P, p, 0, 0, 0);
    RingElement expected = monomial_elem(P, 1, 0, 1, 0);
    CHECK(r == expected);
  }
}

TEST_CASE("reduce: trivial exponents give the unit") {
  Prime P(5);
  CHECK(reduce(P, 0, 0, 0, 0) == one(P));
}

TEST_CASE("reduce: the (p-1, p-1) pair rewrites through the C^2 relation") {
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    RingElement r = reduce(P, p - 1, p - 1, 0, 0);
    RingElement expected(P);
    expected.add_term(Monomial{int16_t(p - 1), 0, 1, 0}, 1);
    expected.add_term(Monomial{0, int16_t(p - 1), 1, 0}, 1);
    expected.add_term(Monomial{0, 0, 2, 0}, -1);
    CHECK(r == expected);
    // oracle: restrictions of both sides agree on every maximal subgroup
    for (ALabel A : all_a_labels(P)) {
      PolyAB lhs(P);
      lhs.add_term(0, 0, 1);
      PolyAB ry1 = restrict_to(gen_y1(P), A), ry2 = restrict_to(gen_y2(P), A);
      for (int k = 0; k < p - 1; ++k) lhs = lhs * ry1;
      for (int k = 0; k < p - 1; ++k) lhs = lhs * ry2;
      CHECK(lhs == restrict_to(r, A));
    }
  }
}

TEST_CASE("multiply: normal products stay put, y1 * y1^{p-1} = C y1") {
  Prime P(7);
  RingElement a = multiply(monomial_elem(P, 6, 0, 0, 0), gen_y2(P));
  CHECK(a == monomial_elem(P, 6, 1, 0, 0));
  RingElement b = multiply(gen_y1(P), monomial_elem(P, 6, 0, 0, 0));
  CHECK(b == monomial_elem(P, 1, 0, 1, 0));
}

TEST_CASE("multiply: C*C agrees with the defining relation under restriction") {
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    RingElement cc = multiply(gen_C(P), gen_C(P));
    RingElement rel(P);
    rel += reduce(P, 2 * p - 2, 0, 0, 0);
    rel += reduce(P, 0, 2 * p - 2, 0, 0);
    rel -= reduce(P, p - 1, p - 1, 0, 0);
    CHECK(cc == rel);
    for (ALabel A : all_a_labels(P))
      CHECK(restrict_to(cc, A) == restrict_to(rel, A));
  }
}

TEST_CASE("multiply rejects mismatched primes") {
  CHECK_THROWS_AS(multiply(gen_y1(Prime(5)), gen_y1(Prime(7))), std::invalid_argument);
}

TEST_CASE("graded basis") {
  Prime P(5);
  CHECK(graded_basis(P, 0).size() == 1);
  CHECK(graded_basis(P, 1).empty());
  auto deg2 = graded_basis(P, 2);
  REQUIRE(deg2.size() == 2);
  CHECK(deg2[0] == Monomial{0, 1, 0, 0});  // (d, c, a, b) ascending puts y2 first
  CHECK(deg2[1] == Monomial{1, 0, 0, 0});
  // five monomials with a+b = 4 plus C itself
  CHECK(graded_basis(P, 8).size() == 6);
}

TEST_CASE("y-monomial count is p^2 - 1") {
  for (int32_t p : {3, 5, 7, 11, 13}) {
    Prime P(p);
    int32_t count = 0;
    for (int32_t n = 0; n <= 2 * (2 * p - 2); n += 2)
      for (const auto& m : graded_basis(P, n))
        if (m.c == 0 && m.d == 0) ++count;
    CHECK(count == p * p - 1);
  }
}

TEST_CASE("graded basis is sorted in the canonical order") {
  Prime P(7);
  for (int32_t n : {10, 24, 36}) {
    const auto& b = graded_basis(P, n);
    for (size_t i = 1; i < b.size(); ++i) CHECK(b[i - 1] < b[i]);
  }
}

TEST_CASE("restriction of the generators") {
  Prime P(7);
  PolyAB r = restrict_to(gen_y2(P), ALabel{3});
  PolyAB expected(P);
  expected.add_term(1, 0, 3);
  CHECK(r == expected);
  CHECK(restrict_to(one(P), ALabel{ALabel::kInf}) == [&] {
    PolyAB e(P);
    e.add_term(0, 0, 1);
    return e;
  }());
  PolyAB y1_at_inf = restrict_to(gen_y1(P), ALabel{ALabel::kInf});
  CHECK(y1_at_inf.is_zero());
}

TEST_CASE("restriction of D2 is the (p-1)-th power of the Euler form") {
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    for (ALabel A : all_a_labels(P)) {
      PolyAB euler(P);
      euler.add_term(1, p, 1);   // y u^p
      euler.add_term(p, 1, -1);  // - y^p u
      PolyAB pw(P);
      pw.add_term(0, 0, 1);
      for (int k = 0; k < p - 1; ++k) pw = pw * euler;
      CHECK(restrict_to(gen_D2(P), A) == pw);
    }
  }
}

TEST_CASE("graded dimensions agree with the coarser free-module count") {
  // second route: coefficients in F_p[C, V] over the blocks S^i v^q, T^i v^q
  for (int32_t p : {3, 5, 7, 11, 13}) {
    Prime P(p);
    const int32_t degC = 2 * p - 2, degV = 2 * p * (p - 1);
    auto a_mons = [&](int32_t d) {
      if (d < 0) return 0;
      int32_t c = 0;
      for (int32_t beta = 0; beta * degV <= d; ++beta)
        if ((d - beta * degV) % degC == 0) ++c;
      return c;
    };
    for (int32_t n = 0; n <= 2 * (p + 2) * (p - 1); n += 2) {
      int32_t total = 0;
      for (int32_t q = 0; q <= p - 2; ++q) {
        for (int32_t i = 0; i <= p - 1; ++i)
          total += (i + 1) * a_mons(n - 2 * i - 2 * p * q);
        for (int32_t i = 1; i <= p - 2; ++i)
          total += (p - i) * a_mons(n - 2 * (p - 1 + i) - 2 * p * q);
      }
      CHECK(total == graded_dim(P, n));
    }
  }
}

TEST_CASE("joint restriction is injective through the full working range") {
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    for (int32_t n = 0; n <= 2 * (p + 2) * (p - 1); n += 2) {
      const auto& basis = graded_basis(P, n);
      RowReducer red(p, (n / 2 + 1) * (p + 1));
      int32_t rank = 0;
      for (const auto& m : basis) {
        RingElement e(P);
        e.add_term(m, 1);
        Vec joint;
        for (ALabel A : all_a_labels(P)) {
          Vec part = ab_coords(restrict_to(e, A), n);
          joint.insert(joint.end(), part.begin(), part.end());
        }
        rank += red.insert(joint) ? 1 : 0;
      }
      CHECK(rank == int32_t(basis.size()));
    }
  }
}

TEST_CASE("restriction is multiplicative on random homogeneous pairs") {
  std::mt19937 rng(2024);
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    for (int trial = 0; trial < 70; ++trial) {
      int32_t n1 = 2 * int32_t(rng() % 14), n2 = 2 * int32_t(rng() % 14);
      RingElement x = random_homogeneous(P, n1, rng);
      RingElement y = random_homogeneous(P, n2, rng);
      RingElement xy = multiply(x, y);
      for (ALabel A : all_a_labels(P))
        CHECK(restrict_to(xy, A) == restrict_to(x, A) * restrict_to(y, A));
    }
  }
}

TEST_CASE("associativity and commutativity on monomial triples") {
  for (int32_t p : {3, 5, 7}) {
    Prime P(p);
    std::vector<RingElement> mons;
    for (int32_t n = 0; n <= 30; n += 2)
      for (const auto& m : graded_basis(P, n)) {
        RingElement e(P);
        e.add_term(m, 1);
        mons.push_back(e);
      }
    // exhaustive commutativity on pairs, exhaustive associativity on the
    // low-degree block, random associativity across the whole range
    std::vector<RingElement> low;
    for (int32_t n = 0; n <= 10; n += 2)
      for (const auto& m : graded_basis(P, n)) {
        RingElement e(P);
        e.add_term(m, 1);
        low.push_back(e);
      }
    for (size_t a = 0; a < mons.size(); ++a)
      for (size_t b = a + 1; b < mons.size(); ++b)
        CHECK(multiply(mons[a], mons[b]) == multiply(mons[b], mons[a]));
    for (const auto& a : low)
      for (const auto& b : low)
        for (const auto& c : low)
          CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      const auto& a = mons[rng() % mons.size()];
      const auto& b = mons[rng() % mons.size()];
      const auto& c = mons[rng() % mons.size()];
      CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    }
  }
}

TEST_CASE("span ranks of the standard coefficient rings") {
  Prime P(5);
  const int32_t p = 5;
  // F_p[C,V]{1} at degree 2p(p-1) holds exactly C^p and V
  CHECK(span_subspace(P, 2 * p * (p - 1), {one(P)}, CoeffRing::A).rank() == 2);
  CHECK(span_subspace(P, 0, {one(P)}, CoeffRing::Fp).rank() == 1);
  // Dickson span of V S^{p-1} at degree 2(p^2-1)
  std::vector<RingElement> vs;
  for (int32_t a = 0; a <= p - 1; ++a)
    vs.push_back(monomial_elem(P, a, p - 1 - a, 0, p - 1));
  CHECK(span_subspace(P, 2 * (p * p - 1), vs, CoeffRing::D).rank() == p);
}

TEST_CASE("span_subspace rejects inhomogeneous generators") {
  Prime P(5);
  RingElement bad = gen_y1(P) + gen_C(P);
  CHECK_THROWS_AS(span_subspace(P, 10, {bad}, CoeffRing::FpC), std::invalid_argument);
}

TEST_CASE("integral basis") {
  Prime P3(3), P5(5);
  for (int32_t n = 0; n <= 40; ++n) {
    IntegralBasis b = integral_basis(P3, n);
    CHECK(b.b_part.empty());
    CHECK(b.ring_part == graded_basis(P3, n));
  }
  IntegralBasis b4 = integral_basis(P5, 4);
  REQUIRE(b4.b_part.size() == 1);
  CHECK(b4.b_part[0] == BMonomial{0, 2});
  CHECK(integral_basis(P5, 7).dim() == 0);
}

TEST_CASE("p=3 extension: relations and products") {
  P3Element a1 = P3Element::a1(), a2 = P3Element::a2();
  Prime P(3);
  CHECK(p3_multiply(a1, a2) == P3Element::from_ring(monomial_elem(P, 1, 1, 0, 0)));
  P3Element unit = P3Element::from_ring(one(P));
  CHECK(p3_multiply(unit, a1) == a1);
  // the shared square lands in the reduced part and matches a1'y2 and a2'y1
  P3Element sq = p3_multiply(a1, a1);
  CHECK(sq.extra_part().empty());
  CHECK(sq == p3_multiply(a2, a2));
  CHECK(sq == p3_multiply(a1, P3Element::from_ring(gen_y2(P))));
  CHECK(sq == p3_multiply(a2, P3Element::from_ring(gen_y1(P))));
  REQUIRE(sq.ring_part().degree().has_value());
  CHECK(*sq.ring_part().degree() == 4);
  // (a1')^2 (a1')^2 stays in the reduced degree-8 part
  P3Element fourth = p3_multiply(sq, sq);
  CHECK(fourth.extra_part().empty());
  CHECK(*fourth.ring_part().degree() == 8);
  // associativity against the v-shifted extra part
  P3Element va1 = p3_multiply(P3Element::from_ring(gen_v(P)), a1);
  CHECK(p3_multiply(va1, a2) == p3_multiply(a1, p3_multiply(P3Element::from_ring(gen_v(P)), a2)));
}

TEST_CASE("p=3 extension: cubes land on the expected y-monomials") {
  Prime P(3);
  P3Element a1 = P3Element::a1(), a2 = P3Element::a2();
  P3Element cube1 = p3_multiply(p3_multiply(a1, a1), a1);
  P3Element cube2 = p3_multiply(p3_multiply(a2, a2), a2);
  CHECK(cube1 == P3Element::from_ring(monomial_elem(P, 2, 1, 0, 0)));
  CHECK(cube2 == P3Element::from_ring(monomial_elem(P, 1, 2, 0, 0)));
}

TEST_CASE("p=3 extension: graded dimensions") {
  CHECK(p3_graded_dim(0) == 1);
  CHECK(p3_graded_dim(2) == 4);  // y1, y2 plus the two extra classes
  CHECK(p3_graded_dim(4) == 4);
}

TEST_CASE("p=3 multiplication is associative on a generator sample") {
  Prime P(3);
  std::vector<P3Element> gens = {P3Element::from_ring(gen_y1(P)), P3Element::from_ring(gen_y2(P)),
                                 P3Element::from_ring(gen_C(P)), P3Element::from_ring(gen_v(P)),
                                 P3Element::a1(), P3Element::a2()};
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (const auto& c : gens) {
        CHECK(p3_multiply(a, b) == p3_multiply(b, a));
        CHECK(p3_multiply(p3_multiply(a, b), c) == p3_multiply(a, p3_multiply(b, c)));
      }
}

TEST_CASE("p3_multiply rejects other primes") {
  CHECK_THROWS_AS(P3Element::from_ring(gen_y1(Prime(5))), std::invalid_argument);
}

TEST_CASE("graded basis is safe to share across threads") {
  Prime P(7);
  std::vector<std::thread> pool;
  std::vector<int32_t> dims(4, 0);
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      int32_t acc = 0;
      for (int32_t n = 0; n <= 80; n += 2) acc += graded_dim(P, n);
      dims[t] = acc;
    });
  for (auto& th : pool) th.join();
  for (int t = 1; t < 4; ++t) CHECK(dims[t] == dims[0]);
}
