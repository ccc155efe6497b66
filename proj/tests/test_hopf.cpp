#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qbw/hopf.hpp"

#include "fixtures.hpp"

#include <array>
#include <random>

using namespace qbw;



TEST_CASE("bialgebra validation passes on the fixtures and localizes breakage") {
  FieldRef f = Field::rationals();
  CHECK(validate_bialgebra(group_algebra_z2(f)).ok());
  CHECK(validate_bialgebra(sweedler4(f)).ok());
  CHECK(validate_bialgebra(dual_z3(f)).ok());
  CHECK(validate_bialgebra(group_algebra_s3(f)).ok());
  CHECK(validate_bialgebra(sweedler4(Field::prime(7))).ok());

  HopfAlgebra bad = sweedler4(f);
  bad.mu.at(0, 1 * 4 + 1) = f->one();  // make x^2 = 1
  Report rep = validate_bialgebra(bad);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.find("delta_algebra_map")->pass);
}

TEST_CASE("antipode of the order-2 group algebra is the identity") {
  HopfAlgebra h = group_algebra_z2(Field::rationals());
  auto s = compute_antipode(h);
  REQUIRE(s.has_value());
  CHECK(*s == Matrix::identity(h.field(), 2));
}

TEST_CASE("antipode of sweedler4: x -> gx, order four") {
  FieldRef f = Field::rationals();
  HopfAlgebra h = sweedler4(f);
  auto s = compute_antipode(h);
  REQUIRE(s.has_value());
  Matrix expect(f, 4, 4);
  expect.at(0, 0) = f->one();
  expect.at(2, 2) = f->one();
  expect.at(3, 1) = f->one();
  expect.at(1, 3) = -f->one();
  CHECK(*s == expect);
  Matrix s2 = *s * *s;
  CHECK_FALSE(s2 == Matrix::identity(f, 4));
  CHECK(s2 * s2 == Matrix::identity(f, 4));
}

TEST_CASE("antipode of the dual group algebra inverts the exponent") {
  FieldRef f = Field::rationals();
  HopfAlgebra h = dual_z3(f);
  auto s = compute_antipode(h);
  REQUIRE(s.has_value());
  Matrix expect(f, 3, 3);
  expect.at(0, 0) = f->one();
  expect.at(2, 1) = f->one();
  expect.at(1, 2) = f->one();
  CHECK(*s == expect);
  CHECK(*s * *s == Matrix::identity(f, 3));
}

TEST_CASE("idempotent monoid bialgebra has no antipode") {
  HopfAlgebra h = idempotent_monoid(Field::rationals());
  CHECK(validate_bialgebra(h).ok());
  CHECK_FALSE(compute_antipode(h).has_value());
  CHECK_FALSE(ensure_antipode(h));
}

TEST_CASE("full Hopf validation on the fixtures") {
  for (FieldRef f : {Field::rationals(), Field::prime(5)}) {
    for (auto make : {group_algebra_z2, sweedler4, dual_z3}) {
      HopfAlgebra h = make(f);
      Report rep = validate_hopf(h);
      INFO(rep.to_string());
      CHECK(rep.ok());
      CHECK(h.antipode_inv.has_value());
    }
  }
}

TEST_CASE("opposite and co-opposite constructions") {
  FieldRef f = Field::rationals();
  HopfAlgebra z2 = group_algebra_z2(f);
  HopfAlgebra z2op = hopf_op(z2);
  CHECK(z2op.mu == z2.mu);
  CHECK(z2op.S() == Matrix::identity(f, 2));

  HopfAlgebra t2 = sweedler4(f);
  REQUIRE(ensure_antipode(t2));
  HopfAlgebra t2cop = hopf_cop(t2);
  Report rep = validate_bialgebra(t2cop);
  INFO(rep.to_string());
  CHECK(rep.ok());
  Matrix s = t2.S();
  CHECK(t2cop.S() == s * s * s);
  CHECK(t2cop.S() == t2.S_inv());
  HopfAlgebra back = hopf_cop(t2cop);
  CHECK(back.coalg.delta == t2.coalg.delta);
  CHECK(back.mu == t2.mu);
  CHECK(back.S() == t2.S());
}

TEST_CASE("module-coalgebra check: trivial action passes") {
  FieldRef f = Field::rationals();
  HopfAlgebra t2 = sweedler4(f);
  Matrix act(f, 4, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) act.at(i, i * 4 + j) = t2.coalg.eps(j);
  for (Variance v : {Variance::over_h, Variance::over_h_op}) {
    Report rep = is_module_coalgebra({&t2, &t2.coalg, act, v, true});
    INFO(rep.to_string());
    CHECK(rep.ok());
  }
}

TEST_CASE("module-coalgebra check: scalar action table") {
  // (g^i x^j) . (g^k x^l) = 0 if l > 0, else (-1)^(kj) g^i x^j
  FieldRef f = Field::rationals();
  HopfAlgebra t2 = sweedler4(f);
  Matrix act(f, 4, 16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        Scalar c = (k * j) % 2 ? -f->one() : f->one();
        act.at(2 * i + j, (2 * i + j) * 4 + 2 * k) = c;
      }
  Report rep = is_module_coalgebra({&t2, &t2.coalg, act, Variance::over_h_op, true});
  INFO(rep.to_string());
  CHECK(rep.ok());
}

TEST_CASE("module-coalgebra check: conjugation distinguishes the variance") {
  // set-level oracle first: h <| g = g^-1 h g satisfies (h <| a) <| b = h <| (ab)
  auto els = s3_elements();
  for (const Perm& h : els)
    for (const Perm& a : els)
      for (const Perm& b : els) {
        Perm lhs = pcompose(pinverse(b), pcompose(pcompose(pinverse(a), pcompose(h, a)), b));
        Perm rhs = pcompose(pinverse(pcompose(a, b)), pcompose(h, pcompose(a, b)));
        REQUIRE(lhs == rhs);
      }

  FieldRef f = Field::rationals();
  HopfAlgebra ks3 = group_algebra_s3(f);
  const int n = 6;
  Matrix act(f, n, n * n);
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g) {
      Perm c = pcompose(pinverse(els[g]), pcompose(els[h], els[g]));
      act.at(perm_index(els, c), h * n + g) = f->one();
    }
  Report over_h = is_module_coalgebra({&ks3, &ks3.coalg, act, Variance::over_h, true});
  INFO(over_h.to_string());
  CHECK(over_h.ok());
  Report over_op = is_module_coalgebra({&ks3, &ks3.coalg, act, Variance::over_h_op, true});
  CHECK_FALSE(over_op.ok());
  CHECK_FALSE(over_op.find("action_axiom")->pass);
}

TEST_CASE("convolution unit laws and associativity") {
  FieldRef f = Field::rationals();
  HopfAlgebra t2 = sweedler4(f);
  auto ca = convolution_algebra(t2);
  Matrix e = convolution_unit(ca);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix a = random_matrix(f, 4, 4, rng);
    Matrix b = random_matrix(f, 4, 4, rng);
    Matrix c = random_matrix(f, 4, 4, rng);
    CHECK(convolution(ca, e, a) == a);
    CHECK(convolution(ca, a, e) == a);
    CHECK(convolution(ca, convolution(ca, a, b), c) == convolution(ca, a, convolution(ca, b, c)));
  }
}

TEST_CASE("convolution inverse of the identity is the antipode; zero map is singular") {
  FieldRef f = Field::rationals();
  HopfAlgebra t2 = sweedler4(f);
  auto ca = convolution_algebra(t2);
  auto inv = convolution_inverse(ca, Matrix::identity(f, 4));
  REQUIRE(inv.has_value());
  REQUIRE(ensure_antipode(t2));
  CHECK(*inv == t2.S());
  CHECK_FALSE(convolution_inverse(ca, Matrix(f, 4, 4)).has_value());
}
