#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qbw/coalgebra.hpp"

#include <random>

using namespace qbw;

namespace {

// group-like coalgebra on n points: delta(e_j) = e_j (x) e_j, eps = 1
Coalgebra grouplike_coalgebra(FieldRef f, int n) {
  Matrix delta(f, n * n, n), counit(f, 1, n);
  for (int j = 0; j < n; ++j) {
    delta.at(j * n + j, j) = f->one();
    counit.at(0, j) = f->one();
  }
  return coalgebra(std::move(delta), std::move(counit));
}

// 4-dimensional coalgebra with basis 1, x, g, gx and
// delta(1)=1(x)1, delta(g)=g(x)g, delta(x)=1(x)x+x(x)g, delta(gx)=g(x)gx+gx(x)1
Coalgebra sweedler4(FieldRef f) {
  Matrix delta(f, 16, 4), counit(f, 1, 4);
  const Scalar one = f->one();
  delta.at(0 * 4 + 0, 0) = one;
  delta.at(0 * 4 + 1, 1) = one;
  delta.at(1 * 4 + 2, 1) = one;
  delta.at(2 * 4 + 2, 2) = one;
  delta.at(2 * 4 + 3, 3) = one;
  delta.at(3 * 4 + 0, 3) = one;
  counit.at(0, 0) = one;
  counit.at(0, 2) = one;
  return coalgebra(std::move(delta), std::move(counit), {"1", "x", "g", "gx"});
}

// antipode of sweedler4: 1 -> 1, g -> g, x -> gx, gx -> -x
Matrix sweedler4_antipode(FieldRef f) {
  Matrix s(f, 4, 4);
  s.at(0, 0) = f->one();
  s.at(2, 2) = f->one();
  s.at(3, 1) = f->one();
  s.at(1, 3) = -f->one();
  return s;
}

Matrix flip_matrix(FieldRef f, int da, int db) {
  Matrix t(f, da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) t.at(j * da + i, i * db + j) = f->one();
  return t;
}

}  // namespace

TEST_CASE("group-like coalgebra validates; a perturbed entry breaks coassociativity") {
  for (FieldRef f : {Field::rationals(), Field::prime(7)}) {
    Coalgebra ky = grouplike_coalgebra(f, 3);
    CHECK(validate_coalgebra(ky).ok());

    Coalgebra bad = ky;
    bad.delta.at(0 * 3 + 1, 0) += f->one();
    Report rep = validate_coalgebra(bad);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.find("coassociativity")->pass);
  }
}

TEST_CASE("sweedler4 coalgebra validates") {
  Coalgebra t2 = sweedler4(Field::rationals());
  Report rep = validate_coalgebra(t2);
  INFO(rep.to_string());
  CHECK(rep.ok());
}

TEST_CASE("cop is an involution and flips the comultiplication") {
  FieldRef f = Field::rationals();
  Coalgebra ky = grouplike_coalgebra(f, 3);
  CHECK(cop(ky).delta == ky.delta);

  Coalgebra t2 = sweedler4(f);
  Coalgebra t2cop = cop(t2);
  CHECK(validate_coalgebra(t2cop).ok());
  CHECK(cop(t2cop).delta == t2.delta);
  // delta^cop(x) = x (x) 1 + g (x) x
  Vec dx = t2cop.delta.col(1);
  CHECK(dx[1 * 4 + 0].is_one());
  CHECK(dx[2 * 4 + 1].is_one());
  Scalar nnz = f->zero();
  for (const auto& s : dx)
    if (!s.is_zero()) nnz += f->one();
  CHECK(nnz == f->from_int(2));
}

TEST_CASE("tensor coalgebra of group-likes is group-like on the product") {
  FieldRef f = Field::prime(5);
  Coalgebra a = grouplike_coalgebra(f, 2), b = grouplike_coalgebra(f, 3);
  Coalgebra ab = tensor_coalgebra(a, b);
  CHECK(ab.dim() == 6);
  CHECK(validate_coalgebra(ab).ok());
  for (int j = 0; j < 6; ++j) {
    Vec v = vec_zero(f, 6);
    v[j] = f->one();
    CHECK(is_grouplike(ab, v));
  }
}

TEST_CASE("tensor square of sweedler4 validates") {
  Coalgebra t2 = sweedler4(Field::rationals());
  Coalgebra sq = tensor_coalgebra(t2, t2);
  CHECK(sq.dim() == 16);
  CHECK(validate_coalgebra(sq).ok());
}

TEST_CASE("components of delta are identities") {
  Coalgebra t2 = sweedler4(Field::rationals());
  auto parts = components(t2.delta, {&t2, &t2});
  Matrix id = Matrix::identity(t2.field(), 4);
  CHECK(parts[0] == id);
  CHECK(parts[1] == id);
  CHECK(assemble_from_components(parts, t2) == t2.delta);
}

TEST_CASE("components of the flip are the counit-weighted projections") {
  FieldRef f = Field::rationals();
  Coalgebra t2 = sweedler4(f);
  Coalgebra sq = tensor_coalgebra(t2, t2);
  Matrix tau = flip_matrix(f, 4, 4);
  auto parts = components(tau, {&t2, &t2});
  // s1(x (x) y) = eps(x) y, s2(x (x) y) = eps(y) x
  Matrix s1(f, 4, 16), s2(f, 4, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      s1.at(j, i * 4 + j) = t2.eps(i);
      s2.at(i, i * 4 + j) = t2.eps(j);
    }
  CHECK(parts[0] == s1);
  CHECK(parts[1] == s2);
  CHECK(assemble_from_components(parts, sq) == tau);
  CHECK(is_coalgebra_map(tau, sq, sq));
}

TEST_CASE("components of a linearized permutation-action map") {
  // s(e_i (x) e_j) = e_j (x) e_{i+1 mod 3} on the group-like coalgebra of 3 points
  FieldRef f = Field::rationals();
  Coalgebra kz = grouplike_coalgebra(f, 3);
  Coalgebra sq = tensor_coalgebra(kz, kz);
  Matrix s(f, 9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.at(j * 3 + (i + 1) % 3, i * 3 + j) = f->one();
  auto parts = components(s, {&kz, &kz});
  Matrix s1(f, 3, 9), s2(f, 3, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      s1.at(j, i * 3 + j) = f->one();
      s2.at((i + 1) % 3, i * 3 + j) = f->one();
    }
  CHECK(parts[0] == s1);
  CHECK(parts[1] == s2);
  CHECK(assemble_from_components(parts, sq) == s);
  CHECK(is_coalgebra_map(s, sq, sq));
}

TEST_CASE("is_coalgebra_map basics") {
  FieldRef f = Field::rationals();
  Coalgebra t2 = sweedler4(f);
  CHECK(is_coalgebra_map(Matrix::identity(f, 4), t2, t2));
  CHECK(is_coalgebra_map(t2.counit, t2, trivial_coalgebra(f)));
  Matrix s = sweedler4_antipode(f);
  CHECK(is_coalgebra_map(s, t2, cop(t2)));
  CHECK_FALSE(is_coalgebra_map(s, t2, t2));
}

TEST_CASE("factored maps: morphism iff components are morphisms plus the symmetry") {
  FieldRef f = Field::rationals();
  Coalgebra t2 = sweedler4(f);
  Coalgebra sq = tensor_coalgebra(t2, t2);

  // the symmetry for factored maps: (s1 (x) s2) o delta = (s1 (x) s2) o delta^cop
  auto symmetric = [&](const Matrix& s1, const Matrix& s2) {
    Matrix k = kron(s1, s2);
    return k * sq.delta == k * cop(sq).delta;
  };
  auto three_way = [&](const Matrix& s1, const Matrix& s2, const Coalgebra& y1, const Coalgebra& y2) {
    Matrix s = kron(s1, s2) * sq.delta;
    bool lhs = is_coalgebra_map(s, sq, tensor_coalgebra(y1, y2));
    bool rhs = is_coalgebra_map(s1, sq, y1) && is_coalgebra_map(s2, sq, y2) && symmetric(s1, s2);
    CHECK(lhs == rhs);
    return lhs;
  };

  // counit-weighted projections factor the flip: all three conditions hold
  Matrix p1(f, 4, 16), p2(f, 4, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      p1.at(j, i * 4 + j) = t2.eps(i);
      p2.at(i, i * 4 + j) = t2.eps(j);
    }
  CHECK(three_way(p1, p2, t2, t2));

  // both components the first projection: components pass, symmetry fails
  CHECK_FALSE(three_way(p1, p1, t2, t2));
  CHECK(is_coalgebra_map(p1, sq, t2));
  CHECK_FALSE(symmetric(p1, p1));

  // randomized candidates keep the equivalence
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix r1 = random_matrix(f, 4, 16, rng), r2 = random_matrix(f, 4, 16, rng);
    three_way(r1, r2, t2, t2);
  }
}

TEST_CASE("sweedler iterates") {
  FieldRef f = Field::rationals();
  Coalgebra t2 = sweedler4(f);
  Vec x = vec_zero(f, 4);
  x[1] = f->one();
  CHECK(sweedler_iterate(t2, x, 0) == x);

  Vec g = vec_zero(f, 4);
  g[2] = f->one();
  Vec ggg = sweedler_iterate(t2, g, 2);
  Vec expect = vec_zero(f, 64);
  expect[(2 * 4 + 2) * 4 + 2] = f->one();
  CHECK(ggg == expect);

  // delta^2(x) = 1 (x) 1 (x) x + 1 (x) x (x) g + x (x) g (x) g
  Vec xxg = sweedler_iterate(t2, x, 2);
  expect = vec_zero(f, 64);
  expect[(0 * 4 + 0) * 4 + 1] = f->one();
  expect[(0 * 4 + 1) * 4 + 2] = f->one();
  expect[(1 * 4 + 2) * 4 + 2] = f->one();
  CHECK(xxg == expect);
}

TEST_CASE("group-like membership") {
  FieldRef f = Field::rationals();
  Coalgebra t2 = sweedler4(f);
  Vec v = vec_zero(f, 4);
  v[0] = f->one();
  CHECK(is_grouplike(t2, v));
  v[0] = f->zero();
  v[2] = f->one();
  CHECK(is_grouplike(t2, v));
  v[2] = f->zero();
  v[1] = f->one();
  CHECK_FALSE(is_grouplike(t2, v));
  CHECK_FALSE(is_grouplike(t2, vec_zero(f, 4)));
}
