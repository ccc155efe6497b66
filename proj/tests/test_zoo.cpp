#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qbw/zoo.hpp"

#include "fixtures.hpp"

using namespace qbw;

namespace {

bool error_code(const Error& e, const char* code) { return e.code == code; }

template <typename F>
void expect_error(F&& f, const char* code) {
  try {
    f();
    FAIL_CHECK("expected ", code);
  } catch (const Error& e) {
    INFO(e.what());
    CHECK(error_code(e, code));
  }
}

bool item_ok(const Report& r, const char* name) {
  const CheckItem* it = r.find(name);
  REQUIRE(it != nullptr);
  return it->pass;
}

}  // namespace

TEST_CASE("finite group tables are groups") {
  for (const FiniteGroup& g :
       {cyclic_group(5), dihedral_group(4), symmetric_group_3(), dihedral_group(2)}) {
    for (int a = 0; a < g.order; ++a) {
      CHECK(g.at(g.unit, a) == a);
      CHECK(g.at(a, g.unit) == a);
      CHECK(g.at(a, g.inv[a]) == g.unit);
      for (int b = 0; b < g.order; ++b)
        for (int c = 0; c < g.order; ++c) CHECK(g.at(g.at(a, b), c) == g.at(a, g.at(b, c)));
    }
  }
  CHECK(symmetric_group_3().order == 6);
  CHECK(dihedral_group(4).order == 8);
  // r y r y = 1 in the dihedral presentation
  const FiniteGroup d = dihedral_group(4);
  const int r = 1, y = 4;
  CHECK(d.at(d.at(d.at(r, y), r), y) == d.unit);
}

TEST_CASE("group algebras are group-like Hopf algebras") {
  FieldRef f = Field::rationals();
  const FiniteGroup g = symmetric_group_3();
  HopfAlgebra h = group_algebra(f, g);
  for (int a = 0; a < 6; ++a) {
    Vec e = vec_zero(f, 6);
    e[a] = f->one();
    CHECK(is_grouplike(h.coalg, e));
    // the antipode permutes by inversion
    for (int r = 0; r < 6; ++r)
      CHECK(h.S().at(r, a) == (r == g.inv[a] ? f->one() : f->zero()));
  }
}

TEST_CASE("dual group algebras transpose the group structure") {
  FieldRef f = Field::rationals();
  const FiniteGroup g = dihedral_group(4);
  HopfAlgebra h = dual_group_algebra(f, g);
  CHECK(h.dim() == 8);
  CHECK(validate_hopf(h).ok());
  // counit picks the unit coefficient, S permutes by inversion
  for (int a = 0; a < 8; ++a) {
    CHECK(h.coalg.eps(a) == (a == g.unit ? f->one() : f->zero()));
    for (int r = 0; r < 8; ++r)
      CHECK(h.S().at(r, a) == (r == g.inv[a] ? f->one() : f->zero()));
  }
  // the unit is the sum of all idempotents
  for (int a = 0; a < 8; ++a) CHECK(h.unit[a] == f->one());
}

TEST_CASE("the quantum plane algebra matches the hand-written fixture") {
  FieldRef f = Field::cyclotomic(2);
  HopfAlgebra fix = sweedler4(f);
  HopfAlgebra t2 = taft_hopf(2);
  CHECK(fix.mu == t2.mu);
  CHECK(fix.coalg.delta == t2.coalg.delta);
  CHECK(fix.coalg.counit == t2.coalg.counit);
  CHECK(fix.unit == t2.unit);
}

TEST_CASE("Taft antipode and relations") {
  HopfAlgebra t3 = taft_hopf(3);
  FieldRef f = t3.field();
  auto idx = [](int i, int j) { return i * 3 + j; };
  // x g = zeta g x
  Matrix xg_col(f, 9, 1), gx_col(f, 9, 1);
  for (int r = 0; r < 9; ++r) {
    xg_col.at(r, 0) = t3.mu.at(r, idx(0, 1) * 9 + idx(1, 0));
    gx_col.at(r, 0) = t3.mu.at(r, idx(1, 0) * 9 + idx(0, 1));
  }
  CHECK(xg_col == gx_col.scaled(f->zeta(1)));
  // x^3 = 0
  CHECK(vec_is_zero(t3.mu.apply(vec_kron(t3.mu.col(idx(0, 1) * 9 + idx(0, 1)),
                                         t3.mu.col(idx(0, 1) * 9 + idx(0, 0))))));
  // S(g) = g^2, S(x) = -zeta^2 g^2 x, both single entries
  for (int r = 0; r < 9; ++r) {
    CHECK(t3.S().at(r, idx(1, 0)) == (r == idx(2, 0) ? f->one() : f->zero()));
    CHECK(t3.S().at(r, idx(0, 1)) == (r == idx(2, 1) ? -f->zeta(2) : f->zero()));
  }
  // eps kills x
  CHECK(t3.coalg.eps(idx(0, 1)) == f->zero());
  CHECK(t3.coalg.eps(idx(2, 0)) == f->one());
  expect_error([] { (void)taft_hopf(1); }, "BadParams");
}

TEST_CASE("Taft braces: scalar actions, only n = 2 skew") {
  QBrace t2 = taft_qbrace(2);
  CHECK(t2.dot == t2.dpu);  // zeta = -1 makes the signs agree
  CHECK(times_layer(t2).ok());

  QBrace t3 = taft_qbrace(3);
  CHECK_FALSE(t3.dot == t3.dpu);
  Report r3 = times_layer(t3);
  const CheckItem* sk = r3.find("skew_condition");
  REQUIRE(sk != nullptr);
  CHECK_FALSE(sk->pass);
  // dot sends g^i x^j (x) g^i' to zeta^{-i'j} g^i x^j, kills x-columns
  FieldRef f = t3.field();
  auto idx = [](int i, int j) { return i * 3 + j; };
  CHECK(t3.dot.at(idx(0, 1), idx(0, 1) * 9 + idx(2, 0)) == f->zeta(((-2 % 3) + 3) % 3));
  for (int r = 0; r < 9; ++r) CHECK(t3.dot.at(r, idx(0, 1) * 9 + idx(1, 1)) == f->zero());
}

TEST_CASE("dual dihedral braces: all four cases") {
  FieldRef f = Field::rationals();
  const FiniteGroup g = dihedral_group(4);
  const int D = 8, unit = g.unit;
  auto idx = [](int i, int j) { return j * 4 + i; };
  const int center = idx(2, 0);
  const Scalar half = f->one() / f->from_int(2);

  for (int cs = 1; cs <= 4; ++cs) {
    INFO("case ", cs);
    QBrace q = dual_dihedral_qbrace(f, 2, cs);
    CHECK(q.dim() == 8);
    CHECK(q.dot == q.dpu);
    // only central columns act
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        if (b == unit || b == center) continue;
        for (int r = 0; r < D; ++r) CHECK(q.dot.at(r, a * D + b) == f->zero());
      }
    // the two central columns sum to the identity action
    for (int a = 0; a < D; ++a)
      for (int r = 0; r < D; ++r)
        CHECK(q.dot.at(r, a * D + unit) + q.dot.at(r, a * D + center) ==
              (r == a ? f->one() : f->zero()));
    CHECK(item_ok(times_layer(q), "skew_condition"));
  }

  // case 2 splits exactly the reflections
  QBrace q2 = dual_dihedral_qbrace(f, 2, 2);
  const int refl = idx(1, 1), rot = idx(1, 0);
  CHECK(q2.dot.at(refl, refl * D + unit) == half);
  CHECK(q2.dot.at(idx(3, 1), refl * D + unit) == half);
  CHECK(q2.dot.at(rot, rot * D + unit) == f->one());
  CHECK(q2.dot.at(rot, rot * D + center) == f->zero());

  // case 3 splits the odd rotations, case 4 the odd total degree
  QBrace q3 = dual_dihedral_qbrace(f, 2, 3);
  CHECK(q3.dot.at(rot, rot * D + center) == half);
  CHECK(q3.dot.at(refl, refl * D + center) == half);  // i odd in r^1 y
  QBrace q4 = dual_dihedral_qbrace(f, 2, 4);
  CHECK(q4.dot.at(rot, rot * D + center) == half);
  for (int r = 0; r < D; ++r) CHECK(q4.dot.at(r, refl * D + center) == f->zero());  // i+j even

  expect_error([&] { (void)dual_dihedral_qbrace(f, 2, 5); }, "BadParams");
  expect_error([&] { (void)dual_dihedral_qbrace(f, 1, 1); }, "BadParams");
  expect_error([&] { (void)dual_dihedral_qbrace(Field::prime(2), 2, 1); }, "BadParams");
}

TEST_CASE("conjugation braces") {
  FieldRef f = Field::rationals();
  QBrace s3 = conjugation_qbrace(f, symmetric_group_3());
  CHECK(s3.dot == eps_right_op(s3.hopf.coalg));
  CHECK(times_layer(s3).ok());
  QBrace d4 = conjugation_qbrace(f, dihedral_group(4));
  CHECK(times_layer(d4).ok());
  // an abelian group conjugates trivially
  QBrace z3 = conjugation_qbrace(f, cyclic_group(3));
  CHECK(z3.dpu == eps_right_op(z3.hopf.coalg));
}

TEST_CASE("rack and flip solutions") {
  FieldRef f = Field::rationals();
  SolutionCandidate cy = cyclic_rack_solution(f, 3);
  CHECK(cy.braid);
  CHECK(cy.invertible);
  CHECK_FALSE(involutivity_check(cy));

  SolutionCandidate cr = conjugation_rack_solution(f, symmetric_group_3());
  CHECK(cr.braid);
  CHECK_FALSE(involutivity_check(cr));

  SolutionCandidate fl = flip_solution(f, 4);
  CHECK(fl.braid);
  CHECK(involutivity_check(fl));
  CHECK(fl.s == flip_operator(fl.carrier));
}

TEST_CASE("the catalogue names build and agree with their verdicts") {
  int solutions = 0;
  for (const auto& name : zoo_names()) {
    INFO(name);
    ZooInstance z = zoo_instance(name);
    CHECK(z.name == name);
    REQUIRE(z.solution.has_value());
    ++solutions;
    // braid holds iff the three equivalent conditions hold
    const SolutionCandidate& sc = *z.solution;
    auto conds = braid_check_conditions(sc);
    CHECK(sc.braid == (conds[0] && conds[1] && conds[2]));
    CHECK(sc.braid);
    if (z.kind == "qbrace") {
      REQUIRE(z.brace.has_value());
      REQUIRE(z.hopf.has_value());
      CHECK(qcycle_check(z.brace->magma).ok());
    }
  }
  CHECK(solutions >= 10);
}

TEST_CASE("unknown names and bad parameters") {
  expect_error([] { (void)zoo_instance("frobnicate(2)"); }, "UnknownExample");
  expect_error([] { (void)zoo_instance("taft[2]"); }, "UnknownExample");
  expect_error([] { (void)zoo_instance("taft(2,3)"); }, "BadParams");
  expect_error([] { (void)zoo_instance("taft(q)"); }, "BadParams");
  expect_error([] { (void)zoo_instance("group_conjugation(Q8)"); }, "BadParams");
  expect_error([] { (void)zoo_instance("rack(moebius)"); }, "BadParams");
  expect_error([] { (void)zoo_instance("flip(0)"); }, "BadParams");
  expect_error([] { (void)zoo_instance("group_conjugation(Z/0)"); }, "BadParams");
  expect_error([] { (void)zoo_instance("trivial_qbrace(taft(1))"); }, "BadParams");
}
