#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qbw/skewforms.hpp"
#include "qbw/zoo.hpp"

#include "fixtures.hpp"

using namespace qbw;

namespace {

bool error_code(const Error& e, const char* code) { return e.code == code; }

bool item_ok(const Report& r, const std::string& name) {
  const CheckItem* it = r.find(name);
  REQUIRE_MESSAGE(it != nullptr, "missing item " << name);
  return it->pass;
}

const CheckItem* first_fail(const Report& r) {
  for (const auto& it : r.items)
    if (!it.pass) return &it;
  return nullptr;
}

void expect_all_pass(const Report& r) {
  const CheckItem* bad = first_fail(r);
  CHECK_MESSAGE(bad == nullptr, (bad ? bad->name + ": " + bad->detail : ""));
}

void expect_same_brace(const QBrace& a, const QBrace& b) {
  CHECK(a.hopf.mu == b.hopf.mu);
  CHECK(a.hopf.unit == b.hopf.unit);
  CHECK(a.hopf.S() == b.hopf.S());
  CHECK(a.dot == b.dot);
  CHECK(a.dpu == b.dpu);
  CHECK(a.times == b.times);
  CHECK(a.doubletimes == b.doubletimes);
  CHECK(a.T_times == b.T_times);
  CHECK(a.T_doubletimes == b.T_doubletimes);
}

// epsilon-trivial right action h . k = eps(k) h
Matrix trivial_action(const Coalgebra& c) { return eps_right_op(c); }

LinearQCycle group_linear_qcycle(FieldRef f, const FiniteGroup& g) {
  HopfAlgebra h = group_algebra(f, g);
  Matrix T = *compute_antipode(h);
  return LinearQCycle{h.coalg, h.unit, h.mu, trivial_action(h.coalg), T};
}

}  // namespace

TEST_CASE("skew verdicts across the catalogue") {
  struct Row {
    const char* name;
    bool skew;
  };
  const Row rows[] = {
      {"taft(2)", true},
      {"taft(3)", false},
      {"dual_dihedral(2,1)", true},
      {"dual_dihedral(2,2)", true},
      {"dual_dihedral(2,3)", true},
      {"dual_dihedral(2,4)", true},
      {"group_conjugation(S3)", true},
      {"group_conjugation(Z/3)", true},
      {"trivial_qbrace(S3)", false},
      {"trivial_qbrace(taft(2))", false},
  };
  for (const Row& row : rows) {
    ZooInstance z = zoo_instance(row.name);
    REQUIRE(z.brace.has_value());
    CHECK_MESSAGE(skew_brace_check(*z.brace) == row.skew, row.name);
  }
  // commutative carrier with trivial actions: h |x k = kh = hk = k x h
  QBrace tz3 = trivial_qbrace(group_algebra(Field::rationals(), cyclic_group(3)));
  CHECK(skew_brace_check(tz3));
}

TEST_CASE("module criterion matches the full validation plus skew condition") {
  const char* names[] = {"taft(2)", "taft(3)", "dual_dihedral(2,2)", "trivial_qbrace(S3)"};
  for (const char* name : names) {
    ZooInstance z = zoo_instance(name);
    Report r = skew_brace_criterion(z.brace->hopf, z.brace->dot, z.brace->dpu);
    CHECK_MESSAGE(r.ok() == skew_brace_check(*z.brace), name);
    if (!r.ok()) {
      // a validated brace can only miss the skew condition itself
      CHECK(item_ok(r, "qmagma"));
      CHECK(!item_ok(r, "skew_condition"));
    }
  }
  // mismatched pair of actions must not slip through
  ZooInstance z = zoo_instance("taft(2)");
  Report r = skew_brace_criterion(z.brace->hopf, z.brace->dot, trivial_action(z.brace->hopf.coalg));
  CHECK(!r.ok());
}

TEST_CASE("twisted diagonal closes under the double product exactly when skew") {
  CHECK(twisted_diagonal_subalgebra(*zoo_instance("taft(2)").brace));
  CHECK(twisted_diagonal_subalgebra(*zoo_instance("dual_dihedral(2,2)").brace));
  CHECK(twisted_diagonal_subalgebra(*zoo_instance("group_conjugation(Z/3)").brace));
  CHECK(!twisted_diagonal_subalgebra(*zoo_instance("trivial_qbrace(S3)").brace));
}

TEST_CASE("linear q-cycle roundtrip is exact on the skew corpus") {
  const char* names[] = {"taft(2)", "dual_dihedral(2,1)", "dual_dihedral(2,3)",
                         "group_conjugation(S3)", "group_conjugation(Z/3)"};
  for (const char* name : names) {
    ZooInstance z = zoo_instance(name);
    LinearQCycle lq = to_linear_qcycle(*z.brace);
    expect_all_pass(linear_qcycle_validate(lq));
    QBrace back = from_linear_qcycle(lq);
    expect_same_brace(back, *z.brace);
  }
}

TEST_CASE("non-skew braces are rejected by the conversions") {
  ZooInstance z = zoo_instance("taft(3)");
  CHECK_THROWS_AS(to_linear_qcycle(*z.brace), Error);
  try {
    to_gv(*z.brace);
    FAIL("expected ValidationFailure");
  } catch (const Error& e) {
    CHECK(error_code(e, "ValidationFailure"));
  }
}

TEST_CASE("group-product form roundtrip is exact") {
  const char* names[] = {"taft(2)", "dual_dihedral(2,1)"};
  for (const char* name : names) {
    ZooInstance z = zoo_instance(name);
    GVSkewBrace gv = to_gv(*z.brace);
    expect_all_pass(gv_validate(gv));
    QBrace back = from_gv(gv);
    expect_same_brace(back, *z.brace);
  }
}

TEST_CASE("three-way roundtrip recovers both actions on dual dihedral case 1") {
  ZooInstance z = zoo_instance("dual_dihedral(2,1)");
  LinearQCycle lq = to_linear_qcycle(*z.brace);
  QBrace mid = from_linear_qcycle(lq);
  GVSkewBrace gv = to_gv(mid);
  QBrace back = from_gv(gv);
  CHECK(back.dot == z.brace->dot);
  CHECK(back.dpu == z.brace->dpu);
  expect_same_brace(back, *z.brace);
}

TEST_CASE("dual dihedral case 3 satisfies every group-product law") {
  GVSkewBrace gv = to_gv(*zoo_instance("dual_dihedral(2,3)").brace);
  expect_all_pass(gv_validate(gv));
}

TEST_CASE("derived exponent and division agree with the magma maps") {
  ZooInstance z = zoo_instance("taft(2)");
  GVSkewBrace gv = to_gv(*z.brace);
  CHECK(gv_exponent(gv) == *z.brace->magma.gp);
  CHECK(gv_division(gv) == *z.brace->magma.gd);
  CHECK(gv_dot(gv) == z.brace->dot);
  CHECK(gv_dpu(gv) == z.brace->dpu);
}

TEST_CASE("conjugation braces carry the opposite multiplication as group product") {
  FieldRef f = Field::rationals();
  QBrace q = conjugation_qbrace(f, symmetric_group_3());
  CHECK(q.times == q.hopf.mu * flip_operator(q.hopf.coalg));
  CHECK(q.T_times == q.hopf.S());
}

TEST_CASE("a raw linear q-cycle over a cyclic group rebuilds the trivial brace") {
  FieldRef f = Field::rationals();
  LinearQCycle lq = group_linear_qcycle(f, cyclic_group(3));
  QBrace q = from_linear_qcycle(lq);
  QBrace expect = trivial_qbrace(group_algebra(f, cyclic_group(3)));
  expect_same_brace(q, expect);
}

TEST_CASE("a raw linear q-cycle over S3 rebuilds conjugation on the opposite group") {
  FieldRef f = Field::rationals();
  FiniteGroup g = symmetric_group_3();
  LinearQCycle lq = group_linear_qcycle(f, g);
  QBrace q = from_linear_qcycle(lq);
  CHECK(skew_brace_check(q));
  const int d = g.order;
  // rebuilt product is the opposite group law, division is conjugation
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Vec prod = q.hopf.mu.col(a * d + b);
      for (int i = 0; i < d; ++i) CHECK(prod[i] == (i == g.at(b, a) ? f->one() : f->zero()));
      Vec div = q.dpu.col(a * d + b);
      const int conj = g.at(g.at(g.inv[b], a), b);
      for (int i = 0; i < d; ++i) CHECK(div[i] == (i == conj ? f->one() : f->zero()));
    }
  CHECK(q.dot == trivial_action(q.hopf.coalg));
}

TEST_CASE("validation failures name the first broken law") {
  FieldRef f = Field::rationals();
  SUBCASE("identity in place of the pointwise inverse") {
    LinearQCycle lq = group_linear_qcycle(f, cyclic_group(3));
    lq.T_times = Matrix::identity(f, 3);
    Report r = linear_qcycle_validate(lq);
    CHECK(!item_ok(r, "t_convolution"));
    try {
      from_linear_qcycle(lq);
      FAIL("expected ValidationFailure");
    } catch (const Error& e) {
      CHECK(error_code(e, "ValidationFailure"));
      CHECK(std::string(e.what()).find("t_convolution") != std::string::npos);
    }
  }
  SUBCASE("group multiplication in place of the dot action") {
    LinearQCycle lq = group_linear_qcycle(f, cyclic_group(3));
    lq.dot = lq.times;
    Report r = linear_qcycle_validate(lq);
    CHECK(!item_ok(r, "antipode_antiautomorphism"));
    CHECK_THROWS_AS(from_linear_qcycle(lq), Error);
  }
  SUBCASE("shape mismatch") {
    LinearQCycle lq = group_linear_qcycle(f, cyclic_group(3));
    lq.T_times = Matrix(f, 3, 4);
    try {
      linear_qcycle_validate(lq);
      FAIL("expected ShapeMismatch");
    } catch (const Error& e) {
      CHECK(error_code(e, "ShapeMismatch"));
    }
  }
  SUBCASE("perturbed group product is rejected with the violated law") {
    GVSkewBrace gv = to_gv(*zoo_instance("dual_dihedral(2,1)").brace);
    GVSkewBrace bad = gv;
    // break associativity and the unit by redirecting 1 x 1
    for (int i = 0; i < bad.dim(); ++i) bad.times.at(i, 0) = bad.times.at(i, 1);
    CHECK_THROWS_AS(from_gv(bad), Error);
  }
}

TEST_CASE("identity cocycle on the two-element group algebra") {
  FieldRef f = Field::rationals();
  QBrace q = trivial_qbrace(group_algebra(f, cyclic_group(2)));
  GVSkewBrace gv = to_gv(q);
  Cocycle cc = cocycle_bridge(gv);
  expect_all_pass(cocycle_validate(cc));
  CHECK(cc.pi == Matrix::identity(f, 2));
  CHECK(cc.haction == trivial_action(q.hopf.coalg));
  GVSkewBrace back = gv_from_cocycle(cc);
  CHECK(back.times == gv.times);
  CHECK(back.T_times == gv.T_times);
}

TEST_CASE("dual dihedral case 2 cocycle validates and roundtrips exactly") {
  ZooInstance z = zoo_instance("dual_dihedral(2,2)");
  GVSkewBrace gv = to_gv(*z.brace);
  Cocycle cc = cocycle_bridge(gv);
  expect_all_pass(cocycle_validate(cc));
  GVSkewBrace back = gv_from_cocycle(cc);
  CHECK(back.times == gv.times);
  CHECK(back.T_times == gv.T_times);
  CHECK(from_gv(back).dpu == z.brace->dpu);
}

TEST_CASE("Taft double cocycle validates and fixes the group-like") {
  ZooInstance z = zoo_instance("taft(2)");
  GVSkewBrace gv = to_gv(*z.brace);
  Cocycle cc = cocycle_bridge(gv);
  expect_all_pass(cocycle_validate(cc));
  // basis 1, x, g, gx: the pointwise inverse fixes 1 and g
  FieldRef f = gv.field();
  for (int i = 0; i < 4; ++i) {
    CHECK(gv.T_times.at(i, 0) == (i == 0 ? f->one() : f->zero()));
    CHECK(gv.T_times.at(i, 2) == (i == 2 ? f->one() : f->zero()));
  }
}

TEST_CASE("a relabeled target exercises a nontrivial isomorphism") {
  FieldRef f = Field::rationals();
  QBrace q = trivial_qbrace(group_algebra(f, cyclic_group(2)));
  GVSkewBrace gv = to_gv(q);
  Matrix pi(f, 2, 2);
  pi.at(0, 1) = f->one();
  pi.at(1, 0) = f->one();  // swap the two group-likes
  Matrix pinv = *invert(pi).inverse;
  Matrix IH = Matrix::identity(f, 2);
  Cocycle cc{gv.hopf,
             gv.hopf.coalg,
             pi.apply(gv.hopf.unit),
             pi * gv.times * kron(pinv, pinv),
             pi * gv.T_times * pinv,
             pi * gv_division(gv) * kron(pinv, IH),
             pi};
  expect_all_pass(cocycle_validate(cc));
  GVSkewBrace back = gv_from_cocycle(cc);
  CHECK(back.times == gv.times);
  CHECK(back.T_times == gv.T_times);
}

TEST_CASE("broken cocycles are rejected with the violated item") {
  ZooInstance z = zoo_instance("taft(2)");
  GVSkewBrace gv = to_gv(*z.brace);
  Cocycle cc = cocycle_bridge(gv);
  SUBCASE("exponent in place of the division action") {
    // on the conjugation brace the two actions differ, so the rebuild law breaks
    GVSkewBrace cgv = to_gv(*zoo_instance("group_conjugation(S3)").brace);
    REQUIRE(gv_exponent(cgv) != gv_division(cgv));
    Cocycle bad = cocycle_bridge(cgv);
    bad.haction = gv_exponent(cgv);
    Report r = cocycle_validate(bad);
    CHECK(!r.ok());
    CHECK(!item_ok(r, "cocycle_condition"));
    try {
      gv_from_cocycle(bad);
      FAIL("expected CocycleViolation");
    } catch (const Error& e) {
      CHECK(error_code(e, "CocycleViolation"));
    }
  }
  SUBCASE("pi that is not a coalgebra map") {
    Cocycle bad = cc;
    bad.pi.at(0, 1) = bad.pi.field()->one();
    Report r = cocycle_validate(bad);
    CHECK(!item_ok(r, "pi_coalgebra_map"));
    CHECK_THROWS_AS(gv_from_cocycle(bad), Error);
  }
}
