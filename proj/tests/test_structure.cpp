#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qbw/skewforms.hpp"
#include "qbw/structure.hpp"
#include "qbw/zoo.hpp"

#include "fixtures.hpp"

using namespace qbw;

namespace {

bool error_code(const Error& e, const char* code) { return e.code == code; }

template <typename F>
void expect_error(F&& fn, const char* code) {
  try {
    fn();
    FAIL_CHECK("expected error ", code);
  } catch (const Error& e) {
    INFO(e.what());
    CHECK(error_code(e, code));
  }
}

void check_all(const Report& r) {
  for (const auto& it : r.items) {
    if (it.untested) continue;
    INFO(it.name, ": ", it.detail);
    CHECK(it.pass);
  }
}

Vec basis_vec(FieldRef f, int d, int j) {
  Vec v(d, f->zero());
  v[j] = f->one();
  return v;
}

// central elements of a finite group, by brute force
std::vector<int> group_center(const FiniteGroup& g) {
  std::vector<int> out;
  for (int a = 0; a < g.order; ++a) {
    bool central = true;
    for (int b = 0; b < g.order && central; ++b) central = g.at(a, b) == g.at(b, a);
    if (central) out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("subcoalgebras and coideals of small carriers") {
  FieldRef f = Field::rationals();
  HopfAlgebra z2 = group_algebra(f, cyclic_group(2));
  const Coalgebra& c2 = z2.coalg;

  // g - 1 spans a coideal on its own
  Vec gm1 = basis_vec(f, 2, 1);
  gm1[0] = -f->one();
  Subspace I = coideal_of(c2, gm1);
  CHECK(I.dim() == 1);
  CHECK(I.contains(gm1));
  CHECK(is_coideal(c2, I));

  QBrace t2 = taft_qbrace(2);
  const Coalgebra& ct = t2.hopf.coalg;
  FieldRef ft = t2.field();
  // basis 1, x, g, gx; the subcoalgebra of x picks up 1 and g
  Vec x = basis_vec(ft, 4, 1);
  Subspace D = subcoalgebra_of(ct, x);
  CHECK(D.dim() == 3);
  CHECK(D.contains(x));
  CHECK(D.contains(basis_vec(ft, 4, 0)));
  CHECK(D.contains(basis_vec(ft, 4, 2)));
  CHECK_FALSE(D.contains(basis_vec(ft, 4, 3)));
  // while x alone already spans a coideal
  Subspace Ix = coideal_of(ct, x);
  CHECK(Ix.dim() == 1);
  CHECK(Ix.contains(x));

  Subspace Z = coideal_of(ct, Vec(4, ft->zero()));
  CHECK(Z.dim() == 0);
  expect_error([&] { (void)coideal_of(ct, basis_vec(ft, 4, 0)); }, "CounitNonzero");
}

TEST_CASE("ideal closure from generators") {
  FieldRef f = Field::rationals();
  QBrace s3 = conjugation_qbrace(f, symmetric_group_3());
  int d = s3.dim();

  CHECK(qbrace_ideal_closure(s3, {}).dim() == 0);

  // differences g - e generate the whole augmentation ideal
  std::vector<Vec> gens;
  for (int a = 0; a < d; ++a) {
    if (a == symmetric_group_3().unit) continue;
    Vec v = basis_vec(f, d, a);
    v[symmetric_group_3().unit] = -f->one();
    gens.push_back(std::move(v));
  }
  Subspace aug = qbrace_ideal_closure(s3, gens);
  CHECK(aug.dim() == d - 1);
  check_all(ideal_conditions(s3, aug));

  Quotient q = quotient_qbrace(s3, aug);
  CHECK(q.brace.dim() == 1);
  CHECK(skew_brace_check(q.brace));

  expect_error([&] { (void)qbrace_ideal_closure(s3, {basis_vec(f, d, 0)}); }, "CounitNonzero");
}

TEST_CASE("quotient by the zero ideal reproduces the brace") {
  QBrace t2 = taft_qbrace(2);
  FieldRef f = t2.field();
  Quotient q = quotient_qbrace(t2, Subspace::zero(f, 4));
  CHECK(q.brace.dim() == 4);
  CHECK(q.proj == Matrix::identity(f, 4));
  CHECK(q.brace.dot == t2.dot);
  CHECK(q.brace.dpu == t2.dpu);
  CHECK(q.kept == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("quotient rejects non-ideals") {
  QBrace t2 = taft_qbrace(2);
  FieldRef f = t2.field();
  // span{g - 1} is a coideal but not multiplicatively stable
  Vec gm1 = basis_vec(f, 4, 2);
  gm1[0] = -f->one();
  Matrix row(f, 1, 4);
  for (int j = 0; j < 4; ++j) row.at(0, j) = gm1[j];
  expect_error([&] { (void)quotient_qbrace(t2, Subspace::from_rows(row)); }, "NotAnIdeal");
}

TEST_CASE("commutator pairing vanishes exactly on skew braces") {
  FieldRef f = Field::rationals();

  QCommutator dd = q_commutator(dual_dihedral_qbrace(f, 2, 1));
  CHECK(dd.ideal.dim() == 0);
  CHECK(dd.quotient.brace.dim() == 8);

  // a trivial brace is skew exactly when the algebra is commutative
  QCommutator tz = q_commutator(trivial_qbrace(group_algebra(f, cyclic_group(4))));
  CHECK(tz.ideal.dim() == 0);
  QCommutator tr = q_commutator(trivial_qbrace(group_algebra(f, symmetric_group_3())));
  CHECK(tr.ideal.dim() == 4);
  CHECK(tr.quotient.brace.dim() == 2);  // the abelianization Z/2 survives
  CHECK(skew_brace_check(tr.quotient.brace));

  QCommutator conj = q_commutator(conjugation_qbrace(f, symmetric_group_3()));
  CHECK(conj.ideal.dim() == 0);

  // the four-dimensional Taft brace happens to be skew, the nine-dimensional
  // one is not; its defects generate the whole augmentation ideal
  QBrace t2 = taft_qbrace(2);
  CHECK(skew_brace_check(t2));
  QCommutator k2 = q_commutator(t2);
  CHECK(k2.ideal.dim() == 0);
  CHECK(k2.quotient.brace.dim() == 4);

  QBrace t3 = taft_qbrace(3);
  CHECK_FALSE(skew_brace_check(t3));
  QCommutator k3 = q_commutator(t3);
  CHECK(k3.ideal.dim() == 8);
  CHECK(k3.quotient.brace.dim() == 1);
  CHECK(skew_brace_check(k3.quotient.brace));
}

TEST_CASE("socle of a trivial brace is everything") {
  FieldRef f = Field::rationals();
  QBrace tr = trivial_qbrace(group_algebra(f, symmetric_group_3()));
  SocleResult s = socle(tr);
  CHECK(s.soc.dim() == 6);
  CHECK(s.lsoc.dim() == 6);
  CHECK(s.rsoc.dim() == 6);
  check_all(s.report);
}

TEST_CASE("socle of a conjugation brace is the span of the central elements") {
  FieldRef f = Field::rationals();
  FiniteGroup g = symmetric_group_3();
  QBrace s3 = conjugation_qbrace(f, g);
  SocleResult s = socle(s3);
  check_all(s.report);

  std::vector<int> center = group_center(g);
  CHECK(center == std::vector<int>{g.unit});
  CHECK(s.soc.dim() == static_cast<int>(center.size()));
  for (int a : center) CHECK(s.soc.contains(basis_vec(f, g.order, a)));
  // the trivial action makes every element left-socle
  CHECK(s.lsoc.dim() == 6);
  CHECK(s.rsoc.dim() == 1);

  // same picture for the dihedral group of order 8, whose center has order 2
  FiniteGroup d4 = dihedral_group(4);
  QBrace qd4 = conjugation_qbrace(f, d4);
  SocleResult sd = socle(qd4);
  check_all(sd.report);
  std::vector<int> center4 = group_center(d4);
  CHECK(static_cast<int>(center4.size()) == 2);
  CHECK(sd.soc.dim() == 2);
  for (int a : center4) CHECK(sd.soc.contains(basis_vec(f, d4.order, a)));
}

TEST_CASE("socle of the four-dimensional Taft brace") {
  QBrace t2 = taft_qbrace(2);
  SocleResult s = socle(t2);
  check_all(s.report);
  CHECK(s.soc.dim() == 1);
  CHECK(s.soc.contains(t2.hopf.unit));
  // the socle is a normal sub-Hopf algebra and its augmentation part spreads
  // to an ideal
  Report sub = sub_qbrace_check(t2, s.soc);
  check_all(sub);
  Subspace sh = a_plus_h_ideal(t2, s.soc);
  check_all(ideal_conditions(t2, sh));
}

TEST_CASE("sub-brace checks and the ideal spread of the counit kernel") {
  FieldRef f = Field::rationals();
  QBrace t2 = taft_qbrace(2);
  FieldRef ft = t2.field();

  Matrix unit_row(ft, 1, 4);
  for (int j = 0; j < 4; ++j) unit_row.at(0, j) = t2.hopf.unit[j];
  Subspace spanone = Subspace::from_rows(unit_row);
  Report r = sub_qbrace_check(t2, spanone);
  check_all(r);
  CHECK(a_plus_h_ideal(t2, spanone).dim() == 0);

  // a trivial brace is its own socle; the spread is the augmentation ideal
  QBrace tr = trivial_qbrace(group_algebra(f, symmetric_group_3()));
  CHECK(symmetric_action_legs(tr));
  SocleResult s = socle(tr);
  Report rs = sub_qbrace_check(tr, s.soc);
  check_all(rs);
  Subspace sh = a_plus_h_ideal(tr, s.soc);
  CHECK(sh.dim() == 5);
  Quotient q = quotient_qbrace(tr, sh);
  CHECK(q.brace.dim() == 1);
  CHECK(skew_brace_check(q.brace));

  // cocommutative skew case: the socle quotient stays skew
  QBrace s3 = conjugation_qbrace(f, symmetric_group_3());
  CHECK(symmetric_action_legs(s3));
  SocleResult sc = socle(s3);
  Report rc = sub_qbrace_check(s3, sc.soc);
  check_all(rc);
  Subspace sch = a_plus_h_ideal(s3, sc.soc);
  Quotient qc = quotient_qbrace(s3, sch);
  CHECK(skew_brace_check(qc.brace));
}

TEST_CASE("shift window of radius zero reproduces the base operations") {
  QBrace t2 = taft_qbrace(2);
  ShiftCoalgebra sc = shift_coalgebra(t2.magma, 0);
  CHECK(sc.carrier.dim() == 4);
  CHECK(sc.dot == t2.magma.p);
  CHECK(sc.dpu == t2.magma.d);
  RegularityLadder l0 = regularity_ladder(t2.magma, 0, 0);
  CHECK(sc.gp == l0.gp.at(0));
  CHECK(sc.gd == l0.gd.at(0));
  CHECK(sc.conditions.ok());
}

TEST_CASE("shift window of radius one on the Taft magma") {
  QBrace t2 = taft_qbrace(2);
  ShiftCoalgebra sc = shift_coalgebra(t2.magma, 1);
  CHECK(sc.carrier.dim() == 12);
  CHECK(sc.conditions.ok());
  check_all(sc.conditions);
  int untested = 0;
  for (const auto& it : sc.conditions.items) untested += it.untested ? 1 : 0;
  CHECK(untested == 2);

  CHECK(sc.block(-1) == 0);
  CHECK(sc.block(0) == 1);
  CHECK(sc.block(1) == 2);
  CHECK(sc.index_of(1, 2) == 10);
  expect_error([&] { (void)sc.block(2); }, "WindowUnderflow");
  expect_error([&] { (void)sc.index_of(-2, 0); }, "WindowUnderflow");
  expect_error([&] { (void)sc.index_of(0, 7); }, "BadArgument");
  expect_error([&] { (void)shift_coalgebra(t2.magma, -1); }, "BadArgument");
}

TEST_CASE("shift window on cocommutative carriers") {
  FieldRef f = Field::rationals();
  QBrace z3 = conjugation_qbrace(f, cyclic_group(3));
  ShiftCoalgebra sc = shift_coalgebra(z3.magma, 2);
  CHECK(sc.carrier.dim() == 15);
  CHECK(sc.conditions.ok());

  QBrace s3 = conjugation_qbrace(f, symmetric_group_3());
  ShiftCoalgebra sd = shift_coalgebra(s3.magma, 1);
  CHECK(sd.carrier.dim() == 18);
  CHECK(sd.conditions.ok());
}
