#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qbw/qbrace.hpp"
#include "qbw/zoo.hpp"

#include "fixtures.hpp"

using namespace qbw;

namespace {

bool error_code(const Error& e, const char* code) { return e.code == code; }

// report must pass except possibly the named criterion
void check_passes_except(const Report& r, const std::string& allowed) {
  for (const auto& it : r.items) {
    if (it.name == allowed) continue;
    INFO(it.name, ": ", it.detail);
    CHECK(it.pass);
  }
}

bool item_passes(const Report& r, const char* name) {
  const CheckItem* it = r.find(name);
  REQUIRE(it != nullptr);
  return it->pass;
}

// the four-dimensional brace over the rationals, built from the fixture
// rather than the catalogue
QBrace fixture_brace4(FieldRef f) {
  HopfAlgebra h = sweedler4(f);
  const int d = 4;
  Matrix dot(f, d, d * d), dpu(f, d, d * d);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int ip = 0; ip < 2; ++ip) {
        const int a = 2 * i + j, b = 2 * ip;
        const Scalar c = (ip * j) % 2 ? f->from_int(-1) : f->one();
        dot.at(a, a * d + b) = c;  // zeta^{-i'j} = zeta^{+i'j} at zeta = -1
        dpu.at(a, a * d + b) = c;
      }
  return qbrace(std::move(h), std::move(dot), std::move(dpu));
}

}  // namespace

TEST_CASE("the fixture brace validates and both scalar actions coincide") {
  FieldRef f = Field::rationals();
  QBrace q = fixture_brace4(f);
  CHECK(q.dot == q.dpu);
  CHECK(q.sol.braid);
  CHECK(q.sol.invertible);
  Report r = qbrace_validate(q.hopf, q.dot, q.dpu);
  check_passes_except(r, "");
  CHECK(item_passes(r, "solution_route"));
  CHECK(item_passes(r, "matched_pair_route"));
}

TEST_CASE("weak braiding versus braiding across the catalogue") {
  QBrace t2 = taft_qbrace(2);
  QBrace t3 = taft_qbrace(3);

  Report w2 = braiding_check(t2.hopf, t2.sol.s);
  check_passes_except(w2, "");

  // the nine-dimensional case is a weak braiding operator but mu o s != mu
  Report w3 = braiding_check(t3.hopf, t3.sol.s);
  check_passes_except(w3, "multiplicative");
  CHECK_FALSE(item_passes(w3, "multiplicative"));

  // the flip solution respects the product exactly when it is commutative
  QBrace triv = trivial_qbrace(group_algebra(Field::rationals(), symmetric_group_3()));
  Report wt = braiding_check(triv.hopf, triv.sol.s);
  check_passes_except(wt, "multiplicative");
  CHECK_FALSE(item_passes(wt, "multiplicative"));
  QBrace trivc = trivial_qbrace(group_algebra(Field::rationals(), cyclic_group(4)));
  CHECK(braiding_check(trivc.hopf, trivc.sol.s).ok());

  try {
    (void)weak_braiding_check(t2.hopf, Matrix::identity(t2.field(), 3));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(error_code(e, "ShapeMismatch"));
  }
}

TEST_CASE("the multiplicative rule matches the skew condition on every brace") {
  for (const auto& name : zoo_names()) {
    ZooInstance z = zoo_instance(name);
    if (!z.brace) continue;
    INFO(name);
    const bool skew = item_passes(times_layer(*z.brace), "skew_condition");
    const bool bo5 = item_passes(braiding_check(z.brace->hopf, z.brace->sol.s), "multiplicative");
    CHECK(skew == bo5);
  }
}

TEST_CASE("matched pairs of braces and a perturbed counterexample") {
  QBrace s3 = conjugation_qbrace(Field::rationals(), symmetric_group_3());
  MatchedPair mp = matched_pair_of(s3.hopf, s3.sol.s);
  // the pair actions are the two components of the operator
  CHECK(mp.alpha == kron(s3.hopf.coalg.counit, Matrix::identity(s3.field(), s3.dim())) * s3.sol.s);
  check_passes_except(matched_pair_check(mp), "");

  // the pair verdict tracks the weak braiding verdict
  QBrace t2 = taft_qbrace(2);
  CHECK(matched_pair_check(matched_pair_of(t2.hopf, t2.sol.s)).ok() ==
        weak_braiding_check(t2.hopf, t2.sol.s).ok());

  // replacing the left action by the group product keeps both module
  // structures but breaks the multiplicativity of the action
  MatchedPair bad = mp;
  bad.beta = s3.hopf.mu;
  auto cond = matched_pair_conditions(bad);
  CHECK(cond[0]);
  CHECK(cond[1]);
  CHECK_FALSE(cond[2]);
  CHECK_FALSE(matched_pair_check(bad).ok());
}

TEST_CASE("bicrossed products validate with the closed antipode") {
  QBrace t2 = taft_qbrace(2);
  HopfAlgebra big = bicrossed_product(matched_pair_of(t2.hopf, t2.sol.s));
  CHECK(big.dim() == 16);
  Report v = validate_hopf(big);
  check_passes_except(v, "");

  QBrace s3 = conjugation_qbrace(Field::rationals(), symmetric_group_3());
  MatchedPair mp = matched_pair_of(s3.hopf, s3.sol.s);
  CHECK(bicrossed_product(mp).dim() == 36);

  MatchedPair bad = mp;
  bad.beta = s3.hopf.mu;
  CHECK_THROWS_AS((void)bicrossed_product(bad), Error);
  try {
    (void)bicrossed_product(bad);
  } catch (const Error& e) {
    CHECK(error_code(e, "NotMatchedPair"));
  }
}

TEST_CASE("validation rejects non-braces with a named failure") {
  QBrace t2 = taft_qbrace(2);
  FieldRef f = t2.field();
  const int d = t2.dim();

  // the zero action is not even a counital magma
  Report r = qbrace_validate(t2.hopf, Matrix(f, d, d * d), Matrix(f, d, d * d));
  CHECK_FALSE(r.ok());
  CHECK_FALSE(item_passes(r, "qmagma"));
  CHECK_THROWS_AS((void)qbrace(t2.hopf, Matrix(f, d, d * d), Matrix(f, d, d * d)), Error);

  // mixing the scalar left action with the trivial right action fails
  Report mixed = qbrace_validate(t2.hopf, t2.dot, eps_right_op(t2.hopf.coalg));
  CHECK_FALSE(mixed.ok());
  try {
    (void)qbrace(t2.hopf, t2.dot, eps_right_op(t2.hopf.coalg));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(error_code(e, "InvalidQBrace"));
  }

  // missing antipode data is reported before any axiom runs
  HopfAlgebra bare = hopf(t2.hopf.coalg, t2.hopf.mu, t2.hopf.unit);
  try {
    (void)qbrace_validate(bare, t2.dot, t2.dpu);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(error_code(e, "NoAntipode"));
  }
}

TEST_CASE("solution roundtrips and carrier switches") {
  QBrace t2 = taft_qbrace(2);
  QBrace back = qbrace_from_solution(t2.hopf, solution_from_qbrace(t2));
  CHECK(back.dot == t2.dot);
  CHECK(back.dpu == t2.dpu);
  CHECK(back.sol.s == t2.sol.s);

  // the same operator is a brace on the co-opposite carrier
  QBrace cop = qbrace_cop(t2);
  CHECK(cop.sol.s == t2.sol.s);
  CHECK(qbrace_validate(cop.hopf, cop.dot, cop.dpu).ok());

  // and the opposite brace swaps the two actions over the co-opposite
  QBrace op = qbrace_op(t2);
  CHECK(op.dot == t2.dpu);
  CHECK(op.dpu == t2.dot);

  QBrace s3 = conjugation_qbrace(Field::rationals(), symmetric_group_3());
  QBrace s3cop = qbrace_cop(s3);
  CHECK(qbrace_validate(s3cop.hopf, s3cop.dot, s3cop.dpu).ok());
}

TEST_CASE("group-like layer identities") {
  for (const char* name : {"taft(2)", "taft(3)", "group_conjugation(S3)", "dual_dihedral(2,3)"}) {
    ZooInstance z = zoo_instance(name);
    INFO(name);
    Report r = times_layer(*z.brace);
    check_passes_except(r, "skew_condition");
  }
  // the twist law in detail: T(k)h = h_(3) x T(k h_(2)) x h_(1) fails nowhere
  QBrace t3 = taft_qbrace(3);
  CHECK(item_passes(times_layer(t3), "t_times_twist"));
  CHECK_FALSE(item_passes(times_layer(t3), "skew_condition"));
}

TEST_CASE("antipode unfolding tuples are the canonical ones") {
  using V = std::vector<int>;
  CHECK(antipode_action_tuple(1) == V{1, 2});
  CHECK(antipode_action_tuple(2) == V{2, 1, 3});
  CHECK(antipode_action_tuple(3) == V{2, 4, 1, 3});
  CHECK(antipode_action_tuple(4) == V{3, 1, 5, 2, 4});
  CHECK(antipode_action_tuple(5) == V{3, 6, 1, 5, 2, 4});
  CHECK(antipode_action_tuple(6) == V{4, 1, 7, 2, 6, 3, 5});
  CHECK(antipode_action_tuple(-1) == V{2, 1});
  CHECK(antipode_action_tuple(-2) == V{2, 3, 1});
  CHECK(antipode_action_tuple(-3) == V{3, 1, 4, 2});
  CHECK(antipode_action_tuple(-4) == V{3, 5, 1, 4, 2});
  CHECK(antipode_action_tuple(-5) == V{4, 1, 6, 2, 5, 3});
  CHECK(antipode_action_tuple(-6) == V{4, 7, 1, 6, 2, 5, 3});
  CHECK_THROWS_AS((void)antipode_action_tuple(0), Error);
  try {
    (void)antipode_action_tuple(0);
  } catch (const Error& e) {
    CHECK(error_code(e, "BadArgument"));
  }
}

TEST_CASE("antipode powers act through the unfolded expressions") {
  QBrace t2 = taft_qbrace(2);
  for (int j = -4; j <= 4; ++j) {
    if (j == 0) continue;
    INFO("power ", j);
    check_passes_except(antipode_action(t2, j), "");
  }
  QBrace s3 = conjugation_qbrace(Field::rationals(), symmetric_group_3());
  for (int j : {-6, -5, 5, 6}) {
    INFO("power ", j);
    check_passes_except(antipode_action(s3, j), "");
  }
}

TEST_CASE("the solution interacts with the antipode as mirrored inverse") {
  for (const char* name : {"taft(2)", "taft(3)", "dual_dihedral(2,1)", "dual_dihedral(2,4)"}) {
    ZooInstance z = zoo_instance(name);
    INFO(name);
    check_passes_except(s_antipode_compat(*z.brace), "");
  }
}

TEST_CASE("rung maps are antipode twists of the two actions") {
  for (const char* name : {"taft(2)", "taft(3)", "group_conjugation(S3)"}) {
    ZooInstance z = zoo_instance(name);
    INFO(name);
    Report r = ladder_vs_antipode(*z.brace, -2, 2);
    check_passes_except(r, "");
    CHECK(item_passes(r, "very_strong_regularity"));
  }
}

TEST_CASE("the derived product tower stays a brace") {
  QBrace s3 = conjugation_qbrace(Field::rationals(), symmetric_group_3());
  QBrace t2 = taft_qbrace(2);

  BulletTower zero = bullet_tower(s3, 0);
  CHECK(zero.mu.size() == 1);
  CHECK(zero.brace.dot == s3.dot);

  for (int n : {1, 2}) {
    INFO("level ", n);
    BulletTower ts = bullet_tower(s3, n);
    check_passes_except(ts.report, "");
    CHECK((int)ts.mu.size() == n + 1);
    BulletTower tt = bullet_tower(t2, n);
    check_passes_except(tt.report, "");
    // the co-opposite family at the same level is a brace as well
    QBrace mirrored = qbrace_cop(tt.brace);
    CHECK(qbrace_validate(mirrored.hopf, mirrored.dot, mirrored.dpu).ok());
  }

  // a skew brace satisfies mu o s = mu, so every level repeats the base
  BulletTower rep = bullet_tower(s3, 2);
  CHECK(rep.mu[1] == s3.hopf.mu);
  CHECK(rep.mu[2] == s3.hopf.mu);

  // a genuinely moving tower: the nine-dimensional scalar brace
  QBrace t3 = taft_qbrace(3);
  BulletTower mv = bullet_tower(t3, 1);
  check_passes_except(mv.report, "");
  CHECK_FALSE(mv.mu[1] == t3.hopf.mu);

  CHECK_THROWS_AS((void)bullet_tower(s3, -1), Error);
  try {
    (void)bullet_tower(s3, -1);
  } catch (const Error& e) {
    CHECK(error_code(e, "BadArgument"));
  }
}

TEST_CASE("towers over the opposite brace provide the negative families") {
  QBrace t3 = taft_qbrace(3);
  QBrace opp = qbrace_op(t3);
  BulletTower down = bullet_tower(opp, 1);
  check_passes_except(down.report, "");
  // mirrored first level differs from both the base and the upward level
  CHECK_FALSE(down.mu[1] == opp.hopf.mu);
}
