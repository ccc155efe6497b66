#pragma once

#include "qbw/braiding.hpp"
#include "qbw/coalgebra.hpp"
#include "qbw/hopf.hpp"
#include "qbw/linalg.hpp"
#include "qbw/qbrace.hpp"
#include "qbw/report.hpp"

#include <string>
#include <vector>

namespace qbw {

// Smallest subcoalgebra containing v, computed by iterating the coefficient
// subspaces of delta (rows and columns of the comultiplication tensor of each
// spanning vector) until stable.
Subspace subcoalgebra_of(const Coalgebra& c, const Vec& v);

// A coideal containing v: a subspace I with delta(I) contained in
// I (x) C + C (x) I and eps(I) = 0. Starts from span{v} and, only when the
// containment fails, enlarges by the counit kernel of the subcoalgebra
// generated by each spanning vector. The result is verified before returning;
// minimality is not claimed. Throws Error("CounitNonzero") if eps(v) != 0.
Subspace coideal_of(const Coalgebra& c, const Vec& v);

// True iff delta(I) lies in I (x) C + C (x) I and eps vanishes on I.
bool is_coideal(const Coalgebra& c, const Subspace& I);

// Checks every condition a subspace must satisfy to define a quotient q-brace,
// with no reference to any generating set:
//   coideal.delta, coideal.counit   delta(I) in I(x)H + H(x)I, eps(I) = 0
//   mul.left, mul.right             HI and IH inside I
//   antipode, antipode_inverse      S(I) and S^-1(I) inside I
//   dot.right, dot.left             h.k and k.h in I for h in H, k in I
//   dpu.right, dpu.left             h-|k and k-|h in I for h in H, k in I
Report ideal_conditions(const QBrace& q, const Subspace& I);

// Ideal generated by the given counit-killed vectors: iterates coideal
// enlargement, two-sided multiplication, antipode stability in both
// directions, and all four action positions to a fixed point. The fixed point
// is re-verified with ideal_conditions before returning.
// Throws Error("CounitNonzero") if some generator has eps != 0.
Subspace qbrace_ideal_closure(const QBrace& q, const std::vector<Vec>& generators);

// Quotient q-brace together with the projection onto it and a linear section.
// Basis: the ambient coordinates away from the ideal's pivot columns, in
// ascending order.
struct Quotient {
  QBrace brace;
  Matrix proj;            // dim(quotient) x dim(ambient)
  Matrix lift;            // dim(ambient) x dim(quotient), proj * lift = id
  std::vector<int> kept;  // ambient coordinates surviving as quotient basis
};

// Builds the quotient by a verified ideal and fully re-validates the induced
// structure. Throws Error("NotAnIdeal", <condition>) naming the first failed
// ideal condition; internal rebuild failures surface as InternalError.
// The projection is checked to be a morphism for dot, dpu and the ladder
// operations with indices in [-1, 1].
Quotient quotient_qbrace(const QBrace& q, const Subspace& I);

// The commutator defect of a q-brace: the pairing that measures how far the
// two products h x k and h |x k are from each other, the ideal its defects
// generate, and the quotient by that ideal.
struct QCommutator {
  // d x d^2; column (l, h) holds the convolution product F * G^-1 at l (x) h,
  // where F(l (x) h) = l x h and G(l (x) h) = h |x l.
  Matrix commutator;
  Subspace ideal;
  Quotient quotient;
};

// Computes the commutator pairing by two independent routes (convolution
// inverse of G against F, and the closed form using S and S^-1), the ideal
// generated by all defects [h,l] - eps(hl)1, and the quotient, which is
// required to satisfy skew_brace_check. Requires a bijective antipode.
QCommutator q_commutator(const QBrace& q);

// Socle computation. lsoc collects the h with
//   h_(1) (x) k.h_(2) (x) h_(3) = h_(1) (x) k (x) h_(2)  for every k,
// rsoc the same with -| in place of ., and soc satisfies both families.
// The report verifies soc = lsoc /\ rsoc, the collapse consequences
// (k.h = eps(h)k and k-|h = eps(h)k on soc, plus the one-leg variants), that
// soc is a normal sub-Hopf algebra, the four membership stabilities
// (h.m, h-|m, S(m_(1))(m_(2).h), S^-1(m_(2))(m_(1)-|h) stay in soc), and the
// equivalent membership tests through lsoc and rsoc combined with
// h x k = h |x k for all k.
struct SocleResult {
  Subspace soc, lsoc, rsoc;
  Report report;
};

SocleResult socle(const QBrace& q);

// Verifies that A is a sub-Hopf q-brace: subalgebra with unit, subcoalgebra,
// stable under S, S^-1 and both adjoint actions (normality), and stable under
// a.h, a-|h and S^-1(h_(2))(h_(1)-|a). On skew braces the lighter
// characterizations (dot and dpu stability alone; dot stability plus
// conjugation by the x-product) are cross-checked against the full list and
// any disagreement raises InternalError.
Report sub_qbrace_check(const QBrace& q, const Subspace& A);

// The ideal A+H generated by the counit kernel of A multiplied into H.
// When A passes sub_qbrace_check the span of those products is already an
// ideal and the closure is asserted not to grow it.
Subspace a_plus_h_ideal(const QBrace& q, const Subspace& A);

// True when both action legs commute with comultiplication legs:
//   k.h_(1) (x) h_(2) = k.h_(2) (x) h_(1) and the -| analogue.
// Holds in particular over cocommutative Hopf algebras and for trivial
// actions; under it the quotient by soc+H is a skew brace.
bool symmetric_action_legs(const QBrace& q);

// Window of shifted copies X_{-m}, ..., X_m of a very strongly regular
// q-cycle coalgebra, with comultiplication taken direct on even copies and
// opposite on odd copies, and the four shifted operation tables (dot, dpu,
// exponent, division) assembled from the regularity ladders of X and of its
// mirrored-inverse companion. Copies outside the window do not exist;
// accessors reject them.
struct ShiftCoalgebra {
  int m = 0;
  Coalgebra base;
  Coalgebra carrier;             // (2m+1) * dim(base)
  Matrix dot, dpu, gp, gd;       // carrier-level operation tables
  Report conditions;

  int dim_base() const { return base.dim(); }
  // Block offset of copy j; throws Error("WindowUnderflow") for |j| > m.
  int block(int j) const;
  // Carrier index of base vector v inside copy j.
  int index_of(int j, int v) const;
};

// Builds the window of radius m >= 0 and evaluates, on the finite carrier:
// the coalgebra axioms, the parity of each embedding, the coalgebra-morphism
// property of all four tables, the cancellation identities for dot/exponent
// and dpu/division, the exchange compatibility conditions for every ladder
// index in [-m, m], and the interchange law of the assembled dot and dpu.
// Claims needing copies or rungs outside the window are reported untested.
// Throws Error("WindowUnderflow") when a required ladder rung cannot be
// solved inside the window and Error("BadArgument") for inputs without the
// required regularity.
ShiftCoalgebra shift_coalgebra(const QMagma& X, int m);

}  // namespace qbw
