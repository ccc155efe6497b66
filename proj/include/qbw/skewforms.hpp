// Hopf skew-braces and their equivalent presentations. A q-brace whose two
// actions satisfy h |x k = k x h can be repackaged as a linear q-cycle
// structure (coalgebra, x, T_x, ., 1), as a group-like-product triple
// (Hopf algebra, x, T_x), or as an invertible 1-cocycle; the conversions
// here are exact and mutually inverse, and every constructed instance is
// re-validated on arrival.
#pragma once

#include "qbw/qbrace.hpp"

namespace qbw {

// ---- the skew verdict -------------------------------------------------------

// h |x k = k x h on a validated q-brace. The verdict is cross-checked
// against mu o s = mu (they characterize the same class); when it holds,
// T_x = T_|x, the recovery of -| from x through
//   h -| k = (h x k_(2)) S^{-1}(k_(1))
// and the antipode forms of the two derived actions
//   k^h = T_x(h_(2)) x k h_(1)   (= the exponent map)
//   k_h = k h_(2) x T_x(h_(1))   (= the division map)
// are asserted as well. Any disagreement throws Error("InternalError").
bool skew_brace_check(const QBrace& q);

// The lighter criterion on raw structure constants: (H; ., -|) is a q-magma,
// both operations are right modules over the opposite algebra, and
// h |x k = k x h. No q-cycle conditions are consulted; passing here implies
// the full q-brace validation succeeds and the brace is skew.
Report skew_brace_criterion(const HopfAlgebra& h, const Matrix& dot, const Matrix& dpu);

// Whether span{S(h_(1)) (x) h_(2)} is closed under the multiplication of the
// double cross product H |><| H built from the brace's operator. True exactly
// when the brace is skew. The closed form of the product of two spanning
// vectors,
//   (S(h_(1)) (x) h_(2)) (S(k_(1)) (x) k_(2))
//     = S((k_(1)-|h_(3)) h_(1)) (x) (h_(2).k_(2)) k_(3),
// and the antipode rule S(k_(1)) -| (h.k_(2)) = S(k-|h) behind it are
// re-derived and asserted on the way.
bool twisted_diagonal_subalgebra(const QBrace& q);

// ---- the three presentations ------------------------------------------------

// Coalgebra with a distinguished group-like 1, an associative product x with
// unit 1 and pointwise inverse T_x, and a regular action . ; the Hopf algebra
// structure is recovered, not stored.
struct LinearQCycle {
  Coalgebra coalg;
  Vec one;
  Matrix times;    // dim x dim^2
  Matrix dot;      // dim x dim^2
  Matrix T_times;  // dim x dim

  FieldRef field() const { return coalg.field(); }
  int dim() const { return coalg.dim(); }
};

// Hopf algebra carrying a second associative product x with two-sided unit 1
// and pointwise inverse T_x of the identity.
struct GVSkewBrace {
  HopfAlgebra hopf;
  Matrix times;    // dim x dim^2
  Matrix T_times;  // dim x dim

  FieldRef field() const { return hopf.field(); }
  int dim() const { return hopf.dim(); }
};

// Coalgebra isomorphism pi from a Hopf algebra onto a target (L, x', T_x', <-)
// intertwining the multiplication of H with the twisted product
//   pi(k h) = (pi(k) <- h_(2)) x' pi(h_(1)).
struct Cocycle {
  HopfAlgebra hopf;       // source
  Coalgebra target;       // L
  Vec one;                // unit of x' in L
  Matrix times_prime;     // dim_L x dim_L^2
  Matrix T_times_prime;   // dim_L x dim_L
  Matrix haction;         // <- : L (x) H -> L, dim_L x (dim_L * dim_H)
  Matrix pi;              // dim_L x dim_H

  FieldRef field() const { return hopf.field(); }
};

// ---- validators --------------------------------------------------------------

// Definition items, in order:
//   coalgebra axioms of the carrier, 1 group-like,
//   item 1: . is a coalgebra map H (x) H^cop -> H and (h (x) k) -> h.k_(1) (x) k_(2)
//           is invertible (the exponent h^k is read off the inverse),
//   item 2: (h (x) k) -> k_(2) x h^{k_(1)} is a coalgebra morphism H (x) H -> H,
//   item 3: x associative with two-sided unit 1,
//   item 4: h -> T_x(h_(1)).h_(2) is a bijective coalgebra anti-endomorphism,
//   item 5: (k x l).h = (k.h_(1)) x (l.h_(2)),
//   item 6: h.(k x l) = (h.k_(2)).(l.k_(1)),
//   item 7: h_(2) x T_x(h_(1)) = T_x(h_(2)) x h_(1) = eps(h)1,
//   item 8: (h (x) k) -> (k_(2).h_(1)) h_(2) S^{-1}(k_(1)) is a coalgebra map
//           H (x) H^cop -> H (products in the item-2 multiplication),
// plus the derived law 1.h = eps(h)1. Later items that need structure from a
// failed earlier item are reported as "untestable".
Report linear_qcycle_validate(const LinearQCycle& lq);

// Two independently testable groups. "definition": x associative with unit,
// the distributor law (k x l)h = k h_(3) x T_x(h_(2)) x l h_(1), and the
// coalgebra-map property of (h (x) k) -> (k_(1) x h)S(k_(2)) and of
// (h (x) k) -> (h x k_(2))S^{-1}(k_(1)). "module_form": T_x is the pointwise
// inverse of the identity (f*g)(h) = f(h_(2)) x g(h_(1)), the exponent and
// division maps are right module coalgebra actions, and both distribute as
//   (k x l)^h = k^{h_(2)} x l^{h_(1)},  (k x l)_h = k_{h_(2)} x l_{h_(1)}.
// The two groups are equivalent; constructors treat a verdict disagreement
// as an internal error.
Report gv_validate(const GVSkewBrace& gv);

// Target laws (x' associative with the stored unit, T_x' its pointwise
// inverse, <- a right module coalgebra action with
// (k x' l) <- h = (k <- h_(2)) x' (l <- h_(1))), pi a coalgebra isomorphism,
// the twisted action l (x) h -> T_x'(pi(h_(3))) x' (l <- h_(2)) x' pi(h_(1))
// again a right module coalgebra action, and the cocycle condition.
Report cocycle_validate(const Cocycle& c);

// ---- conversions --------------------------------------------------------------

// Shape-checks and validates; throws Error("ValidationFailure") naming the
// first violated item.
GVSkewBrace gv_skew_brace(HopfAlgebra h, Matrix times, Matrix T_times);

// Repackage a skew q-brace (Error("ValidationFailure") when the skew
// condition fails). The result is re-validated; the multiplication
// reconstructed from (x, .) agrees with the original exactly.
LinearQCycle to_linear_qcycle(const QBrace& q);
GVSkewBrace to_gv(const QBrace& q);

// Rebuild the brace: h.k = (k_(1) x h)S(k_(2)), h-|k = (h x k_(2))S^{-1}(k_(1)).
// Throws Error("ValidationFailure") naming the first violated item of the
// input; the result is a skew brace whose x and T_x equal the input's.
QBrace from_gv(const GVSkewBrace& gv);

// Rebuild the Hopf algebra via mu(h (x) k) = k_(2) x h^{k_(1)},
// S(h) = T_x(h_(1)).h_(2), then the brace with . as given and
// h-|k = (k_(2).h_(1)) h_(2) S^{-1}(k_(1)). All definition items plus the
// nine reconstruction laws (associativity and unit of both group-like
// products, distributivity of . and -| over both, the module law for each
// action through the rebuilt multiplication, the convolution identities of
// T_x, the two absorption rules, and h |x k = h_(2) x (k-|h_(3))^{h_(1)})
// are preconditions: Error("ValidationFailure") names the first violation.
QBrace from_linear_qcycle(const LinearQCycle& lq);

// The identity cocycle of a validated triple: target is the carrier itself,
// <- is the division map k h_(2) x T_x(h_(1)), pi = id. Validation failures
// on the way out throw Error("CocycleViolation") naming the item.
Cocycle cocycle_bridge(const GVSkewBrace& gv);

// Transport x' and T_x' back along pi. Throws Error("CocycleViolation")
// naming the first violated cocycle item; the result is re-validated and
// pi^{-1}(pi(k) <- h) must equal the division map of the result.
GVSkewBrace gv_from_cocycle(const Cocycle& c);

// ---- derived maps --------------------------------------------------------------

// (h (x) k) -> (k_(1) x h) S(k_(2)) and (h (x) k) -> (h x k_(2)) S^{-1}(k_(1)).
Matrix gv_dot(const GVSkewBrace& gv);
Matrix gv_dpu(const GVSkewBrace& gv);

// k^h = T_x(h_(2)) x k h_(1) and k_h = k h_(2) x T_x(h_(1)).
Matrix gv_exponent(const GVSkewBrace& gv);
Matrix gv_division(const GVSkewBrace& gv);

}  // namespace qbw
