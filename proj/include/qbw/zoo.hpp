#pragma once

// Catalogue of concrete exact-arithmetic instances: Taft algebras with their
// scalar actions, duals of dihedral group algebras with the four brace
// structures, conjugation braces on group algebras, permutation racks, and
// flip solutions. Every instance is fully validated on construction.

#include <optional>
#include <string>
#include <vector>

#include "qbw/qbrace.hpp"

namespace qbw {

// A finite group by its multiplication table; mul[a * order + b] is the
// index of ab.
struct FiniteGroup {
  int order = 0;
  std::vector<std::string> names;
  std::vector<int> mul;
  std::vector<int> inv;
  int unit = 0;

  int at(int a, int b) const { return mul[a * order + b]; }
};

FiniteGroup cyclic_group(int n);
// Order 2n with presentation r^n = y^2 = yryr = 1; element r^i y^j sits at
// index j*n + i.
FiniteGroup dihedral_group(int n);
FiniteGroup symmetric_group_3();

// k[G] with every group element group-like, and its dual k^G with the
// pointwise product and the transported comultiplication
// Delta(d_a) = sum_b d_{ab} (x) d_{b^{-1}}.
HopfAlgebra group_algebra(FieldRef f, const FiniteGroup& g);
HopfAlgebra dual_group_algebra(FieldRef f, const FiniteGroup& g);

// Taft algebra of dimension n^2 over the n-th cyclotomic field: g^n = 1,
// x^n = 0, xg = zeta gx, g group-like, Delta(x) = 1 (x) x + x (x) g.
// Basis g^i x^j at index i*n + j.
HopfAlgebra taft_hopf(int n);

// The scalar actions on the Taft algebra,
//   (g^i x^j) .  (g^i' x^j') = zeta^{-i'j} g^i x^j   if j' = 0, else 0,
//   (g^i x^j) -| (g^i' x^j') = zeta^{+i'j} g^i x^j   if j' = 0, else 0.
// A valid q-brace for every n; the skew condition holds only for n = 2.
QBrace taft_qbrace(int n);

// Dual of k[D] for the dihedral group D of order 4m (rotation r of order
// 2m, central rotation r^m). All four structures have dot = dpu, and
// d_a . d_b = 0 unless b is central. With sigma the shift by r^m,
//   d_a . d_1 = d_a and d_a . d_{r^m} = 0                 if a does not split,
//   d_a . d_1 = (d_a + d_{sigma a})/2 and
//   d_a . d_{r^m} = (d_a - d_{sigma a})/2                 if a splits,
// where case 1 never splits, case 2 splits the reflections, case 3 the odd
// rotations r^i y^j with i odd, and case 4 those with i + j odd. Needs
// characteristic != 2 and m >= 2.
QBrace dual_dihedral_qbrace(FieldRef f, int m, int brace_case);

// Conjugation brace on k[G]: h . k = eps(k) h, and g -| h = hgh^{-1} on
// group elements.
QBrace conjugation_qbrace(FieldRef f, const FiniteGroup& g);

// The flip solution on any Hopf algebra: both actions trivial. Satisfies
// the skew condition exactly when the product is commutative.
QBrace trivial_qbrace(HopfAlgebra h);

// Permutation rack x <| y = x + 1 on n points, the conjugation rack
// x <| y = y^{-1}xy of a group, and the plain flip, each as a group-like
// coalgebra with its derived solution.
SolutionCandidate cyclic_rack_solution(FieldRef f, int n);
SolutionCandidate conjugation_rack_solution(FieldRef f, const FiniteGroup& g);
SolutionCandidate flip_solution(FieldRef f, int dim);

// A named catalogue entry. `kind` is "qbrace" or "solution"; braces carry
// their Hopf algebra and derived solution alongside.
struct ZooInstance {
  std::string name;
  std::string kind;
  std::optional<HopfAlgebra> hopf;
  std::optional<QBrace> brace;
  std::optional<SolutionCandidate> solution;
};

// Builds the instance named by e.g. "taft(3)", "dual_dihedral(2,4)",
// "group_conjugation(S3)" / "(D4)" / "(Z/5)", "rack(cyclic_3)",
// "rack(conj_s3)", "flip(4)", "trivial_qbrace(S3)",
// "trivial_qbrace(taft(2))". Throws Error("UnknownExample") for names
// outside the catalogue and Error("BadParams") for bad parameters.
ZooInstance zoo_instance(const std::string& spec);

// Canonical list of small instances, suitable as a test corpus.
std::vector<std::string> zoo_names();

}  // namespace qbw
