#pragma once

#include "qbw/linalg.hpp"
#include "qbw/report.hpp"

#include <string>
#include <vector>

namespace qbw {

// Finite-dimensional coalgebra presented by structure constants.
// delta has shape dim^2 x dim; column j is the comultiplication of basis
// vector j, with row index a*dim + b standing for e_a (x) e_b. counit has
// shape 1 x dim. This column/kron order is part of the file-format contract.
struct Coalgebra {
  Matrix delta;
  Matrix counit;
  std::vector<std::string> labels;  // size dim, or empty for e0, e1, ...

  FieldRef field() const { return delta.field(); }
  int dim() const { return delta.cols(); }
  std::string label(int i) const;
  Scalar eps(int i) const { return counit.at(0, i); }
};

// Shape-checks the structure constants; axioms are checked by validate_coalgebra.
Coalgebra coalgebra(Matrix delta, Matrix counit, std::vector<std::string> labels = {});

// One-dimensional coalgebra: delta(e) = e (x) e, eps(e) = 1.
Coalgebra trivial_coalgebra(FieldRef f);

// Coassociativity and both counit laws, with the first failing basis index.
Report validate_coalgebra(const Coalgebra& c);

// Opposite coalgebra: delta^cop = tau o delta. Involutive.
Coalgebra cop(const Coalgebra& c);

// Tensor product coalgebra on A (x) B: delta = (id (x) tau (x) id) o (delta_A (x) delta_B),
// counit = eps_A (x) eps_B. Basis index i*dim(B) + j stands for a_i (x) b_j.
Coalgebra tensor_coalgebra(const Coalgebra& a, const Coalgebra& b);

// For f : X -> Y_1 (x) ... (x) Y_n, the i-th component is
// (eps^(i-1) (x) Y_i (x) eps^(n-i)) o f, one matrix of shape dim(Y_i) x cols(f)
// per target factor. When f is a coalgebra morphism these are the unique
// coalgebra morphisms with (f_1 (x) ... (x) f_n) o iterated-delta = f.
std::vector<Matrix> components(const Matrix& f, const std::vector<const Coalgebra*>& targets);

// Rebuilds (f_1 (x) ... (x) f_n) o iterated-delta from the components, for the
// uniqueness re-verification.
Matrix assemble_from_components(const std::vector<Matrix>& parts, const Coalgebra& src);

// True iff delta_dst o f = (f (x) f) o delta_src and eps_dst o f = eps_src, exactly.
bool is_coalgebra_map(const Matrix& f, const Coalgebra& src, const Coalgebra& dst);

// n-fold comultiplication iterate of v, a vector of length dim^(n+1).
// Computed left-nested; agreement with the right-nested order is asserted.
Vec sweedler_iterate(const Coalgebra& c, const Vec& v, int n);

// delta(v) = v (x) v and eps(v) = 1.
bool is_grouplike(const Coalgebra& c, const Vec& v);

}  // namespace qbw
