#pragma once

#include "qbw/coalgebra.hpp"

#include <optional>

namespace qbw {

// Bialgebra / Hopf algebra by structure constants. mu has shape dim x dim^2
// (column i*dim + j is the product of basis vectors i and j), unit is the
// coordinate vector of 1. The antipode is computed, never trusted from input;
// antipode_inv is cached when the antipode is bijective.
struct HopfAlgebra {
  Coalgebra coalg;
  Matrix mu;
  Vec unit;
  std::optional<Matrix> antipode;
  std::optional<Matrix> antipode_inv;

  FieldRef field() const { return coalg.field(); }
  int dim() const { return coalg.dim(); }
  const Matrix& S() const;
  const Matrix& S_inv() const;
};

// Shape-checks the structure constants; axioms are checked by the validators.
HopfAlgebra hopf(Coalgebra coalg, Matrix mu, Vec unit);

// Product of two coordinate vectors.
Vec hopf_mul(const HopfAlgebra& h, const Vec& x, const Vec& y);

// Associativity of an arbitrary multiplication matrix (dim x dim^2),
// basis-triple by basis-triple; on failure *where names the first bad triple.
bool is_associative(const Matrix& mu, std::string* where = nullptr);

// Two-sided unit for mu.
bool is_unit(const Matrix& mu, const Vec& unit, std::string* where = nullptr);

// Bialgebra axioms: associativity, unit, counit and comultiplication are
// algebra maps. Includes the coalgebra axioms of the carrier.
Report validate_bialgebra(const HopfAlgebra& h);

// Antipode as the convolution inverse of the identity, with both defining
// identities re-verified; nullopt when none exists.
std::optional<Matrix> compute_antipode(const HopfAlgebra& h);

// Fills h.antipode (and h.antipode_inv when bijective); false on no antipode.
bool ensure_antipode(HopfAlgebra& h);

// Full Hopf validation: bialgebra axioms, antipode existence, both
// convolution identities, and the anti(co)homomorphism properties of S.
Report validate_hopf(HopfAlgebra& h);

// Opposite multiplication; antipode becomes S^-1. Requires S bijective.
HopfAlgebra hopf_op(HopfAlgebra h);

// Opposite comultiplication; antipode becomes S^-1. Requires S bijective.
HopfAlgebra hopf_cop(HopfAlgebra h);

// Which side the acting algebra multiplies on in the module axiom:
// over_h      : (x . h) . k = x . (hk)
// over_h_op   : (x . h) . k = x . (kh)
enum class Variance { over_h, over_h_op };

// A candidate right module-coalgebra action x (x) h -> x . h.
// action has shape dim(carrier) x (dim(carrier) * dim(acting)); the
// coalgebra-map axiom is checked against carrier (x) acting^cop when
// cop_on_acting is set (the convention for the braiding-derived actions).
struct ActionCandidate {
  const HopfAlgebra* acting = nullptr;
  const Coalgebra* carrier = nullptr;
  Matrix action;
  Variance variance = Variance::over_h_op;
  bool cop_on_acting = true;
};

Report is_module_coalgebra(const ActionCandidate& a);

// Convolution algebra Hom(C, A) for an arbitrary comultiplication on C and
// multiplication on A; maps are dim(A) x dim(C) matrices.
struct ConvolutionAlgebra {
  Matrix delta;   // dim_C^2 x dim_C
  Matrix counit;  // 1 x dim_C
  Matrix mu;      // dim_A x dim_A^2
  Vec unit;       // length dim_A

  int dim_c() const { return delta.cols(); }
  int dim_a() const { return mu.rows(); }
};

ConvolutionAlgebra convolution_algebra(const HopfAlgebra& h);

// (f * g)(c) = mu(f(c_(1)) (x) g(c_(2))).
Matrix convolution(const ConvolutionAlgebra& ca, const Matrix& f, const Matrix& g);

// unit_A o eps_C, the two-sided unit of the convolution product.
Matrix convolution_unit(const ConvolutionAlgebra& ca);

// Inverse of f under convolution via its minimal polynomial: the Krylov
// sequence of convolution powers of f yields the first linear dependence;
// f is invertible iff the constant term is nonzero, and then the inverse is
// a polynomial in f. Both inverse identities are re-verified.
std::optional<Matrix> convolution_inverse(const ConvolutionAlgebra& ca, const Matrix& f);

}  // namespace qbw
