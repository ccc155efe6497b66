// Exact scalar arithmetic over Q, prime fields F_p, and cyclotomic
// extensions Q(zeta_n) = Q[t]/Phi_n(t).  Fields are interned (pointer
// identity); scalars carry their field and compare by canonical form.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbw {

// Error codes travel in `code`; what() carries code + detail.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// Dense rational polynomials: coefficient vector, index = degree.
// Invariant after trim(): no trailing zero coefficients.
namespace polyq {
using Poly = std::vector<mpq_class>;

Poly trim(Poly p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
// Quotient and remainder with b != 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
// Exact division; throws Error("PolyDivision") on nonzero remainder.
Poly divexact(const Poly& a, const Poly& b);
Poly t_pow_minus_one(uint64_t n);  // t^n - 1
bool is_zero(const Poly& p);
}  // namespace polyq

// n-th cyclotomic polynomial (monic, integer coefficients), built by
// iterated exact division of t^n - 1 by Phi_d over proper divisors d | n.
polyq::Poly cyclotomic_polynomial(uint64_t n);

enum class FieldKind { rationals, prime, cyclotomic };

class Field;
using FieldRef = const Field*;

class Scalar {
 public:
  Scalar() = default;  // detached; only assignable

  FieldRef field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws DivisionByZero
  Scalar operator-() const;
  Scalar inv() const;  // throws DivisionByZero on 0
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  // this += a*b without temporaries where the representation allows.
  void addmul(const Scalar& a, const Scalar& b);

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const;

  // Rational content of a rationals-field scalar.
  const mpq_class& rat() const;

 private:
  friend class Field;
  FieldRef f_ = nullptr;
  mpq_class q_;                 // rationals
  uint64_t r_ = 0;              // prime residue in [0, p)
  std::vector<mpq_class> c_;    // cyclotomic coefficients, fixed size deg
  void check_same(const Scalar& o) const;
};

class Field {
 public:
  FieldKind kind;
  uint64_t p = 0;    // prime modulus (kind == prime)
  uint64_t n = 0;    // root-of-unity order (kind == cyclotomic)
  size_t deg = 1;    // extension degree over Q (phi(n) for cyclotomic)
  polyq::Poly phi;   // Phi_n (kind == cyclotomic)

  static FieldRef rationals();
  static FieldRef prime(uint64_t p);
  static FieldRef cyclotomic(uint64_t n);
  // "rationals" | "prime P" | "cyclotomic N"
  static FieldRef parse_spec(const std::string& s);
  std::string spec_string() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  // Rational embedding; in F_p the denominator must be invertible mod p.
  Scalar from_mpq(const mpq_class& q) const;
  // zeta^k in Q(zeta_n); throws on other kinds.
  Scalar zeta(long k = 1) const;

  // Scalar literals: "a/b" | "a mod p" | "c0 + c1*z + ... (zeta n)".
  Scalar parse(const std::string& literal) const;
  std::string to_string(const Scalar& s) const;

  uint64_t characteristic() const { return kind == FieldKind::prime ? p : 0; }

 private:
  Field() = default;
  std::vector<polyq::Poly> red_;  // t^(deg+k) mod Phi_n, k = 0 .. deg-2
  friend class Scalar;
};

}  // namespace qbw
