#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qbw/field.hpp"
#include "qbw/linalg.hpp"

using namespace qbw;

namespace {

// Independent oracle: Moebius-formula cyclotomic polynomial
// Phi_n = prod_{d|n} (t^{n/d} - 1)^{mu(d)}.
int moebius(uint64_t d) {
  int k = 0;
  for (uint64_t q = 2; q * q <= d; ++q) {
    if (d % q) continue;
    d /= q;
    ++k;
    if (d % q == 0) return 0;
  }
  if (d > 1) ++k;
  return (k % 2 == 0) ? 1 : -1;
}

polyq::Poly phi_moebius(uint64_t n) {
  polyq::Poly num{mpq_class(1)};
  polyq::Poly den{mpq_class(1)};
  for (uint64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    int mu = moebius(d);
    if (mu == 1) num = polyq::mul(num, polyq::t_pow_minus_one(n / d));
    if (mu == -1) den = polyq::mul(den, polyq::t_pow_minus_one(n / d));
  }
  return polyq::divexact(num, den);
}

std::vector<FieldRef> axiom_fields() {
  return {Field::rationals(), Field::prime(7), Field::prime(101),
          Field::cyclotomic(3), Field::cyclotomic(4), Field::cyclotomic(6)};
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
  FieldRef q = Field::rationals();
  CHECK(q->parse("1/2") + q->parse("1/3") == q->parse("5/6"));
  CHECK(q->parse("-2/4") == q->parse("-1/2"));
  CHECK((q->parse("3") * q->parse("1/3")).is_one());
  CHECK_THROWS_AS(q->zero().inv(), Error);
  CHECK_THROWS_AS(q->parse("1.5"), Error);
}

TEST_CASE("prime field arithmetic") {
  FieldRef f7 = Field::prime(7);
  CHECK(f7->parse("3 mod 7") + f7->parse("5 mod 7") == f7->parse("1 mod 7"));
  CHECK(f7->from_mpq(mpq_class(1, 2)) == f7->from_int(4));
  CHECK(f7->from_int(-1) == f7->from_int(6));
  CHECK_THROWS_AS(Field::prime(6), Error);
  CHECK_THROWS_AS(Field::prime(2)->from_mpq(mpq_class(1, 2)), Error);
  CHECK_THROWS_AS(f7->parse("3 mod 11"), Error);
  for (int a = 1; a < 7; ++a)
    CHECK((f7->from_int(a) * f7->from_int(a).inv()).is_one());
}

TEST_CASE("cyclotomic polynomial values and Moebius oracle") {
  CHECK(cyclotomic_polynomial(1) == polyq::Poly{mpq_class(-1), mpq_class(1)});
  CHECK(cyclotomic_polynomial(2) == polyq::Poly{mpq_class(1), mpq_class(1)});
  CHECK(cyclotomic_polynomial(4) == polyq::Poly{mpq_class(1), mpq_class(0), mpq_class(1)});
  CHECK(cyclotomic_polynomial(6) == polyq::Poly{mpq_class(1), mpq_class(-1), mpq_class(1)});
  for (uint64_t n = 1; n <= 30; ++n) CHECK(cyclotomic_polynomial(n) == phi_moebius(n));
}

TEST_CASE("cyclotomic field facts") {
  FieldRef c3 = Field::cyclotomic(3);
  FieldRef c4 = Field::cyclotomic(4);
  CHECK(c4->zeta() * c4->zeta() == c4->from_int(-1));
  // inv(1 + zeta_3) = -zeta_3, frozen from the extended-gcd oracle.
  Scalar one_plus_z = c3->one() + c3->zeta();
  CHECK(one_plus_z.inv() == -c3->zeta());
  CHECK((one_plus_z * -c3->zeta()).is_one());
  for (uint64_t n : {3ull, 4ull, 5ull, 6ull, 8ull, 12ull}) {
    FieldRef f = Field::cyclotomic(n);
    CHECK(f->zeta(static_cast<long>(n)).is_one());
    for (uint64_t m = 1; m < n; ++m) CHECK(!f->zeta(static_cast<long>(m)).is_one());
  }
}

TEST_CASE("field axioms on randomized triples") {
  for (FieldRef f : axiom_fields()) {
    std::mt19937_64 rng(0xF1E1Du);
    for (int iter = 0; iter < 10000; ++iter) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a + b == b + a);
      REQUIRE(a * b == b * a);
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a + (-a) == f->zero());
      if (!a.is_zero()) REQUIRE((a * a.inv()).is_one());
    }
  }
}

TEST_CASE("literal roundtrip is the identity") {
  for (FieldRef f : axiom_fields()) {
    std::mt19937_64 rng(0xB0B0u);
    for (int iter = 0; iter < 500; ++iter) {
      Scalar a = random_scalar(f, rng);
      CHECK(f->parse(a.to_string()) == a);
    }
  }
  // lenient cyclotomic inputs
  FieldRef c3 = Field::cyclotomic(3);
  CHECK(c3->parse("z") == c3->zeta());
  CHECK(c3->parse("-z") == -c3->zeta());
  CHECK(c3->parse("1/2") == c3->from_mpq(mpq_class(1, 2)));
  CHECK(c3->parse("2*z + 1 (zeta 3)") == c3->from_int(2) * c3->zeta() + c3->one());
  CHECK_THROWS_AS(c3->parse("1 (zeta 4)"), Error);
}

TEST_CASE("field spec parse and interning") {
  CHECK(Field::parse_spec("rationals") == Field::rationals());
  CHECK(Field::parse_spec("prime 7") == Field::prime(7));
  CHECK(Field::parse_spec("cyclotomic 3") == Field::cyclotomic(3));
  CHECK(Field::cyclotomic(3) == Field::cyclotomic(3));
  CHECK_THROWS_AS(Field::parse_spec("real"), Error);
  CHECK_THROWS_AS(Field::parse_spec("prime x"), Error);
  FieldRef f = Field::parse_spec("cyclotomic 3");
  CHECK(f->spec_string() == "cyclotomic 3");
}

TEST_CASE("field mismatch is an error") {
  Scalar a = Field::rationals()->one();
  Scalar b = Field::prime(7)->one();
  CHECK_THROWS_AS((void)(a + b), Error);
  CHECK_THROWS_AS((void)(a == b), Error);
}
