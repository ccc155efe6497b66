// Shared test fixtures: small coalgebras, Hopf algebras, and the symmetric
// group S3 as permutation machinery.
#pragma once

#include "qbw/hopf.hpp"

#include <array>
#include <string>
#include <vector>

inline qbw::Coalgebra grouplike_coalgebra(qbw::FieldRef f, int n) {
  qbw::Matrix delta(f, n * n, n), counit(f, 1, n);
  for (int j = 0; j < n; ++j) {
    delta.at(j * n + j, j) = f->one();
    counit.at(0, j) = f->one();
  }
  return qbw::coalgebra(std::move(delta), std::move(counit));
}

inline qbw::HopfAlgebra group_algebra_z2(qbw::FieldRef f) {
  qbw::Matrix mu(f, 2, 4);
  mu.at(0, 0) = f->one();
  mu.at(1, 1) = f->one();
  mu.at(1, 2) = f->one();
  mu.at(0, 3) = f->one();
  qbw::Vec unit = qbw::vec_zero(f, 2);
  unit[0] = f->one();
  return qbw::hopf(grouplike_coalgebra(f, 2), std::move(mu), std::move(unit));
}

// basis 1, x, g, gx with g^2 = 1, x^2 = 0, xg = -gx
inline qbw::HopfAlgebra sweedler4(qbw::FieldRef f) {
  qbw::Matrix delta(f, 16, 4), counit(f, 1, 4);
  const qbw::Scalar one = f->one();
  delta.at(0 * 4 + 0, 0) = one;
  delta.at(0 * 4 + 1, 1) = one;
  delta.at(1 * 4 + 2, 1) = one;
  delta.at(2 * 4 + 2, 2) = one;
  delta.at(2 * 4 + 3, 3) = one;
  delta.at(3 * 4 + 0, 3) = one;
  counit.at(0, 0) = one;
  counit.at(0, 2) = one;
  qbw::Matrix mu(f, 4, 16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          if (j + l >= 2) continue;
          qbw::Scalar c = (j * k) % 2 ? -one : one;
          mu.at(((i + k) % 2) * 2 + (j + l), (2 * i + j) * 4 + (2 * k + l)) = c;
        }
  qbw::Vec unit = qbw::vec_zero(f, 4);
  unit[0] = one;
  return qbw::hopf(qbw::coalgebra(std::move(delta), std::move(counit), {"1", "x", "g", "gx"}),
                   std::move(mu), std::move(unit));
}

// dual of the group algebra of Z/3: d_a d_b = delta_ab d_a,
// delta(d_a) = sum over b+c=a of d_b (x) d_c
inline qbw::HopfAlgebra dual_z3(qbw::FieldRef f) {
  const int n = 3;
  qbw::Matrix delta(f, n * n, n), counit(f, 1, n), mu(f, n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) delta.at(b * n + ((a - b + n) % n), a) = f->one();
    mu.at(a, a * n + a) = f->one();
  }
  counit.at(0, 0) = f->one();
  qbw::Vec unit(n, f->one());
  return qbw::hopf(qbw::coalgebra(std::move(delta), std::move(counit)), std::move(mu),
                   std::move(unit));
}

// bialgebra of the monoid {1, a} with a^2 = a: no antipode
inline qbw::HopfAlgebra idempotent_monoid(qbw::FieldRef f) {
  qbw::Matrix mu(f, 2, 4);
  mu.at(0, 0) = f->one();
  mu.at(1, 1) = f->one();
  mu.at(1, 2) = f->one();
  mu.at(1, 3) = f->one();
  qbw::Vec unit = qbw::vec_zero(f, 2);
  unit[0] = f->one();
  return qbw::hopf(grouplike_coalgebra(f, 2), std::move(mu), std::move(unit));
}

using Perm = std::array<int, 3>;

inline Perm pcompose(const Perm& a, const Perm& b) {  // (ab)(i) = a(b(i))
  return {a[b[0]], a[b[1]], a[b[2]]};
}

inline Perm pinverse(const Perm& a) {
  Perm r{};
  for (int i = 0; i < 3; ++i) r[a[i]] = i;
  return r;
}

inline std::vector<Perm> s3_elements() {
  return {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
}

inline int perm_index(const std::vector<Perm>& els, const Perm& p) {
  for (int i = 0; i < (int)els.size(); ++i)
    if (els[i] == p) return i;
  return -1;
}

inline qbw::HopfAlgebra group_algebra_s3(qbw::FieldRef f) {
  auto els = s3_elements();
  const int n = 6;
  qbw::Matrix mu(f, n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mu.at(perm_index(els, pcompose(els[i], els[j])), i * n + j) = f->one();
  qbw::Vec unit = qbw::vec_zero(f, n);
  unit[0] = f->one();
  return qbw::hopf(grouplike_coalgebra(f, n), std::move(mu), std::move(unit));
}
