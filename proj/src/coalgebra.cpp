#include "qbw/coalgebra.hpp"

#include "qbw/terms.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace qbw {

namespace {

using detail::Terms;
using detail::fold_terms;
using detail::terms_equal;

std::int64_t checked_pow(int base, int exp, std::int64_t cap) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > cap)
      throw Error("TooLarge", "tensor power dimension exceeds supported size");
  }
  return v;
}

}  // namespace

std::string Coalgebra::label(int i) const {
  if (i >= 0 && i < (int)labels.size() && !labels[i].empty()) return labels[i];
  return "e" + std::to_string(i);
}

Coalgebra coalgebra(Matrix delta, Matrix counit, std::vector<std::string> labels) {
  const int d = delta.cols();
  if (d <= 0) throw Error("ShapeMismatch", "coalgebra dimension must be positive");
  if (delta.rows() != d * d)
    throw Error("ShapeMismatch", "delta must have dim^2 rows");
  if (counit.rows() != 1 || counit.cols() != d)
    throw Error("ShapeMismatch", "counit must be a single row of length dim");
  if (delta.field() != counit.field())
    throw Error("FieldMismatch", "delta and counit over different fields");
  if (!labels.empty() && (int)labels.size() != d)
    throw Error("ShapeMismatch", "labels must be empty or one per basis vector");
  return Coalgebra{std::move(delta), std::move(counit), std::move(labels)};
}

Coalgebra trivial_coalgebra(FieldRef f) {
  Matrix delta(f, 1, 1), counit(f, 1, 1);
  delta.at(0, 0) = f->one();
  counit.at(0, 0) = f->one();
  return Coalgebra{std::move(delta), std::move(counit), {"1"}};
}

Report validate_coalgebra(const Coalgebra& c) {
  Report rep;
  const int d = c.dim();
  const auto dc = sparse_columns(c.delta);
  const Scalar one = c.field()->one();
  int bad_coassoc = -1, bad_left = -1, bad_right = -1;
  for (int j = 0; j < d; ++j) {
    Terms lhs, rhs;
    Vec lunit = vec_zero(c.field(), d), runit = vec_zero(c.field(), d);
    for (const auto& [ik, s] : dc[j]) {
      const int i = ik / d, k = ik % d;
      if (bad_coassoc < 0) {
        for (const auto& [ab, s2] : dc[i])
          lhs.emplace_back((std::int64_t)ab * d + k, s * s2);
        for (const auto& [ab, s2] : dc[k])
          rhs.emplace_back((std::int64_t)i * d * d + ab, s * s2);
      }
      lunit[k] += s * c.eps(i);
      runit[i] += s * c.eps(k);
    }
    if (bad_coassoc < 0 && !terms_equal(std::move(lhs), std::move(rhs)))
      bad_coassoc = j;
    lunit[j] -= one;
    runit[j] -= one;
    if (bad_left < 0 && !vec_is_zero(lunit)) bad_left = j;
    if (bad_right < 0 && !vec_is_zero(runit)) bad_right = j;
  }
  auto where = [&](int j) { return "first failure at basis " + std::to_string(j) + " (" + c.label(j) + ")"; };
  rep.add("coassociativity", bad_coassoc < 0, bad_coassoc < 0 ? "" : where(bad_coassoc));
  rep.add("counit_left", bad_left < 0, bad_left < 0 ? "" : where(bad_left));
  rep.add("counit_right", bad_right < 0, bad_right < 0 ? "" : where(bad_right));
  return rep;
}

Coalgebra cop(const Coalgebra& c) {
  const int d = c.dim();
  Matrix nd(c.field(), d * d, d);
  const auto dc = sparse_columns(c.delta);
  for (int j = 0; j < d; ++j)
    for (const auto& [ik, s] : dc[j]) nd.at((ik % d) * d + ik / d, j) = s;
  return Coalgebra{std::move(nd), c.counit, c.labels};
}

Coalgebra tensor_coalgebra(const Coalgebra& a, const Coalgebra& b) {
  if (a.field() != b.field())
    throw Error("FieldMismatch", "tensor factors over different fields");
  const int da = a.dim(), db = b.dim(), d = da * db;
  if (d > 128)
    throw Error("TooLarge", "tensor coalgebra of dimension > 128 is not materialized");
  Matrix nd(a.field(), d * d, d);
  Matrix ne(a.field(), 1, d);
  const auto dca = sparse_columns(a.delta);
  const auto dcb = sparse_columns(b.delta);
  std::vector<std::string> labels(d);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) {
      const int col = i * db + j;
      labels[col] = a.label(i) + "(x)" + b.label(j);
      ne.at(0, col) = a.eps(i) * b.eps(j);
      for (const auto& [aa, sa] : dca[i]) {
        const int a1 = aa / da, a2 = aa % da;
        for (const auto& [bb, sb] : dcb[j]) {
          const int b1 = bb / db, b2 = bb % db;
          nd.at((a1 * db + b1) * d + (a2 * db + b2), col) = sa * sb;
        }
      }
    }
  return Coalgebra{std::move(nd), std::move(ne), std::move(labels)};
}

std::vector<Matrix> components(const Matrix& f, const std::vector<const Coalgebra*>& targets) {
  const int n = (int)targets.size();
  if (n == 0) throw Error("ShapeMismatch", "need at least one target factor");
  std::int64_t prod = 1;
  for (const auto* t : targets) prod *= t->dim();
  if (prod != f.rows())
    throw Error("ShapeMismatch", "map rows do not match the product of target dimensions");
  std::vector<Matrix> parts;
  parts.reserve(n);
  for (const auto* t : targets) parts.emplace_back(f.field(), t->dim(), f.cols());
  std::vector<int> digits(n);
  std::vector<Scalar> epsv(n);
  const auto fcols = sparse_columns(f);
  for (int col = 0; col < f.cols(); ++col) {
    for (const auto& [row, s] : fcols[col]) {
      int rest = row;
      for (int i = n - 1; i >= 0; --i) {
        digits[i] = rest % targets[i]->dim();
        rest /= targets[i]->dim();
        epsv[i] = targets[i]->eps(digits[i]);
      }
      for (int i = 0; i < n; ++i) {
        Scalar w = s;
        for (int j = 0; j < n && !w.is_zero(); ++j)
          if (j != i) w = w * epsv[j];
        if (!w.is_zero()) parts[i].at(digits[i], col) += w;
      }
    }
  }
  return parts;
}

Matrix assemble_from_components(const std::vector<Matrix>& parts, const Coalgebra& src) {
  const int n = (int)parts.size();
  if (n == 0) throw Error("ShapeMismatch", "need at least one component");
  const int d = src.dim();
  std::int64_t rows = 1;
  for (const auto& p : parts) {
    if (p.cols() != d) throw Error("ShapeMismatch", "component columns must match source dimension");
    rows *= p.rows();
  }
  if (rows > (1 << 22)) throw Error("TooLarge", "assembled map exceeds supported size");
  const auto dc = sparse_columns(src.delta);
  std::vector<std::vector<SparseVec>> pcols;
  pcols.reserve(n);
  for (const auto& p : parts) pcols.push_back(sparse_columns(p));
  Matrix out(src.field(), (int)rows, d);
  for (int j = 0; j < d; ++j) {
    // terms of the (n-1)-fold comultiplication iterate of basis j
    Terms cur{{j, src.field()->one()}};
    std::int64_t sz = d;
    for (int round = 1; round < n; ++round) {
      Terms next;
      for (const auto& [idx, s] : cur) {
        const int first = (int)(idx / (sz / d));
        const std::int64_t rest = idx % (sz / d);
        for (const auto& [ab, s2] : dc[first]) {
          const std::int64_t a1 = ab / d, a2 = ab % d;
          next.emplace_back(a1 * sz + a2 * (sz / d) + rest, s * s2);
        }
      }
      cur = std::move(next);
      sz *= d;
    }
    fold_terms(cur);
    // push each term through the component maps and kron the results
    for (const auto& [idx, s] : cur) {
      std::vector<int> digits(n);
      std::int64_t rest = idx;
      for (int i = n - 1; i >= 0; --i) {
        digits[i] = (int)(rest % d);
        rest /= d;
      }
      Terms acc{{0, s}};
      for (int i = 0; i < n; ++i) {
        Terms next;
        for (const auto& [pos, c] : acc)
          for (const auto& [r, cr] : pcols[i][digits[i]])
            next.emplace_back(pos * parts[i].rows() + r, c * cr);
        acc = std::move(next);
      }
      for (const auto& [pos, c] : acc) out.at((int)pos, j) += c;
    }
  }
  return out;
}

bool is_coalgebra_map(const Matrix& f, const Coalgebra& src, const Coalgebra& dst) {
  if (f.rows() != dst.dim() || f.cols() != src.dim())
    throw Error("ShapeMismatch", "map shape does not match source/target dimensions");
  if (f.field() != src.field() || f.field() != dst.field())
    throw Error("FieldMismatch", "map and coalgebras over different fields");
  if (!(dst.counit * f == src.counit)) return false;
  const int sd = src.dim(), dd = dst.dim();
  const auto fcols = sparse_columns(f);
  const auto dsrc = sparse_columns(src.delta);
  const auto ddst = sparse_columns(dst.delta);
  SparseAccum acc(f.field(), dd * dd);
  for (int j = 0; j < sd; ++j) {
    for (const auto& [a, ca] : fcols[j])
      for (const auto& [idx, cd] : ddst[a]) acc.addmul(idx, ca, cd);
    for (const auto& [ik, c] : dsrc[j]) {
      const int i = ik / sd, k = ik % sd;
      for (const auto& [a, ca] : fcols[i]) {
        const Scalar cca = c * ca;
        for (const auto& [b, cb] : fcols[k]) acc.addmul(a * dd + b, -cca, cb);
      }
    }
    if (!acc.take().empty()) return false;
  }
  return true;
}

Vec sweedler_iterate(const Coalgebra& c, const Vec& v, int n) {
  const int d = c.dim();
  if ((int)v.size() != d) throw Error("ShapeMismatch", "vector length must match dimension");
  if (n < 0) throw Error("BadArgument", "iterate count must be nonnegative");
  const std::int64_t out_sz = checked_pow(d, n + 1, 1 << 22);
  const auto dc = sparse_columns(c.delta);
  Terms left, right;
  for (int i = 0; i < d; ++i)
    if (!v[i].is_zero()) left.emplace_back(i, v[i]);
  right = left;
  std::int64_t sz = d;
  for (int round = 0; round < n; ++round) {
    Terms nl, nr;
    for (const auto& [idx, s] : left) {
      const int first = (int)(idx / (sz / d));
      const std::int64_t rest = idx % (sz / d);
      for (const auto& [ab, s2] : dc[first]) {
        const std::int64_t a1 = ab / d, a2 = ab % d;
        nl.emplace_back(a1 * sz + a2 * (sz / d) + rest, s * s2);
      }
    }
    for (const auto& [idx, s] : right) {
      const int last = (int)(idx % d);
      const std::int64_t pre = idx / d;
      for (const auto& [ab, s2] : dc[last])
        nr.emplace_back(pre * d * d + ab, s * s2);
    }
    left = std::move(nl);
    right = std::move(nr);
    sz *= d;
  }
  fold_terms(left);
  fold_terms(right);
  if (left != right)
    throw Error("NotCoassociative", "nested comultiplication iterates disagree");
  Vec out = vec_zero(c.field(), (int)out_sz);
  for (const auto& [idx, s] : left) out[(std::size_t)idx] = s;
  return out;
}

bool is_grouplike(const Coalgebra& c, const Vec& v) {
  if ((int)v.size() != c.dim()) throw Error("ShapeMismatch", "vector length must match dimension");
  Scalar e = c.field()->zero();
  for (int i = 0; i < c.dim(); ++i) e += c.eps(i) * v[i];
  if (!e.is_one()) return false;
  Vec dv = c.delta.apply(v);
  Vec vv = vec_kron(v, v);
  for (std::size_t i = 0; i < dv.size(); ++i)
    if (!(dv[i] == vv[i])) return false;
  return true;
}

}  // namespace qbw
