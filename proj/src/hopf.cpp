#include "qbw/hopf.hpp"

#include <atomic>
#include <string>
#include <utility>

namespace qbw {

namespace {

std::string triple_name(long long enc, int d) {
  const long long i = enc / ((long long)d * d), j = (enc / d) % d, k = enc % d;
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

std::string pair_name(long long enc, int d) {
  return "(" + std::to_string(enc / d) + "," + std::to_string(enc % d) + ")";
}

// atomically keep the smallest failing index seen
void record_min(std::atomic<long long>& slot, long long enc) {
  long long cur = slot.load(std::memory_order_relaxed);
  while ((cur < 0 || enc < cur) && !slot.compare_exchange_weak(cur, enc)) {
  }
}

Vec flatten(const Matrix& m) {
  Vec out;
  out.reserve((std::size_t)m.rows() * m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.push_back(m.at(r, c));
  return out;
}

}  // namespace

const Matrix& HopfAlgebra::S() const {
  if (!antipode) throw Error("NoAntipode", "antipode has not been computed");
  return *antipode;
}

const Matrix& HopfAlgebra::S_inv() const {
  if (!antipode_inv) throw Error("AntipodeNotBijective", "antipode inverse unavailable");
  return *antipode_inv;
}

HopfAlgebra hopf(Coalgebra coalg, Matrix mu, Vec unit) {
  const int d = coalg.dim();
  if (mu.rows() != d || mu.cols() != d * d)
    throw Error("ShapeMismatch", "mu must have shape dim x dim^2");
  if ((int)unit.size() != d)
    throw Error("ShapeMismatch", "unit must have length dim");
  if (mu.field() != coalg.field())
    throw Error("FieldMismatch", "mu and coalgebra over different fields");
  for (const auto& s : unit)
    if (s.field() != coalg.field())
      throw Error("FieldMismatch", "unit and coalgebra over different fields");
  return HopfAlgebra{std::move(coalg), std::move(mu), std::move(unit), {}, {}};
}

Vec hopf_mul(const HopfAlgebra& h, const Vec& x, const Vec& y) {
  return h.mu.apply(vec_kron(x, y));
}

bool is_associative(const Matrix& mu, std::string* where) {
  const int d = mu.rows();
  if (mu.cols() != d * d) throw Error("ShapeMismatch", "mu must have shape dim x dim^2");
  const auto mc = sparse_columns(mu);
  std::atomic<long long> bad{-1};
  parallel_for(d, [&](int i) {
    SparseAccum acc(mu.field(), d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        for (const auto& [a, ca] : mc[i * d + j])
          for (const auto& [r, cr] : mc[a * d + k]) acc.addmul(r, ca, cr);
        for (const auto& [b, cb] : mc[j * d + k])
          for (const auto& [r, cr] : mc[i * d + b]) acc.addmul(r, -cb, cr);
        if (!acc.take().empty())
          record_min(bad, ((long long)i * d + j) * d + k);
      }
  });
  if (bad >= 0 && where) *where = "first failure at basis triple " + triple_name(bad, d);
  return bad < 0;
}

bool is_unit(const Matrix& mu, const Vec& unit, std::string* where) {
  const int d = mu.rows();
  if (mu.cols() != d * d || (int)unit.size() != d)
    throw Error("ShapeMismatch", "unit/mu shapes disagree");
  const auto mc = sparse_columns(mu);
  const SparseVec su = sparsify(unit);
  SparseAccum acc(mu.field(), d);
  for (int j = 0; j < d; ++j) {
    for (int side = 0; side < 2; ++side) {
      for (const auto& [a, ca] : su) {
        const int col = side == 0 ? a * d + j : j * d + a;
        for (const auto& [r, cr] : mc[col]) acc.addmul(r, ca, cr);
      }
      acc.add(j, -mu.field()->one());
      if (!acc.take().empty()) {
        if (where)
          *where = std::string(side == 0 ? "left" : "right") +
                   " unit fails at basis " + std::to_string(j);
        return false;
      }
    }
  }
  return true;
}

Report validate_bialgebra(const HopfAlgebra& h) {
  Report rep = validate_coalgebra(h.coalg);
  const int d = h.dim();
  const FieldRef f = h.field();
  const auto mc = sparse_columns(h.mu);
  const auto dc = sparse_columns(h.coalg.delta);

  std::string where;
  bool assoc = is_associative(h.mu, &where);
  rep.add("associativity", assoc, assoc ? "" : where);
  bool unit_ok = is_unit(h.mu, h.unit, &where);
  rep.add("unit", unit_ok, unit_ok ? "" : where);

  // eps(e_i e_j) = eps(e_i) eps(e_j)
  std::atomic<long long> bad_eps{-1};
  parallel_for(d, [&](int i) {
    for (int j = 0; j < d; ++j) {
      Scalar v = f->zero();
      for (const auto& [r, c] : mc[i * d + j]) v += h.coalg.eps(r) * c;
      if (!(v == h.coalg.eps(i) * h.coalg.eps(j)))
        record_min(bad_eps, (long long)i * d + j);
    }
  });
  rep.add("counit_algebra_map", bad_eps < 0,
          bad_eps < 0 ? "" : "first failure at basis pair " + pair_name(bad_eps, d));
  Scalar eu = f->zero();
  for (int i = 0; i < d; ++i) eu += h.coalg.eps(i) * h.unit[i];
  rep.add("counit_of_unit", eu.is_one());

  // delta(e_i e_j) = delta(e_i) delta(e_j) in the tensor-square algebra
  std::atomic<long long> bad_delta{-1};
  parallel_for(d, [&](int i) {
    SparseAccum acc(f, d * d);
    for (int j = 0; j < d; ++j) {
      for (const auto& [a, ca] : mc[i * d + j])
        for (const auto& [pq, cd] : dc[a]) acc.addmul(pq, ca, cd);
      for (const auto& [ab, c1] : dc[i]) {
        const int a = ab / d, b = ab % d;
        for (const auto& [cd2, c2] : dc[j]) {
          const int cc = cd2 / d, dd = cd2 % d;
          const Scalar c12 = c1 * c2;
          for (const auto& [p, cp] : mc[a * d + cc]) {
            const Scalar cc12 = c12 * cp;
            for (const auto& [q, cq] : mc[b * d + dd]) acc.addmul(p * d + q, -cc12, cq);
          }
        }
      }
      if (!acc.take().empty()) record_min(bad_delta, (long long)i * d + j);
    }
  });
  rep.add("delta_algebra_map", bad_delta < 0,
          bad_delta < 0 ? "" : "first failure at basis pair " + pair_name(bad_delta, d));

  Vec du = h.coalg.delta.apply(h.unit);
  Vec uu = vec_kron(h.unit, h.unit);
  bool dunit = true;
  for (std::size_t i = 0; i < du.size(); ++i)
    if (!(du[i] == uu[i])) {
      dunit = false;
      break;
    }
  rep.add("delta_of_unit", dunit);
  return rep;
}

ConvolutionAlgebra convolution_algebra(const HopfAlgebra& h) {
  return ConvolutionAlgebra{h.coalg.delta, h.coalg.counit, h.mu, h.unit};
}

Matrix convolution(const ConvolutionAlgebra& ca, const Matrix& f, const Matrix& g) {
  const int dc = ca.dim_c(), da = ca.dim_a();
  if (f.rows() != da || f.cols() != dc || g.rows() != da || g.cols() != dc)
    throw Error("ShapeMismatch", "convolution factors must map C to A");
  const auto dcols = sparse_columns(ca.delta);
  const auto fcols = sparse_columns(f);
  const auto gcols = sparse_columns(g);
  const auto mcols = sparse_columns(ca.mu);
  Matrix out(f.field(), da, dc);
  SparseAccum acc(f.field(), da);
  for (int j = 0; j < dc; ++j) {
    for (const auto& [ik, c] : dcols[j]) {
      const int i = ik / dc, k = ik % dc;
      for (const auto& [a, cfa] : fcols[i]) {
        const Scalar cf = c * cfa;
        for (const auto& [b, cgb] : gcols[k]) {
          const Scalar cfg = cf * cgb;
          for (const auto& [r, cr] : mcols[a * da + b]) acc.addmul(r, cfg, cr);
        }
      }
    }
    for (const auto& [r, v] : acc.take()) out.at(r, j) = v;
  }
  return out;
}

Matrix convolution_unit(const ConvolutionAlgebra& ca) {
  Matrix out(ca.mu.field(), ca.dim_a(), ca.dim_c());
  for (int r = 0; r < ca.dim_a(); ++r)
    for (int j = 0; j < ca.dim_c(); ++j) out.at(r, j) = ca.unit[r] * ca.counit.at(0, j);
  return out;
}

std::optional<Matrix> convolution_inverse(const ConvolutionAlgebra& ca, const Matrix& f) {
  const int da = ca.dim_a(), dc = ca.dim_c();
  if (f.rows() != da || f.cols() != dc)
    throw Error("ShapeMismatch", "convolution inverse argument must map C to A");
  const FieldRef fld = f.field();
  const Matrix e = convolution_unit(ca);
  std::vector<Matrix> powers{e};
  std::vector<Vec> rows, exprs;
  std::vector<int> pivots;
  const int bound = da * dc + 1;
  for (int m = 0; m <= bound; ++m) {
    Vec v = flatten(powers[(std::size_t)m]);
    Vec express = vec_zero(fld, m + 1);
    express[m] = fld->one();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Scalar factor = v[pivots[r]];
      if (factor.is_zero()) continue;
      vec_axpy(v, -factor, rows[r]);
      for (std::size_t k = 0; k < exprs[r].size(); ++k) express[k] -= factor * exprs[r][k];
    }
    int pivot = -1;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) {
        pivot = (int)i;
        break;
      }
    if (pivot < 0) {
      // minimal polynomial found; invertible iff nonzero constant term
      if (express[0].is_zero()) return std::nullopt;
      Matrix g(fld, da, dc);
      const Scalar scale = -express[0].inv();
      for (int k = 1; k <= m; ++k)
        g = g + powers[(std::size_t)k - 1].scaled(scale * express[k]);
      if (!(convolution(ca, f, g) == e) || !(convolution(ca, g, f) == e))
        throw Error("InternalError", "convolution inverse failed re-verification");
      return g;
    }
    const Scalar pv = v[pivot].inv();
    for (auto& s : v) s = s * pv;
    for (auto& s : express) s = s * pv;
    rows.push_back(std::move(v));
    exprs.push_back(std::move(express));
    pivots.push_back(pivot);
    powers.push_back(convolution(ca, powers.back(), f));
  }
  throw Error("InternalError", "convolution powers produced no linear dependence");
}

std::optional<Matrix> compute_antipode(const HopfAlgebra& h) {
  return convolution_inverse(convolution_algebra(h), Matrix::identity(h.field(), h.dim()));
}

bool ensure_antipode(HopfAlgebra& h) {
  if (h.antipode) return true;
  auto s = compute_antipode(h);
  if (!s) return false;
  auto inv = invert(*s);
  h.antipode = std::move(*s);
  if (inv.inverse) h.antipode_inv = std::move(*inv.inverse);
  return true;
}

Report validate_hopf(HopfAlgebra& h) {
  Report rep = validate_bialgebra(h);
  const bool have = ensure_antipode(h);
  rep.add("antipode_exists", have, have ? "" : "identity has no convolution inverse");
  if (!have) return rep;
  const int d = h.dim();
  const auto ca = convolution_algebra(h);
  const Matrix id = Matrix::identity(h.field(), d);
  const Matrix e = convolution_unit(ca);
  rep.add("antipode_left_identity", convolution(ca, h.S(), id) == e);
  rep.add("antipode_right_identity", convolution(ca, id, h.S()) == e);

  // S(e_i e_j) = S(e_j) S(e_i)
  const auto mc = sparse_columns(h.mu);
  const auto scols = sparse_columns(h.S());
  std::atomic<long long> bad{-1};
  parallel_for(d, [&](int i) {
    SparseAccum acc(h.field(), d);
    for (int j = 0; j < d; ++j) {
      for (const auto& [a, ca2] : mc[i * d + j])
        for (const auto& [r, cr] : scols[a]) acc.addmul(r, ca2, cr);
      for (const auto& [a, sa] : scols[j])
        for (const auto& [b, sb] : scols[i]) {
          const Scalar sab = sa * sb;
          for (const auto& [r, cr] : mc[a * d + b]) acc.addmul(r, -sab, cr);
        }
      if (!acc.take().empty()) record_min(bad, (long long)i * d + j);
    }
  });
  rep.add("antipode_antihom_mu", bad < 0,
          bad < 0 ? "" : "first failure at basis pair " + pair_name(bad, d));
  rep.add("antipode_antihom_delta", is_coalgebra_map(h.S(), h.coalg, cop(h.coalg)));
  rep.add("antipode_of_unit", h.S().apply(h.unit) == h.unit);
  rep.add("antipode_bijective", (bool)h.antipode_inv);
  return rep;
}

HopfAlgebra hopf_op(HopfAlgebra h) {
  if (!ensure_antipode(h) || !h.antipode_inv)
    throw Error("AntipodeNotBijective", "opposite Hopf algebra needs a bijective antipode");
  const int d = h.dim();
  Matrix mu_op(h.field(), d, d * d);
  const auto mc = sparse_columns(h.mu);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (const auto& [r, c] : mc[j * d + i]) mu_op.at(r, i * d + j) = c;
  HopfAlgebra out = hopf(h.coalg, std::move(mu_op), h.unit);
  out.antipode = h.antipode_inv;
  out.antipode_inv = h.antipode;
  return out;
}

HopfAlgebra hopf_cop(HopfAlgebra h) {
  if (!ensure_antipode(h) || !h.antipode_inv)
    throw Error("AntipodeNotBijective", "co-opposite Hopf algebra needs a bijective antipode");
  HopfAlgebra out = hopf(cop(h.coalg), h.mu, h.unit);
  out.antipode = h.antipode_inv;
  out.antipode_inv = h.antipode;
  return out;
}

Report is_module_coalgebra(const ActionCandidate& a) {
  Report rep;
  const HopfAlgebra& hh = *a.acting;
  const Coalgebra& xx = *a.carrier;
  const int dx = xx.dim(), dh = hh.dim();
  if (a.action.rows() != dx || a.action.cols() != dx * dh)
    throw Error("ShapeMismatch", "action must have shape dim(X) x dim(X)dim(H)");
  const auto acols = sparse_columns(a.action);
  const auto mc = sparse_columns(hh.mu);
  const FieldRef f = xx.field();

  // (x . h) . k = x . (hk) for over_h, x . (kh) for over_h_op
  std::atomic<long long> bad{-1};
  parallel_for(dx, [&](int i) {
    SparseAccum acc(f, dx);
    for (int j = 0; j < dh; ++j)
      for (int k = 0; k < dh; ++k) {
        for (const auto& [y, cy] : acols[i * dh + j])
          for (const auto& [z, cz] : acols[y * dh + k]) acc.addmul(z, cy, cz);
        const int mcol = a.variance == Variance::over_h ? j * dh + k : k * dh + j;
        for (const auto& [m, cm] : mc[mcol])
          for (const auto& [z, cz] : acols[i * dh + m]) acc.addmul(z, -cm, cz);
        if (!acc.take().empty()) record_min(bad, ((long long)i * dh + j) * dh + k);
      }
  });
  rep.add("action_axiom", bad < 0,
          bad < 0 ? "" : "first failure at basis triple " + triple_name(bad, dh));

  // x . 1 = x
  const SparseVec su = sparsify(hh.unit);
  SparseAccum acc(f, dx);
  bool unit_ok = true;
  for (int i = 0; i < dx && unit_ok; ++i) {
    for (const auto& [u, cu] : su)
      for (const auto& [z, cz] : acols[i * dh + u]) acc.addmul(z, cu, cz);
    acc.add(i, -f->one());
    unit_ok = acc.take().empty();
  }
  rep.add("unit_acts_trivially", unit_ok);

  const Coalgebra src =
      tensor_coalgebra(xx, a.cop_on_acting ? cop(hh.coalg) : hh.coalg);
  rep.add("coalgebra_map", is_coalgebra_map(a.action, src, xx));
  return rep;
}

}  // namespace qbw
