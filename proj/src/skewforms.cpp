#include "qbw/skewforms.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qbw {

namespace {

using Cols = std::vector<SparseVec>;

Matrix vec_column(FieldRef f, const Vec& v) {
  Matrix m(f, static_cast<int>(v.size()), 1);
  for (int i = 0; i < static_cast<int>(v.size()); ++i) m.at(i, 0) = v[i];
  return m;
}

std::string first_diff(const Matrix& a, const Matrix& b) {
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i)
      if (a.at(i, j) != b.at(i, j))
        return "entry (" + std::to_string(i) + ", " + std::to_string(j) + "): " +
               a.at(i, j).to_string() + " vs " + b.at(i, j).to_string();
  return "";
}

void add_eq(Report& r, const std::string& name, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error("InternalError", name + ": comparing shapes " + std::to_string(a.rows()) + "x" +
                                     std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                     "x" + std::to_string(b.cols()));
  const bool ok = a == b;
  r.add(name, ok, ok ? "" : first_diff(a, b));
}

std::string fail_text(const Report& r) {
  for (const auto& it : r.items)
    if (!it.pass) return it.detail.empty() ? it.name : it.name + ": " + it.detail;
  return "";
}

// acc += c * op(va (x) vb); op columns are indexed ia * dsecond + ib.
void bilinear_into(SparseAccum& acc, const Cols& op, int dsecond, const SparseVec& va,
                   const SparseVec& vb, const Scalar& c) {
  for (const auto& [ia, ca] : va) {
    Scalar cca = c * ca;
    for (const auto& [ib, cb] : vb) acc.axpy(cca * cb, op[ia * dsecond + ib]);
  }
}

SparseVec apply_bilinear(FieldRef f, int dim, const Cols& op, int dsecond, const SparseVec& va,
                         const SparseVec& vb) {
  SparseAccum acc(f, dim);
  bilinear_into(acc, op, dsecond, va, vb, f->from_int(1));
  return acc.take();
}

void tensor_into(SparseAccum& acc, const SparseVec& va, const SparseVec& vb, int dimb,
                 const Scalar& c) {
  for (const auto& [ia, ca] : va) {
    Scalar cca = c * ca;
    for (const auto& [ib, cb] : vb) acc.add(ia * dimb + ib, cca * cb);
  }
}

void write_column(Matrix& m, int col, const SparseVec& v) {
  for (const auto& [i, c] : v) m.at(i, col) = c;
}

void untestable(Report& r, const std::vector<std::string>& names, const std::string& why) {
  for (const auto& n : names) r.add(n, false, "untestable: " + why);
}

// Column ((k * dcar) + l) * dim(hc) + h of the result is
//   sum over delta(e_h) of outer(actk[k (x) h_x] (x) actl[l (x) h_y])
// with (h_x, h_y) = (h_(2), h_(1)) when k_gets_second, else (h_(1), h_(2)).
Matrix pairwise_distributor(FieldRef f, int dout, int dcar, const Coalgebra& hc, const Cols& outer,
                            int douter2, const Cols& actk, const Cols& actl, bool k_gets_second) {
  const int dh = hc.dim();
  Matrix out(f, dout, dcar * dcar * dh);
  Cols dcols = sparse_columns(hc.delta);
  SparseAccum acc(f, dout);
  for (int k = 0; k < dcar; ++k)
    for (int l = 0; l < dcar; ++l)
      for (int h = 0; h < dh; ++h) {
        for (const auto& [idx, cf] : dcols[h]) {
          const int i1 = idx / dh, i2 = idx % dh;
          const SparseVec& a = actk[k * dh + (k_gets_second ? i2 : i1)];
          const SparseVec& b = actl[l * dh + (k_gets_second ? i1 : i2)];
          bilinear_into(acc, outer, douter2, a, b, cf);
        }
        write_column(out, (k * dcar + l) * dh + h, acc.take());
      }
  return out;
}

// Everything derivable from a linear q-cycle tuple once the early items hold.
struct LqDerived {
  Matrix Gbar;
  Matrix gp;  // exponent h^k
  Matrix mu;
  Matrix S, S_inv;
  Matrix dpu;
  bool have_gp = false, have_mu = false, have_s = false, have_dpu = false;
};

Report lq_validate_impl(const LinearQCycle& lq, LqDerived* out) {
  FieldRef f = lq.field();
  const int d = lq.dim();
  if (lq.times.rows() != d || lq.times.cols() != d * d || lq.dot.rows() != d ||
      lq.dot.cols() != d * d)
    throw Error("ShapeMismatch", "binary operations must be dim x dim^2");
  if (lq.T_times.rows() != d || lq.T_times.cols() != d)
    throw Error("ShapeMismatch", "T_x must be dim x dim");
  if (static_cast<int>(lq.one.size()) != d)
    throw Error("ShapeMismatch", "unit vector must have length dim");

  Report r;
  const Coalgebra& c = lq.coalg;
  {
    Report cv = validate_coalgebra(c);
    r.add("coalgebra", cv.ok(), fail_text(cv));
    if (!cv.ok()) {
      untestable(r,
                 {"one_grouplike", "dot_coalgebra_map", "dot_regular", "product_coalgebra_map",
                  "times_associative", "times_unit", "antipode_antiautomorphism",
                  "distributive_over_dot", "dot_of_times", "t_convolution",
                  "division_coalgebra_map", "one_dot_absorbs"},
                 "carrier is not a coalgebra");
      return r;
    }
  }
  r.add("one_grouplike", is_grouplike(c, lq.one));

  Coalgebra HHcop = tensor_coalgebra(c, cop(c));
  Coalgebra HH = tensor_coalgebra(c, c);
  Matrix I = Matrix::identity(f, d);
  Matrix flipM = flip_operator(c);
  Matrix one_col = vec_column(f, lq.one);
  Matrix unit_eps = one_col * c.counit;

  r.add("dot_coalgebra_map", is_coalgebra_map(lq.dot, HHcop, c));

  LqDerived dv;
  dv.Gbar = sweedler_right_op(c, lq.dot, 1);
  auto ginv = invert(dv.Gbar);
  r.add("dot_regular", ginv.inverse.has_value(),
        ginv.inverse ? "" : "translation operator has rank " + std::to_string(ginv.rank));
  if (ginv.inverse) {
    dv.gp = counit_right_collapse(c, *ginv.inverse);
    dv.have_gp = true;
    // the inverse always splits along the second leg; its collapse rebuilds it
    if (sweedler_right_op(c, dv.gp, 1) != *ginv.inverse)
      throw Error("InternalError", "exponent map does not reassemble the inverse translation");
    dv.mu = lq.times * flipM * *ginv.inverse;  // h (x) k -> k_(2) x h^{k_(1)}
    dv.have_mu = true;
    r.add("product_coalgebra_map", is_coalgebra_map(dv.mu, HH, c));
  } else {
    untestable(r, {"product_coalgebra_map"}, "the dot action is not regular");
  }

  std::string where;
  bool ok = is_associative(lq.times, &where);
  r.add("times_associative", ok, ok ? "" : where);
  ok = is_unit(lq.times, lq.one, &where);
  r.add("times_unit", ok, ok ? "" : where);

  dv.S = lq.dot * kron(lq.T_times, I) * c.delta;  // h -> T_x(h_(1)).h_(2)
  {
    bool anti = c.delta * dv.S == kron(dv.S, dv.S) * flipM * c.delta && c.counit * dv.S == c.counit;
    auto sinv = invert(dv.S);
    r.add("antipode_antiautomorphism", anti && sinv.inverse.has_value(),
          !anti ? "not a coalgebra anti-endomorphism"
                : (sinv.inverse ? "" : "not bijective, rank " + std::to_string(sinv.rank)));
    if (sinv.inverse) {
      dv.S_inv = *sinv.inverse;
      dv.have_s = anti;
    }
  }

  Cols dot_cols = sparse_columns(lq.dot);
  Cols times_cols = sparse_columns(lq.times);
  // (k x l).h = (k.h_(1)) x (l.h_(2))
  add_eq(r, "distributive_over_dot", lq.dot * kron(lq.times, I),
         pairwise_distributor(f, d, d, c, times_cols, d, dot_cols, dot_cols, false));
  // h.(k x l) = (h.k_(2)).(l.k_(1)), triple order (h, k, l)
  {
    Matrix rhs(f, d, d * d * d);
    SparseAccum acc(f, d);
    Cols dcols = sparse_columns(c.delta);
    for (int h = 0; h < d; ++h)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          for (const auto& [idx, cf] : dcols[k]) {
            const int i1 = idx / d, i2 = idx % d;
            bilinear_into(acc, dot_cols, d, dot_cols[h * d + i2], dot_cols[l * d + i1], cf);
          }
          write_column(rhs, (h * d + k) * d + l, acc.take());
        }
    add_eq(r, "dot_of_times", lq.dot * kron(I, lq.times), rhs);
  }
  // h_(2) x T_x(h_(1)) = T_x(h_(2)) x h_(1) = eps(h)1
  {
    Matrix cop_delta = flipM * c.delta;
    bool left = lq.times * kron(lq.T_times, I) * cop_delta == unit_eps;
    bool right = lq.times * kron(I, lq.T_times) * cop_delta == unit_eps;
    r.add("t_convolution", left && right,
          left == right ? "" : (left ? "only T_x(h_(2)) x h_(1) collapses"
                                     : "only h_(2) x T_x(h_(1)) collapses"));
  }
  // (h (x) k) -> (k_(2).h_(1)) h_(2) S^{-1}(k_(1)) = (h x k_(2)) S^{-1}(k_(1))
  if (dv.have_mu && dv.have_s) {
    dv.dpu = dv.mu * kron(lq.times, dv.S_inv) * kron(I, flipM * c.delta);
    dv.have_dpu = true;
    r.add("division_coalgebra_map", is_coalgebra_map(dv.dpu, HHcop, c));
  } else {
    untestable(r, {"division_coalgebra_map"},
               dv.have_mu ? "the antipode is not available" : "the product is not available");
  }
  add_eq(r, "one_dot_absorbs", lq.dot * kron(one_col, I), unit_eps);

  if (out) *out = std::move(dv);
  return r;
}

// The nine laws that let the tuple rebuild its Hopf algebra and brace, with
// |x := the flip of x and the division action derived above.
Report reconstruction_preconditions(const LinearQCycle& lq, const LqDerived& dv) {
  FieldRef f = lq.field();
  const int d = lq.dim();
  const Coalgebra& c = lq.coalg;
  Matrix I = Matrix::identity(f, d);
  Matrix flipM = flip_operator(c);
  Matrix dt = lq.times * flipM;
  Matrix one_col = vec_column(f, lq.one);
  Matrix unit_eps = one_col * c.counit;

  Cols dot_cols = sparse_columns(lq.dot);
  Cols dpu_cols = sparse_columns(dv.dpu);
  Cols times_cols = sparse_columns(lq.times);
  Cols dt_cols = sparse_columns(dt);
  Cols gp_cols = sparse_columns(dv.gp);

  Report r;
  r.add("product_coalgebra_map", is_coalgebra_map(dv.mu, tensor_coalgebra(c, c), c));
  std::string where;
  bool ok = is_associative(lq.times, &where);
  r.add("times_associative", ok, ok ? "" : where);
  ok = is_unit(lq.times, lq.one, &where);
  r.add("times_unit", ok, ok ? "" : where);
  ok = is_associative(dt, &where);
  r.add("doubletimes_associative", ok, ok ? "" : where);
  ok = is_unit(dt, lq.one, &where);
  r.add("doubletimes_unit", ok, ok ? "" : where);
  {
    bool anti =
        c.delta * dv.S == kron(dv.S, dv.S) * flipM * c.delta && c.counit * dv.S == c.counit;
    r.add("antipode_antiautomorphism", anti, anti ? "" : "not a coalgebra anti-endomorphism");
  }
  add_eq(r, "distributive_dot_times", lq.dot * kron(lq.times, I),
         pairwise_distributor(f, d, d, c, times_cols, d, dot_cols, dot_cols, false));
  add_eq(r, "distributive_dot_doubletimes", lq.dot * kron(dt, I),
         pairwise_distributor(f, d, d, c, dt_cols, d, dot_cols, dot_cols, true));
  add_eq(r, "distributive_dpu_times", dv.dpu * kron(lq.times, I),
         pairwise_distributor(f, d, d, c, times_cols, d, dpu_cols, dpu_cols, false));
  add_eq(r, "distributive_dpu_doubletimes", dv.dpu * kron(dt, I),
         pairwise_distributor(f, d, d, c, dt_cols, d, dpu_cols, dpu_cols, true));
  // h.(kl) = (h.l).k and the same for -|, triple order (h, k, l)
  {
    Cols dcols = sparse_columns(c.delta);
    auto module_rhs = [&](const Cols& act) {
      Matrix rhs(f, d, d * d * d);
      SparseAccum acc(f, d);
      for (int h = 0; h < d; ++h)
        for (int l = 0; l < d; ++l) {
          SparseVec hl = act[h * d + l];
          for (int k = 0; k < d; ++k) {
            for (const auto& [a, ca] : hl) acc.axpy(ca, act[a * d + k]);
            write_column(rhs, (h * d + k) * d + l, acc.take());
          }
        }
      return rhs;
    };
    add_eq(r, "dot_module", lq.dot * kron(I, dv.mu), module_rhs(dot_cols));
    add_eq(r, "dpu_module", dv.dpu * kron(I, dv.mu), module_rhs(dpu_cols));
  }
  {
    Matrix cop_delta = flipM * c.delta;
    bool left = lq.times * kron(lq.T_times, I) * cop_delta == unit_eps;
    bool right = lq.times * kron(I, lq.T_times) * cop_delta == unit_eps;
    r.add("t_convolution", left && right, left && right ? "" : "T_x is not a pointwise inverse");
  }
  add_eq(r, "absorb_dot", lq.dot * kron(I, lq.times), lq.dot * kron(I, dt * flipM));
  add_eq(r, "absorb_dpu", dv.dpu * kron(I, lq.times), dv.dpu * kron(I, dt * flipM));
  // h |x k = h_(2) x (k -| h_(3))^{h_(1)}, pair order (h, k)
  {
    Matrix rhs(f, d, d * d);
    SparseAccum acc(f, d);
    for (int h = 0; h < d; ++h) {
      SparseVec sw3 = sparsify(sweedler_iterate(c, Vec(densify(f, d, {{h, f->from_int(1)}})), 2));
      for (int k = 0; k < d; ++k) {
        for (const auto& [idx, cf] : sw3) {
          const int i1 = idx / (d * d), i2 = (idx / d) % d, i3 = idx % d;
          SparseVec w = apply_bilinear(f, d, gp_cols, d, dpu_cols[k * d + i3],
                                       SparseVec{{i1, f->from_int(1)}});
          bilinear_into(acc, times_cols, d, SparseVec{{i2, f->from_int(1)}}, w, cf);
        }
        write_column(rhs, h * d + k, acc.take());
      }
    }
    add_eq(r, "doubletimes_closed_form", dt, rhs);
  }
  return r;
}

bool group_ok(const Report& r, const std::string& prefix) {
  for (const auto& it : r.items)
    if (it.name.rfind(prefix, 0) == 0 && !it.pass) return false;
  return true;
}

}  // namespace

// ---- the skew verdict ---------------------------------------------------------

bool skew_brace_check(const QBrace& q) {
  FieldRef f = q.field();
  const int d = q.dim();
  const Coalgebra& c = q.hopf.coalg;
  Matrix flipM = flip_operator(c);
  Matrix I = Matrix::identity(f, d);

  const bool skew = q.doubletimes == q.times * flipM;
  const bool multiplicative = q.hopf.mu * q.sol.s == q.hopf.mu;
  if (skew != multiplicative)
    throw Error("InternalError", "the skew condition and mu o s = mu disagree");

  // (k_(1) x h) S(k_(2)) rebuilds the dot action on every brace
  Matrix dot2 = q.hopf.mu * kron(I, q.hopf.S()) * sweedler_right_op_flipped(c, q.times, 1);
  if (dot2 != q.dot)
    throw Error("InternalError", "(k_(1) x h)S(k_(2)) does not rebuild the dot action");

  if (skew) {
    if (q.T_times != q.T_doubletimes)
      throw Error("InternalError", "T_x and T_|x differ on a skew brace");
    Matrix dpu2 = q.hopf.mu * kron(I, q.hopf.S_inv()) * sweedler_right_op(c, q.times, 2);
    if (dpu2 != q.dpu)
      throw Error("InternalError", "(h x k_(2))S^{-1}(k_(1)) does not rebuild the division action");
    GVSkewBrace gv{q.hopf, q.times, q.T_times};
    if (gv_exponent(gv) != *q.magma.gp)
      throw Error("InternalError", "T_x(h_(2)) x k h_(1) is not the exponent map");
    if (gv_division(gv) != *q.magma.gd)
      throw Error("InternalError", "k h_(2) x T_x(h_(1)) is not the division map");
  }
  return skew;
}

Report skew_brace_criterion(const HopfAlgebra& h0, const Matrix& dot, const Matrix& dpu) {
  HopfAlgebra h = h0;
  const int d = h.dim();
  if (dot.rows() != d || dot.cols() != d * d || dpu.rows() != d || dpu.cols() != d * d)
    throw Error("ShapeMismatch", "actions must be dim x dim^2");
  if (!ensure_antipode(h)) throw Error("NoAntipode", "the carrier has no antipode");
  if (!h.antipode_inv) throw Error("AntipodeNotBijective", "the antipode is not bijective");

  Report r;
  try {
    (void)qmagma(h.coalg, dot, dpu);
    r.add("qmagma", true);
  } catch (const Error& e) {
    if (e.code != "InvalidQMagma") throw;
    r.add("qmagma", false, e.what());
  }
  {
    ActionCandidate a{&h, &h.coalg, dot, Variance::over_h_op, true};
    r.merge(is_module_coalgebra(a), "dot_module");
  }
  {
    ActionCandidate a{&h, &h.coalg, dpu, Variance::over_h_op, true};
    r.merge(is_module_coalgebra(a), "dpu_module");
  }
  Matrix times = times_for(h.coalg, dot, h.mu);
  Matrix dt = doubletimes_for(h.coalg, dpu, h.mu);
  add_eq(r, "skew_condition", dt, times * flip_operator(h.coalg));
  return r;
}

bool twisted_diagonal_subalgebra(const QBrace& q) {
  FieldRef f = q.field();
  const int d = q.dim();
  const Coalgebra& c = q.hopf.coalg;
  Cols dcols = sparse_columns(c.delta);
  Cols dot_cols = sparse_columns(q.dot);
  Cols dpu_cols = sparse_columns(q.dpu);
  Cols mu_cols = sparse_columns(q.hopf.mu);
  Cols S_cols = sparse_columns(q.hopf.S());

  // S(k_(1)) -| (h.k_(2)) = S(k -| h), pair order (h, k)
  {
    Matrix lhs(f, d, d * d);
    SparseAccum acc(f, d);
    for (int h = 0; h < d; ++h)
      for (int k = 0; k < d; ++k) {
        for (const auto& [idx, cf] : dcols[k]) {
          const int i1 = idx / d, i2 = idx % d;
          bilinear_into(acc, dpu_cols, d, S_cols[i1], dot_cols[h * d + i2], cf);
        }
        write_column(lhs, h * d + k, acc.take());
      }
    if (lhs != q.hopf.S() * q.dpu * flip_operator(c))
      throw Error("InternalError", "S(k_(1)) -| (h.k_(2)) differs from S(k -| h)");
  }

  HopfAlgebra B = bicrossed_product(matched_pair_of(q.hopf, q.sol.s));
  Matrix F = kron(q.hopf.S(), Matrix::identity(f, d)) * c.delta;  // column h = S(h_(1)) (x) h_(2)
  Cols Fcols = sparse_columns(F);
  Cols Bmu = sparse_columns(B.mu);
  Subspace V = Subspace::from_rows(F.transpose());

  bool closed = true;
  SparseAccum prod_acc(f, d * d), form_acc(f, d * d), sacc(f, d);
  for (int i = 0; i < d; ++i) {
    SparseVec swh = sparsify(sweedler_iterate(c, Vec(densify(f, d, {{i, f->from_int(1)}})), 2));
    for (int j = 0; j < d; ++j) {
      SparseVec prod = sparse_apply(Bmu, sparse_kron(Fcols[i], Fcols[j], d * d), prod_acc);
      // closed form S((k_(1)-|h_(3)) h_(1)) (x) (h_(2).k_(2)) k_(3)
      SparseVec swk = sparsify(sweedler_iterate(c, Vec(densify(f, d, {{j, f->from_int(1)}})), 2));
      for (const auto& [hi, hc] : swh) {
        const int h1 = hi / (d * d), h2 = (hi / d) % d, h3 = hi % d;
        for (const auto& [ki, kc] : swk) {
          const int k1 = ki / (d * d), k2 = (ki / d) % d, k3 = ki % d;
          SparseVec w = apply_bilinear(f, d, mu_cols, d, dpu_cols[k1 * d + h3],
                                       SparseVec{{h1, f->from_int(1)}});
          for (const auto& [a, ca] : w) sacc.axpy(ca, S_cols[a]);
          SparseVec sw = sacc.take();
          SparseVec u = apply_bilinear(f, d, mu_cols, d, dot_cols[h2 * d + k2],
                                       SparseVec{{k3, f->from_int(1)}});
          tensor_into(form_acc, sw, u, d, hc * kc);
        }
      }
      SparseVec form = form_acc.take();
      if (form != prod)
        throw Error("InternalError",
                    "the closed form of (S(h_(1)) (x) h_(2))(S(k_(1)) (x) k_(2)) disagrees");
      if (closed && !V.contains(densify(f, d * d, prod))) closed = false;
    }
  }
  return closed;
}

// ---- derived maps ---------------------------------------------------------------

Matrix gv_dot(const GVSkewBrace& gv) {
  const Coalgebra& c = gv.hopf.coalg;
  Matrix I = Matrix::identity(gv.field(), gv.dim());
  return gv.hopf.mu * kron(I, gv.hopf.S()) * sweedler_right_op_flipped(c, gv.times, 1);
}

Matrix gv_dpu(const GVSkewBrace& gv) {
  const Coalgebra& c = gv.hopf.coalg;
  Matrix I = Matrix::identity(gv.field(), gv.dim());
  return gv.hopf.mu * kron(I, gv.hopf.S_inv()) * sweedler_right_op(c, gv.times, 2);
}

Matrix gv_exponent(const GVSkewBrace& gv) {
  const Coalgebra& c = gv.hopf.coalg;
  Matrix I = Matrix::identity(gv.field(), gv.dim());
  return gv.times * kron(gv.T_times, I) * flip_operator(c) * sweedler_right_op(c, gv.hopf.mu, 1);
}

Matrix gv_division(const GVSkewBrace& gv) {
  const Coalgebra& c = gv.hopf.coalg;
  Matrix I = Matrix::identity(gv.field(), gv.dim());
  return gv.times * kron(I, gv.T_times) * sweedler_right_op(c, gv.hopf.mu, 2);
}

// ---- validators ------------------------------------------------------------------

Report linear_qcycle_validate(const LinearQCycle& lq) { return lq_validate_impl(lq, nullptr); }

Report gv_validate(const GVSkewBrace& gv0) {
  GVSkewBrace g = gv0;
  FieldRef f = g.field();
  const int d = g.dim();
  if (g.times.rows() != d || g.times.cols() != d * d)
    throw Error("ShapeMismatch", "x must be dim x dim^2");
  if (g.T_times.rows() != d || g.T_times.cols() != d)
    throw Error("ShapeMismatch", "T_x must be dim x dim");

  Report r;
  {
    Report hv = validate_hopf(g.hopf);
    const bool okh = hv.ok() && g.hopf.antipode_inv.has_value();
    r.add("hopf_algebra", okh, okh ? "" : (hv.ok() ? "antipode not bijective" : fail_text(hv)));
    if (!okh) return r;
  }
  const Coalgebra& c = g.hopf.coalg;
  Matrix I = Matrix::identity(f, d);
  Matrix flipM = flip_operator(c);
  Matrix one_col = vec_column(f, g.hopf.unit);
  Matrix unit_eps = one_col * c.counit;
  Coalgebra HHcop = tensor_coalgebra(c, cop(c));
  Cols times_cols = sparse_columns(g.times);
  Cols mu_cols = sparse_columns(g.hopf.mu);
  Cols T_cols = sparse_columns(g.T_times);

  std::string where;
  bool ok = is_associative(g.times, &where);
  r.add("definition.times_associative", ok, ok ? "" : where);
  ok = is_unit(g.times, g.hopf.unit, &where);
  r.add("definition.times_unit", ok, ok ? "" : where);
  // (k x l)h = k h_(3) x T_x(h_(2)) x l h_(1), triple order (k, l, h)
  {
    Matrix rhs(f, d, d * d * d);
    SparseAccum acc(f, d);
    std::vector<SparseVec> sw3(d);
    for (int h = 0; h < d; ++h)
      sw3[h] = sparsify(sweedler_iterate(c, Vec(densify(f, d, {{h, f->from_int(1)}})), 2));
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        for (int h = 0; h < d; ++h) {
          for (const auto& [idx, cf] : sw3[h]) {
            const int i1 = idx / (d * d), i2 = (idx / d) % d, i3 = idx % d;
            SparseVec t1 = apply_bilinear(f, d, times_cols, d, mu_cols[k * d + i3], T_cols[i2]);
            bilinear_into(acc, times_cols, d, t1, mu_cols[l * d + i1], cf);
          }
          write_column(rhs, (k * d + l) * d + h, acc.take());
        }
    add_eq(r, "definition.distributor", g.hopf.mu * kron(g.times, I), rhs);
  }
  r.add("definition.dot_coalgebra_map", is_coalgebra_map(gv_dot(g), HHcop, c));
  r.add("definition.dpu_coalgebra_map", is_coalgebra_map(gv_dpu(g), HHcop, c));

  Matrix cop_delta = flipM * c.delta;
  add_eq(r, "module_form.t_left_inverse", g.times * kron(g.T_times, I) * cop_delta, unit_eps);
  add_eq(r, "module_form.t_right_inverse", g.times * kron(I, g.T_times) * cop_delta, unit_eps);
  Matrix U = gv_exponent(g);
  Matrix D = gv_division(g);
  {
    ActionCandidate a{&g.hopf, &c, U, Variance::over_h, false};
    r.merge(is_module_coalgebra(a), "module_form.exponent");
  }
  {
    ActionCandidate a{&g.hopf, &c, D, Variance::over_h, false};
    r.merge(is_module_coalgebra(a), "module_form.division");
  }
  Cols U_cols = sparse_columns(U);
  Cols D_cols = sparse_columns(D);
  add_eq(r, "module_form.exponent_distributes", U * kron(g.times, I),
         pairwise_distributor(f, d, d, c, times_cols, d, U_cols, U_cols, true));
  add_eq(r, "module_form.division_distributes", D * kron(g.times, I),
         pairwise_distributor(f, d, d, c, times_cols, d, D_cols, D_cols, true));
  return r;
}

Report cocycle_validate(const Cocycle& cc0) {
  Cocycle cc = cc0;
  FieldRef f = cc.field();
  const int dh = cc.hopf.dim();
  const int dl = cc.target.dim();
  if (cc.pi.rows() != dl || cc.pi.cols() != dh)
    throw Error("ShapeMismatch", "pi must be dim_L x dim_H");
  if (cc.times_prime.rows() != dl || cc.times_prime.cols() != dl * dl)
    throw Error("ShapeMismatch", "x' must be dim_L x dim_L^2");
  if (cc.T_times_prime.rows() != dl || cc.T_times_prime.cols() != dl)
    throw Error("ShapeMismatch", "T_x' must be dim_L x dim_L");
  if (cc.haction.rows() != dl || cc.haction.cols() != dl * dh)
    throw Error("ShapeMismatch", "the action must be dim_L x (dim_L * dim_H)");
  if (static_cast<int>(cc.one.size()) != dl)
    throw Error("ShapeMismatch", "the target unit must have length dim_L");

  Report r;
  {
    Report hv = validate_hopf(cc.hopf);
    const bool okh = hv.ok() && cc.hopf.antipode_inv.has_value();
    r.add("hopf_algebra", okh, okh ? "" : (hv.ok() ? "antipode not bijective" : fail_text(hv)));
    if (!okh) return r;
  }
  {
    Report tv = validate_coalgebra(cc.target);
    r.add("target.coalgebra", tv.ok(), fail_text(tv));
    if (!tv.ok()) return r;
  }
  const Coalgebra& L = cc.target;
  const Coalgebra& Hc = cc.hopf.coalg;
  Matrix IL = Matrix::identity(f, dl);
  Matrix IH = Matrix::identity(f, dh);
  Matrix flipL = flip_operator(L);
  Matrix one_col = vec_column(f, cc.one);
  Matrix unit_eps = one_col * L.counit;

  r.add("target.one_grouplike", is_grouplike(L, cc.one));
  std::string where;
  bool ok = is_associative(cc.times_prime, &where);
  r.add("target.times_associative", ok, ok ? "" : where);
  ok = is_unit(cc.times_prime, cc.one, &where);
  r.add("target.times_unit", ok, ok ? "" : where);
  Matrix cop_deltaL = flipL * L.delta;
  add_eq(r, "target.t_left_inverse", cc.times_prime * kron(cc.T_times_prime, IL) * cop_deltaL,
         unit_eps);
  add_eq(r, "target.t_right_inverse", cc.times_prime * kron(IL, cc.T_times_prime) * cop_deltaL,
         unit_eps);
  {
    ActionCandidate a{&cc.hopf, &L, cc.haction, Variance::over_h, false};
    r.merge(is_module_coalgebra(a), "target.action");
  }
  Cols tp_cols = sparse_columns(cc.times_prime);
  Cols ha_cols = sparse_columns(cc.haction);
  // (k x' l) <- h = (k <- h_(2)) x' (l <- h_(1)), triple order (k, l, h)
  add_eq(r, "target.action_distributes", cc.haction * kron(cc.times_prime, IH),
         pairwise_distributor(f, dl, dl, Hc, tp_cols, dl, ha_cols, ha_cols, true));

  r.add("pi_coalgebra_map", is_coalgebra_map(cc.pi, Hc, L));
  auto pinv = invert(cc.pi);
  r.add("pi_invertible", pinv.inverse.has_value(),
        pinv.inverse ? "" : "rank " + std::to_string(pinv.rank));

  // l (x) h -> T_x'(pi(h_(3))) x' (l <- h_(2)) x' pi(h_(1))
  {
    Matrix Tpi = cc.T_times_prime * cc.pi;
    Cols Tpi_cols = sparse_columns(Tpi);
    Cols pi_cols = sparse_columns(cc.pi);
    Matrix A(f, dl, dl * dh);
    SparseAccum acc(f, dl);
    std::vector<SparseVec> sw3(dh);
    for (int h = 0; h < dh; ++h)
      sw3[h] = sparsify(sweedler_iterate(Hc, Vec(densify(f, dh, {{h, f->from_int(1)}})), 2));
    for (int l = 0; l < dl; ++l)
      for (int h = 0; h < dh; ++h) {
        for (const auto& [idx, cf] : sw3[h]) {
          const int i1 = idx / (dh * dh), i2 = (idx / dh) % dh, i3 = idx % dh;
          SparseVec t1 = apply_bilinear(f, dl, tp_cols, dl, Tpi_cols[i3], ha_cols[l * dh + i2]);
          bilinear_into(acc, tp_cols, dl, t1, pi_cols[i1], cf);
        }
        write_column(A, l * dh + h, acc.take());
      }
    ActionCandidate a{&cc.hopf, &L, A, Variance::over_h, false};
    r.merge(is_module_coalgebra(a), "twisted_action");
  }
  // pi(k h) = (pi(k) <- h_(2)) x' pi(h_(1))
  {
    Matrix flipH = flip_operator(Hc);
    Matrix rhs = cc.times_prime * kron(cc.haction * kron(cc.pi, IH), cc.pi) *
                 kron(IH, flipH * Hc.delta);
    add_eq(r, "cocycle_condition", cc.pi * cc.hopf.mu, rhs);
  }
  return r;
}

// ---- conversions ------------------------------------------------------------------

GVSkewBrace gv_skew_brace(HopfAlgebra h, Matrix times, Matrix T_times) {
  GVSkewBrace gv{std::move(h), std::move(times), std::move(T_times)};
  ensure_antipode(gv.hopf);
  Report r = gv_validate(gv);
  if (group_ok(r, "definition.") != group_ok(r, "module_form."))
    throw Error("InternalError", "the two characterizations of the group product disagree");
  if (!r.ok()) throw Error("ValidationFailure", fail_text(r));
  return gv;
}

LinearQCycle to_linear_qcycle(const QBrace& q) {
  if (!skew_brace_check(q))
    throw Error("ValidationFailure", "skew condition: h |x k = k x h fails");
  LinearQCycle lq{q.hopf.coalg, q.hopf.unit, q.times, q.dot, q.T_times};
  LqDerived dv;
  Report r = lq_validate_impl(lq, &dv);
  if (!r.ok())
    throw Error("InternalError", "repackaged skew brace fails validation: " + fail_text(r));
  if (dv.mu != q.hopf.mu)
    throw Error("InternalError", "k_(2) x h^{k_(1)} differs from the carrier multiplication");
  if (dv.S != q.hopf.S())
    throw Error("InternalError", "T_x(h_(1)).h_(2) differs from the antipode");
  if (dv.dpu != q.dpu)
    throw Error("InternalError", "the derived division differs from the brace's");
  return lq;
}

GVSkewBrace to_gv(const QBrace& q) {
  if (!skew_brace_check(q))
    throw Error("ValidationFailure", "skew condition: h |x k = k x h fails");
  GVSkewBrace gv{q.hopf, q.times, q.T_times};
  Report r = gv_validate(gv);
  if (!r.ok())
    throw Error("InternalError", "repackaged skew brace fails the group-product laws: " +
                                     fail_text(r));
  return gv;
}

QBrace from_gv(const GVSkewBrace& gv0) {
  GVSkewBrace gv = gv0;
  ensure_antipode(gv.hopf);
  Report r = gv_validate(gv);
  if (group_ok(r, "definition.") != group_ok(r, "module_form."))
    throw Error("InternalError", "the two characterizations of the group product disagree");
  if (!r.ok()) throw Error("ValidationFailure", fail_text(r));
  QBrace q = [&] {
    try {
      return qbrace(gv.hopf, gv_dot(gv), gv_dpu(gv));
    } catch (const Error& e) {
      if (e.code == "InvalidQBrace")
        throw Error("InternalError",
                    std::string("validated group product produced an invalid brace: ") + e.what());
      throw;
    }
  }();
  if (!skew_brace_check(q))
    throw Error("InternalError", "the rebuilt brace is not skew");
  if (q.times != gv.times || q.T_times != gv.T_times)
    throw Error("InternalError", "the rebuilt brace changed the group product");
  return q;
}

QBrace from_linear_qcycle(const LinearQCycle& lq) {
  LqDerived dv;
  Report r = lq_validate_impl(lq, &dv);
  if (!r.ok()) throw Error("ValidationFailure", fail_text(r));
  Report pre = reconstruction_preconditions(lq, dv);
  if (!pre.ok()) throw Error("ValidationFailure", "reconstruction: " + fail_text(pre));

  HopfAlgebra h = hopf(lq.coalg, dv.mu, lq.one);
  Report hv = validate_hopf(h);
  if (!hv.ok())
    throw Error("InternalError",
                "the reconstructed multiplication is not a Hopf algebra: " + fail_text(hv));
  if (h.S() != dv.S)
    throw Error("InternalError", "the computed antipode differs from T_x(h_(1)).h_(2)");
  if (!h.antipode_inv)
    throw Error("InternalError", "the reconstructed antipode is not bijective");

  QBrace q = [&] {
    try {
      return qbrace(std::move(h), lq.dot, dv.dpu);
    } catch (const Error& e) {
      if (e.code == "InvalidQBrace")
        throw Error("InternalError",
                    std::string("reconstruction produced an invalid brace: ") + e.what());
      throw;
    }
  }();
  if (!skew_brace_check(q))
    throw Error("InternalError", "the reconstructed brace is not skew");
  if (q.times != lq.times)
    throw Error("InternalError", "the rebuilt brace changed the group product");
  if (q.T_times != lq.T_times)
    throw Error("InternalError", "the rebuilt brace changed the pointwise inverse");
  return q;
}

Cocycle cocycle_bridge(const GVSkewBrace& gv0) {
  GVSkewBrace gv = gv0;
  ensure_antipode(gv.hopf);
  {
    Report r = gv_validate(gv);
    if (!r.ok()) throw Error("ValidationFailure", fail_text(r));
  }
  Cocycle cc{gv.hopf,          gv.hopf.coalg,    gv.hopf.unit,
             gv.times,         gv.T_times,       gv_division(gv),
             Matrix::identity(gv.field(), gv.dim())};
  Report cr = cocycle_validate(cc);
  if (!cr.ok()) throw Error("CocycleViolation", fail_text(cr));
  return cc;
}

GVSkewBrace gv_from_cocycle(const Cocycle& cc) {
  Report r = cocycle_validate(cc);
  if (!r.ok()) throw Error("CocycleViolation", fail_text(r));

  Matrix pinv = *invert(cc.pi).inverse;
  GVSkewBrace gv{cc.hopf, pinv * cc.times_prime * kron(cc.pi, cc.pi), pinv * cc.T_times_prime * cc.pi};
  if (!ensure_antipode(gv.hopf))
    throw Error("InternalError", "the source lost its antipode");
  Report gr = gv_validate(gv);
  if (!gr.ok())
    throw Error("InternalError", "the transported product is not a skew structure: " + fail_text(gr));

  Vec pi1 = cc.pi.apply(gv.hopf.unit);
  if (pi1 != cc.one) throw Error("InternalError", "pi does not send the unit to the target unit");
  Matrix IH = Matrix::identity(gv.field(), gv.dim());
  if (gv_division(gv) != pinv * cc.haction * kron(cc.pi, IH))
    throw Error("InternalError", "the transported action differs from the division map");
  return gv;
}

}  // namespace qbw
