#include "qbw/zoo.hpp"

#include <array>

namespace qbw {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Coalgebra grouplikes(FieldRef f, const std::vector<std::string>& names) {
  const int d = static_cast<int>(names.size());
  Matrix delta(f, d * d, d), counit(f, 1, d);
  for (int a = 0; a < d; ++a) {
    delta.at(a * d + a, a) = f->one();
    counit.at(0, a) = f->one();
  }
  return coalgebra(std::move(delta), std::move(counit), names);
}

HopfAlgebra checked(HopfAlgebra h, const char* what) {
  Report v = validate_hopf(h);
  if (!v.ok()) {
    for (const auto& it : v.items)
      if (!it.pass)
        throw Error("InternalError", std::string(what) + " failed validation at " + it.name +
                                         (it.detail.empty() ? "" : ": " + it.detail));
  }
  return h;
}

}  // namespace

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw Error("BadParams", "cyclic group needs n >= 1");
  FiniteGroup g;
  g.order = n;
  g.unit = 0;
  g.mul.resize(n * n);
  g.inv.resize(n);
  for (int a = 0; a < n; ++a) {
    g.inv[a] = (n - a) % n;
    g.names.push_back(a == 0 ? "1" : a == 1 ? "t" : "t^" + std::to_string(a));
    for (int b = 0; b < n; ++b) g.mul[a * n + b] = (a + b) % n;
  }
  return g;
}

FiniteGroup dihedral_group(int n) {
  if (n < 2) throw Error("BadParams", "dihedral group needs n >= 2");
  const int D = 2 * n;
  FiniteGroup g;
  g.order = D;
  g.unit = 0;
  g.mul.resize(D * D);
  g.inv.resize(D);
  g.names.resize(D);
  auto idx = [n](int i, int j) { return j * n + i; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) {
      std::string nm = i == 0 ? "" : i == 1 ? "r" : "r^" + std::to_string(i);
      if (j) nm += "y";
      g.names[idx(i, j)] = nm.empty() ? "1" : nm;
      g.inv[idx(i, j)] = j ? idx(i, j) : idx((n - i) % n, 0);
      for (int ip = 0; ip < n; ++ip)
        for (int jp = 0; jp < 2; ++jp)
          g.mul[idx(i, j) * D + idx(ip, jp)] = idx((i + (j ? n - ip : ip)) % n, (j + jp) % 2);
    }
  return g;
}

FiniteGroup symmetric_group_3() {
  using P = std::array<int, 3>;
  const std::vector<P> els = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  FiniteGroup g;
  g.order = 6;
  g.unit = 0;
  g.names = {"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
  g.mul.resize(36);
  g.inv.resize(6);
  auto find = [&](const P& p) {
    for (int i = 0; i < 6; ++i)
      if (els[i] == p) return i;
    throw Error("InternalError", "composition left the permutation table");
  };
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      g.mul[a * 6 + b] = find({els[a][els[b][0]], els[a][els[b][1]], els[a][els[b][2]]});
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (g.mul[a * 6 + b] == 0) g.inv[a] = b;
  return g;
}

HopfAlgebra group_algebra(FieldRef f, const FiniteGroup& g) {
  const int d = g.order;
  Matrix mu(f, d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) mu.at(g.at(a, b), a * d + b) = f->one();
  Vec unit = vec_zero(f, d);
  unit[g.unit] = f->one();
  return checked(hopf(grouplikes(f, g.names), std::move(mu), std::move(unit)), "group algebra");
}

HopfAlgebra dual_group_algebra(FieldRef f, const FiniteGroup& g) {
  const int d = g.order;
  Matrix delta(f, d * d, d), counit(f, 1, d), mu(f, d, d * d);
  std::vector<std::string> names;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) delta.at(g.at(a, b) * d + g.inv[b], a) = f->one();
    mu.at(a, a * d + a) = f->one();
    names.push_back("d(" + g.names[a] + ")");
  }
  counit.at(0, g.unit) = f->one();
  Vec unit(d, f->one());
  return checked(hopf(coalgebra(std::move(delta), std::move(counit), std::move(names)),
                      std::move(mu), std::move(unit)),
                 "dual group algebra");
}

HopfAlgebra taft_hopf(int n) {
  if (n < 2) throw Error("BadParams", "the Taft algebra needs n >= 2");
  FieldRef f = Field::cyclotomic(static_cast<uint64_t>(n));
  const int d = n * n;
  auto idx = [n](int i, int j) { return i * n + j; };
  auto zp = [&](long k) { return f->zeta(((k % n) + n) % n); };

  // x^j g^i' = zeta^{j i'} g^i' x^j, and x^n = 0
  Matrix mu(f, d, d * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int ip = 0; ip < n; ++ip)
        for (int jp = 0; jp < n; ++jp)
          if (j + jp < n)
            mu.at(idx((i + ip) % n, j + jp), idx(i, j) * d + idx(ip, jp)) =
                zp(static_cast<long>(j) * ip);

  // Delta is multiplicative from Delta(g) = g (x) g,
  // Delta(x) = 1 (x) x + x (x) g
  std::vector<SparseVec> mu_cols = sparse_columns(mu);
  auto ts_mul = [&](const SparseVec& u, const SparseVec& w) {
    SparseAccum acc(f, d * d);
    for (const auto& [ui, cu] : u) {
      const int ua = ui / d, ub = ui % d;
      for (const auto& [wi, cw] : w) {
        const int wa = wi / d, wb = wi % d;
        Scalar coef = cu * cw;
        for (const auto& [pi, cp] : mu_cols[ua * d + wa]) {
          Scalar cpp = coef * cp;
          for (const auto& [qi, cq] : mu_cols[ub * d + wb]) acc.add(pi * d + qi, cpp * cq);
        }
      }
    }
    return acc.take();
  };
  const SparseVec dx = {{idx(0, 0) * d + idx(0, 1), f->one()}, {idx(0, 1) * d + idx(1, 0), f->one()}};
  Matrix delta(f, d * d, d), counit(f, 1, d);
  std::vector<std::string> names(d);
  for (int i = 0; i < n; ++i) {
    counit.at(0, idx(i, 0)) = f->one();
    SparseVec cur = {{idx(i, 0) * d + idx(i, 0), f->one()}};
    for (int j = 0; j < n; ++j) {
      if (j > 0) cur = ts_mul(cur, dx);
      for (const auto& [ri, cv] : cur) delta.at(ri, idx(i, j)) = cv;
      std::string gpart = i == 0 ? "" : i == 1 ? "g" : "g^" + std::to_string(i);
      std::string xpart = j == 0 ? "" : j == 1 ? "x" : "x^" + std::to_string(j);
      names[idx(i, j)] = gpart + xpart;
      if (names[idx(i, j)].empty()) names[idx(i, j)] = "1";
    }
  }
  Vec unit = vec_zero(f, d);
  unit[idx(0, 0)] = f->one();
  return checked(hopf(coalgebra(std::move(delta), std::move(counit), std::move(names)),
                      std::move(mu), std::move(unit)),
                 "Taft algebra");
}

QBrace taft_qbrace(int n) {
  HopfAlgebra h = taft_hopf(n);
  FieldRef f = h.field();
  const int d = n * n;
  auto idx = [n](int i, int j) { return i * n + j; };
  auto zp = [&](long k) { return f->zeta(((k % n) + n) % n); };
  Matrix dot(f, d, d * d), dpu(f, d, d * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int ip = 0; ip < n; ++ip) {
        const int col = idx(i, j) * d + idx(ip, 0);
        dot.at(idx(i, j), col) = zp(-static_cast<long>(ip) * j);
        dpu.at(idx(i, j), col) = zp(static_cast<long>(ip) * j);
      }
  return qbrace(std::move(h), std::move(dot), std::move(dpu));
}

QBrace dual_dihedral_qbrace(FieldRef f, int m, int brace_case) {
  if (m < 2) throw Error("BadParams", "the dual dihedral brace needs m >= 2");
  if (brace_case < 1 || brace_case > 4) throw Error("BadParams", "the brace case must be 1..4");
  if (f->characteristic() == 2)
    throw Error("BadParams", "the splitting needs 2 to be invertible");
  const int rot = 2 * m;
  FiniteGroup g = dihedral_group(rot);
  HopfAlgebra h = dual_group_algebra(f, g);
  const int D = g.order;
  auto idx = [rot](int i, int j) { return j * rot + i; };
  const int center = idx(m, 0);
  auto splits = [&](int i, int j) {
    switch (brace_case) {
      case 1: return false;
      case 2: return j == 1;
      case 3: return i % 2 == 1;
      default: return (i + j) % 2 == 1;
    }
  };
  const Scalar half = f->one() / f->from_int(2);
  Matrix dot(f, D, D * D);
  for (int i = 0; i < rot; ++i)
    for (int j = 0; j < 2; ++j) {
      const int a = idx(i, j), sa = idx((i + m) % rot, j);
      if (splits(i, j)) {
        dot.at(a, a * D + g.unit) = half;
        dot.at(sa, a * D + g.unit) = half;
        dot.at(a, a * D + center) = half;
        dot.at(sa, a * D + center) = -half;
      } else {
        dot.at(a, a * D + g.unit) = f->one();
      }
    }
  Matrix dpu = dot;
  return qbrace(std::move(h), std::move(dot), std::move(dpu));
}

QBrace conjugation_qbrace(FieldRef f, const FiniteGroup& g) {
  HopfAlgebra h = group_algebra(f, g);
  const int d = g.order;
  Matrix dot = eps_right_op(h.coalg);
  Matrix dpu(f, d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) dpu.at(g.at(g.at(b, a), g.inv[b]), a * d + b) = f->one();
  return qbrace(std::move(h), std::move(dot), std::move(dpu));
}

QBrace trivial_qbrace(HopfAlgebra h) {
  if (!h.antipode) h = checked(std::move(h), "trivial brace carrier");
  Matrix dot = eps_right_op(h.coalg);
  Matrix dpu = dot;
  return qbrace(std::move(h), std::move(dot), std::move(dpu));
}

SolutionCandidate cyclic_rack_solution(FieldRef f, int n) {
  if (n < 2) throw Error("BadParams", "the shift rack needs n >= 2");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  Coalgebra c = grouplikes(f, names);
  Matrix tri(f, n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tri.at((a + 1) % n, a * n + b) = f->one();
  return rack_to_solution(c, tri);
}

SolutionCandidate conjugation_rack_solution(FieldRef f, const FiniteGroup& g) {
  Coalgebra c = grouplikes(f, g.names);
  const int d = g.order;
  Matrix tri(f, d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) tri.at(g.at(g.at(g.inv[b], a), b), a * d + b) = f->one();
  return rack_to_solution(c, tri);
}

SolutionCandidate flip_solution(FieldRef f, int dim) {
  if (dim < 1) throw Error("BadParams", "the flip needs dimension >= 1");
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) names.push_back("p" + std::to_string(i));
  Coalgebra c = grouplikes(f, names);
  Matrix s = flip_operator(c);
  return solution_candidate(std::move(c), std::move(s));
}

namespace {

struct SpecCall {
  std::string name;
  std::vector<std::string> args;
};

SpecCall parse_spec_call(const std::string& s) {
  const std::string t = trim(s);
  const size_t open = t.find('(');
  if (open == std::string::npos) return {t, {}};
  if (t.back() != ')' || open == 0)
    throw Error("UnknownExample", "cannot parse instance name '" + s + "'");
  SpecCall c;
  c.name = trim(t.substr(0, open));
  std::string inside = t.substr(open + 1, t.size() - open - 2);
  std::string cur;
  int depth = 0;
  for (char ch : inside) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      c.args.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw Error("UnknownExample", "unbalanced parentheses in '" + s + "'");
  if (!trim(cur).empty() || !c.args.empty()) c.args.push_back(trim(cur));
  return c;
}

int int_arg(const std::string& a, const std::string& what) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(a, &used);
  } catch (const std::exception&) {
    throw Error("BadParams", what + " must be an integer, got '" + a + "'");
  }
  if (used != a.size()) throw Error("BadParams", what + " must be an integer, got '" + a + "'");
  return v;
}

void need_args(const SpecCall& c, size_t n) {
  if (c.args.size() != n)
    throw Error("BadParams", c.name + " takes " + std::to_string(n) + " parameter" +
                                 (n == 1 ? "" : "s") + ", got " + std::to_string(c.args.size()));
}

FiniteGroup group_by_name(const std::string& a) {
  if (a == "S3") return symmetric_group_3();
  if (a == "D4") return dihedral_group(4);
  if (a.rfind("Z/", 0) == 0) return cyclic_group(int_arg(a.substr(2), "the cyclic order"));
  throw Error("BadParams", "unknown group '" + a + "' (expected S3, D4, or Z/n)");
}

HopfAlgebra hopf_by_name(const std::string& a) {
  SpecCall c = parse_spec_call(a);
  if (c.name == "taft") {
    need_args(c, 1);
    return taft_hopf(int_arg(c.args[0], "the Taft order"));
  }
  if (c.name == "dual_dihedral") {
    need_args(c, 1);
    const int m = int_arg(c.args[0], "the dihedral half-order");
    if (m < 2) throw Error("BadParams", "the dual dihedral algebra needs m >= 2");
    return dual_group_algebra(Field::rationals(), dihedral_group(2 * m));
  }
  return group_algebra(Field::rationals(), group_by_name(a));
}

}  // namespace

ZooInstance zoo_instance(const std::string& spec) {
  SpecCall c = parse_spec_call(spec);
  FieldRef q = Field::rationals();
  ZooInstance z;
  auto canon = [&](const std::string& args) { z.name = c.name + "(" + args + ")"; };
  auto with_brace = [&](QBrace b) {
    z.kind = "qbrace";
    z.hopf = b.hopf;
    z.solution = b.sol;
    z.brace = std::move(b);
  };
  auto with_solution = [&](SolutionCandidate s) {
    z.kind = "solution";
    z.solution = std::move(s);
  };

  if (c.name == "taft") {
    need_args(c, 1);
    const int n = int_arg(c.args[0], "the Taft order");
    canon(std::to_string(n));
    with_brace(taft_qbrace(n));
  } else if (c.name == "dual_dihedral") {
    need_args(c, 2);
    const int m = int_arg(c.args[0], "the dihedral half-order");
    const int cs = int_arg(c.args[1], "the brace case");
    canon(std::to_string(m) + "," + std::to_string(cs));
    with_brace(dual_dihedral_qbrace(q, m, cs));
  } else if (c.name == "group_conjugation") {
    need_args(c, 1);
    canon(c.args[0]);
    with_brace(conjugation_qbrace(q, group_by_name(c.args[0])));
  } else if (c.name == "trivial_qbrace") {
    need_args(c, 1);
    canon(c.args[0]);
    with_brace(trivial_qbrace(hopf_by_name(c.args[0])));
  } else if (c.name == "rack") {
    need_args(c, 1);
    canon(c.args[0]);
    if (c.args[0] == "conj_s3") {
      with_solution(conjugation_rack_solution(q, symmetric_group_3()));
    } else if (c.args[0].rfind("cyclic_", 0) == 0) {
      with_solution(cyclic_rack_solution(q, int_arg(c.args[0].substr(7), "the rack size")));
    } else {
      throw Error("BadParams", "unknown rack '" + c.args[0] + "' (expected cyclic_n or conj_s3)");
    }
  } else if (c.name == "flip") {
    need_args(c, 1);
    const int dim = int_arg(c.args[0], "the flip dimension");
    canon(std::to_string(dim));
    with_solution(flip_solution(q, dim));
  } else {
    throw Error("UnknownExample", "no example named '" + c.name + "'");
  }
  return z;
}

std::vector<std::string> zoo_names() {
  return {"taft(2)",
          "taft(3)",
          "dual_dihedral(2,1)",
          "dual_dihedral(2,2)",
          "dual_dihedral(2,3)",
          "dual_dihedral(2,4)",
          "group_conjugation(S3)",
          "group_conjugation(D4)",
          "group_conjugation(Z/3)",
          "trivial_qbrace(S3)",
          "trivial_qbrace(taft(2))",
          "rack(cyclic_3)",
          "rack(conj_s3)",
          "flip(4)"};
}

}  // namespace qbw
