#include "qbw/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace qbw {

namespace polyq {

Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

bool is_zero(const Poly& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trim(std::move(r));
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return trim(std::move(r));
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return trim(std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  Poly bb = trim(b);
  if (bb.empty()) throw Error("PolyDivision", "division by zero polynomial");
  Poly rem = trim(a);
  Poly quo;
  if (rem.size() >= bb.size()) {
    quo.assign(rem.size() - bb.size() + 1, mpq_class(0));
    const mpq_class& lead = bb.back();
    for (size_t shift = quo.size(); shift-- > 0;) {
      size_t top = shift + bb.size() - 1;
      if (rem[top] == 0) continue;
      mpq_class q = rem[top] / lead;
      quo[shift] = q;
      for (size_t j = 0; j < bb.size(); ++j) rem[shift + j] -= q * bb[j];
    }
  }
  return {trim(std::move(quo)), trim(std::move(rem))};
}

Poly divexact(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw Error("PolyDivision", "nonzero remainder in exact division");
  return q;
}

Poly t_pow_minus_one(uint64_t n) {
  Poly p(n + 1, mpq_class(0));
  p[0] = -1;
  p[n] = 1;
  return p;
}

}  // namespace polyq

polyq::Poly cyclotomic_polynomial(uint64_t n) {
  static std::mutex mu;
  static std::map<uint64_t, polyq::Poly> memo;
  if (n == 0) throw Error("BadParams", "cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::vector<uint64_t> stack{n};
  while (!stack.empty()) {
    uint64_t m = stack.back();
    if (memo.count(m)) {
      stack.pop_back();
      continue;
    }
    if (m == 1) {
      memo[1] = polyq::Poly{mpq_class(-1), mpq_class(1)};
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (uint64_t d = 1; d < m; ++d)
      if (m % d == 0 && !memo.count(d)) {
        stack.push_back(d);
        ready = false;
      }
    if (!ready) continue;
    polyq::Poly q = polyq::t_pow_minus_one(m);
    for (uint64_t d = 1; d < m; ++d)
      if (m % d == 0) q = polyq::divexact(q, memo[d]);
    memo[m] = std::move(q);
    stack.pop_back();
  }
  return memo[n];
}

namespace {

bool is_prime_u64(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t invmod_u64(uint64_t a, uint64_t p) {
  if (a == 0) throw Error("DivisionByZero", "inverse of 0 in F_p");
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a % p);
  while (nr != 0) {
    int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint64_t>(t);
}

mpq_class parse_rational(const std::string& s) {
  std::string t = s;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  if (t.empty()) throw Error("ParseError", "empty scalar literal");
  size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  bool saw_digit = false, saw_slash = false;
  for (; i < t.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      saw_digit = true;
    } else if (t[i] == '/' && !saw_slash && saw_digit) {
      saw_slash = true;
      saw_digit = false;
    } else {
      throw Error("ParseError", "bad rational literal '" + s + "'");
    }
  }
  if (!saw_digit) throw Error("ParseError", "bad rational literal '" + s + "'");
  mpq_class q(t);
  q.canonicalize();
  return q;
}

// Extended Euclid in Q[t]: returns (g, u) with u*a + v*b = g, g = gcd.
std::pair<polyq::Poly, polyq::Poly> poly_egcd_u(const polyq::Poly& a, const polyq::Poly& b) {
  polyq::Poly r0 = polyq::trim(a), r1 = polyq::trim(b);
  polyq::Poly u0{mpq_class(1)}, u1{};
  while (!r1.empty()) {
    auto [q, r2] = polyq::divmod(r0, r1);
    polyq::Poly u2 = polyq::sub(u0, polyq::mul(q, u1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  return {r0, u0};
}

std::string trim_ws(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

// ---------------------------------------------------------------- Field

FieldRef Field::rationals() {
  static Field* f = [] {
    auto* x = new Field();
    x->kind = FieldKind::rationals;
    return x;
  }();
  return f;
}

FieldRef Field::prime(uint64_t p) {
  static std::mutex mu;
  static std::map<uint64_t, Field*> reg;
  if (!is_prime_u64(p)) throw Error("BadParams", "not a prime: " + std::to_string(p));
  if (p >> 62) throw Error("BadParams", "prime modulus too large");
  std::lock_guard<std::mutex> lock(mu);
  auto it = reg.find(p);
  if (it != reg.end()) return it->second;
  auto* f = new Field();
  f->kind = FieldKind::prime;
  f->p = p;
  reg[p] = f;
  return f;
}

FieldRef Field::cyclotomic(uint64_t n) {
  static std::mutex mu;
  static std::map<uint64_t, Field*> reg;
  if (n == 0) throw Error("BadParams", "cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = reg.find(n);
  if (it != reg.end()) return it->second;
  auto* f = new Field();
  f->kind = FieldKind::cyclotomic;
  f->n = n;
  f->phi = cyclotomic_polynomial(n);
  f->deg = f->phi.size() - 1;
  // red_[k] = t^(deg+k) reduced mod Phi_n; enough rows for degree-(2deg-2) products.
  if (f->deg >= 2) {
    polyq::Poly cur(f->deg, mpq_class(0));
    for (size_t j = 0; j < f->deg; ++j) cur[j] = -f->phi[j];
    f->red_.push_back(cur);
    for (size_t k = 1; k + 1 < f->deg; ++k) {
      polyq::Poly nxt(f->deg, mpq_class(0));
      mpq_class overflow = cur[f->deg - 1];
      for (size_t j = f->deg - 1; j >= 1; --j) nxt[j] = cur[j - 1];
      nxt[0] = 0;
      if (overflow != 0)
        for (size_t j = 0; j < f->deg; ++j) nxt[j] += overflow * f->red_[0][j];
      f->red_.push_back(nxt);
      cur = std::move(nxt);
    }
  }
  reg[n] = f;
  return f;
}

FieldRef Field::parse_spec(const std::string& s) {
  std::istringstream in(trim_ws(s));
  std::string kind;
  in >> kind;
  if (kind == "rationals") {
    std::string extra;
    if (in >> extra) throw Error("ParseError", "bad field spec '" + s + "'");
    return rationals();
  }
  if (kind == "prime" || kind == "cyclotomic") {
    long long v = -1;
    if (!(in >> v) || v <= 0) throw Error("ParseError", "bad field spec '" + s + "'");
    std::string extra;
    if (in >> extra) throw Error("ParseError", "bad field spec '" + s + "'");
    return kind == "prime" ? prime(static_cast<uint64_t>(v)) : cyclotomic(static_cast<uint64_t>(v));
  }
  throw Error("ParseError", "bad field spec '" + s + "'");
}

std::string Field::spec_string() const {
  switch (kind) {
    case FieldKind::rationals: return "rationals";
    case FieldKind::prime: return "prime " + std::to_string(p);
    case FieldKind::cyclotomic: return "cyclotomic " + std::to_string(n);
  }
  return "";
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long v) const {
  Scalar s;
  s.f_ = this;
  switch (kind) {
    case FieldKind::rationals: s.q_ = v; break;
    case FieldKind::prime: {
      int64_t m = static_cast<int64_t>(v % static_cast<long>(p));
      if (m < 0) m += static_cast<int64_t>(p);
      s.r_ = static_cast<uint64_t>(m);
      break;
    }
    case FieldKind::cyclotomic: {
      s.c_.assign(deg, mpq_class(0));
      s.c_[0] = v;
      break;
    }
  }
  return s;
}

Scalar Field::from_mpq(const mpq_class& q) const {
  Scalar s;
  s.f_ = this;
  switch (kind) {
    case FieldKind::rationals: s.q_ = q; s.q_.canonicalize(); break;
    case FieldKind::prime: {
      uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
      uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
      if (den == 0)
        throw Error("CharacteristicClash",
                    "denominator of " + q.get_str() + " vanishes mod " + std::to_string(p));
      s.r_ = mulmod_u64(num, invmod_u64(den, p), p);
      break;
    }
    case FieldKind::cyclotomic: {
      s.c_.assign(deg, mpq_class(0));
      s.c_[0] = q;
      s.c_[0].canonicalize();
      break;
    }
  }
  return s;
}

Scalar Field::zeta(long k) const {
  if (kind != FieldKind::cyclotomic) throw Error("FieldMismatch", "zeta outside a cyclotomic field");
  long m = k % static_cast<long>(n);
  if (m < 0) m += static_cast<long>(n);
  polyq::Poly t(static_cast<size_t>(m) + 1, mpq_class(0));
  t.back() = 1;
  auto [q, r] = polyq::divmod(t, phi);
  (void)q;
  Scalar s;
  s.f_ = this;
  s.c_.assign(deg, mpq_class(0));
  for (size_t i = 0; i < r.size(); ++i) s.c_[i] = r[i];
  return s;
}

// ---------------------------------------------------------------- Scalar

void Scalar::check_same(const Scalar& o) const {
  if (f_ == nullptr || o.f_ == nullptr) throw Error("FieldMismatch", "detached scalar");
  if (f_ != o.f_)
    throw Error("FieldMismatch", f_->spec_string() + " vs " + o.f_->spec_string());
}

bool Scalar::is_zero() const {
  if (!f_) throw Error("FieldMismatch", "detached scalar");
  switch (f_->kind) {
    case FieldKind::rationals: return q_ == 0;
    case FieldKind::prime: return r_ == 0;
    case FieldKind::cyclotomic:
      for (const auto& c : c_)
        if (c != 0) return false;
      return true;
  }
  return false;
}

bool Scalar::is_one() const {
  if (!f_) throw Error("FieldMismatch", "detached scalar");
  switch (f_->kind) {
    case FieldKind::rationals: return q_ == 1;
    case FieldKind::prime: return r_ == 1 % f_->p;
    case FieldKind::cyclotomic:
      if (c_[0] != 1) return false;
      for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
      return true;
  }
  return false;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r = *this;
  r += o;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  switch (f_->kind) {
    case FieldKind::rationals: q_ += o.q_; break;
    case FieldKind::prime: {
      r_ += o.r_;
      if (r_ >= f_->p) r_ -= f_->p;
      break;
    }
    case FieldKind::cyclotomic:
      for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
      break;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  switch (f_->kind) {
    case FieldKind::rationals: q_ -= o.q_; break;
    case FieldKind::prime: {
      r_ = (r_ >= o.r_) ? r_ - o.r_ : r_ + f_->p - o.r_;
      break;
    }
    case FieldKind::cyclotomic:
      for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
      break;
  }
  return *this;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r = *this;
  r -= o;
  return r;
}

Scalar Scalar::operator-() const {
  if (!f_) throw Error("FieldMismatch", "detached scalar");
  Scalar r = *this;
  switch (f_->kind) {
    case FieldKind::rationals: r.q_ = -r.q_; break;
    case FieldKind::prime: r.r_ = (r.r_ == 0) ? 0 : f_->p - r.r_; break;
    case FieldKind::cyclotomic:
      for (auto& c : r.c_) c = -c;
      break;
  }
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar r;
  r.f_ = f_;
  switch (f_->kind) {
    case FieldKind::rationals: r.q_ = q_ * o.q_; break;
    case FieldKind::prime: r.r_ = mulmod_u64(r_, o.r_, f_->p); break;
    case FieldKind::cyclotomic: {
      size_t d = f_->deg;
      r.c_.assign(d, mpq_class(0));
      if (d == 1) {
        r.c_[0] = c_[0] * o.c_[0];
        break;
      }
      std::vector<mpq_class> conv(2 * d - 1, mpq_class(0));
      for (size_t i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j) {
          if (o.c_[j] == 0) continue;
          conv[i + j] += c_[i] * o.c_[j];
        }
      }
      for (size_t k = 2 * d - 2; k >= d; --k) {
        if (conv[k] != 0) {
          const auto& row = f_->red_[k - d];
          for (size_t j = 0; j < d; ++j)
            if (row[j] != 0) conv[j] += conv[k] * row[j];
        }
        if (k == d) break;
      }
      for (size_t j = 0; j < d; ++j) r.c_[j] = conv[j];
      break;
    }
  }
  return r;
}

void Scalar::addmul(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  check_same(a);
  switch (f_->kind) {
    case FieldKind::rationals: q_ += a.q_ * b.q_; break;
    case FieldKind::prime: {
      r_ += mulmod_u64(a.r_, b.r_, f_->p);
      if (r_ >= f_->p) r_ -= f_->p;
      break;
    }
    case FieldKind::cyclotomic: *this += a * b; break;
  }
}

Scalar Scalar::inv() const {
  if (!f_) throw Error("FieldMismatch", "detached scalar");
  if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
  Scalar r;
  r.f_ = f_;
  switch (f_->kind) {
    case FieldKind::rationals: r.q_ = 1 / q_; break;
    case FieldKind::prime: r.r_ = invmod_u64(r_, f_->p); break;
    case FieldKind::cyclotomic: {
      polyq::Poly a(c_.begin(), c_.end());
      a = polyq::trim(std::move(a));
      auto [g, u] = poly_egcd_u(a, f_->phi);
      if (g.size() != 1)
        throw Error("DivisionByZero", "non-unit in cyclotomic field (gcd degree > 0)");
      // u*a = g mod Phi; scale to 1 and reduce.
      for (auto& c : u) c /= g[0];
      auto [q, rem] = polyq::divmod(u, f_->phi);
      (void)q;
      r.c_.assign(f_->deg, mpq_class(0));
      for (size_t i = 0; i < rem.size(); ++i) r.c_[i] = rem[i];
      break;
    }
  }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  switch (f_->kind) {
    case FieldKind::rationals: return q_ == o.q_;
    case FieldKind::prime: return r_ == o.r_;
    case FieldKind::cyclotomic: return c_ == o.c_;
  }
  return false;
}

const mpq_class& Scalar::rat() const {
  if (!f_ || f_->kind != FieldKind::rationals)
    throw Error("FieldMismatch", "rat() outside the rationals");
  return q_;
}

std::string Scalar::to_string() const {
  if (!f_) throw Error("FieldMismatch", "detached scalar");
  switch (f_->kind) {
    case FieldKind::rationals: return q_.get_str();
    case FieldKind::prime: return std::to_string(r_) + " mod " + std::to_string(f_->p);
    case FieldKind::cyclotomic: {
      std::string out;
      for (size_t i = 0; i < c_.size(); ++i) {
        if (i) out += " + ";
        out += c_[i].get_str();
        if (i == 1) out += "*z";
        if (i >= 2) out += "*z^" + std::to_string(i);
      }
      out += " (zeta " + std::to_string(f_->n) + ")";
      return out;
    }
  }
  return "";
}

std::string Field::to_string(const Scalar& s) const { return s.to_string(); }

Scalar Field::parse(const std::string& literal) const {
  std::string lit = trim_ws(literal);
  switch (kind) {
    case FieldKind::rationals: return from_mpq(parse_rational(lit));
    case FieldKind::prime: {
      size_t pos = lit.find(" mod ");
      if (pos == std::string::npos)
        throw Error("ParseError", "prime-field literal must be 'a mod p': '" + lit + "'");
      mpq_class a = parse_rational(lit.substr(0, pos));
      if (a.get_den() != 1) throw Error("ParseError", "residue must be an integer: '" + lit + "'");
      std::string ps = trim_ws(lit.substr(pos + 5));
      if (ps != std::to_string(p))
        throw Error("ParseError", "literal modulus '" + ps + "' does not match field " + spec_string());
      return from_mpq(a);
    }
    case FieldKind::cyclotomic: {
      std::string body = lit;
      size_t pos = lit.rfind(" (zeta ");
      if (pos != std::string::npos) {
        if (lit.back() != ')') throw Error("ParseError", "bad cyclotomic literal '" + lit + "'");
        std::string ns = trim_ws(lit.substr(pos + 7, lit.size() - pos - 8));
        if (ns != std::to_string(n))
          throw Error("ParseError", "literal order '" + ns + "' does not match field " + spec_string());
        body = trim_ws(lit.substr(0, pos));
      }
      Scalar acc = zero();
      size_t start = 0;
      while (start <= body.size()) {
        size_t plus = body.find(" + ", start);
        std::string term =
            trim_ws(plus == std::string::npos ? body.substr(start) : body.substr(start, plus - start));
        if (term.empty()) throw Error("ParseError", "empty term in '" + lit + "'");
        mpq_class coef = 1;
        long power = 0;
        size_t star = term.find('*');
        std::string zpart;
        if (star != std::string::npos) {
          coef = parse_rational(term.substr(0, star));
          zpart = trim_ws(term.substr(star + 1));
        } else if (!term.empty() && (term[0] == 'z' || (term[0] == '-' && term.size() > 1 && term[1] == 'z'))) {
          if (term[0] == '-') {
            coef = -1;
            zpart = trim_ws(term.substr(1));
          } else {
            zpart = term;
          }
        } else {
          coef = parse_rational(term);
        }
        if (!zpart.empty()) {
          if (zpart == "z") {
            power = 1;
          } else if (zpart.rfind("z^", 0) == 0) {
            std::string ks = zpart.substr(2);
            for (char ch : ks)
              if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw Error("ParseError", "bad power in '" + lit + "'");
            if (ks.empty()) throw Error("ParseError", "bad power in '" + lit + "'");
            power = std::stol(ks);
          } else {
            throw Error("ParseError", "bad term '" + term + "' in '" + lit + "'");
          }
        }
        acc += from_mpq(coef) * zeta(power);
        if (plus == std::string::npos) break;
        start = plus + 3;
      }
      return acc;
    }
  }
  throw Error("ParseError", "unreachable");
}

}  // namespace qbw
