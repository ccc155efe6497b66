#include "qbw/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace qbw {

int worker_count() {
  static int cached = [] {
    unsigned hw = std::thread::hardware_concurrency();
    int w = hw ? static_cast<int>(hw) : 1;
    if (const char* env = std::getenv("QBW_THREADS")) {
      int cap = std::atoi(env);
      if (cap >= 1) w = std::min(w, cap);
    }
    return std::max(w, 1);
  }();
  return cached;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(worker_count(), n);
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto run = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

Vec vec_zero(FieldRef f, int n) { return Vec(static_cast<size_t>(n), f->zero()); }

bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

void vec_axpy(Vec& v, const Scalar& c, const Vec& w) {
  if (c.is_zero()) return;
  for (size_t i = 0; i < v.size(); ++i)
    if (!w[i].is_zero()) v[i].addmul(c, w[i]);
}

Vec vec_kron(const Vec& a, const Vec& b) {
  FieldRef f = a.empty() ? (b.empty() ? nullptr : b[0].field()) : a[0].field();
  Vec r = vec_zero(f, static_cast<int>(a.size() * b.size()));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i * b.size() + j] = a[i] * b[j];
  }
  return r;
}

Matrix::Matrix(FieldRef f, int rows, int cols)
    : f_(f), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, f->zero()) {}

Matrix Matrix::identity(FieldRef f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || f_ != o.f_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error("DimensionMismatch", "matrix add shapes differ");
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error("DimensionMismatch", "matrix sub shapes differ");
  Matrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(f_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].is_zero()) r.a_[i] = a_[i] * c;
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("DimensionMismatch", "matrix mul shapes differ");
  Matrix r(f_, rows_, o.cols_);
  parallel_for(rows_, [&](int i) {
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      const Scalar* brow = &o.a_[static_cast<size_t>(k) * o.cols_];
      Scalar* rrow = &r.a_[static_cast<size_t>(i) * o.cols_];
      for (int j = 0; j < o.cols_; ++j)
        if (!brow[j].is_zero()) rrow[j].addmul(aik, brow[j]);
    }
  });
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(f_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Vec Matrix::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw Error("DimensionMismatch", "matrix apply shape");
  Vec r = vec_zero(f_, rows_);
  for (int j = 0; j < cols_; ++j) {
    if (v[j].is_zero()) continue;
    for (int i = 0; i < rows_; ++i)
      if (!at(i, j).is_zero()) r[i].addmul(at(i, j), v[j]);
  }
  return r;
}

Vec Matrix::row(int i) const {
  Vec r(a_.begin() + static_cast<size_t>(i) * cols_, a_.begin() + static_cast<size_t>(i + 1) * cols_);
  return r;
}

Vec Matrix::col(int j) const {
  Vec r = vec_zero(f_, rows_);
  for (int i = 0; i < rows_; ++i) r[i] = at(i, j);
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int i1 = 0; i1 < a.rows(); ++i1)
    for (int j1 = 0; j1 < a.cols(); ++j1) {
      const Scalar& v = a.at(i1, j1);
      if (v.is_zero()) continue;
      for (int i2 = 0; i2 < b.rows(); ++i2)
        for (int j2 = 0; j2 < b.cols(); ++j2)
          if (!b.at(i2, j2).is_zero())
            r.at(i1 * b.rows() + i2, j1 * b.cols() + j2) = v * b.at(i2, j2);
    }
  return r;
}

Matrix tensor_permutation(FieldRef f, const std::vector<int>& dims, const std::vector<int>& perm) {
  int k = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) total *= d;
  std::vector<long> stride_src(k, 1);
  for (int t = k - 2; t >= 0; --t) stride_src[t] = stride_src[t + 1] * dims[t + 1];
  std::vector<long> stride_dst(k, 1);
  for (int p = k - 2; p >= 0; --p) stride_dst[p] = stride_dst[p + 1] * dims[perm[p + 1]];
  Matrix m(f, static_cast<int>(total), static_cast<int>(total));
  std::vector<int> idx(k, 0);
  for (long src = 0; src < total; ++src) {
    long rem = src;
    for (int t = 0; t < k; ++t) {
      idx[t] = static_cast<int>(rem / stride_src[t]);
      rem %= stride_src[t];
    }
    long dst = 0;
    for (int p = 0; p < k; ++p) dst += idx[perm[p]] * stride_dst[p];
    m.at(static_cast<int>(dst), static_cast<int>(src)) = f->one();
  }
  return m;
}

namespace {

// In-place Gauss-Jordan on `m`, reducing the first `lead_cols` columns.
// Returns pivot columns.
std::vector<int> gauss_jordan(Matrix& m, int lead_cols) {
  std::vector<int> pivots;
  int r = 0;
  FieldRef f = m.field();
  for (int c = 0; c < lead_cols && r < m.rows(); ++c) {
    int prow = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        prow = i;
        break;
      }
    if (prow < 0) continue;
    if (prow != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(prow, j), m.at(r, j));
    Scalar inv = m.at(r, c).inv();
    for (int j = c; j < m.cols(); ++j)
      if (!m.at(r, j).is_zero()) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar factor = m.at(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (!m.at(r, j).is_zero()) m.at(i, j) -= factor * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  (void)f;
  return pivots;
}

}  // namespace

InvertResult invert(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error("DimensionMismatch", "invert needs a square matrix");
  int n = a.rows();
  Matrix aug(a.field(), n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = a.field()->one();
  }
  auto pivots = gauss_jordan(aug, n);
  InvertResult res;
  res.rank = static_cast<int>(pivots.size());
  if (res.rank < n) return res;
  Matrix inv(a.field(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  res.inverse = std::move(inv);
  return res;
}

RrefResult rref(const Matrix& a) {
  RrefResult r;
  r.mat = a;
  r.pivots = gauss_jordan(r.mat, a.cols());
  r.rank = static_cast<int>(r.pivots.size());
  return r;
}

int rank(const Matrix& a) { return rref(a).rank; }

Matrix nullspace(const Matrix& a) {
  RrefResult r = rref(a);
  FieldRef f = a.field();
  std::vector<char> is_pivot(a.cols(), 0);
  for (int c : r.pivots) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(f, a.cols(), static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis.at(fc, static_cast<int>(k)) = f->one();
    for (size_t prow = 0; prow < r.pivots.size(); ++prow)
      basis.at(r.pivots[prow], static_cast<int>(k)) = -r.mat.at(static_cast<int>(prow), fc);
  }
  return basis;
}

std::optional<Matrix> solve_unique(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("DimensionMismatch", "solve shapes differ");
  if (a.rows() != a.cols()) throw Error("DimensionMismatch", "solve_unique needs square A");
  auto inv = invert(a);
  if (!inv.inverse) return std::nullopt;
  return *inv.inverse * b;
}

SparseVec sparsify(const Vec& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(static_cast<int>(i), v[i]);
  return s;
}

Vec densify(FieldRef f, int n, const SparseVec& s) {
  Vec v = vec_zero(f, n);
  for (const auto& [i, c] : s) v[i] = c;
  return v;
}

std::vector<SparseVec> sparse_columns(const Matrix& m) {
  std::vector<SparseVec> cols(m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) cols[j].emplace_back(i, m.at(i, j));
  return cols;
}

SparseVec sparse_kron(const SparseVec& a, const SparseVec& b, int bdim) {
  SparseVec r;
  r.reserve(a.size() * b.size());
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      Scalar v = x * y;
      if (!v.is_zero()) r.emplace_back(i * bdim + j, std::move(v));
    }
  std::sort(r.begin(), r.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  return r;
}

SparseAccum::SparseAccum(FieldRef f, int n)
    : f_(f), buf_(static_cast<size_t>(n), f->zero()), mark_(static_cast<size_t>(n), 0) {}

void SparseAccum::add(int i, const Scalar& c) {
  if (c.is_zero()) return;
  if (!mark_[i]) {
    mark_[i] = 1;
    touched_.push_back(i);
    buf_[i] = c;
  } else {
    buf_[i] += c;
  }
}

void SparseAccum::addmul(int i, const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (!mark_[i]) {
    mark_[i] = 1;
    touched_.push_back(i);
    buf_[i] = a * b;
  } else {
    buf_[i].addmul(a, b);
  }
}

void SparseAccum::axpy(const Scalar& c, const SparseVec& col) {
  if (c.is_zero()) return;
  for (const auto& [i, v] : col) addmul(i, c, v);
}

SparseVec SparseAccum::take() {
  std::sort(touched_.begin(), touched_.end());
  SparseVec out;
  out.reserve(touched_.size());
  for (int i : touched_) {
    if (!buf_[i].is_zero()) out.emplace_back(i, buf_[i]);
    buf_[i] = f_->zero();
    mark_[i] = 0;
  }
  touched_.clear();
  return out;
}

void SparseAccum::reset() {
  for (int i : touched_) {
    buf_[i] = f_->zero();
    mark_[i] = 0;
  }
  touched_.clear();
}

SparseVec sparse_apply(const std::vector<SparseVec>& cols, const SparseVec& v, SparseAccum& acc) {
  for (const auto& [j, c] : v) acc.axpy(c, cols[j]);
  return acc.take();
}

Subspace Subspace::zero(FieldRef f, int ambient) {
  Subspace s;
  s.f_ = f;
  s.ambient_ = ambient;
  s.basis_ = Matrix(f, 0, ambient);
  return s;
}

Subspace Subspace::full(FieldRef f, int ambient) {
  Subspace s;
  s.f_ = f;
  s.ambient_ = ambient;
  s.basis_ = Matrix::identity(f, ambient);
  for (int i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Subspace Subspace::from_rows(const Matrix& candidates) {
  RrefResult r = rref(candidates);
  Subspace s;
  s.f_ = candidates.field();
  s.ambient_ = candidates.cols();
  s.pivots_ = r.pivots;
  s.basis_ = Matrix(s.f_, r.rank, s.ambient_);
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < s.ambient_; ++j) s.basis_.at(i, j) = r.mat.at(i, j);
  return s;
}

Vec Subspace::reduce(const Vec& v) const {
  Vec w = v;
  for (int r = 0; r < basis_.rows(); ++r) {
    Scalar factor = w[pivots_[r]];
    if (factor.is_zero()) continue;
    for (int j = 0; j < ambient_; ++j)
      if (!basis_.at(r, j).is_zero()) w[j] -= factor * basis_.at(r, j);
  }
  return w;
}

bool Subspace::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  for (int r = 0; r < o.basis_.rows(); ++r)
    if (!contains(o.basis_.row(r))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && pivots_ == o.pivots_ && basis_ == o.basis_;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw Error("DimensionMismatch", "subspace sum ambients differ");
  Matrix stacked(f_, dim() + o.dim(), ambient_);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < ambient_; ++j) stacked.at(i, j) = basis_.at(i, j);
  for (int i = 0; i < o.dim(); ++i)
    for (int j = 0; j < ambient_; ++j) stacked.at(dim() + i, j) = o.basis_.at(i, j);
  return from_rows(stacked);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw Error("DimensionMismatch", "subspace intersect ambients differ");
  // Solve B1^T a = B2^T b: nullspace of [B1^T | -B2^T].
  int d1 = dim(), d2 = o.dim();
  if (d1 == 0 || d2 == 0) return zero(f_, ambient_);
  Matrix m(f_, ambient_, d1 + d2);
  for (int j = 0; j < d1; ++j)
    for (int i = 0; i < ambient_; ++i) m.at(i, j) = basis_.at(j, i);
  for (int j = 0; j < d2; ++j)
    for (int i = 0; i < ambient_; ++i) m.at(i, d1 + j) = -o.basis_.at(j, i);
  Matrix ns = nullspace(m);
  Matrix rows(f_, ns.cols(), ambient_);
  for (int k = 0; k < ns.cols(); ++k)
    for (int j = 0; j < d1; ++j) {
      if (ns.at(j, k).is_zero()) continue;
      for (int i = 0; i < ambient_; ++i)
        if (!basis_.at(j, i).is_zero()) rows.at(k, i).addmul(ns.at(j, k), basis_.at(j, i));
    }
  return from_rows(rows);
}

std::vector<int> Subspace::complement() const {
  std::vector<char> is_pivot(ambient_, 0);
  for (int c : pivots_) is_pivot[c] = 1;
  std::vector<int> out;
  for (int c = 0; c < ambient_; ++c)
    if (!is_pivot[c]) out.push_back(c);
  return out;
}

Scalar random_scalar(FieldRef f, std::mt19937_64& rng) {
  auto small = [&rng](long lo, long hi) {
    return static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)) + lo;
  };
  switch (f->kind) {
    case FieldKind::rationals: {
      mpq_class q(small(-9, 9), small(1, 9));
      q.canonicalize();
      return f->from_mpq(q);
    }
    case FieldKind::prime:
      return f->from_int(small(0, static_cast<long>(f->p - 1)));
    case FieldKind::cyclotomic: {
      Scalar acc = f->zero();
      for (size_t k = 0; k < f->deg; ++k) {
        mpq_class q(small(-9, 9), small(1, 9));
        q.canonicalize();
        acc += f->from_mpq(q) * f->zeta(static_cast<long>(k));
      }
      return acc;
    }
  }
  return f->zero();
}

Matrix random_matrix(FieldRef f, int rows, int cols, std::mt19937_64& rng) {
  Matrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = random_scalar(f, rng);
  return m;
}

}  // namespace qbw
