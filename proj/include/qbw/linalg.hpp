// Dense exact vectors and matrices over a FieldRef, Kronecker products,
// Gauss-Jordan elimination, RREF subspaces, and sparse column utilities
// for operators too large to hold densely (X^3 endomorphisms).
#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "qbw/field.hpp"

namespace qbw {

// Runs fn(0..n-1), possibly on several threads (capped by QBW_THREADS).
void parallel_for(int n, const std::function<void(int)>& fn);
int worker_count();

using Vec = std::vector<Scalar>;

Vec vec_zero(FieldRef f, int n);
bool vec_is_zero(const Vec& v);
// v += c * w
void vec_axpy(Vec& v, const Scalar& c, const Vec& w);
Vec vec_kron(const Vec& a, const Vec& b);

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldRef f, int rows, int cols);

  static Matrix identity(FieldRef f, int n);

  FieldRef field() const { return f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;  // zero-skip, parallel rows
  Matrix operator-() const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;

  Vec apply(const Vec& v) const;
  Vec row(int i) const;
  Vec col(int j) const;

 private:
  FieldRef f_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

Matrix kron(const Matrix& a, const Matrix& b);

// Permutation operator on a tensor product: dims[i] are the factor
// dimensions in source order; perm[p] names the source factor placed at
// position p of the target.  Basis order is the kron order (left factor
// major): index(i,j) = i*dim_right + j.
Matrix tensor_permutation(FieldRef f, const std::vector<int>& dims, const std::vector<int>& perm);

struct InvertResult {
  std::optional<Matrix> inverse;
  int rank = 0;
};
InvertResult invert(const Matrix& a);

struct RrefResult {
  Matrix mat;
  std::vector<int> pivots;
  int rank = 0;
};
RrefResult rref(const Matrix& a);

int rank(const Matrix& a);

// Basis of ker(a) as matrix columns (cols(a) x nullity).
Matrix nullspace(const Matrix& a);

// Unique solution X of A X = B, if A is square invertible; else nullopt.
std::optional<Matrix> solve_unique(const Matrix& a, const Matrix& b);

// Sorted, zero-free sparse vector.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sparsify(const Vec& v);
Vec densify(FieldRef f, int n, const SparseVec& s);
std::vector<SparseVec> sparse_columns(const Matrix& m);
SparseVec sparse_kron(const SparseVec& a, const SparseVec& b, int bdim);

// Accumulator for building sparse vectors without rescanning the ambient.
class SparseAccum {
 public:
  SparseAccum(FieldRef f, int n);
  void add(int i, const Scalar& c);
  void addmul(int i, const Scalar& a, const Scalar& b);
  // Applies columns: acc += c * col.
  void axpy(const Scalar& c, const SparseVec& col);
  SparseVec take();  // resets the accumulator
  void reset();

 private:
  FieldRef f_;
  std::vector<Scalar> buf_;
  std::vector<int> touched_;
  std::vector<char> mark_;
};

// apply a column-extracted operator to a sparse vector
SparseVec sparse_apply(const std::vector<SparseVec>& cols, const SparseVec& v, SparseAccum& acc);

// Row-reduced echelon subspace of a fixed ambient coordinate space.
class Subspace {
 public:
  static Subspace zero(FieldRef f, int ambient);
  static Subspace full(FieldRef f, int ambient);
  // Rows of `candidates` span the subspace.
  static Subspace from_rows(const Matrix& candidates);

  FieldRef field() const { return f_; }
  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }  // dim x ambient, RREF
  const std::vector<int>& pivots() const { return pivots_; }

  // v with pivot coordinates eliminated; zero iff v is a member.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  std::vector<int> complement() const;  // non-pivot coordinates, ascending

 private:
  FieldRef f_ = nullptr;
  int ambient_ = 0;
  Matrix basis_;
  std::vector<int> pivots_;
};

Scalar random_scalar(FieldRef f, std::mt19937_64& rng);
Matrix random_matrix(FieldRef f, int rows, int cols, std::mt19937_64& rng);

}  // namespace qbw
