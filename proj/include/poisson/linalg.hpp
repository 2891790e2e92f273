#ifndef POISSON_LINALG_HPP
#define POISSON_LINALG_HPP

#include <functional>
#include <optional>
#include <vector>

#include "poisson/field.hpp"

namespace poisson {

using Vec = std::vector<Fel>;

Vec zero_vec(const Field* f, int n);
Vec unit_vec(const Field* f, int n, int i);
bool vec_is_zero(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Fel& c, const Vec& v);
/// Lexicographic comparison under the field's element tie-break order.
bool vec_less(const Vec& a, const Vec& b);

struct MatrixRref;

/// Dense matrix over an exact field. Row-major, immutable in spirit: the
/// mutating helpers exist for construction only.
class Matrix {
 public:
  Matrix(const Field* f, int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field* field() const { return f_; }

  Fel& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Fel& at(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

  Vec row(int r) const;
  void set_row(int r, const Vec& v);

  static Matrix identity(const Field* f, int n);
  static Matrix from_rows(const Field* f, const std::vector<Vec>& rows, int cols);

  Matrix operator*(const Matrix& o) const;
  Vec apply(const Vec& v) const;  // matrix * column vector
  Matrix transpose() const;
  Matrix power(int k) const;
  bool operator==(const Matrix& o) const;

  /// Stacks o below this matrix.
  Matrix vstack(const Matrix& o) const;

  /// Reduced row echelon form; deterministic (first nonzero pivot per column).
  MatrixRref rref() const;

  std::optional<Matrix> inverse() const;

 private:
  int rows_, cols_;
  const Field* f_;
  std::vector<Fel> e_;
};

struct MatrixRref {
  Matrix reduced;
  int rank;
  std::vector<int> pivots;
};

/// A subspace of F^n held as its unique RREF basis. Canonical: two Subspaces
/// are equal iff their basis entries are identical.
class Subspace {
 public:
  static Subspace zero(const Field* f, int ambient);
  static Subspace full(const Field* f, int ambient);
  static Subspace span(const Field* f, int ambient, const std::vector<Vec>& vectors);
  /// Adopts rows already known to be in RREF with the given pivots.
  static Subspace from_rref(Matrix rref_rows, std::vector<int> pivots);

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Field* field() const { return basis_.field(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  Vec basis_row(int i) const { return basis_.row(i); }

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  /// Residual of v after eliminating pivot coordinates against the basis.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;

  /// Deterministic order on equal-ambient subspaces: by dim, then pivot
  /// columns, then basis entries. Used only for canonical tie-breaks.
  static bool less(const Subspace& a, const Subspace& b);

 private:
  Subspace(Matrix basis, std::vector<int> pivots, int ambient)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  int ambient_;
  Matrix basis_;
  std::vector<int> pivots_;
};

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);

/// Null space of m acting on column vectors, as a canonical Subspace of F^cols.
Subspace kernel(const Matrix& m);
/// Column space of m, as a Subspace of F^rows.
Subspace image(const Matrix& m);

/// Number of k-dimensional subspaces of F_q^n (Gaussian binomial coefficient).
mpz_class gaussian_binomial(int n, int k, const mpz_class& q);

/// Streams every k-dimensional subspace of F^n exactly once, in lexicographic
/// order of (pivot columns, free entries); free entries are ordered row-major
/// with the rightmost position varying fastest. Finite fields only.
class SubspaceStream {
 public:
  SubspaceStream(const Field* f, int n, int k);
  std::optional<Subspace> next();

  /// The pivot patterns (combinations of k columns in lex order) partition the
  /// stream into independent work units; pattern_count/stream_for_pattern give
  /// that partition for deterministic parallel runs.
  static std::vector<std::vector<int>> pivot_patterns(int n, int k);

 private:
  void load_pattern();
  Subspace materialize() const;
  bool advance_odometer();

  const Field* f_;
  int n_, k_;
  std::vector<std::vector<int>> patterns_;
  std::size_t pattern_idx_;
  std::vector<std::pair<int, int>> free_pos_;  // (row, col) in row-major order
  std::vector<std::int64_t> odo_;
  bool exhausted_;
  bool fresh_pattern_;
};

/// Convenience: all subspaces of every dimension 0..n in order of dimension.
void for_each_subspace(const Field* f, int n, const std::function<void(const Subspace&)>& fn);

}  // namespace poisson

#endif
