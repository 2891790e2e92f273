#include "poisson/linalg.hpp"

#include <algorithm>

namespace poisson {

Vec zero_vec(const Field* f, int n) { return Vec(static_cast<std::size_t>(n), f->zero()); }

Vec unit_vec(const Field* f, int n, int i) {
  Vec v = zero_vec(f, n);
  v[static_cast<std::size_t>(i)] = f->one();
  return v;
}

bool vec_is_zero(const Vec& v) {
  for (const Fel& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

Vec vec_scale(const Fel& c, const Vec& v) {
  Vec r = v;
  for (Fel& x : r) x = c * x;
  return r;
}

bool vec_less(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return Fel::less(a[i], b[i]);
  }
  return a.size() < b.size();
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(const Field* f, int rows, int cols)
    : rows_(rows), cols_(cols), f_(f), e_(static_cast<std::size_t>(rows) * cols, f->zero()) {}

Vec Matrix::row(int r) const {
  Vec v;
  v.reserve(static_cast<std::size_t>(cols_));
  for (int c = 0; c < cols_; ++c) v.push_back(at(r, c));
  return v;
}

void Matrix::set_row(int r, const Vec& v) {
  for (int c = 0; c < cols_; ++c) at(r, c) = v[static_cast<std::size_t>(c)];
}

Matrix Matrix::identity(const Field* f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Matrix Matrix::from_rows(const Field* f, const std::vector<Vec>& rows, int cols) {
  Matrix m(f, static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r) m.set_row(r, rows[static_cast<std::size_t>(r)]);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || f_ != o.f_) fail(ErrorCode::AmbientMismatch, "matrix product shape mismatch");
  Matrix r(f_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Fel& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + a * o.at(k, j);
    }
  return r;
}

Vec Matrix::apply(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) fail(ErrorCode::AmbientMismatch, "matrix apply shape mismatch");
  Vec r = zero_vec(f_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (!at(i, j).is_zero()) r[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)] + at(i, j) * v[static_cast<std::size_t>(j)];
    }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(f_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::power(int k) const {
  if (rows_ != cols_) fail(ErrorCode::AmbientMismatch, "power of non-square matrix");
  Matrix r = identity(f_, rows_);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || f_ != o.f_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

Matrix Matrix::vstack(const Matrix& o) const {
  if (cols_ != o.cols_ || f_ != o.f_) fail(ErrorCode::AmbientMismatch, "vstack shape mismatch");
  Matrix r(f_, rows_ + o.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
  return r;
}

MatrixRref Matrix::rref() const {
  Matrix m = *this;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int pivot = -1;
    for (int i = r; i < rows_; ++i) {
      if (!m.at(i, c).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(r, j));
    Fel inv = m.at(r, c).inverse();
    for (int j = c; j < cols_; ++j) m.at(r, j) = inv * m.at(r, j);
    for (int i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Fel factor = m.at(i, c);
      for (int j = c; j < cols_; ++j) m.at(i, j) = m.at(i, j) - factor * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return MatrixRref{std::move(m), r, std::move(pivots)};
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) fail(ErrorCode::AmbientMismatch, "inverse of non-square matrix");
  Matrix aug(f_, rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = f_->one();
  }
  MatrixRref rr = aug.rref();
  if (rr.rank < rows_ || rr.pivots.back() >= cols_) return std::nullopt;
  Matrix inv(f_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.at(i, j) = rr.reduced.at(i, cols_ + j);
  return inv;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::zero(const Field* f, int ambient) { return Subspace(Matrix(f, 0, ambient), {}, ambient); }

Subspace Subspace::full(const Field* f, int ambient) {
  std::vector<int> piv(static_cast<std::size_t>(ambient));
  for (int i = 0; i < ambient; ++i) piv[static_cast<std::size_t>(i)] = i;
  return Subspace(Matrix::identity(f, ambient), std::move(piv), ambient);
}

Subspace Subspace::span(const Field* f, int ambient, const std::vector<Vec>& vectors) {
  Matrix m = Matrix::from_rows(f, vectors, ambient);
  MatrixRref rr = m.rref();
  Matrix basis(f, rr.rank, ambient);
  for (int i = 0; i < rr.rank; ++i)
    for (int j = 0; j < ambient; ++j) basis.at(i, j) = rr.reduced.at(i, j);
  return Subspace(std::move(basis), std::move(rr.pivots), ambient);
}

Subspace Subspace::from_rref(Matrix rref_rows, std::vector<int> pivots) {
  int ambient = rref_rows.cols();
  return Subspace(std::move(rref_rows), std::move(pivots), ambient);
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && pivots_ == o.pivots_ && basis_ == o.basis_;
}

Vec Subspace::reduce(const Vec& v) const {
  Vec r = v;
  for (int i = 0; i < dim(); ++i) {
    const Fel& c = r[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(i)])];
    if (c.is_zero()) continue;
    Fel factor = c;
    for (int j = 0; j < ambient_; ++j)
      r[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j)] - factor * basis_.at(i, j);
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) fail(ErrorCode::AmbientMismatch, "containment across ambients");
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_row(i))) return false;
  return true;
}

bool Subspace::less(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.ambient_; ++j) {
      if (a.basis_.at(i, j) != b.basis_.at(i, j)) return Fel::less(a.basis_.at(i, j), b.basis_.at(i, j));
    }
  return false;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient() || u.field() != v.field())
    fail(ErrorCode::AmbientMismatch, "sum of subspaces of different spaces");
  std::vector<Vec> rows;
  for (int i = 0; i < u.dim(); ++i) rows.push_back(u.basis_row(i));
  for (int i = 0; i < v.dim(); ++i) rows.push_back(v.basis_row(i));
  return Subspace::span(u.field(), u.ambient(), rows);
}

Subspace kernel(const Matrix& m) {
  MatrixRref rr = m.rref();
  const Field* f = m.field();
  int n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int p : rr.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vec> rows;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    Vec v = zero_vec(f, n);
    v[static_cast<std::size_t>(c)] = f->one();
    for (int i = 0; i < rr.rank; ++i)
      v[static_cast<std::size_t>(rr.pivots[static_cast<std::size_t>(i)])] = -rr.reduced.at(i, c);
    rows.push_back(std::move(v));
  }
  return Subspace::span(f, n, rows);
}

Subspace image(const Matrix& m) {
  std::vector<Vec> rows;
  Matrix t = m.transpose();
  for (int i = 0; i < t.rows(); ++i) rows.push_back(t.row(i));
  return Subspace::span(m.field(), m.rows(), rows);
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient() || u.field() != v.field())
    fail(ErrorCode::AmbientMismatch, "intersection of subspaces of different spaces");
  // U cap V = ann(ann(U) + ann(V)); the annihilator of a row space is the
  // kernel of the matrix, and vice versa, for the standard bilinear form.
  Subspace ku = kernel(u.basis());
  Subspace kv = kernel(v.basis());
  Subspace stacked = subspace_sum(ku, kv);
  return kernel(stacked.basis());
}

// ---------------------------------------------------------------------------
// Enumeration

mpz_class gaussian_binomial(int n, int k, const mpz_class& q) {
  if (k < 0 || k > n) return 0;
  mpz_class num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    mpz_class qn, qk;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n - i));
    mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i + 1));
    num *= qn - 1;
    den *= qk - 1;
  }
  return num / den;
}

std::vector<std::vector<int>> SubspaceStream::pivot_patterns(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  if (k == 0) out = {{}};
  return out;
}

SubspaceStream::SubspaceStream(const Field* f, int n, int k)
    : f_(f), n_(n), k_(k), pattern_idx_(0), exhausted_(false), fresh_pattern_(true) {
  if (!f->finite()) fail(ErrorCode::InfiniteField, "subspace enumeration needs a finite field");
  if (k < 0 || k > n) fail(ErrorCode::BadParams, "subspace dimension out of range");
  patterns_ = pivot_patterns(n, k);
  if (patterns_.empty()) exhausted_ = true;
  else load_pattern();
}

void SubspaceStream::load_pattern() {
  const std::vector<int>& piv = patterns_[pattern_idx_];
  std::vector<bool> is_pivot(static_cast<std::size_t>(n_), false);
  for (int p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
  free_pos_.clear();
  for (int r = 0; r < k_; ++r)
    for (int c = piv[static_cast<std::size_t>(r)] + 1; c < n_; ++c)
      if (!is_pivot[static_cast<std::size_t>(c)]) free_pos_.emplace_back(r, c);
  odo_.assign(free_pos_.size(), 0);
  fresh_pattern_ = true;
}

Subspace SubspaceStream::materialize() const {
  const std::vector<int>& piv = patterns_[pattern_idx_];
  Matrix m(f_, k_, n_);
  for (int r = 0; r < k_; ++r) m.at(r, piv[static_cast<std::size_t>(r)]) = f_->one();
  for (std::size_t i = 0; i < free_pos_.size(); ++i)
    m.at(free_pos_[i].first, free_pos_[i].second) = f_->element_at(odo_[i]);
  return Subspace::from_rref(std::move(m), piv);
}

bool SubspaceStream::advance_odometer() {
  const std::int64_t card = f_->element_count();
  for (std::size_t i = odo_.size(); i-- > 0;) {
    if (++odo_[i] < card) return true;
    odo_[i] = 0;
  }
  return false;
}

std::optional<Subspace> SubspaceStream::next() {
  if (exhausted_) return std::nullopt;
  if (!fresh_pattern_) {
    if (!advance_odometer()) {
      ++pattern_idx_;
      if (pattern_idx_ >= patterns_.size()) {
        exhausted_ = true;
        return std::nullopt;
      }
      load_pattern();
    }
  }
  fresh_pattern_ = false;
  return materialize();
}

void for_each_subspace(const Field* f, int n, const std::function<void(const Subspace&)>& fn) {
  for (int k = 0; k <= n; ++k) {
    SubspaceStream s(f, n, k);
    while (auto sub = s.next()) fn(*sub);
  }
}

}  // namespace poisson
