#ifndef POISSON_ALGEBRA_HPP
#define POISSON_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "poisson/linalg.hpp"

namespace poisson {

/// Which multiplications participate in a subspace-level product or predicate.
enum class ProductKind { Dot, Bracket, Both };

/// One structure constant: e_i * e_j has coefficient c on e_k.
/// Storage is normalized to i <= j for the commutative product and i < j for
/// the bracket; symmetry and antisymmetry are enforced by this convention.
struct TensorEntry {
  int i, j, k;
  Fel c;
};

struct AxiomFailureDetail {
  std::string identity;  // "associativity" | "jacobi" | "leibniz"
  int i, j, k;           // failing basis triple, 1-based to match e_1..e_n labels
  Vec left, right;
};

struct AxiomReport {
  bool commutative_ok = true;
  bool antisymmetric_ok = true;
  bool associative_ok = true;
  bool jacobi_ok = true;
  bool leibniz_ok = true;
  std::optional<AxiomFailureDetail> first_failure;

  bool all_ok() const { return commutative_ok && antisymmetric_ok && associative_ok && jacobi_ok && leibniz_ok; }
};

struct SeriesResult {
  std::vector<Subspace> terms;  // descending; ends with 0, or with a repeated stable term
  bool stabilized = false;      // true when the series stalled at a nonzero subspace
  int steps = 0;

  bool reaches_zero() const { return !terms.empty() && terms.back().dim() == 0; }
};

struct SolvabilityClass {
  bool trivial_dot = false;
  bool trivial_bracket = false;
  std::optional<int> solvable_steps;
  std::optional<int> nilpotent_steps;
};

struct SubspaceFlags {
  bool subalgebra = false;
  bool ideal = false;
  bool abelian = false;
};

/// Finite-dimensional Poisson algebra given by structure constants over an
/// exact field. Immutable after construction; all operations are pure.
class PoissonAlgebra {
 public:
  /// Normalizes entries (folds (j,i) onto (i,j) with the right sign, merges
  /// duplicates, drops zeros) and precomputes dense product tables.
  /// Indices are 0-based here; diagonal bracket entries are rejected.
  static PoissonAlgebra make(const Field* f, int dim, std::vector<TensorEntry> dot,
                             std::vector<TensorEntry> bracket, std::string name = "");

  int dim() const { return dim_; }
  const Field* field() const { return f_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  const std::vector<TensorEntry>& dot_entries() const { return dot_; }
  const std::vector<TensorEntry>& bracket_entries() const { return bracket_; }
  bool dot_is_zero() const { return dot_.empty(); }
  bool bracket_is_zero() const { return bracket_.empty(); }

  /// Basis products from the precomputed tables.
  const Vec& dot(int i, int j) const { return dot_tab_[static_cast<std::size_t>(i * dim_ + j)]; }
  Vec bracket(int i, int j) const;  // antisymmetric closure of the stored i<j table

  /// Bilinear products of arbitrary coordinate vectors (sparse evaluation).
  Vec dot_vec(const Vec& x, const Vec& y) const;
  Vec bracket_vec(const Vec& x, const Vec& y) const;
  Vec product_vec(const Vec& x, const Vec& y, ProductKind kind) const;

  /// Exhaustive axiom check over all basis triples; records the first failing
  /// triple (lexicographically least, identities tried in the order
  /// associativity, Jacobi, Leibniz). Marks the algebra validated on success.
  const AxiomReport& validate() const;
  bool validated() const { return validated_; }

 private:
  PoissonAlgebra(const Field* f, int dim) : dim_(dim), f_(f) {}

  int dim_;
  const Field* f_;
  std::string name_;
  std::vector<TensorEntry> dot_, bracket_;
  std::vector<Vec> dot_tab_, bracket_tab_;  // dense i*n+j tables, bracket stored for i<j
  mutable bool validated_ = false;
  mutable std::optional<AxiomReport> report_;
};

/// Span of all pairwise products of basis vectors of u and v.
Subspace product_space(const PoissonAlgebra& alg, const Subspace& u, const Subspace& v, ProductKind kind);

SubspaceFlags classify_subspace(const PoissonAlgebra& alg, const Subspace& u, ProductKind kind = ProductKind::Both);

/// N(u) = { x : x*u and [x,u] stay in u }; u must be a subalgebra.
Subspace normalizer(const PoissonAlgebra& alg, const Subspace& u);

struct Centers {
  Subspace lie_center;   // kernel of every bracket adjoint
  Subspace annihilator;  // kernel of every adjoint of either product
};
Centers central_structures(const PoissonAlgebra& alg);

SeriesResult derived_series(const PoissonAlgebra& alg, ProductKind kind = ProductKind::Both);

/// Lower central series by the general convolution formula; for validated
/// algebras under ProductKind::Both the one-step shortcut T*A + [T,A] is
/// computed as well and any disagreement raises FormulaMismatch.
SeriesResult lower_central_series(const PoissonAlgebra& alg, ProductKind kind = ProductKind::Both);

SolvabilityClass solvability_class(const PoissonAlgebra& alg);
bool is_nilpotent(const PoissonAlgebra& alg);
bool is_solvable(const PoissonAlgebra& alg);

/// Matrix of P_x (y -> x*y) or Q_x (y -> [x,y]) in the standard basis.
Matrix adjoint_matrix(const PoissonAlgebra& alg, const Vec& x, ProductKind kind);

/// Joint Fitting decomposition of a commuting family: v0 is the intersection
/// of the generalized kernels ker(phi^n), v1 the sum of the images im(phi^n);
/// v0 and v1 are complementary.
std::pair<Subspace, Subspace> fitting_decomposition(const PoissonAlgebra& alg, const std::vector<Matrix>& generators);

/// A nonzero x spanning a one-dimensional subalgebra. Preference order:
/// annihilator element, dot-annihilator element, idempotent-direction search
/// (exhaustive over finite fields, basis directions over the rationals).
Vec find_one_dim_subalgebra(const PoissonAlgebra& alg);

PoissonAlgebra quotient_algebra(const PoissonAlgebra& alg, const Subspace& ideal);

/// alg (+) F^extra with all products of the new coordinates zero.
PoissonAlgebra direct_sum_trivial(const PoissonAlgebra& alg, int extra);

/// Transports the structure constants to the basis whose i-th vector is row i
/// of new_basis_rows (expressed in the old coordinates).
PoissonAlgebra change_basis(const PoissonAlgebra& alg, const Matrix& new_basis_rows);

}  // namespace poisson

#endif
