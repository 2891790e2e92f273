#ifndef POISSON_INVARIANTS_HPP
#define POISSON_INVARIANTS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "poisson/algebra.hpp"

namespace poisson {

struct SearchOptions {
  int threads = 1;
};

/// The six abelian-dimension invariants with one canonical witness each.
struct InvariantProfile {
  int alpha = 0, beta = 0, alpha_a = 0, beta_a = 0, alpha_l = 0, beta_l = 0;
  std::optional<Subspace> w_alpha, w_beta, w_alpha_a, w_beta_a, w_alpha_l, w_beta_l;
  const Field* field = nullptr;
  std::string method = "enumeration";

  /// beta <= alpha <= alpha_A, alpha_L; beta <= beta_A, beta_L; beta_X <= alpha_X.
  bool inequalities_hold() const;
  bool operator==(const InvariantProfile& o) const {
    return alpha == o.alpha && beta == o.beta && alpha_a == o.alpha_a && beta_a == o.beta_a &&
           alpha_l == o.alpha_l && beta_l == o.beta_l;
  }
  std::string tuple_str() const;
};

/// First k-dimensional subspace, in the canonical enumeration order, that is
/// abelian for the selected products (and an ideal when require_ideal is set).
/// Pruned depth-first search; visits attaining subspaces in exactly the naive
/// enumeration order, so witnesses match the full-Grassmannian scan.
std::optional<Subspace> find_abelian_subspace(const PoissonAlgebra& alg, int k, ProductKind kind,
                                              bool require_ideal, const SearchOptions& opts = {});

/// Spec surface for the combined products (ProductKind::Both).
std::optional<Subspace> find_abelian_of_dim(const PoissonAlgebra& alg, int k, bool require_ideal,
                                            const SearchOptions& opts = {});

/// Reference oracle: same answer via unpruned enumeration of the Grassmannian.
std::optional<Subspace> find_abelian_subspace_naive(const PoissonAlgebra& alg, int k, ProductKind kind,
                                                    bool require_ideal);

/// Exact profile over a finite field by top-down pruned search. Runs the
/// codimension-one and nilpotent codimension-two cross-checks whenever their
/// hypotheses trigger.
InvariantProfile invariant_profile(const PoissonAlgebra& alg, const SearchOptions& opts = {});

enum class ClaimProperty { AbelianSubalgebra, AbelianIdeal };

struct Certificate {
  Certificate(Subspace s, ClaimProperty prop, ProductKind pk = ProductKind::Both)
      : subspace(std::move(s)), property(prop), kind(pk) {}

  Subspace subspace;
  ClaimProperty property;
  ProductKind kind;  // poisson / dot_only / lie_only
  bool evaluated = false;
  bool accepted = false;
  std::string failing_product;  // human-readable witness of rejection
};

/// Exact lower-bound certification over any field; never claims maximality.
Certificate verify_witness(const PoissonAlgebra& alg, Certificate cert);

/// Applies a seeded uniformly sampled invertible basis change to both tensors;
/// singular samples are rejected and redrawn. Deterministic per seed.
PoissonAlgebra random_basis_change(const PoissonAlgebra& alg, std::uint64_t seed);

struct SupersolvableResult {
  bool supersolvable = false;
  std::vector<Subspace> chain;  // ideals of dimensions 1..n when found
};

/// Searches for a full flag of Lie ideals by recursive one-dimensional ideal
/// enumeration in successive quotients. Finite fields only.
SupersolvableResult is_supersolvable_lie(const PoissonAlgebra& alg);

}  // namespace poisson

#endif
