#ifndef POISSON_COMPAT_HPP
#define POISSON_COMPAT_HPP

#include <cstdint>

#include "poisson/algebra.hpp"

namespace poisson {

/// Solution space of the Leibniz constraints for a fixed bracket: every
/// symmetric tensor in the span makes the bracket/dot pair satisfy the
/// Leibniz rule (associativity is a separate, quadratic condition).
struct ProductSpace {
  int dim_algebra = 0;
  const Field* field = nullptr;
  std::vector<std::vector<TensorEntry>> basis_tensors;
  int dimension = 0;  // = basis_tensors.size()
};

/// Treats the Leibniz rule as a homogeneous linear system in the unknown
/// symmetric tensor (unknowns ordered (i <= j, k) lexicographically) and
/// returns a basis of its solution space. The input must be a Lie algebra:
/// zero dot tensor and a bracket satisfying Jacobi.
ProductSpace leibniz_space(const PoissonAlgebra& lie);

/// Enumerates the Leibniz solution space over a finite field and keeps the
/// points whose commutative product is associative. Every returned algebra
/// passes the full axiom check. The output is sorted by the canonical tensor
/// encoding, so the order is deterministic.
std::vector<PoissonAlgebra> poisson_structures_on(const PoissonAlgebra& lie, std::uint64_t budget = 1000000);

}  // namespace poisson

#endif
