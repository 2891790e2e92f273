#ifndef POISSON_CATALOG_HPP
#define POISSON_CATALOG_HPP

#include <array>
#include <map>
#include <optional>
#include <string>

#include "poisson/algebra.hpp"

namespace poisson {

using ParamMap = std::map<std::string, std::string>;

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::string params_doc;  // accepted --param keys, empty when none
  bool lie_only = false;
  /// Classification invariants (alpha, beta, alpha_A, beta_A, alpha_L, beta_L)
  /// when the reference tables state them, with their field of validity.
  std::optional<std::array<int, 6>> expected_invariants;
  std::string expected_note;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Instantiates a named algebra over the given field. Integer literals in the
/// parameters are mapped through the field's characteristic. Throws
/// UnknownName or BadParams, and AxiomFailure if an instantiation does not
/// validate (which would be a catalog bug).
PoissonAlgebra catalog_build(const std::string& name, const ParamMap& params, const Field* f);

/// Golden rows of the built-in 3-dimensional (which = 1) and 4-dimensional
/// nilpotent (which = 2) classification tables.
struct TableRow {
  std::string name;
  bool takes_t = false;    // parameterized row: instantiate per requested t
  ParamMap fixed_params;   // e.g. the t = 0 branch
  std::array<int, 6> expected;
  std::string display;
};
const std::vector<TableRow>& table_rows(int which);

/// Table 1 + Table 2 instantiations (t = 1 and t = 2 for parameterized rows)
/// plus the named extras that admit the field; used as the default check scope.
std::vector<PoissonAlgebra> golden_set(const Field* f, int max_dim = 100);

/// If the characteristic polynomial of the trace-zero matrix lam (given as
/// rows {{l11,l12},{l21,l22}}) splits and det(lam) != 0, returns the basis
/// change onto the normalized simple form together with its parameter gamma;
/// the transported tensor is verified entry-wise. Returns nullopt when the
/// polynomial does not split (or det = 0, where no such form exists).
std::optional<std::pair<Matrix, Fel>> q3_normalize(const Matrix& lam, const Field* f);

}  // namespace poisson

#endif
