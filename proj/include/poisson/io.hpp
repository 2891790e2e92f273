#ifndef POISSON_IO_HPP
#define POISSON_IO_HPP

#include <json.hpp>

#include "poisson/algebra.hpp"
#include "poisson/invariants.hpp"

namespace poisson {

using Json = nlohmann::ordered_json;

/// Parses the JSON algebra document format:
///   { "format_version": 1, "field": "fp:5", "dim": 4,
///     "dot": [[i, j, k, coeff], ...], "bracket": [[i, j, k, coeff], ...],
///     "metadata": { "name": ... } }
/// Indices are 1-based (i <= j for dot, i < j for bracket); coefficients are
/// integers over prime fields and literal strings elsewhere. Validates by
/// default and throws AxiomFailure with the failing identity when requested.
PoissonAlgebra parse_algebra(const std::string& text, bool validate = true);
PoissonAlgebra algebra_from_json(const Json& doc, bool validate = true);

/// Canonical document emission: entries sorted by (i, j, k), deterministic
/// key order, newline-terminated. parse(emit(x)) reproduces x exactly.
std::string emit_algebra(const PoissonAlgebra& alg);
Json algebra_to_json(const PoissonAlgebra& alg);

Json subspace_to_json(const Subspace& s);
Json profile_to_json(const InvariantProfile& p);
Json axiom_report_to_json(const AxiomReport& rep);
Json certificate_to_json(const PoissonAlgebra& alg, const Certificate& cert);

std::string render_profile_text(const PoissonAlgebra& alg, const InvariantProfile& p);
std::string render_axiom_report_text(const PoissonAlgebra& alg, const AxiomReport& rep);

}  // namespace poisson

#endif
