#include "poisson/compat.hpp"

#include <algorithm>

namespace poisson {

namespace {

// Unknowns s_{ij}^m, i <= j: pair (i,j) in lexicographic order, then m.
int pair_index(int i, int j, int n) {
  // number of pairs (i', j') with i' < i, plus offset within row i
  return i * n - i * (i - 1) / 2 + (j - i);
}

int unknown_index(int i, int j, int m, int n) {
  if (i > j) std::swap(i, j);
  return pair_index(i, j, n) * n + m;
}

void require_lie(const PoissonAlgebra& lie) {
  if (!lie.dot_is_zero()) fail(ErrorCode::BadParams, "expected a Lie algebra (zero commutative tensor)");
  const AxiomReport& rep = lie.validate();
  if (!rep.jacobi_ok) fail(ErrorCode::JacobiFails, "input bracket does not satisfy the Jacobi identity");
}

std::vector<TensorEntry> tensor_from_solution(const Field* f, int n, const Vec& s) {
  std::vector<TensorEntry> entries;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        const Fel& c = s[static_cast<std::size_t>(unknown_index(i, j, m, n))];
        if (!c.is_zero()) entries.push_back(TensorEntry{i, j, m, c});
      }
  return entries;
}

}  // namespace

ProductSpace leibniz_space(const PoissonAlgebra& lie) {
  require_lie(lie);
  const Field* f = lie.field();
  const int n = lie.dim();
  const int unknowns = n * (n * (n + 1) / 2);
  std::vector<Vec> rows;
  // [e_i e_j, e_k] - [e_i, e_k] e_j - e_i [e_j, e_k] = 0, coordinatewise;
  // the identity is symmetric in (i, j), so i <= j suffices.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Vec> coeff(static_cast<std::size_t>(n), zero_vec(f, unknowns));
        for (int m = 0; m < n; ++m) {
          Vec bmk = lie.bracket(m, k);
          for (int l = 0; l < n; ++l) {
            const Fel& c = bmk[static_cast<std::size_t>(l)];
            if (c.is_zero()) continue;
            std::size_t u = static_cast<std::size_t>(unknown_index(i, j, m, n));
            coeff[static_cast<std::size_t>(l)][u] = coeff[static_cast<std::size_t>(l)][u] + c;
          }
        }
        Vec bik = lie.bracket(i, k);
        for (int m = 0; m < n; ++m) {
          const Fel& c = bik[static_cast<std::size_t>(m)];
          if (c.is_zero()) continue;
          for (int l = 0; l < n; ++l) {
            std::size_t u = static_cast<std::size_t>(unknown_index(m, j, l, n));
            coeff[static_cast<std::size_t>(l)][u] = coeff[static_cast<std::size_t>(l)][u] - c;
          }
        }
        Vec bjk = lie.bracket(j, k);
        for (int m = 0; m < n; ++m) {
          const Fel& c = bjk[static_cast<std::size_t>(m)];
          if (c.is_zero()) continue;
          for (int l = 0; l < n; ++l) {
            std::size_t u = static_cast<std::size_t>(unknown_index(i, m, l, n));
            coeff[static_cast<std::size_t>(l)][u] = coeff[static_cast<std::size_t>(l)][u] - c;
          }
        }
        for (int l = 0; l < n; ++l)
          if (!vec_is_zero(coeff[static_cast<std::size_t>(l)])) rows.push_back(std::move(coeff[static_cast<std::size_t>(l)]));
      }

  ProductSpace out;
  out.dim_algebra = n;
  out.field = f;
  if (rows.empty()) {
    // vacuous constraints: the whole symmetric space solves them
    for (int u = 0; u < unknowns; ++u) {
      Vec s = zero_vec(f, unknowns);
      s[static_cast<std::size_t>(u)] = f->one();
      out.basis_tensors.push_back(tensor_from_solution(f, n, s));
    }
  } else {
    Subspace sol = kernel(Matrix::from_rows(f, rows, unknowns));
    for (int r = 0; r < sol.dim(); ++r) out.basis_tensors.push_back(tensor_from_solution(f, n, sol.basis_row(r)));
  }
  out.dimension = static_cast<int>(out.basis_tensors.size());
  return out;
}

std::vector<PoissonAlgebra> poisson_structures_on(const PoissonAlgebra& lie, std::uint64_t budget) {
  require_lie(lie);
  const Field* f = lie.field();
  if (!f->finite()) fail(ErrorCode::InfiniteField, "solution-space enumeration needs a finite field");
  ProductSpace space = leibniz_space(lie);
  const int n = lie.dim();
  const int dim = space.dimension;

  mpz_class points;
  mpz_pow_ui(points.get_mpz_t(), f->cardinality().get_mpz_t(), static_cast<unsigned long>(dim));
  if (points > budget)
    fail(ErrorCode::BudgetExceeded, "solution space has " + points.get_str() + " points, budget " + std::to_string(budget));

  // dense unknown vectors for the basis, recombined per point
  const int unknowns = n * (n * (n + 1) / 2);
  std::vector<Vec> basis_dense;
  for (const auto& entries : space.basis_tensors) {
    Vec s = zero_vec(f, unknowns);
    for (const TensorEntry& e : entries)
      s[static_cast<std::size_t>(unknown_index(e.i, e.j, e.k, n))] = e.c;
    basis_dense.push_back(std::move(s));
  }

  std::vector<std::pair<Vec, PoissonAlgebra>> keep;
  std::vector<std::int64_t> odo(static_cast<std::size_t>(dim), 0);
  const std::int64_t card = f->element_count();
  while (true) {
    Vec s = zero_vec(f, unknowns);
    for (int t = 0; t < dim; ++t) {
      Fel c = f->element_at(odo[static_cast<std::size_t>(t)]);
      if (!c.is_zero()) s = vec_add(s, vec_scale(c, basis_dense[static_cast<std::size_t>(t)]));
    }
    PoissonAlgebra cand = PoissonAlgebra::make(f, n, tensor_from_solution(f, n, s), lie.bracket_entries(),
                                               lie.name().empty() ? "" : lie.name() + "+dot");
    if (cand.validate().all_ok()) keep.emplace_back(std::move(s), std::move(cand));
    // advance
    std::size_t t = odo.size();
    bool done = true;
    while (t > 0) {
      --t;
      if (++odo[t] < card) {
        done = false;
        break;
      }
      odo[t] = 0;
    }
    if (done || dim == 0) break;
  }
  std::sort(keep.begin(), keep.end(),
            [](const auto& a, const auto& b) { return vec_less(a.first, b.first); });
  std::vector<PoissonAlgebra> out;
  out.reserve(keep.size());
  for (auto& [s, alg] : keep) out.push_back(std::move(alg));
  return out;
}

}  // namespace poisson
