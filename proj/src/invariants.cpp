#include "poisson/invariants.hpp"

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

namespace poisson {

namespace {

bool wants_dot(ProductKind k) { return k != ProductKind::Bracket; }
bool wants_bracket(ProductKind k) { return k != ProductKind::Dot; }

// u and v generate nothing under the selected products. The two products are
// tested separately: abelian means each product space vanishes, not their sum.
bool pair_annihilates(const PoissonAlgebra& alg, const Vec& u, const Vec& v, ProductKind kind) {
  if (wants_dot(kind) && !vec_is_zero(alg.dot_vec(u, v))) return false;
  if (wants_bracket(kind) && !vec_is_zero(alg.bracket_vec(u, v))) return false;
  return true;
}

bool is_ideal_kind(const PoissonAlgebra& alg, const Subspace& u, ProductKind kind) {
  const Field* f = alg.field();
  const int n = alg.dim();
  for (int r = 0; r < u.dim(); ++r) {
    Vec b = u.basis_row(r);
    for (int j = 0; j < n; ++j) {
      Vec ej = unit_vec(f, n, j);
      if (wants_dot(kind) && !u.contains(alg.dot_vec(b, ej))) return false;
      if (wants_bracket(kind) && !u.contains(alg.bracket_vec(b, ej))) return false;
    }
  }
  return true;
}

// Joint annihilator of v for the selected products: {x : v*x = 0 (, [v,x] = 0)}.
Subspace annihilator_of(const PoissonAlgebra& alg, const Vec& v, ProductKind kind) {
  const Field* f = alg.field();
  const int n = alg.dim();
  std::vector<Vec> rows;
  auto add_conditions = [&](bool dot) {
    std::vector<Vec> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Vec ei = unit_vec(f, n, i);
      cols.push_back(dot ? alg.dot_vec(v, ei) : alg.bracket_vec(v, ei));
    }
    for (int coord = 0; coord < n; ++coord) {
      Vec row = zero_vec(f, n);
      bool nz = false;
      for (int i = 0; i < n; ++i) {
        row[static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(coord)];
        nz = nz || !row[static_cast<std::size_t>(i)].is_zero();
      }
      if (nz) rows.push_back(std::move(row));
    }
  };
  if (wants_dot(kind)) add_conditions(true);
  if (wants_bracket(kind)) add_conditions(false);
  if (rows.empty()) return Subspace::full(f, n);
  return kernel(Matrix::from_rows(f, rows, n));
}

struct PatternSearch {
  const PoissonAlgebra& alg;
  ProductKind kind;
  bool require_ideal;
  int k;
  const std::vector<int>& pivots;
  const Field* f;
  int n;
  std::int64_t card;

  std::vector<Vec> rows;                    // accepted rows so far
  std::vector<std::vector<int>> free_cols;  // free columns per row
  std::optional<Subspace> found;

  PatternSearch(const PoissonAlgebra& a, ProductKind kd, bool ideal, int kk, const std::vector<int>& piv)
      : alg(a), kind(kd), require_ideal(ideal), k(kk), pivots(piv), f(a.field()), n(a.dim()),
        card(f->element_count()) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    free_cols.resize(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r)
      for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < n; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_cols[static_cast<std::size_t>(r)].push_back(c);
  }

  bool feasible(const Subspace& candidate_space, int next_row) const {
    if (candidate_space.dim() < k) return false;
    // every remaining pivot column must be a possible leading coordinate
    const auto& piv = candidate_space.pivots();
    std::size_t at = 0;
    for (int r = next_row; r < k; ++r) {
      int need = pivots[static_cast<std::size_t>(r)];
      while (at < piv.size() && piv[at] < need) ++at;
      if (at == piv.size() || piv[at] != need) return false;
    }
    return true;
  }

  // Depth-first over rows; free entries advance rightmost-fastest, which makes
  // the visit order identical to the naive canonical enumeration.
  bool dfs(int r, const Subspace& candidates) {
    if (r == k) {
      Matrix m = Matrix::from_rows(f, rows, n);
      Subspace s = Subspace::from_rref(std::move(m), pivots);
      if (require_ideal && !is_ideal_kind(alg, s, kind)) return false;
      found = s;
      return true;
    }
    const auto& fc = free_cols[static_cast<std::size_t>(r)];
    std::vector<std::int64_t> odo(fc.size(), 0);
    Vec v = zero_vec(f, n);
    v[static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] = f->one();
    while (true) {
      for (std::size_t t = 0; t < fc.size(); ++t)
        v[static_cast<std::size_t>(fc[t])] = f->element_at(odo[t]);
      bool ok = pair_annihilates(alg, v, v, kind);
      for (std::size_t u = 0; ok && u < rows.size(); ++u) ok = pair_annihilates(alg, rows[u], v, kind);
      if (ok) {
        Subspace narrowed = (r + 1 < k) ? subspace_intersect(candidates, annihilator_of(alg, v, kind))
                                        : candidates;
        if (r + 1 == k || feasible(narrowed, r + 1)) {
          rows.push_back(v);
          if (dfs(r + 1, narrowed)) return true;
          rows.pop_back();
        }
      }
      // advance odometer
      std::size_t t = fc.size();
      while (t > 0) {
        --t;
        if (++odo[t] < card) break;
        odo[t] = 0;
        if (t == 0) return false;
      }
      if (fc.empty()) return false;
    }
  }

  std::optional<Subspace> run() {
    rows.clear();
    found.reset();
    Subspace all = Subspace::full(f, n);
    if (!feasible(all, 0)) return std::nullopt;
    dfs(0, all);
    return found;
  }
};

}  // namespace

std::optional<Subspace> find_abelian_subspace(const PoissonAlgebra& alg, int k, ProductKind kind,
                                              bool require_ideal, const SearchOptions& opts) {
  if (!alg.field()->finite()) fail(ErrorCode::InfiniteField, "abelian search enumerates a finite field");
  const int n = alg.dim();
  if (k < 0 || k > n) return std::nullopt;
  if (k == 0) return Subspace::zero(alg.field(), n);
  auto patterns = SubspaceStream::pivot_patterns(n, k);
  const int threads = std::max(1, opts.threads);
  if (threads == 1 || patterns.size() <= 1) {
    for (const auto& piv : patterns) {
      PatternSearch ps(alg, kind, require_ideal, k, piv);
      if (auto s = ps.run()) return s;
    }
    return std::nullopt;
  }
  // Patterns are independent work units; the reduce keeps the least pattern
  // index with a hit, so the parallel answer equals the sequential one.
  std::vector<std::optional<Subspace>> results(patterns.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{patterns.size()};
  auto worker = [&]() {
    while (true) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= patterns.size()) return;
      if (idx > best.load()) continue;  // a smaller pattern already answered
      PatternSearch ps(alg, kind, require_ideal, k, patterns[idx]);
      if (auto s = ps.run()) {
        results[idx] = s;
        std::size_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& r : results)
    if (r) return r;
  return std::nullopt;
}

std::optional<Subspace> find_abelian_of_dim(const PoissonAlgebra& alg, int k, bool require_ideal,
                                            const SearchOptions& opts) {
  return find_abelian_subspace(alg, k, ProductKind::Both, require_ideal, opts);
}

std::optional<Subspace> find_abelian_subspace_naive(const PoissonAlgebra& alg, int k, ProductKind kind,
                                                    bool require_ideal) {
  if (!alg.field()->finite()) fail(ErrorCode::InfiniteField, "abelian search enumerates a finite field");
  if (k < 0 || k > alg.dim()) return std::nullopt;
  SubspaceStream stream(alg.field(), alg.dim(), k);
  while (auto s = stream.next()) {
    bool ok = true;
    for (int a = 0; a < s->dim() && ok; ++a)
      for (int b = a; b < s->dim() && ok; ++b)
        ok = pair_annihilates(alg, s->basis_row(a), s->basis_row(b), kind);
    if (ok && require_ideal) ok = is_ideal_kind(alg, *s, kind);
    if (ok) return s;
  }
  return std::nullopt;
}

bool InvariantProfile::inequalities_hold() const {
  return beta <= alpha && alpha <= alpha_a && alpha <= alpha_l && beta <= beta_a && beta <= beta_l &&
         beta_a <= alpha_a && beta_l <= alpha_l;
}

std::string InvariantProfile::tuple_str() const {
  std::ostringstream os;
  os << "(" << alpha << "," << beta << "," << alpha_a << "," << beta_a << "," << alpha_l << "," << beta_l << ")";
  return os.str();
}

namespace {

std::pair<int, Subspace> max_abelian(const PoissonAlgebra& alg, ProductKind kind, bool require_ideal,
                                     int start_k, const SearchOptions& opts) {
  for (int k = start_k; k >= 1; --k) {
    if (auto s = find_abelian_subspace(alg, k, kind, require_ideal, opts)) return {k, *s};
  }
  return {0, Subspace::zero(alg.field(), alg.dim())};
}

}  // namespace

InvariantProfile invariant_profile(const PoissonAlgebra& alg, const SearchOptions& opts) {
  if (!alg.field()->finite())
    fail(ErrorCode::InfiniteField, "invariant_profile enumerates subspaces; use verify_witness over infinite fields");
  const int n = alg.dim();
  InvariantProfile p;
  p.field = alg.field();

  auto [a, wa] = max_abelian(alg, ProductKind::Both, false, n, opts);
  p.alpha = a;
  p.w_alpha = wa;
  auto [b, wb] = max_abelian(alg, ProductKind::Both, true, p.alpha, opts);
  p.beta = b;
  p.w_beta = wb;
  auto [aa, waa] = max_abelian(alg, ProductKind::Dot, false, n, opts);
  p.alpha_a = aa;
  p.w_alpha_a = waa;
  auto [ba, wba] = max_abelian(alg, ProductKind::Dot, true, p.alpha_a, opts);
  p.beta_a = ba;
  p.w_beta_a = wba;
  auto [al, wal] = max_abelian(alg, ProductKind::Bracket, false, n, opts);
  p.alpha_l = al;
  p.w_alpha_l = wal;
  auto [bl, wbl] = max_abelian(alg, ProductKind::Bracket, true, p.alpha_l, opts);
  p.beta_l = bl;
  p.w_beta_l = wbl;

  if (!p.inequalities_hold())
    fail(ErrorCode::Internal, "invariant profile violates the ordering inequalities: " + p.tuple_str());
  // codimension-one cross-check: a codim-1 abelian subalgebra of a non-trivial
  // algebra must be an abelian ideal
  if (p.alpha == n - 1 && !alg.dot_is_zero() && !alg.bracket_is_zero() && p.beta != n - 1)
    fail(ErrorCode::Internal, "codimension-one cross-check failed for " + alg.name());
  if (p.alpha == n - 2 && is_nilpotent(alg) && p.beta != n - 2)
    fail(ErrorCode::Internal, "nilpotent codimension-two cross-check failed for " + alg.name());
  return p;
}

namespace {

std::string vec_str(const PoissonAlgebra& alg, const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << alg.field()->emit_elem(v[i]);
  }
  os << ")";
  return os.str();
}

}  // namespace

Certificate verify_witness(const PoissonAlgebra& alg, Certificate cert) {
  if (cert.subspace.ambient() != alg.dim())
    fail(ErrorCode::AmbientMismatch, "certificate subspace does not match algebra dimension");
  cert.evaluated = true;
  cert.accepted = true;
  cert.failing_product.clear();
  const Subspace& s = cert.subspace;
  auto reject = [&](const char* op, const Vec& x, const Vec& y, const Vec& prod) {
    cert.accepted = false;
    std::ostringstream os;
    os << op << "(" << vec_str(alg, x) << ", " << vec_str(alg, y) << ") = " << vec_str(alg, prod);
    cert.failing_product = os.str();
  };
  for (int a = 0; a < s.dim() && cert.accepted; ++a)
    for (int b = a; b < s.dim() && cert.accepted; ++b) {
      Vec x = s.basis_row(a), y = s.basis_row(b);
      if (wants_dot(cert.kind)) {
        Vec prod = alg.dot_vec(x, y);
        if (!vec_is_zero(prod)) reject("dot", x, y, prod);
      }
      if (cert.accepted && wants_bracket(cert.kind) && a != b) {
        Vec prod = alg.bracket_vec(x, y);
        if (!vec_is_zero(prod)) reject("bracket", x, y, prod);
      }
    }
  if (cert.accepted && cert.property == ClaimProperty::AbelianIdeal) {
    const Field* f = alg.field();
    for (int a = 0; a < s.dim() && cert.accepted; ++a) {
      Vec x = s.basis_row(a);
      for (int j = 0; j < alg.dim() && cert.accepted; ++j) {
        Vec ej = unit_vec(f, alg.dim(), j);
        if (wants_dot(cert.kind)) {
          Vec prod = alg.dot_vec(x, ej);
          if (!s.contains(prod)) reject("dot", x, ej, prod);
        }
        if (cert.accepted && wants_bracket(cert.kind)) {
          Vec prod = alg.bracket_vec(x, ej);
          if (!s.contains(prod)) reject("bracket", x, ej, prod);
        }
      }
    }
  }
  return cert;
}

PoissonAlgebra random_basis_change(const PoissonAlgebra& alg, std::uint64_t seed) {
  const Field* f = alg.field();
  if (!f->finite()) fail(ErrorCode::InfiniteField, "random basis change samples a finite field");
  const int n = alg.dim();
  std::mt19937_64 rng(seed);
  const std::int64_t card = f->element_count();
  while (true) {
    Matrix t(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.at(i, j) = f->element_at(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(card)));
    if (t.inverse()) return change_basis(alg, t);
  }
}

namespace {

PoissonAlgebra lie_part(const PoissonAlgebra& alg) {
  return PoissonAlgebra::make(alg.field(), alg.dim(), {}, alg.bracket_entries(), alg.name());
}

bool supersolvable_rec(const PoissonAlgebra& lie, std::vector<Subspace>& chain_rel) {
  if (lie.dim() == 0) return true;
  SubspaceStream lines(lie.field(), lie.dim(), 1);
  while (auto line = lines.next()) {
    if (!classify_subspace(lie, *line, ProductKind::Bracket).ideal) continue;
    PoissonAlgebra q = quotient_algebra(lie, *line);
    std::vector<Subspace> sub;
    if (supersolvable_rec(q, sub)) {
      // lift the quotient chain through the complement coordinates
      std::vector<int> comp;
      std::vector<bool> is_pivot(static_cast<std::size_t>(lie.dim()), false);
      for (int p : line->pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
      for (int c = 0; c < lie.dim(); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) comp.push_back(c);
      chain_rel.clear();
      chain_rel.push_back(*line);
      for (const Subspace& qs : sub) {
        std::vector<Vec> rows;
        for (int r = 0; r < line->dim(); ++r) rows.push_back(line->basis_row(r));
        for (int r = 0; r < qs.dim(); ++r) {
          Vec w = qs.basis_row(r);
          Vec v = zero_vec(lie.field(), lie.dim());
          for (std::size_t t = 0; t < comp.size(); ++t) v[static_cast<std::size_t>(comp[t])] = w[t];
          rows.push_back(std::move(v));
        }
        chain_rel.push_back(Subspace::span(lie.field(), lie.dim(), rows));
      }
      return true;
    }
  }
  return false;
}

}  // namespace

SupersolvableResult is_supersolvable_lie(const PoissonAlgebra& alg) {
  if (!alg.field()->finite()) fail(ErrorCode::InfiniteField, "supersolvable search enumerates a finite field");
  SupersolvableResult res;
  PoissonAlgebra lie = lie_part(alg);
  res.supersolvable = supersolvable_rec(lie, res.chain);
  if (!res.supersolvable) res.chain.clear();
  return res;
}

}  // namespace poisson
