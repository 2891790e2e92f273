#include "poisson/algebra.hpp"

#include <algorithm>
#include <map>

namespace poisson {

namespace {

std::vector<TensorEntry> normalize_entries(const Field* f, int dim, std::vector<TensorEntry> in,
                                           bool antisymmetric) {
  std::map<std::tuple<int, int, int>, Fel> acc;
  for (TensorEntry& e : in) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim || e.j >= dim || e.k >= dim)
      fail(ErrorCode::IndexOutOfRange, "structure constant index outside 0.." + std::to_string(dim - 1));
    if (e.c.field() != f) fail(ErrorCode::FieldMismatch, "structure constant in wrong field");
    Fel c = e.c;
    int i = e.i, j = e.j;
    if (antisymmetric) {
      if (i == j) {
        if (!c.is_zero()) fail(ErrorCode::Malformed, "diagonal bracket entry [e_i,e_i] must vanish");
        continue;
      }
      if (i > j) {
        std::swap(i, j);
        c = -c;
      }
    } else if (i > j) {
      std::swap(i, j);
    }
    auto key = std::make_tuple(i, j, e.k);
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, c);
    else
      it->second = it->second + c;
  }
  std::vector<TensorEntry> out;
  for (auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    out.push_back(TensorEntry{std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  }
  return out;
}

}  // namespace

PoissonAlgebra PoissonAlgebra::make(const Field* f, int dim, std::vector<TensorEntry> dot,
                                    std::vector<TensorEntry> bracket, std::string name) {
  if (dim < 0) fail(ErrorCode::BadParams, "negative dimension");
  PoissonAlgebra alg(f, dim);
  alg.name_ = std::move(name);
  alg.dot_ = normalize_entries(f, dim, std::move(dot), false);
  alg.bracket_ = normalize_entries(f, dim, std::move(bracket), true);

  alg.dot_tab_.assign(static_cast<std::size_t>(dim) * dim, zero_vec(f, dim));
  alg.bracket_tab_.assign(static_cast<std::size_t>(dim) * dim, zero_vec(f, dim));
  for (const TensorEntry& e : alg.dot_) {
    alg.dot_tab_[static_cast<std::size_t>(e.i * dim + e.j)][static_cast<std::size_t>(e.k)] =
        alg.dot_tab_[static_cast<std::size_t>(e.i * dim + e.j)][static_cast<std::size_t>(e.k)] + e.c;
    if (e.i != e.j)
      alg.dot_tab_[static_cast<std::size_t>(e.j * dim + e.i)][static_cast<std::size_t>(e.k)] =
          alg.dot_tab_[static_cast<std::size_t>(e.j * dim + e.i)][static_cast<std::size_t>(e.k)] + e.c;
  }
  for (const TensorEntry& e : alg.bracket_) {
    alg.bracket_tab_[static_cast<std::size_t>(e.i * dim + e.j)][static_cast<std::size_t>(e.k)] =
        alg.bracket_tab_[static_cast<std::size_t>(e.i * dim + e.j)][static_cast<std::size_t>(e.k)] + e.c;
    alg.bracket_tab_[static_cast<std::size_t>(e.j * dim + e.i)][static_cast<std::size_t>(e.k)] =
        alg.bracket_tab_[static_cast<std::size_t>(e.j * dim + e.i)][static_cast<std::size_t>(e.k)] - e.c;
  }
  return alg;
}

Vec PoissonAlgebra::bracket(int i, int j) const {
  return bracket_tab_[static_cast<std::size_t>(i * dim_ + j)];
}

Vec PoissonAlgebra::dot_vec(const Vec& x, const Vec& y) const {
  Vec r = zero_vec(f_, dim_);
  for (const TensorEntry& e : dot_) {
    const std::size_t i = static_cast<std::size_t>(e.i), j = static_cast<std::size_t>(e.j);
    Fel coeff = (e.i == e.j) ? x[i] * y[i] : x[i] * y[j] + x[j] * y[i];
    if (!coeff.is_zero()) r[static_cast<std::size_t>(e.k)] = r[static_cast<std::size_t>(e.k)] + coeff * e.c;
  }
  return r;
}

Vec PoissonAlgebra::bracket_vec(const Vec& x, const Vec& y) const {
  Vec r = zero_vec(f_, dim_);
  for (const TensorEntry& e : bracket_) {
    const std::size_t i = static_cast<std::size_t>(e.i), j = static_cast<std::size_t>(e.j);
    Fel coeff = x[i] * y[j] - x[j] * y[i];
    if (!coeff.is_zero()) r[static_cast<std::size_t>(e.k)] = r[static_cast<std::size_t>(e.k)] + coeff * e.c;
  }
  return r;
}

Vec PoissonAlgebra::product_vec(const Vec& x, const Vec& y, ProductKind kind) const {
  switch (kind) {
    case ProductKind::Dot: return dot_vec(x, y);
    case ProductKind::Bracket: return bracket_vec(x, y);
    case ProductKind::Both: return vec_add(dot_vec(x, y), bracket_vec(x, y));
  }
  return zero_vec(f_, dim_);
}

const AxiomReport& PoissonAlgebra::validate() const {
  if (report_) return *report_;
  AxiomReport rep;
  auto record = [&](const char* identity, int i, int j, int k, Vec left, Vec right) {
    if (!rep.first_failure)
      rep.first_failure = AxiomFailureDetail{identity, i + 1, j + 1, k + 1, std::move(left), std::move(right)};
  };
  for (int i = 0; i < dim_ && rep.associative_ok; ++i)
    for (int j = 0; j < dim_ && rep.associative_ok; ++j)
      for (int k = 0; k < dim_ && rep.associative_ok; ++k) {
        Vec left = dot_vec(dot(i, j), unit_vec(f_, dim_, k));
        Vec right = dot_vec(unit_vec(f_, dim_, i), dot(j, k));
        if (left != right) {
          rep.associative_ok = false;
          record("associativity", i, j, k, std::move(left), std::move(right));
        }
      }
  for (int i = 0; i < dim_ && rep.jacobi_ok; ++i)
    for (int j = 0; j < dim_ && rep.jacobi_ok; ++j)
      for (int k = 0; k < dim_ && rep.jacobi_ok; ++k) {
        Vec uk = unit_vec(f_, dim_, k), ui = unit_vec(f_, dim_, i), uj = unit_vec(f_, dim_, j);
        Vec sum = vec_add(vec_add(bracket_vec(bracket(i, j), uk), bracket_vec(bracket(j, k), ui)),
                          bracket_vec(bracket(k, i), uj));
        if (!vec_is_zero(sum)) {
          rep.jacobi_ok = false;
          record("jacobi", i, j, k, std::move(sum), zero_vec(f_, dim_));
        }
      }
  for (int i = 0; i < dim_ && rep.leibniz_ok; ++i)
    for (int j = 0; j < dim_ && rep.leibniz_ok; ++j)
      for (int k = 0; k < dim_ && rep.leibniz_ok; ++k) {
        Vec left = bracket_vec(dot(i, j), unit_vec(f_, dim_, k));
        Vec right = vec_add(dot_vec(bracket(i, k), unit_vec(f_, dim_, j)),
                            dot_vec(unit_vec(f_, dim_, i), bracket(j, k)));
        if (left != right) {
          rep.leibniz_ok = false;
          record("leibniz", i, j, k, std::move(left), std::move(right));
        }
      }
  report_ = rep;
  validated_ = rep.all_ok();
  return *report_;
}

// ---------------------------------------------------------------------------

Subspace product_space(const PoissonAlgebra& alg, const Subspace& u, const Subspace& v, ProductKind kind) {
  if (u.ambient() != alg.dim() || v.ambient() != alg.dim())
    fail(ErrorCode::AmbientMismatch, "subspace ambient does not match algebra dimension");
  std::vector<Vec> rows;
  for (int a = 0; a < u.dim(); ++a) {
    Vec ua = u.basis_row(a);
    for (int b = 0; b < v.dim(); ++b) {
      Vec vb = v.basis_row(b);
      if (kind == ProductKind::Dot || kind == ProductKind::Both) rows.push_back(alg.dot_vec(ua, vb));
      if (kind == ProductKind::Bracket || kind == ProductKind::Both) rows.push_back(alg.bracket_vec(ua, vb));
    }
  }
  return Subspace::span(alg.field(), alg.dim(), rows);
}

SubspaceFlags classify_subspace(const PoissonAlgebra& alg, const Subspace& u, ProductKind kind) {
  if (u.ambient() != alg.dim()) fail(ErrorCode::AmbientMismatch, "subspace ambient does not match algebra dimension");
  SubspaceFlags flags;
  Subspace self = product_space(alg, u, u, kind);
  flags.abelian = self.dim() == 0;
  flags.subalgebra = u.contains(self);
  Subspace whole = Subspace::full(alg.field(), alg.dim());
  flags.ideal = u.contains(product_space(alg, u, whole, kind));
  return flags;
}

Subspace normalizer(const PoissonAlgebra& alg, const Subspace& u) {
  if (u.ambient() != alg.dim()) fail(ErrorCode::AmbientMismatch, "subspace ambient does not match algebra dimension");
  if (!classify_subspace(alg, u).subalgebra) fail(ErrorCode::NotASubalgebra, "normalizer requires a subalgebra");
  const Field* f = alg.field();
  const int n = alg.dim();
  std::vector<Vec> cond_rows;  // rows of the linear system in x
  for (int r = 0; r < u.dim(); ++r) {
    Vec b = u.basis_row(r);
    for (int kind = 0; kind < 2; ++kind) {
      // residual of (e_i * b) modulo u, one condition row per ambient coordinate
      std::vector<Vec> cols;
      cols.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        Vec prod = kind == 0 ? alg.dot_vec(unit_vec(f, n, i), b) : alg.bracket_vec(unit_vec(f, n, i), b);
        cols.push_back(u.reduce(prod));
      }
      for (int coord = 0; coord < n; ++coord) {
        Vec row = zero_vec(f, n);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
          row[static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(coord)];
          nonzero = nonzero || !row[static_cast<std::size_t>(i)].is_zero();
        }
        if (nonzero) cond_rows.push_back(std::move(row));
      }
    }
  }
  if (cond_rows.empty()) return Subspace::full(f, n);
  return kernel(Matrix::from_rows(f, cond_rows, n));
}

Centers central_structures(const PoissonAlgebra& alg) {
  const Field* f = alg.field();
  const int n = alg.dim();
  std::vector<Vec> bracket_rows, all_rows;
  for (int j = 0; j < n; ++j) {
    for (int coord = 0; coord < n; ++coord) {
      Vec brow = zero_vec(f, n), drow = zero_vec(f, n);
      bool bnz = false, dnz = false;
      for (int i = 0; i < n; ++i) {
        Fel bc = alg.bracket(i, j)[static_cast<std::size_t>(coord)];
        Fel dc = alg.dot(i, j)[static_cast<std::size_t>(coord)];
        brow[static_cast<std::size_t>(i)] = bc;
        drow[static_cast<std::size_t>(i)] = dc;
        bnz = bnz || !bc.is_zero();
        dnz = dnz || !dc.is_zero();
      }
      if (bnz) {
        bracket_rows.push_back(brow);
        all_rows.push_back(std::move(brow));
      }
      if (dnz) all_rows.push_back(std::move(drow));
    }
  }
  Subspace lie_center = bracket_rows.empty() ? Subspace::full(f, n)
                                             : kernel(Matrix::from_rows(f, bracket_rows, n));
  Subspace ann = all_rows.empty() ? Subspace::full(f, n) : kernel(Matrix::from_rows(f, all_rows, n));
  return Centers{std::move(lie_center), std::move(ann)};
}

namespace {

SeriesResult run_series(const PoissonAlgebra& alg,
                        const std::function<Subspace(const std::vector<Subspace>&)>& step) {
  SeriesResult res;
  res.terms.push_back(Subspace::full(alg.field(), alg.dim()));
  while (true) {
    Subspace next = step(res.terms);
    if (next == res.terms.back()) {
      res.terms.push_back(std::move(next));
      res.stabilized = true;
      break;
    }
    res.terms.push_back(std::move(next));
    if (res.terms.back().dim() == 0) break;
  }
  res.steps = static_cast<int>(res.terms.size()) - 1;
  return res;
}

}  // namespace

SeriesResult derived_series(const PoissonAlgebra& alg, ProductKind kind) {
  return run_series(alg, [&](const std::vector<Subspace>& terms) {
    return product_space(alg, terms.back(), terms.back(), kind);
  });
}

SeriesResult lower_central_series(const PoissonAlgebra& alg, ProductKind kind) {
  SeriesResult general = run_series(alg, [&](const std::vector<Subspace>& terms) {
    // T_{m+1} = sum_{i=0..m} T_i * T_{m-i}
    const std::size_t m = terms.size() - 1;
    Subspace acc = Subspace::zero(alg.field(), alg.dim());
    for (std::size_t i = 0; i <= m; ++i)
      acc = subspace_sum(acc, product_space(alg, terms[i], terms[m - i], kind));
    return acc;
  });
  if (kind == ProductKind::Both && alg.validated()) {
    SeriesResult shortcut = run_series(alg, [&](const std::vector<Subspace>& terms) {
      return product_space(alg, terms.back(), Subspace::full(alg.field(), alg.dim()), kind);
    });
    if (shortcut.terms.size() != general.terms.size()) fail(ErrorCode::FormulaMismatch, "lower central series formulas disagree");
    for (std::size_t i = 0; i < general.terms.size(); ++i)
      if (!(general.terms[i] == shortcut.terms[i]))
        fail(ErrorCode::FormulaMismatch, "lower central series formulas disagree at step " + std::to_string(i));
  }
  return general;
}

SolvabilityClass solvability_class(const PoissonAlgebra& alg) {
  SolvabilityClass out;
  out.trivial_dot = alg.dot_is_zero();
  out.trivial_bracket = alg.bracket_is_zero();
  SeriesResult ds = derived_series(alg);
  if (ds.reaches_zero()) out.solvable_steps = ds.steps;
  SeriesResult lcs = lower_central_series(alg);
  if (lcs.reaches_zero()) out.nilpotent_steps = lcs.steps;
  return out;
}

bool is_nilpotent(const PoissonAlgebra& alg) { return lower_central_series(alg).reaches_zero(); }

bool is_solvable(const PoissonAlgebra& alg) { return derived_series(alg).reaches_zero(); }

Matrix adjoint_matrix(const PoissonAlgebra& alg, const Vec& x, ProductKind kind) {
  if (kind == ProductKind::Both) fail(ErrorCode::BadParams, "adjoint matrix is per multiplication");
  const Field* f = alg.field();
  const int n = alg.dim();
  Matrix m(f, n, n);
  for (int j = 0; j < n; ++j) {
    Vec col = kind == ProductKind::Dot ? alg.dot_vec(x, unit_vec(f, n, j)) : alg.bracket_vec(x, unit_vec(f, n, j));
    for (int i = 0; i < n; ++i) m.at(i, j) = col[static_cast<std::size_t>(i)];
  }
  return m;
}

std::pair<Subspace, Subspace> fitting_decomposition(const PoissonAlgebra& alg,
                                                    const std::vector<Matrix>& generators) {
  if (generators.empty()) fail(ErrorCode::BadParams, "empty generator family");
  const Field* f = alg.field();
  const int n = alg.dim();
  for (std::size_t a = 0; a < generators.size(); ++a)
    for (std::size_t b = a + 1; b < generators.size(); ++b)
      if (!(generators[a] * generators[b] == generators[b] * generators[a]))
        fail(ErrorCode::NonCommutingFamily, "fitting decomposition needs a commuting family");
  Subspace v0 = Subspace::full(f, n);
  Subspace v1 = Subspace::zero(f, n);
  for (const Matrix& g : generators) {
    Matrix gn = g.power(n);  // the n-th power already has the stable kernel/image
    v0 = subspace_intersect(v0, kernel(gn));
    v1 = subspace_sum(v1, image(gn));
  }
  if (v0.dim() + v1.dim() != n || subspace_intersect(v0, v1).dim() != 0)
    fail(ErrorCode::Internal, "fitting parts are not complementary");
  return {std::move(v0), std::move(v1)};
}

namespace {

Subspace dot_annihilator(const PoissonAlgebra& alg) {
  const Field* f = alg.field();
  const int n = alg.dim();
  std::vector<Vec> rows;
  for (int j = 0; j < n; ++j)
    for (int coord = 0; coord < n; ++coord) {
      Vec row = zero_vec(f, n);
      bool nz = false;
      for (int i = 0; i < n; ++i) {
        row[static_cast<std::size_t>(i)] = alg.dot(i, j)[static_cast<std::size_t>(coord)];
        nz = nz || !row[static_cast<std::size_t>(i)].is_zero();
      }
      if (nz) rows.push_back(std::move(row));
    }
  return rows.empty() ? Subspace::full(f, n) : kernel(Matrix::from_rows(f, rows, n));
}

bool spans_subalgebra_line(const PoissonAlgebra& alg, const Vec& x) {
  Subspace line = Subspace::span(alg.field(), alg.dim(), {x});
  return line.dim() == 1 && line.contains(alg.dot_vec(x, x));
}

}  // namespace

Vec find_one_dim_subalgebra(const PoissonAlgebra& alg) {
  if (alg.dim() < 1) fail(ErrorCode::BadParams, "empty algebra has no one-dimensional subalgebra");
  Centers c = central_structures(alg);
  if (c.annihilator.dim() > 0) return c.annihilator.basis_row(0);
  Subspace dann = dot_annihilator(alg);
  if (dann.dim() > 0) return dann.basis_row(0);
  if (alg.field()->finite()) {
    SubspaceStream lines(alg.field(), alg.dim(), 1);
    while (auto line = lines.next()) {
      Vec x = line->basis_row(0);
      if (line->contains(alg.dot_vec(x, x))) return x;
    }
    fail(ErrorCode::Internal, "exhaustive line search failed unexpectedly");
  }
  for (int i = 0; i < alg.dim(); ++i) {
    Vec x = unit_vec(alg.field(), alg.dim(), i);
    if (spans_subalgebra_line(alg, x)) return x;
  }
  fail(ErrorCode::NotFound, "no one-dimensional subalgebra found over infinite field (best effort)");
}

PoissonAlgebra quotient_algebra(const PoissonAlgebra& alg, const Subspace& ideal) {
  if (ideal.ambient() != alg.dim()) fail(ErrorCode::AmbientMismatch, "ideal ambient does not match algebra dimension");
  if (!classify_subspace(alg, ideal).ideal) fail(ErrorCode::NotAnIdeal, "quotient requires an ideal");
  const Field* f = alg.field();
  const int n = alg.dim();
  std::vector<int> comp;  // non-pivot coordinates form the complement basis
  {
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : ideal.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[static_cast<std::size_t>(c)]) comp.push_back(c);
  }
  const int m = static_cast<int>(comp.size());
  std::vector<TensorEntry> dot, bracket;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      Vec red = ideal.reduce(alg.dot(comp[static_cast<std::size_t>(a)], comp[static_cast<std::size_t>(b)]));
      for (int t = 0; t < m; ++t) {
        const Fel& coeff = red[static_cast<std::size_t>(comp[static_cast<std::size_t>(t)])];
        if (!coeff.is_zero()) dot.push_back(TensorEntry{a, b, t, coeff});
      }
    }
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Vec red = ideal.reduce(alg.bracket(comp[static_cast<std::size_t>(a)], comp[static_cast<std::size_t>(b)]));
      for (int t = 0; t < m; ++t) {
        const Fel& coeff = red[static_cast<std::size_t>(comp[static_cast<std::size_t>(t)])];
        if (!coeff.is_zero()) bracket.push_back(TensorEntry{a, b, t, coeff});
      }
    }
  PoissonAlgebra q = PoissonAlgebra::make(f, m, std::move(dot), std::move(bracket),
                                          alg.name().empty() ? "" : alg.name() + "/ideal");
  q.validate();
  return q;
}

PoissonAlgebra direct_sum_trivial(const PoissonAlgebra& alg, int extra) {
  if (extra < 0) fail(ErrorCode::BadParams, "negative split dimension");
  std::string name = alg.name();
  if (!name.empty() && extra > 0) name += "+F^" + std::to_string(extra);
  return PoissonAlgebra::make(alg.field(), alg.dim() + extra, alg.dot_entries(), alg.bracket_entries(), name);
}

PoissonAlgebra change_basis(const PoissonAlgebra& alg, const Matrix& new_basis_rows) {
  const Field* f = alg.field();
  const int n = alg.dim();
  if (new_basis_rows.rows() != n || new_basis_rows.cols() != n)
    fail(ErrorCode::AmbientMismatch, "basis change must be square of the algebra dimension");
  Matrix coords = new_basis_rows.transpose();  // columns are the new basis vectors
  auto inv = coords.inverse();
  if (!inv) fail(ErrorCode::SingularTransform, "basis change matrix is singular");
  std::vector<TensorEntry> dot, bracket;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec prod = alg.dot_vec(new_basis_rows.row(i), new_basis_rows.row(j));
      Vec w = inv->apply(prod);
      for (int k = 0; k < n; ++k)
        if (!w[static_cast<std::size_t>(k)].is_zero()) dot.push_back(TensorEntry{i, j, k, w[static_cast<std::size_t>(k)]});
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec prod = alg.bracket_vec(new_basis_rows.row(i), new_basis_rows.row(j));
      Vec w = inv->apply(prod);
      for (int k = 0; k < n; ++k)
        if (!w[static_cast<std::size_t>(k)].is_zero()) bracket.push_back(TensorEntry{i, j, k, w[static_cast<std::size_t>(k)]});
    }
  return PoissonAlgebra::make(f, n, std::move(dot), std::move(bracket), alg.name());
}

}  // namespace poisson
