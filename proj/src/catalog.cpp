#include "poisson/catalog.hpp"

#include <sstream>

namespace poisson {

namespace {

std::int64_t param_int(const ParamMap& params, const std::string& key, std::optional<std::int64_t> def = {}) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (def) return *def;
    fail(ErrorCode::BadParams, "missing parameter '" + key + "'");
  }
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::BadParams, "parameter '" + key + "' is not an integer: " + it->second);
  }
}

Fel param_elem(const ParamMap& params, const std::string& key, const Field* f, std::optional<std::string> def = {}) {
  auto it = params.find(key);
  std::string text;
  if (it == params.end()) {
    if (!def) fail(ErrorCode::BadParams, "missing parameter '" + key + "'");
    text = *def;
  } else {
    text = it->second;
  }
  try {
    return f->parse_elem(text);
  } catch (const Error&) {
    fail(ErrorCode::BadParams, "parameter '" + key + "' is not a field literal: " + text);
  }
}

std::vector<Fel> param_elem_list(const ParamMap& params, const std::string& key, const Field* f) {
  auto it = params.find(key);
  if (it == params.end()) fail(ErrorCode::BadParams, "missing parameter '" + key + "'");
  std::vector<Fel> out;
  std::stringstream ss(it->second);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      out.push_back(f->parse_elem(piece));
    } catch (const Error&) {
      fail(ErrorCode::BadParams, "parameter '" + key + "' has a bad entry: " + piece);
    }
  }
  if (out.empty()) fail(ErrorCode::BadParams, "parameter '" + key + "' is empty");
  return out;
}

using Entries = std::vector<TensorEntry>;

PoissonAlgebra finish(const Field* f, int dim, Entries dot, Entries bracket, std::string name) {
  PoissonAlgebra alg = PoissonAlgebra::make(f, dim, std::move(dot), std::move(bracket), std::move(name));
  const AxiomReport& rep = alg.validate();
  if (!rep.all_ok()) {
    std::string what = rep.first_failure ? rep.first_failure->identity : "axioms";
    fail(ErrorCode::AxiomFailure, alg.name() + " does not validate (" + what + ")");
  }
  return alg;
}

PoissonAlgebra build_oscillator(const ParamMap& params, const Field* f, bool with_dot, const std::string& name) {
  std::int64_t n = param_int(params, "n");
  if (n < 1) fail(ErrorCode::BadParams, "oscillator needs n >= 1");
  std::vector<Fel> lambda = param_elem_list(params, "lambda", f);
  if (static_cast<std::int64_t>(lambda.size()) != n)
    fail(ErrorCode::BadParams, "oscillator needs exactly n lambda entries");
  if (f->kind() == FieldKind::Rationals) {
    // the defining constraint 0 < lambda_1 <= ... <= lambda_n
    Fel prev = f->zero();
    for (const Fel& l : lambda) {
      if (!Fel::less(prev, l) && !(prev == l)) fail(ErrorCode::BadParams, "oscillator needs 0 < l1 <= ... <= ln");
      prev = l;
    }
    if (lambda.front().is_zero() || Fel::less(lambda.front(), f->zero()))
      fail(ErrorCode::BadParams, "oscillator needs positive lambda");
  } else {
    // ordering is meaningless over other fields; order-free instantiation
    for (const Fel& l : lambda)
      if (l.is_zero()) fail(ErrorCode::BadParams, "oscillator needs nonzero lambda entries");
  }
  const int dim = static_cast<int>(2 * n + 2);
  // coordinates: e_{-1} -> 0, e_0 -> 1, e_i -> 2i, ehat_i -> 2i+1
  Entries dot, bracket;
  for (int i = 1; i <= n; ++i) {
    const Fel& li = lambda[static_cast<std::size_t>(i - 1)];
    bracket.push_back(TensorEntry{0, 2 * i, 2 * i + 1, li});
    bracket.push_back(TensorEntry{0, 2 * i + 1, 2 * i, -li});
    bracket.push_back(TensorEntry{2 * i, 2 * i + 1, 1, f->one()});
  }
  if (with_dot) {
    Fel mu = param_elem(params, "mu", f, "0");
    if (!mu.is_zero()) dot.push_back(TensorEntry{0, 0, 1, mu});
  }
  return finish(f, dim, std::move(dot), std::move(bracket), name);
}

PoissonAlgebra build_filiform(const std::string& name, const ParamMap& params, const Field* f) {
  std::int64_t n64 = param_int(params, "n");
  if (n64 < 3) fail(ErrorCode::BadParams, name + " needs n >= 3");
  const int n = static_cast<int>(n64);
  Entries dot, bracket;
  // e_a e_b = e_{a+b} in 1-based labels; 0-based target a+b+1
  const int cutoff = (name == "P0") ? n - 1 : n - 2;  // max 0-based target index
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (a + b + 1 <= cutoff) dot.push_back(TensorEntry{a, b, a + b + 1, f->one()});
  if (name == "P1.4" || name == "P1.5") dot.push_back(TensorEntry{n - 1, n - 1, n - 2, f->one()});
  if (name == "P1.2") bracket.push_back(TensorEntry{0, n - 1, n - 1, f->one()});
  if (name == "P1.3" || name == "P1.5") bracket.push_back(TensorEntry{0, n - 1, n - 2, f->one()});
  return finish(f, n, std::move(dot), std::move(bracket), name + "^" + std::to_string(n));
}

Entries q3_bracket(const Field* f, const Fel& l11, const Fel& l12, const Fel& l21, const Fel& l22) {
  Entries bracket;
  if (!l11.is_zero()) bracket.push_back(TensorEntry{0, 1, 1, l11});
  if (!l12.is_zero()) bracket.push_back(TensorEntry{0, 1, 2, l12});
  if (!l21.is_zero()) bracket.push_back(TensorEntry{0, 2, 1, l21});
  if (!l22.is_zero()) bracket.push_back(TensorEntry{0, 2, 2, l22});
  bracket.push_back(TensorEntry{1, 2, 0, f->one()});
  return bracket;
}

}  // namespace

PoissonAlgebra catalog_build(const std::string& name, const ParamMap& params, const Field* f) {
  const Fel one = f->one();
  auto t_param = [&](const char* def) { return param_elem(params, "t", f, def); };

  if (name == "P3.14")
    return finish(f, 3, {{0, 0, 1, one}}, {{0, 2, 2, one}}, name);
  if (name == "P3.15")
    return finish(f, 3, {{0, 0, 1, one}}, {{0, 2, 1, one}}, name);
  if (name == "P3.16") {
    Fel t = t_param("1");
    if (t.is_zero()) fail(ErrorCode::BadParams, "P3.16 needs t != 0");
    return finish(f, 3, {{0, 1, 2, one}}, {{0, 1, 2, t}}, name + "^t=" + f->emit_elem(t));
  }
  if (name == "P3.18")
    return finish(f, 3, {{0, 0, 0, one}, {0, 1, 1, one}, {0, 2, 2, one}}, {{1, 2, 1, one}}, name);
  if (name == "P3.20")
    return finish(f, 3, {{0, 0, 0, one}}, {{1, 2, 1, one}}, name);

  if (name == "P4.7")
    return finish(f, 4, {{0, 0, 3, one}}, {{1, 2, 3, one}}, name);
  if (name == "P4.8")
    return finish(f, 4, {{0, 0, 3, one}, {1, 1, 3, one}}, {{0, 2, 3, one}}, name);
  if (name == "P4.9")
    return finish(f, 4, {{0, 0, 3, one}, {1, 1, 3, -one}}, {{0, 2, 3, one}, {1, 2, 3, one}}, name);
  if (name == "P4.10") {
    Fel t = t_param("1");
    return finish(f, 4, {{0, 1, 3, one}, {2, 2, 3, one}}, {{0, 2, 3, one}, {1, 2, 3, t}},
                  name + "^t=" + f->emit_elem(t));
  }
  if (name == "P4.12")
    return finish(f, 4, {{0, 0, 1, one}, {0, 1, 3, one}, {2, 2, 3, one}}, {{0, 2, 3, one}}, name);
  if (name == "P4.14")
    return finish(f, 4, {{0, 0, 1, one}, {0, 1, 3, one}}, {{0, 2, 3, one}}, name);
  if (name == "P4.15")
    return finish(f, 4, {{0, 0, 3, one}, {1, 1, 3, one}}, {{0, 1, 2, one}, {0, 2, 3, one}}, name);
  if (name == "P4.16")
    return finish(f, 4, {{1, 1, 3, one}}, {{0, 1, 2, one}, {0, 2, 3, one}}, name);
  if (name == "P4.17")
    return finish(f, 4, {{0, 0, 3, one}}, {{0, 1, 2, one}, {0, 2, 3, one}}, name);
  if (name == "P4.18")
    return finish(f, 4, {{0, 1, 3, one}}, {{0, 1, 2, one}, {0, 2, 3, one}}, name);
  if (name == "P4.21") {
    Fel t = t_param("1");
    Entries dot = {{0, 0, 3, one}};
    if (!t.is_zero()) dot.push_back(TensorEntry{0, 1, 2, t});
    return finish(f, 4, std::move(dot), {{0, 1, 2, one}}, name + "^t=" + f->emit_elem(t));
  }
  if (name == "P4.22")
    return finish(f, 4, {{0, 0, 3, one}, {1, 1, 2, one}}, {{0, 1, 2, one}}, name);
  if (name == "P4.25")
    return finish(f, 4, {{0, 1, 3, one}}, {{0, 1, 2, one}}, name);
  if (name == "P4.26") {
    Fel t = t_param("1");
    Entries dot = {{0, 0, 2, one}, {0, 1, 3, one}};
    if (!t.is_zero()) dot.push_back(TensorEntry{1, 1, 2, t});
    return finish(f, 4, std::move(dot), {{0, 1, 2, one}}, name + "^t=" + f->emit_elem(t));
  }

  if (name == "heisenberg")
    return finish(f, 3, {}, {{0, 1, 2, one}}, name);
  if (name == "sl2")
    return finish(f, 3, {}, {{0, 1, 1, one}, {0, 2, 2, -one}, {1, 2, 0, one}}, name);
  if (name == "L1") {
    Fel g = param_elem(params, "gamma", f, "0");
    Entries bracket = {{0, 1, 1, one}, {0, 2, 2, -one}, {1, 2, 0, one}};
    if (!g.is_zero()) bracket.push_back(TensorEntry{0, 2, 1, g});
    return finish(f, 3, {}, std::move(bracket), name + "(" + f->emit_elem(g) + ")");
  }
  if (name == "p4" || name == "pn") {
    std::int64_t n = (name == "pn") ? param_int(params, "n") : 4;
    if (n < 4) fail(ErrorCode::BadParams, "pn needs n >= 4");
    Fel g = param_elem(params, "gamma", f, "0");
    Entries bracket = {{0, 1, 1, one}, {0, 2, 2, -one}, {1, 2, 0, one}};
    if (!g.is_zero()) bracket.push_back(TensorEntry{0, 2, 1, g});
    Entries dot = {{0, 0, 3, one}, {1, 2, 3, one}};
    if (!g.is_zero()) dot.push_back(TensorEntry{2, 2, 3, g});
    return finish(f, static_cast<int>(n), std::move(dot), std::move(bracket),
                  "p" + std::to_string(n) + "(" + f->emit_elem(g) + ")");
  }
  if (name == "q3") {
    Fel l11 = param_elem(params, "l11", f, "0"), l12 = param_elem(params, "l12", f, "1");
    Fel l21 = param_elem(params, "l21", f, "1"), l22 = param_elem(params, "l22", f, "0");
    if (!(l11 + l22).is_zero()) fail(ErrorCode::BadParams, "q3 is a Lie algebra only for trace(lambda) = 0");
    return finish(f, 3, {}, q3_bracket(f, l11, l12, l21, l22), "q3");
  }
  if (name == "q4") {
    if (f->characteristic() != 2) fail(ErrorCode::BadParams, "q4 exists only in characteristic 2");
    Fel l11 = param_elem(params, "l11", f, "1"), l12 = param_elem(params, "l12", f, "0");
    Fel l21 = param_elem(params, "l21", f, "0"), l22 = param_elem(params, "l22", f, "1");
    Fel m11 = param_elem(params, "m11", f, "0"), m12 = param_elem(params, "m12", f, "1");
    Fel m21 = param_elem(params, "m21", f, "1"), m22 = param_elem(params, "m22", f, "0");
    // basis h, a, x, y
    Entries bracket = {{2, 3, 0, one}};
    auto add = [&](int actor, const Fel& c11, const Fel& c12, const Fel& c21, const Fel& c22) {
      if (!c11.is_zero()) bracket.push_back(TensorEntry{actor, 2, 2, c11});
      if (!c12.is_zero()) bracket.push_back(TensorEntry{actor, 2, 3, c12});
      if (!c21.is_zero()) bracket.push_back(TensorEntry{actor, 3, 2, c21});
      if (!c22.is_zero()) bracket.push_back(TensorEntry{actor, 3, 3, c22});
    };
    add(0, l11, l12, l21, l22);
    add(1, m11, m12, m21, m22);
    return finish(f, 4, {}, std::move(bracket), "q4");
  }
  if (name == "osc") return build_oscillator(params, f, false, "osc");
  if (name == "osc_poisson") return build_oscillator(params, f, true, "osc_poisson");
  if (name == "P0" || name == "P1.1" || name == "P1.2" || name == "P1.3" || name == "P1.4" || name == "P1.5")
    return build_filiform(name, params, f);
  if (name == "Lmodel" || name == "Lmodel_poisson") {
    std::int64_t n64 = param_int(params, "n");
    if (n64 < 3) fail(ErrorCode::BadParams, "Lmodel needs n >= 3");
    const int n = static_cast<int>(n64);
    Entries bracket;
    for (int i = 1; i <= n - 2; ++i) bracket.push_back(TensorEntry{0, i, i + 1, one});
    Entries dot;
    std::string label = name + "^" + std::to_string(n);
    if (name == "Lmodel_poisson") {
      Fel l1 = param_elem(params, "l1", f, "0"), l2 = param_elem(params, "l2", f, "0"),
          l3 = param_elem(params, "l3", f, "0");
      if (!l1.is_zero()) dot.push_back(TensorEntry{0, 0, n - 1, l1});
      if (!l2.is_zero()) dot.push_back(TensorEntry{0, 1, n - 1, l2});
      if (!l3.is_zero()) dot.push_back(TensorEntry{1, 1, n - 1, l3});
      label += "(" + f->emit_elem(l1) + "," + f->emit_elem(l2) + "," + f->emit_elem(l3) + ")";
    }
    return finish(f, n, std::move(dot), std::move(bracket), label);
  }
  if (name == "zero") {
    std::int64_t n = param_int(params, "n");
    if (n < 0) fail(ErrorCode::BadParams, "zero algebra needs n >= 0");
    return finish(f, static_cast<int>(n), {}, {}, "zero^" + std::to_string(n));
  }
  fail(ErrorCode::UnknownName, "no catalog entry named '" + name + "'");
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    auto table = [&](const std::string& n, const std::string& s, std::array<int, 6> exp,
                     const std::string& params = "") {
      v.push_back(CatalogEntry{n, s, params, false, exp, "complex classification; reproduced over fp:3, fp:5"});
    };
    table("P3.14", "dim 3: e1e1=e2, [e1,e3]=e3", {2, 2, 2, 2, 2, 2});
    table("P3.15", "dim 3: e1e1=e2, [e1,e3]=e2", {2, 2, 2, 2, 2, 2});
    table("P3.16", "dim 3: e1e2=e3, [e1,e2]=t e3 (t != 0)", {2, 2, 2, 2, 2, 2}, "t");
    table("P3.18", "dim 3: e1 acts as unit, [e2,e3]=e2", {1, 1, 2, 2, 2, 2});
    table("P3.20", "dim 3: e1e1=e1, [e2,e3]=e2", {1, 1, 2, 2, 2, 2});
    table("P4.7", "dim 4 nilpotent", {2, 2, 3, 3, 3, 3});
    table("P4.8", "dim 4 nilpotent", {2, 2, 3, 3, 3, 3});
    table("P4.9", "dim 4 nilpotent", {3, 3, 3, 3, 3, 3});
    table("P4.10", "dim 4 nilpotent, parameter t", {2, 2, 2, 2, 3, 3}, "t");
    table("P4.12", "dim 4 nilpotent", {2, 2, 2, 2, 3, 3});
    table("P4.14", "dim 4 nilpotent", {3, 3, 3, 3, 3, 3});
    table("P4.15", "dim 4 nilpotent", {2, 2, 3, 3, 3, 3});
    table("P4.16", "dim 4 nilpotent", {2, 2, 3, 3, 3, 3});
    table("P4.17", "dim 4 nilpotent", {3, 3, 3, 3, 3, 3});
    table("P4.18", "dim 4 nilpotent", {3, 3, 3, 3, 3, 3});
    table("P4.21", "dim 4 nilpotent, parameter t", {3, 3, 3, 3, 3, 3}, "t");
    table("P4.22", "dim 4 nilpotent", {2, 2, 2, 2, 3, 3});
    table("P4.25", "dim 4 nilpotent", {3, 3, 3, 3, 3, 3});
    table("P4.26", "dim 4 nilpotent, parameter t (t = 0 and t != 0 differ)", {3, 3, 3, 3, 3, 3}, "t");
    auto plain = [&](const std::string& n, const std::string& s, bool lie, const std::string& params = "") {
      v.push_back(CatalogEntry{n, s, params, lie, std::nullopt, ""});
    };
    plain("heisenberg", "dim 3 Lie: [e1,e2]=e3", true);
    plain("sl2", "dim 3 Lie: [e1,e2]=e2, [e1,e3]=-e3, [e2,e3]=e1", true);
    plain("L1", "dim 3 simple Lie family: [e1,e2]=e2, [e1,e3]=gamma e2-e3, [e2,e3]=e1", true, "gamma");
    plain("p4", "dim 4 Poisson on L1(gamma): e1e1=e2e3=e4, e3e3=gamma e4", false, "gamma");
    plain("pn", "p4(gamma) plus a trivial summand, dim n", false, "n, gamma");
    plain("q3", "dim 3 skew family over sl2 parameters (trace 0)", true, "l11, l12, l21, l22");
    plain("q4", "dim 4 skew family, characteristic 2 only", true, "l11.., m11..");
    plain("osc", "oscillator Lie algebra, dim 2n+2", true, "n, lambda (comma list)");
    plain("osc_poisson", "oscillator Poisson algebra: e-1 o e-1 = mu e0", false, "n, lambda, mu");
    plain("P0", "null-filiform commutative, dim n", false, "n");
    plain("P1.1", "filiform commutative, dim n", false, "n");
    plain("P1.2", "filiform with [e1,en]=en", false, "n");
    plain("P1.3", "filiform with [e1,en]=e_{n-1}", false, "n");
    plain("P1.4", "filiform with en en = e_{n-1}", false, "n");
    plain("P1.5", "filiform with en en = e_{n-1}, [e1,en]=e_{n-1}", false, "n");
    plain("Lmodel", "model filiform Lie algebra, dim n", true, "n");
    plain("Lmodel_poisson", "Poisson products on Lmodel: x0x0=l1, x0x1=l2, x1x1=l3 (times x_{n-1})", false,
          "n, l1, l2, l3");
    plain("zero", "zero-product algebra, dim n", false, "n");
    return v;
  }();
  return entries;
}

const std::vector<TableRow>& table_rows(int which) {
  static const std::vector<TableRow> t1 = [] {
    std::vector<TableRow> v;
    v.push_back({"P3.14", false, {}, {2, 2, 2, 2, 2, 2}, "e1e1=e2, [e1,e3]=e3"});
    v.push_back({"P3.15", false, {}, {2, 2, 2, 2, 2, 2}, "e1e1=e2, [e1,e3]=e2"});
    v.push_back({"P3.16", true, {}, {2, 2, 2, 2, 2, 2}, "e1e2=e3, [e1,e2]=t e3"});
    v.push_back({"P3.18", false, {}, {1, 1, 2, 2, 2, 2}, "e1 unit-like, [e2,e3]=e2"});
    v.push_back({"P3.20", false, {}, {1, 1, 2, 2, 2, 2}, "e1e1=e1, [e2,e3]=e2"});
    return v;
  }();
  static const std::vector<TableRow> t2 = [] {
    std::vector<TableRow> v;
    v.push_back({"P4.7", false, {}, {2, 2, 3, 3, 3, 3}, ""});
    v.push_back({"P4.8", false, {}, {2, 2, 3, 3, 3, 3}, ""});
    v.push_back({"P4.9", false, {}, {3, 3, 3, 3, 3, 3}, ""});
    v.push_back({"P4.10", true, {}, {2, 2, 2, 2, 3, 3}, ""});
    v.push_back({"P4.12", false, {}, {2, 2, 2, 2, 3, 3}, ""});
    v.push_back({"P4.14", false, {}, {3, 3, 3, 3, 3, 3}, ""});
    v.push_back({"P4.15", false, {}, {2, 2, 3, 3, 3, 3}, ""});
    v.push_back({"P4.16", false, {}, {2, 2, 3, 3, 3, 3}, ""});
    v.push_back({"P4.17", false, {}, {3, 3, 3, 3, 3, 3}, ""});
    v.push_back({"P4.18", false, {}, {3, 3, 3, 3, 3, 3}, ""});
    v.push_back({"P4.21", true, {}, {3, 3, 3, 3, 3, 3}, ""});
    v.push_back({"P4.22", false, {}, {2, 2, 2, 2, 3, 3}, ""});
    v.push_back({"P4.25", false, {}, {3, 3, 3, 3, 3, 3}, ""});
    v.push_back({"P4.26", false, {{"t", "0"}}, {3, 3, 3, 3, 3, 3}, "t = 0 branch"});
    v.push_back({"P4.26", true, {}, {2, 2, 2, 2, 3, 3}, "t != 0 branch"});
    return v;
  }();
  if (which == 1) return t1;
  if (which == 2) return t2;
  fail(ErrorCode::BadParams, "table selector must be 1 or 2");
}

std::vector<PoissonAlgebra> golden_set(const Field* f, int max_dim) {
  std::vector<PoissonAlgebra> out;
  auto add = [&](const std::string& name, const ParamMap& params) {
    try {
      PoissonAlgebra alg = catalog_build(name, params, f);
      if (alg.dim() <= max_dim) out.push_back(std::move(alg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BadParams) throw;  // inadmissible over this field: skip
    }
  };
  for (int which = 1; which <= 2; ++which)
    for (const TableRow& row : table_rows(which)) {
      if (!row.takes_t) {
        add(row.name, row.fixed_params);
      } else {
        add(row.name, {{"t", "1"}});
        add(row.name, {{"t", "2"}});
      }
    }
  add("heisenberg", {});
  add("sl2", {});
  add("L1", {{"gamma", "1"}});
  add("p4", {{"gamma", "0"}});
  add("p4", {{"gamma", "1"}});
  add("q3", {{"l11", "0"}, {"l12", "1"}, {"l21", "1"}, {"l22", "0"}});
  for (const char* nf : {"P0", "P1.1", "P1.2", "P1.3", "P1.4", "P1.5"}) add(nf, {{"n", "4"}});
  add("Lmodel", {{"n", "4"}});
  add("Lmodel_poisson", {{"n", "4"}, {"l1", "1"}, {"l2", "1"}, {"l3", "1"}});
  add("osc_poisson", {{"n", "1"}, {"lambda", "1"}, {"mu", "1"}});
  return out;
}

std::optional<std::pair<Matrix, Fel>> q3_normalize(const Matrix& lam, const Field* f) {
  if (lam.rows() != 2 || lam.cols() != 2 || lam.field() != f)
    fail(ErrorCode::BadParams, "q3_normalize expects a 2x2 matrix over the given field");
  const Fel l11 = lam.at(0, 0), l12 = lam.at(0, 1), l21 = lam.at(1, 0), l22 = lam.at(1, 1);
  if (!(l11 + l22).is_zero()) fail(ErrorCode::NotLie, "q3(lambda) is a Lie algebra only for trace(lambda) = 0");
  const Fel det = l11 * l22 - l12 * l21;
  if (det.is_zero()) return std::nullopt;  // solvable branch, no simple normal form
  // ad_h acts on span(x, y) by M = [[l11, l21], [l12, l22]] (columns = images)
  Matrix m(f, 2, 2);
  m.at(0, 0) = l11;
  m.at(0, 1) = l21;
  m.at(1, 0) = l12;
  m.at(1, 1) = l22;
  auto theta_opt = f->sqrt_of(-det);  // char poly is t^2 + det
  if (!theta_opt) return std::nullopt;
  const Fel theta = *theta_opt;

  auto eigvec = [&](const Fel& ev) -> std::optional<Vec> {
    Matrix shifted = m;
    shifted.at(0, 0) = shifted.at(0, 0) - ev;
    shifted.at(1, 1) = shifted.at(1, 1) - ev;
    Subspace k = kernel(shifted);
    if (k.dim() == 0) return std::nullopt;
    return k.basis_row(0);
  };

  Vec v2, v3;  // (x, y)-coordinates of the second and third new basis vectors
  Fel gamma = f->zero();
  if (f->characteristic() != 2) {
    auto v = eigvec(theta), w = eigvec(-theta);
    if (!v || !w) fail(ErrorCode::Internal, "split characteristic polynomial without eigenvectors");
    Fel d2 = (*v)[0] * (*w)[1] - (*v)[1] * (*w)[0];
    Fel c = (d2 * theta).inverse();
    v2 = *v;
    v3 = vec_scale(c, *w);
  } else {
    auto v = eigvec(theta);
    if (!v) fail(ErrorCode::Internal, "split characteristic polynomial without eigenvectors");
    // M = theta*I: everything is an eigenvector, take the complementary line
    Matrix shifted = m;
    shifted.at(0, 0) = shifted.at(0, 0) - theta;
    shifted.at(1, 1) = shifted.at(1, 1) - theta;
    bool scalar = true;
    for (int i = 0; i < 2 && scalar; ++i)
      for (int j = 0; j < 2 && scalar; ++j) scalar = shifted.at(i, j).is_zero();
    if (scalar) {
      v2 = {f->one(), f->zero()};
      Vec w = {f->zero(), f->one()};
      Fel d2 = v2[0] * w[1] - v2[1] * w[0];
      v3 = vec_scale((d2 * theta).inverse(), w);
      gamma = f->zero();
    } else {
      // Jordan block: (M - theta I) u = v has a solution for the eigenvector v
      Matrix aug(f, 2, 3);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) aug.at(i, j) = shifted.at(i, j);
        aug.at(i, 2) = (*v)[static_cast<std::size_t>(i)];
      }
      MatrixRref rr = aug.rref();
      Vec u = {f->zero(), f->zero()};
      for (int r = 0; r < rr.rank; ++r) {
        int p = rr.pivots[static_cast<std::size_t>(r)];
        if (p == 2) fail(ErrorCode::Internal, "inconsistent Jordan system");
        u[static_cast<std::size_t>(p)] = rr.reduced.at(r, 2);
      }
      Fel d2 = (*v)[0] * u[1] - (*v)[1] * u[0];
      Fel c = (d2 * theta).inverse();
      v2 = *v;
      v3 = vec_scale(c, u);
      gamma = theta.inverse() * c;
    }
  }
  Matrix basis(f, 3, 3);
  basis.at(0, 0) = theta.inverse();
  basis.at(1, 1) = v2[0];
  basis.at(1, 2) = v2[1];
  basis.at(2, 1) = v3[0];
  basis.at(2, 2) = v3[1];

  // exact verification: the transported tensor must equal L1(gamma) entry-wise
  PoissonAlgebra q3alg = PoissonAlgebra::make(f, 3, {}, q3_bracket(f, l11, l12, l21, l22), "q3");
  PoissonAlgebra moved = change_basis(q3alg, basis);
  PoissonAlgebra target = catalog_build("L1", {{"gamma", f->emit_elem(gamma)}}, f);
  if (!(moved.bracket_entries().size() == target.bracket_entries().size()))
    fail(ErrorCode::Internal, "q3 normalization produced the wrong multiplication table");
  for (std::size_t i = 0; i < moved.bracket_entries().size(); ++i) {
    const TensorEntry& a = moved.bracket_entries()[i];
    const TensorEntry& b = target.bracket_entries()[i];
    if (a.i != b.i || a.j != b.j || a.k != b.k || !(a.c == b.c))
      fail(ErrorCode::Internal, "q3 normalization produced the wrong multiplication table");
  }
  return std::make_pair(basis, gamma);
}

}  // namespace poisson
