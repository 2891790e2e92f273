#include "poisson/io.hpp"

#include <sstream>

namespace poisson {

namespace {

constexpr int kFormatVersion = 1;
constexpr int kSchemaVersion = 1;

Fel coeff_from_json(const Field* f, const Json& j) {
  if (j.is_number_integer()) return f->from_int(j.get<std::int64_t>());
  if (j.is_string()) return f->parse_elem(j.get<std::string>());
  fail(ErrorCode::Malformed, "coefficient must be an integer or a literal string");
}

Json coeff_to_json(const Field* f, const Fel& c) {
  if (f->kind() == FieldKind::Prime) return Json(f->index_of(c));
  return Json(f->emit_elem(c));
}

std::vector<TensorEntry> entries_from_json(const Field* f, int dim, const Json& arr, bool bracket) {
  if (!arr.is_array()) fail(ErrorCode::Malformed, "tensor entries must be an array");
  std::vector<TensorEntry> out;
  for (const Json& item : arr) {
    if (!item.is_array() || item.size() != 4) fail(ErrorCode::Malformed, "tensor entry must be [i, j, k, coeff]");
    if (!item[0].is_number_integer() || !item[1].is_number_integer() || !item[2].is_number_integer())
      fail(ErrorCode::Malformed, "tensor indices must be integers");
    int i = item[0].get<int>(), j = item[1].get<int>(), k = item[2].get<int>();
    if (i < 1 || j < 1 || k < 1 || i > dim || j > dim || k > dim)
      fail(ErrorCode::IndexOutOfRange, "entry index outside 1.." + std::to_string(dim));
    if (bracket && i >= j) fail(ErrorCode::Malformed, "bracket entries need i < j");
    if (!bracket && i > j) fail(ErrorCode::Malformed, "dot entries need i <= j");
    out.push_back(TensorEntry{i - 1, j - 1, k - 1, coeff_from_json(f, item[3])});
  }
  return out;
}

}  // namespace

PoissonAlgebra algebra_from_json(const Json& doc, bool validate) {
  if (!doc.is_object()) fail(ErrorCode::Malformed, "document must be a JSON object");
  if (doc.contains("format_version") && doc["format_version"].get<int>() > kFormatVersion)
    fail(ErrorCode::Malformed, "unsupported format_version");
  if (!doc.contains("field") || !doc.contains("dim")) fail(ErrorCode::Malformed, "document needs field and dim");
  const Field* f = Field::parse(doc["field"].get<std::string>());
  int dim = doc["dim"].get<int>();
  if (dim < 0) fail(ErrorCode::Malformed, "dim must be nonnegative");
  std::vector<TensorEntry> dot, bracket;
  if (doc.contains("dot")) dot = entries_from_json(f, dim, doc["dot"], false);
  if (doc.contains("bracket")) bracket = entries_from_json(f, dim, doc["bracket"], true);
  std::string name;
  if (doc.contains("metadata") && doc["metadata"].is_object() && doc["metadata"].contains("name"))
    name = doc["metadata"]["name"].get<std::string>();
  PoissonAlgebra alg = PoissonAlgebra::make(f, dim, std::move(dot), std::move(bracket), name);
  if (validate) {
    const AxiomReport& rep = alg.validate();
    if (!rep.all_ok()) {
      std::string detail = rep.first_failure
                               ? rep.first_failure->identity + " fails at basis triple (" +
                                     std::to_string(rep.first_failure->i) + "," + std::to_string(rep.first_failure->j) +
                                     "," + std::to_string(rep.first_failure->k) + ")"
                               : "axiom failure";
      fail(ErrorCode::AxiomFailure, detail);
    }
  }
  return alg;
}

PoissonAlgebra parse_algebra(const std::string& text, bool validate) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Malformed, std::string("invalid JSON: ") + e.what());
  }
  return algebra_from_json(doc, validate);
}

Json algebra_to_json(const PoissonAlgebra& alg) {
  const Field* f = alg.field();
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["field"] = f->descriptor();
  doc["dim"] = alg.dim();
  Json dot = Json::array(), bracket = Json::array();
  for (const TensorEntry& e : alg.dot_entries())
    dot.push_back(Json::array({e.i + 1, e.j + 1, e.k + 1, coeff_to_json(f, e.c)}));
  for (const TensorEntry& e : alg.bracket_entries())
    bracket.push_back(Json::array({e.i + 1, e.j + 1, e.k + 1, coeff_to_json(f, e.c)}));
  doc["dot"] = std::move(dot);
  doc["bracket"] = std::move(bracket);
  if (!alg.name().empty()) doc["metadata"] = Json{{"name", alg.name()}};
  return doc;
}

std::string emit_algebra(const PoissonAlgebra& alg) { return algebra_to_json(alg).dump(2) + "\n"; }

Json subspace_to_json(const Subspace& s) {
  Json rows = Json::array();
  const Field* f = s.field();
  for (int r = 0; r < s.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < s.ambient(); ++c) row.push_back(coeff_to_json(f, s.basis().at(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", s.dim()}, {"ambient", s.ambient()}, {"basis", std::move(rows)}};
}

Json profile_to_json(const InvariantProfile& p) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["field"] = p.field->descriptor();
  j["method"] = p.method;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["alpha_A"] = p.alpha_a;
  j["beta_A"] = p.beta_a;
  j["alpha_L"] = p.alpha_l;
  j["beta_L"] = p.beta_l;
  Json w;
  auto put = [&](const char* key, const std::optional<Subspace>& s) {
    if (s) w[key] = subspace_to_json(*s);
  };
  put("alpha", p.w_alpha);
  put("beta", p.w_beta);
  put("alpha_A", p.w_alpha_a);
  put("beta_A", p.w_beta_a);
  put("alpha_L", p.w_alpha_l);
  put("beta_L", p.w_beta_l);
  j["witnesses"] = std::move(w);
  return j;
}

Json axiom_report_to_json(const AxiomReport& rep) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["commutative_ok"] = rep.commutative_ok;
  j["associative_ok"] = rep.associative_ok;
  j["antisymmetric_ok"] = rep.antisymmetric_ok;
  j["jacobi_ok"] = rep.jacobi_ok;
  j["leibniz_ok"] = rep.leibniz_ok;
  j["ok"] = rep.all_ok();
  if (rep.first_failure) {
    const AxiomFailureDetail& d = *rep.first_failure;
    Json left = Json::array(), right = Json::array();
    for (const Fel& x : d.left) left.push_back(x.field()->emit_elem(x));
    for (const Fel& x : d.right) right.push_back(x.field()->emit_elem(x));
    j["first_failure"] =
        Json{{"identity", d.identity}, {"triple", Json::array({d.i, d.j, d.k})}, {"left", left}, {"right", right}};
  }
  return j;
}

Json certificate_to_json(const PoissonAlgebra& alg, const Certificate& cert) {
  (void)alg;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["claim"] = std::string(cert.property == ClaimProperty::AbelianIdeal ? "abelian_ideal" : "abelian_subalgebra");
  j["products"] = cert.kind == ProductKind::Both ? "poisson" : (cert.kind == ProductKind::Dot ? "dot_only" : "lie_only");
  j["subspace"] = subspace_to_json(cert.subspace);
  j["verdict"] = cert.accepted ? "accepted" : "rejected";
  if (!cert.accepted) j["failing_product"] = cert.failing_product;
  return j;
}

std::string render_profile_text(const PoissonAlgebra& alg, const InvariantProfile& p) {
  std::ostringstream os;
  os << (alg.name().empty() ? "algebra" : alg.name()) << " over " << p.field->descriptor()
     << ": (alpha, beta, alpha_A, beta_A, alpha_L, beta_L) = " << p.tuple_str() << "\n";
  auto wit = [&](const char* label, const std::optional<Subspace>& s) {
    if (!s) return;
    os << "  " << label << " witness, dim " << s->dim() << ":";
    for (int r = 0; r < s->dim(); ++r) {
      os << " (";
      for (int c = 0; c < s->ambient(); ++c) {
        if (c) os << ",";
        os << s->field()->emit_elem(s->basis().at(r, c));
      }
      os << ")";
    }
    os << "\n";
  };
  wit("alpha", p.w_alpha);
  wit("beta", p.w_beta);
  wit("alpha_A", p.w_alpha_a);
  wit("beta_A", p.w_beta_a);
  wit("alpha_L", p.w_alpha_l);
  wit("beta_L", p.w_beta_l);
  return os.str();
}

std::string render_axiom_report_text(const PoissonAlgebra& alg, const AxiomReport& rep) {
  std::ostringstream os;
  os << (alg.name().empty() ? "algebra" : alg.name()) << ": ";
  if (rep.all_ok()) {
    os << "all axioms hold (commutative, associative, antisymmetric, jacobi, leibniz)\n";
    return os.str();
  }
  os << "axiom failure\n";
  os << "  associative: " << (rep.associative_ok ? "ok" : "FAIL") << "\n";
  os << "  jacobi:      " << (rep.jacobi_ok ? "ok" : "FAIL") << "\n";
  os << "  leibniz:     " << (rep.leibniz_ok ? "ok" : "FAIL") << "\n";
  if (rep.first_failure) {
    const AxiomFailureDetail& d = *rep.first_failure;
    os << "  first failure: " << d.identity << " at basis triple (" << d.i << "," << d.j << "," << d.k << ")\n";
    auto vec = [&](const Vec& v) {
      std::ostringstream vs;
      vs << "(";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) vs << ",";
        vs << v[i].field()->emit_elem(v[i]);
      }
      vs << ")";
      return vs.str();
    };
    os << "    left  = " << vec(d.left) << "\n";
    os << "    right = " << vec(d.right) << "\n";
  }
  return os.str();
}

}  // namespace poisson
