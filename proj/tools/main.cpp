#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "poisson/catalog.hpp"
#include "poisson/compat.hpp"
#include "poisson/theorems.hpp"

namespace {

using namespace poisson;

constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Malformed, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ParamMap parse_params(const std::vector<std::string>& raw) {
  ParamMap out;
  for (const std::string& kv : raw) {
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos) fail(ErrorCode::BadParams, "--param expects key=value, got '" + kv + "'");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

std::vector<const Field*> parse_fields(const std::string& csv) {
  std::vector<const Field*> out;
  std::stringstream ss(csv);
  std::string piece;
  while (std::getline(ss, piece, ','))
    if (!piece.empty()) out.push_back(Field::parse(piece));
  return out;
}

int resolve_threads(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("POISSON_LAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

struct AlgebraSource {
  std::string file;
  std::string catalog_name;
  std::vector<std::string> params;
  std::string field = "q";
  bool no_validate = false;

  void attach(CLI::App* cmd, bool field_needed = true) {
    cmd->add_option("file", file, "algebra document (path or '-' for stdin)");
    cmd->add_option("--catalog", catalog_name, "build a catalog algebra instead of reading a file");
    cmd->add_option("--param", params, "catalog parameter key=value (repeatable)");
    if (field_needed) cmd->add_option("--field", field, "field descriptor for --catalog (q, fp:p, qext:...)");
    cmd->add_flag("--no-validate", no_validate, "skip the axiom check on load");
  }

  PoissonAlgebra load() const {
    if (!catalog_name.empty()) return catalog_build(catalog_name, parse_params(params), Field::parse(field));
    if (file.empty()) fail(ErrorCode::Malformed, "need an input file or --catalog NAME");
    return parse_algebra(read_input(file), !no_validate);
  }
};

std::string series_text(const PoissonAlgebra& alg) {
  std::ostringstream os;
  auto dims = [](const SeriesResult& s) {
    std::ostringstream d;
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
      if (i) d << " > ";
      d << s.terms[i].dim();
    }
    return d.str();
  };
  SeriesResult ds = derived_series(alg);
  SeriesResult lcs = lower_central_series(alg);
  SolvabilityClass sc = solvability_class(alg);
  os << (alg.name().empty() ? "algebra" : alg.name()) << " over " << alg.field()->descriptor() << "\n";
  os << "  derived series dims:        " << dims(ds) << (ds.reaches_zero() ? "  (solvable)" : "  (stabilizes)") << "\n";
  os << "  lower central series dims:  " << dims(lcs) << (lcs.reaches_zero() ? "  (nilpotent)" : "  (stabilizes)")
     << "\n";
  os << "  trivial dot: " << (sc.trivial_dot ? "yes" : "no") << ", trivial bracket: "
     << (sc.trivial_bracket ? "yes" : "no") << "\n";
  return os.str();
}

Json series_json(const PoissonAlgebra& alg) {
  auto series = [](const SeriesResult& s) {
    Json terms = Json::array();
    for (const Subspace& t : s.terms) terms.push_back(subspace_to_json(t));
    return Json{{"terms", terms}, {"stabilized", s.stabilized}, {"steps", s.steps}, {"reaches_zero", s.reaches_zero()}};
  };
  SolvabilityClass sc = solvability_class(alg);
  Json j;
  j["schema_version"] = 1;
  j["derived"] = series(derived_series(alg));
  j["lower_central"] = series(lower_central_series(alg));
  j["trivial_dot"] = sc.trivial_dot;
  j["trivial_bracket"] = sc.trivial_bracket;
  if (sc.solvable_steps) j["solvable_steps"] = *sc.solvable_steps;
  if (sc.nilpotent_steps) j["nilpotent_steps"] = *sc.nilpotent_steps;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poisson-lab: exact invariants of finite-dimensional Poisson algebras"};
  app.require_subcommand(1);
  bool json_out = false;
  int threads = 0;
  std::uint64_t seed = 0;
  app.add_flag("--json", json_out, "machine-readable output");
  app.add_option("--threads", threads, "worker threads (default 1; env POISSON_LAB_THREADS)");
  app.add_option("--seed", seed, "seed for randomized operations");

  AlgebraSource validate_src, invariants_src, series_src, normalizer_src;

  CLI::App* cmd_validate = app.add_subcommand("validate", "check the Poisson axioms of an algebra");
  validate_src.attach(cmd_validate);
  cmd_validate->get_option("--no-validate")->group("");  // always validates; hide the flag

  CLI::App* cmd_invariants = app.add_subcommand("invariants", "compute the six abelian invariants");
  invariants_src.attach(cmd_invariants);

  CLI::App* cmd_series = app.add_subcommand("series", "derived and lower central series");
  series_src.attach(cmd_series);

  std::string subspace_json;
  CLI::App* cmd_normalizer = app.add_subcommand("normalizer", "normalizer of a subalgebra");
  normalizer_src.attach(cmd_normalizer);
  cmd_normalizer->add_option("--subspace", subspace_json, "basis rows as a JSON array of coefficient rows")
      ->required();

  CLI::App* cmd_catalog = app.add_subcommand("catalog", "named algebra families");
  CLI::App* cmd_catalog_list = cmd_catalog->add_subcommand("list", "list catalog entries");
  CLI::App* cmd_catalog_emit = cmd_catalog->add_subcommand("emit", "emit one catalog algebra as a document");
  std::string emit_name, emit_field = "q";
  std::vector<std::string> emit_params;
  cmd_catalog_emit->add_option("name", emit_name, "catalog entry name")->required();
  cmd_catalog_emit->add_option("--param", emit_params, "parameter key=value (repeatable)");
  cmd_catalog_emit->add_option("--field", emit_field, "field descriptor");

  std::string compat_file;
  std::uint64_t compat_budget = 1000000;
  CLI::App* cmd_compat = app.add_subcommand("compat", "commutative products compatible with a Lie bracket");
  cmd_compat->add_option("--lie", compat_file, "Lie algebra document (zero dot tensor)")->required();
  cmd_compat->add_option("--budget", compat_budget, "max points to enumerate");

  CLI::App* cmd_theorems = app.add_subcommand("theorems", "executable theorem checks");
  CLI::App* cmd_theorems_run = cmd_theorems->add_subcommand("run", "run one check");
  CLI::App* cmd_theorems_all = cmd_theorems->add_subcommand("all", "run every check");
  std::string check_id, theorem_fields;
  std::uint64_t theorem_budget = 1000000;
  cmd_theorems_run->add_option("check", check_id, "check id (see 'theorems run --list')");
  bool list_checks = false;
  cmd_theorems_run->add_flag("--list", list_checks, "list known check ids");
  cmd_theorems_run->add_option("--fields", theorem_fields, "comma-separated field descriptors");
  cmd_theorems_run->add_option("--budget", theorem_budget, "enumeration budget");
  cmd_theorems_all->add_option("--budget", theorem_budget, "enumeration budget");

  int table_which = 1;
  std::string table_fields, table_t;
  CLI::App* cmd_tables = app.add_subcommand("tables", "reproduce the builtin classification tables");
  cmd_tables->add_option("--which", table_which, "1 (dim 3) or 2 (dim 4 nilpotent)")->required();
  cmd_tables->add_option("--fields", table_fields, "comma-separated field descriptors");
  cmd_tables->add_option("--t", table_t, "comma-separated t values for parameterized rows");

  CLI11_PARSE(app, argc, argv);

  try {
    RunOptions ropts;
    ropts.budget = theorem_budget;
    ropts.seed = seed;
    ropts.threads = resolve_threads(threads);
    SearchOptions sopts{ropts.threads};

    if (cmd_validate->parsed()) {
      PoissonAlgebra alg = [&] {
        AlgebraSource src = validate_src;
        src.no_validate = true;  // report instead of throwing
        return src.load();
      }();
      const AxiomReport& rep = alg.validate();
      if (json_out)
        std::cout << axiom_report_to_json(rep).dump(2) << "\n";
      else
        std::cout << render_axiom_report_text(alg, rep);
      return rep.all_ok() ? 0 : 1;
    }
    if (cmd_invariants->parsed()) {
      PoissonAlgebra alg = invariants_src.load();
      InvariantProfile p = invariant_profile(alg, sopts);
      if (json_out)
        std::cout << profile_to_json(p).dump(2) << "\n";
      else
        std::cout << render_profile_text(alg, p);
      return 0;
    }
    if (cmd_series->parsed()) {
      PoissonAlgebra alg = series_src.load();
      if (json_out)
        std::cout << series_json(alg).dump(2) << "\n";
      else
        std::cout << series_text(alg);
      return 0;
    }
    if (cmd_normalizer->parsed()) {
      PoissonAlgebra alg = normalizer_src.load();
      Json rows = Json::parse(subspace_json);
      std::vector<Vec> basis;
      for (const Json& row : rows) {
        Vec v;
        for (const Json& c : row)
          v.push_back(c.is_number_integer() ? alg.field()->from_int(c.get<std::int64_t>())
                                            : alg.field()->parse_elem(c.get<std::string>()));
        basis.push_back(std::move(v));
      }
      Subspace u = Subspace::span(alg.field(), alg.dim(), basis);
      Subspace norm = normalizer(alg, u);
      if (json_out)
        std::cout << Json{{"schema_version", 1}, {"subspace", subspace_to_json(u)}, {"normalizer", subspace_to_json(norm)}}
                         .dump(2)
                  << "\n";
      else
        std::cout << "normalizer has dim " << norm.dim() << ":\n" << subspace_to_json(norm).dump(2) << "\n";
      return 0;
    }
    if (cmd_catalog->parsed()) {
      if (cmd_catalog_list->parsed()) {
        if (json_out) {
          Json arr = Json::array();
          for (const CatalogEntry& e : catalog_entries()) {
            Json je{{"name", e.name}, {"summary", e.summary}, {"lie_only", e.lie_only}};
            if (!e.params_doc.empty()) je["params"] = e.params_doc;
            if (e.expected_invariants) {
              je["expected_invariants"] = *e.expected_invariants;
              je["expected_note"] = e.expected_note;
            }
            arr.push_back(std::move(je));
          }
          std::cout << arr.dump(2) << "\n";
        } else {
          for (const CatalogEntry& e : catalog_entries()) {
            std::cout << e.name;
            if (!e.params_doc.empty()) std::cout << " [params: " << e.params_doc << "]";
            std::cout << " -- " << e.summary << "\n";
          }
        }
        return 0;
      }
      if (cmd_catalog_emit->parsed()) {
        PoissonAlgebra alg = catalog_build(emit_name, parse_params(emit_params), Field::parse(emit_field));
        std::cout << emit_algebra(alg);
        return 0;
      }
      std::cerr << "catalog needs a subcommand (list | emit)\n";
      return kExitUsage;
    }
    if (cmd_compat->parsed()) {
      PoissonAlgebra lie = parse_algebra(read_input(compat_file));
      ProductSpace space = leibniz_space(lie);
      std::vector<PoissonAlgebra> sols = poisson_structures_on(lie, compat_budget);
      if (json_out) {
        Json arr = Json::array();
        for (const PoissonAlgebra& alg : sols) arr.push_back(algebra_to_json(alg));
        std::cout << Json{{"schema_version", 1},
                          {"leibniz_space_dim", space.dimension},
                          {"poisson_structures", arr}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "Leibniz solution space dimension: " << space.dimension << "\n";
        std::cout << "associative points: " << sols.size() << "\n";
        for (const PoissonAlgebra& alg : sols) std::cout << emit_algebra(alg);
      }
      return 0;
    }
    if (cmd_theorems->parsed()) {
      std::vector<CheckReport> reports;
      if (cmd_theorems_run->parsed()) {
        if (list_checks) {
          for (const std::string& name : known_checks()) std::cout << name << "\n";
          return 0;
        }
        if (check_id.empty()) {
          std::cerr << "theorems run needs a check id\n";
          return kExitUsage;
        }
        reports.push_back(run_check(check_id, parse_fields(theorem_fields), ropts));
      } else if (cmd_theorems_all->parsed()) {
        reports = run_all_checks(ropts);
      } else {
        std::cerr << "theorems needs a subcommand (run | all)\n";
        return kExitUsage;
      }
      bool any_fail = false;
      Json arr = Json::array();
      for (const CheckReport& rep : reports) {
        any_fail = any_fail || rep.failed();
        if (json_out)
          arr.push_back(check_report_to_json(rep));
        else
          std::cout << render_check_report_text(rep);
      }
      if (json_out) std::cout << arr.dump(2) << "\n";
      return any_fail ? 1 : 0;
    }
    if (cmd_tables->parsed()) {
      std::vector<std::string> ts;
      if (table_t.empty()) {
        ts = table_which == 1 ? std::vector<std::string>{"1"} : std::vector<std::string>{"1", "2"};
      } else {
        std::stringstream ss(table_t);
        std::string piece;
        while (std::getline(ss, piece, ',')) ts.push_back(piece);
      }
      CheckReport rep = reproduce_table(table_which, parse_fields(table_fields), ts, ropts);
      if (json_out)
        std::cout << check_report_to_json(rep).dump(2) << "\n";
      else
        std::cout << render_check_report_text(rep);
      return rep.failed() ? 1 : 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::AxiomFailure:
        return 1;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
