#include "opmaj/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "opmaj/errors.hpp"
#include "opmaj/orthopoly.hpp"
#include "opmaj/spectra.hpp"

namespace opmaj::cli {

using nlohmann::json;

namespace {

struct SchemeSource {
  RecurrenceScheme scheme;
  json params;
};

json params_json(const RecurrenceScheme& scheme, const RunConfig& config) {
  json p = json::object();
  if (config.custom_path) {
    p["path"] = *config.custom_path;
    return p;
  }
  if (scheme.family() == Family::Jacobi) {
    p["alpha"] = scheme.params().alpha;
    p["beta"] = scheme.params().beta;
  } else if (scheme.family() == Family::Laguerre) {
    p["alpha"] = scheme.params().alpha;
  }
  return p;
}

RecurrenceScheme make_scheme(const RunConfig& config, Family family, std::size_t depth) {
  return classical_scheme(family, config.params, depth);
}

RecurrenceScheme scheme_for(const RunConfig& config, std::size_t depth) {
  if (config.custom_path) return load_custom_scheme(*config.custom_path);
  return make_scheme(config, *config.family, depth);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.out_path) {
    std::ofstream file(*config.out_path);
    if (!file) throw UsageError("cannot write to '" + *config.out_path + "'");
    file << text;
    return;
  }
  out << text;
}

json base_header(const RecurrenceScheme& scheme, const RunConfig& config) {
  return json{{"family", family_name(scheme.family())},
              {"params", params_json(scheme, config)},
              {"n", config.n}};
}

int run_zeros(const RunConfig& config, std::ostream& out) {
  const RecurrenceScheme scheme = scheme_for(config, config.n + 1);
  const SpectralData s = eigen_decompose(jacobi_matrix(scheme, config.n));
  if (config.format == OutputFormat::Csv) {
    std::string text = "j,x\n";
    for (std::size_t j = 0; j < s.order(); ++j) {
      text += std::to_string(j + 1) + "," + fmt17(s.eigenvalues[j]) + "\n";
    }
    emit(config, out, text);
    return kExitOk;
  }
  json doc = base_header(scheme, config);
  doc["zeros"] = s.eigenvalues;
  emit(config, out, doc.dump(2) + "\n");
  return kExitOk;
}

int run_weights(const RunConfig& config, std::ostream& out) {
  const RecurrenceScheme scheme = scheme_for(config, config.n + 1);
  const QuadratureRule rule = gauss_rule(scheme, config.n);
  json formula = nullptr;
  try {
    formula = christoffel_numbers_formula(scheme, config.n);
  } catch (const OverflowError&) {
  }
  if (config.format == OutputFormat::Csv) {
    std::string text = "j,x,lambda\n";
    for (std::size_t j = 0; j < rule.order(); ++j) {
      text += std::to_string(j + 1) + "," + fmt17(rule.nodes[j]) + "," + fmt17(rule.weights[j]) + "\n";
    }
    emit(config, out, text);
    return kExitOk;
  }
  json doc = base_header(scheme, config);
  doc["nodes"] = rule.nodes;
  doc["weights"] = rule.weights;
  doc["weights_formula"] = formula;
  emit(config, out, doc.dump(2) + "\n");
  return kExitOk;
}

int run_matrix(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const RecurrenceScheme scheme = scheme_for(config, config.n + 1);
  StochasticMatrixResult m;
  switch (*config.theorem) {
    case Theorem::A: m = matrix_A(scheme, config.n, config.route); break;
    case Theorem::B: m = matrix_B(scheme, config.n, config.route); break;
    case Theorem::C: m = matrix_C(scheme, config.n, *config.k, config.route); break;
  }
  const json doc = matrix_report(m, scheme, config);
  emit(config, out, config.format == OutputFormat::Csv ? matrix_csv(m.entries) : doc.dump(2) + "\n");

  const double diameter = m.n > 1 ? m.source.back() - m.source.front() : 1.0;
  json failures = json::array();
  auto fail_if = [&](bool bad, const char* check, double value, double limit) {
    if (bad) failures.push_back({{"check", check}, {"value", value}, {"limit", limit}});
  };
  const StochasticCheck sc = check_doubly_stochastic(m, config.tol.stochastic);
  fail_if(sc.row_sum_err > config.tol.stochastic, "row_sum", sc.row_sum_err, config.tol.stochastic);
  fail_if(sc.col_sum_err > config.tol.stochastic, "col_sum", sc.col_sum_err, config.tol.stochastic);
  fail_if(sc.min_entry < -config.tol.stochastic, "min_entry", sc.min_entry, -config.tol.stochastic);
  fail_if(!(m.relation_err <= config.tol.relation * diameter), "relation", m.relation_err,
          config.tol.relation * diameter);
  const double margin = doc["majorization"]["min_margin"].get<double>();
  fail_if(!doc["majorization"]["holds"].get<bool>(), "majorization", margin, -config.tol.majorization);
  if (failures.empty()) return kExitOk;
  err << json{{"failures", failures}}.dump(2) << "\n";
  return kExitCheckFailed;
}

int run_quad(const RunConfig& config, std::ostream& out) {
  const std::size_t depth = std::max(config.n + 1, config.degree / 2 + 1);
  const RecurrenceScheme scheme = scheme_for(config, depth);
  const QuadratureRule rule = gauss_rule(scheme, config.n);
  const double q = gauss_quadrature(rule, [&](double x) { return std::pow(x, static_cast<double>(config.degree)); });
  const double moment = recurrence_moments(scheme, config.degree).back();
  double scale = 0.0;
  for (std::size_t j = 0; j < rule.order(); ++j) {
    scale += rule.weights[j] * std::pow(std::abs(rule.nodes[j]), static_cast<double>(config.degree));
  }
  const double rel = std::abs(q - moment) / std::max({std::abs(moment), scale, 1e-300});
  const bool exact_expected = config.degree + 1 <= 2 * config.n;
  json doc = base_header(scheme, config);
  doc["degree"] = config.degree;
  doc["quadrature"] = q;
  doc["moment"] = moment;
  doc["relative_error"] = rel;
  doc["exact_degree"] = 2 * config.n - 1;
  emit(config, out, doc.dump(2) + "\n");
  return exact_expected && rel > config.tol.identity ? kExitCheckFailed : kExitOk;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  VerifyOptions opt;
  opt.n_max = config.n_max;
  opt.tol = config.tol;
  opt.seed = config.seed;

  std::vector<RecurrenceScheme> schemes;
  if (config.custom_path) {
    schemes.push_back(load_custom_scheme(*config.custom_path));
  } else if (config.family) {
    schemes.push_back(make_scheme(config, *config.family, config.n_max + 2));
  } else {
    const std::size_t depth = config.n_max + 2;
    schemes.push_back(classical_scheme(Family::ChebyshevU, {}, depth));
    schemes.push_back(classical_scheme(Family::ChebyshevT, {}, depth));
    schemes.push_back(classical_scheme(Family::Legendre, {}, depth));
    schemes.push_back(classical_scheme(Family::Jacobi, {2.0, 0.5}, depth));
    schemes.push_back(classical_scheme(Family::Laguerre, {0.0, 0.0}, depth));
    schemes.push_back(classical_scheme(Family::Hermite, {}, depth));
  }

  json reports = json::array();
  bool passed = true;
  for (const auto& scheme : schemes) {
    const VerifyReport report = verify_scheme(scheme, opt);
    json r = verify_report_json(report);
    r["params"] = params_json(scheme, config);
    reports.push_back(std::move(r));
    passed = passed && report.passed();
  }
  const json doc{{"passed", passed}, {"seed", config.seed}, {"reports", reports}};
  emit(config, out, doc.dump(2) + "\n");
  return passed ? kExitOk : kExitCheckFailed;
}

std::optional<Theorem> parse_theorem(const std::string& s) {
  if (s == "A" || s == "a") return Theorem::A;
  if (s == "B" || s == "b") return Theorem::B;
  if (s == "C" || s == "c") return Theorem::C;
  throw UsageError("--theorem must be A, B or C");
}

}  // namespace

void validate(const RunConfig& config) {
  const bool has_family = config.family.has_value();
  const bool has_custom = config.custom_path.has_value();
  if (has_family && has_custom) throw UsageError("use either --family or --custom, not both");
  if (config.command != Command::Verify && !has_family && !has_custom) {
    throw UsageError("one of --family or --custom is required");
  }
  if (config.family == Family::Custom) throw UsageError("use --custom <file> for custom schemes");
  if (config.command == Command::Verify) {
    if (config.n_max < 1) throw UsageError("--n-max must be at least 1");
  } else if (config.n < 1) {
    throw UsageError("--n must be at least 1");
  }
  if (config.command == Command::Matrix) {
    if (!config.theorem) throw UsageError("--theorem is required");
    const bool is_c = *config.theorem == Theorem::C;
    if (is_c && !config.k) throw UsageError("--k is required for theorem C");
    if (!is_c && config.k) throw UsageError("--k is only valid for theorem C");
    if (config.k && (*config.k < 1 || *config.k > config.n)) {
      throw UsageError("--k must satisfy 1 <= k <= n");
    }
  }
  for (double t : {config.tol.stochastic, config.tol.relation, config.tol.majorization,
                   config.tol.identity}) {
    if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("tolerances must be positive");
  }
}

RecurrenceScheme load_custom_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read custom scheme file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in '" + path + "': " + e.what());
  }
  if (!doc.is_object() || !doc.contains("a") || !doc.contains("b") || !doc["a"].is_array() ||
      !doc["b"].is_array()) {
    throw UsageError("custom scheme '" + path + "' must be an object with arrays \"a\" and \"b\"");
  }
  auto numbers = [&](const json& arr, const char* key) {
    std::vector<double> v;
    for (const auto& x : arr) {
      if (!x.is_number()) throw UsageError(std::string("non-numeric entry in \"") + key + "\"");
      v.push_back(x.get<double>());
    }
    return v;
  };
  try {
    return from_sequences(numbers(doc["a"], "a"), numbers(doc["b"], "b"));
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
}

json matrix_report(const StochasticMatrixResult& m, const RecurrenceScheme& scheme,
                   const RunConfig& config) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.entries.rows(); ++i) {
    const auto r = m.entries.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  const MajorizationCertificate cert = check_majorization(m.target, m.source, config.tol.majorization);
  json convex = json::array();
  for (ConvexFn f : {ConvexFn::Square, ConvexFn::Abs, ConvexFn::Exp}) {
    convex.push_back({{"f", convex_name(f)}, {"margin", convex_report(m, f).margin}});
  }
  return json{{"theorem", theorem_name(m.theorem)},
              {"family", family_name(scheme.family())},
              {"params", params_json(scheme, config)},
              {"n", m.n},
              {"k", m.k},
              {"source_zeros", m.source},
              {"target", m.target},
              {"matrix", rows},
              {"row_sum_max_err", m.row_sum_err},
              {"col_sum_max_err", m.col_sum_err},
              {"relation_max_err", m.relation_err},
              {"majorization", {{"holds", cert.holds}, {"min_margin", cert.min_margin()}}},
              {"convex", convex}};
}

std::string matrix_csv(const Matrix& m) {
  std::string text;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    text += (j ? "," : "") + std::string("j=") + std::to_string(j + 1);
  }
  text += "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) text += (j ? "," : "") + fmt17(m(i, j));
    text += "\n";
  }
  return text;
}

json verify_report_json(const VerifyReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"n", f.n}, {"k", f.k}, {"theorem", f.theorem}, {"check", f.check},
                        {"value", f.value}, {"limit", f.limit}});
  }
  return json{{"family", report.family},   {"n_max", report.n_max},
              {"cases", report.cases},     {"checks", report.checks},
              {"passed", report.passed()}, {"failures", failures}};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    switch (config.command) {
      case Command::Zeros: return run_zeros(config, out);
      case Command::Weights: return run_weights(config, out);
      case Command::Matrix: return run_matrix(config, out, err);
      case Command::Quad: return run_quad(config, out);
      case Command::Verify: return run_verify(config, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DepthError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << json{{"error", e.what()}}.dump() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeros, Christoffel numbers and doubly stochastic matrices of orthogonal polynomials"};
  app.name("opmaj");
  app.require_subcommand(1);

  RunConfig config;
  std::string family, theorem, format = "json", route = "eigen", custom, out_path;

  auto add_scheme = [&](CLI::App* sub) {
    sub->add_option("--family", family,
                    "chebyshev-u, chebyshev-t, legendre, jacobi, laguerre, hermite");
    sub->add_option("--alpha", config.params.alpha, "Jacobi/Laguerre alpha");
    sub->add_option("--beta", config.params.beta, "Jacobi beta");
    sub->add_option("--custom", custom, "JSON file with arrays \"a\" (a_1..) and \"b\" (b_0..)");
    sub->add_option("--format", format, "json or csv");
    sub->add_option("--out", out_path, "write output to this file instead of stdout");
  };
  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--tol-stochastic", config.tol.stochastic, "row/column sum tolerance");
    sub->add_option("--tol-relation", config.tol.relation, "relation tolerance (times diameter)");
  };

  auto* zeros = app.add_subcommand("zeros", "zeros of p_n");
  auto* weights = app.add_subcommand("weights", "Gauss nodes and Christoffel numbers");
  auto* matrix = app.add_subcommand("matrix", "doubly stochastic matrix A, B or C");
  auto* quad = app.add_subcommand("quad", "Gauss quadrature of x^degree against the moment");
  auto* verify = app.add_subcommand("verify", "sweep every check up to --n-max");
  for (auto* sub : {zeros, weights, matrix, quad, verify}) add_scheme(sub);
  for (auto* sub : {zeros, weights, matrix, quad}) sub->add_option("--n", config.n, "order n");
  matrix->add_option("--theorem", theorem, "A, B or C");
  matrix->add_option("--k", config.k, "deleted row/column for C (1 <= k <= n)");
  matrix->add_option("--route", route, "eigen (default) or poly");
  add_tolerances(matrix);
  add_tolerances(verify);
  quad->add_option("--degree", config.degree, "monomial degree");
  verify->add_option("--n-max", config.n_max, "largest order in the sweep");
  verify->add_option("--tol", config.tol.stochastic, "stochasticity and majorization tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (zeros->parsed()) config.command = Command::Zeros;
    if (weights->parsed()) config.command = Command::Weights;
    if (matrix->parsed()) config.command = Command::Matrix;
    if (quad->parsed()) config.command = Command::Quad;
    if (verify->parsed()) {
      config.command = Command::Verify;
      if (verify->count("--tol")) config.tol.majorization = config.tol.stochastic;
    }
    if (!family.empty()) {
      try {
        config.family = parse_family(family);
      } catch (const ParameterError& e) {
        throw UsageError(e.what());
      }
    }
    if (!custom.empty()) config.custom_path = custom;
    if (!out_path.empty()) config.out_path = out_path;
    if (!theorem.empty()) config.theorem = parse_theorem(theorem);
    if (format == "json") {
      config.format = OutputFormat::Json;
    } else if (format == "csv") {
      config.format = OutputFormat::Csv;
    } else {
      throw UsageError("--format must be json or csv");
    }
    if (route == "eigen") {
      config.route = EntryRoute::Eigenvector;
    } else if (route == "poly") {
      config.route = EntryRoute::Polynomial;
    } else {
      throw UsageError("--route must be eigen or poly");
    }
    if (const char* seed = std::getenv("OPMAJ_SEED"); seed && *seed) {
      try {
        std::size_t used = 0;
        config.seed = std::stoull(seed, &used);
        if (seed[used] != '\0') throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw UsageError(std::string("OPMAJ_SEED must be an unsigned integer, got '") + seed + "'");
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  return run(config, out, err);
}

}  // namespace opmaj::cli
