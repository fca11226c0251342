#include "opmaj/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <thread>
#include <tuple>

#include "opmaj/errors.hpp"
#include "opmaj/identities.hpp"
#include "opmaj/majorization.hpp"
#include "opmaj/orthopoly.hpp"
#include "opmaj/spectra.hpp"

namespace opmaj {

bool has_bounded_support(Family family) noexcept {
  switch (family) {
    case Family::ChebyshevU:
    case Family::ChebyshevT:
    case Family::Legendre:
    case Family::Jacobi:
      return true;
    default:
      return false;
  }
}

namespace {

struct CaseLog {
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::vector<CheckFailure> failures;

  // Records a check that passes iff value <= limit.
  void expect_le(std::size_t n, std::size_t k, std::string_view theorem, std::string_view check,
                 double value, double limit) {
    ++checks;
    if (!(value <= limit)) {
      failures.push_back({n, k, std::string(theorem), std::string(check), value, limit});
    }
  }
  // Passes iff value >= limit.
  void expect_ge(std::size_t n, std::size_t k, std::string_view theorem, std::string_view check,
                 double value, double limit) {
    ++checks;
    if (!(value >= limit)) {
      failures.push_back({n, k, std::string(theorem), std::string(check), value, limit});
    }
  }
};

double min_interlace_margin(const std::vector<double>& outer, const std::vector<double>& inner) {
  // outer has one more point than inner: outer[j] < inner[j] < outer[j+1].
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < inner.size(); ++j) {
    margin = std::min({margin, inner[j] - outer[j], outer[j + 1] - inner[j]});
  }
  return margin;
}

void check_matrix(CaseLog& log, const StochasticMatrixResult& m, double trace_scale,
                  const VerifyOptions& opt, bool convex) {
  const std::string_view th = theorem_name(m.theorem);
  const std::size_t n = m.n, k = m.k;
  ++log.cases;

  const StochasticCheck sc = check_doubly_stochastic(m, opt.tol.stochastic);
  log.expect_le(n, k, th, "row_sum", sc.row_sum_err, opt.tol.stochastic);
  log.expect_le(n, k, th, "col_sum", sc.col_sum_err, opt.tol.stochastic);
  log.expect_ge(n, k, th, "min_entry", sc.min_entry, -opt.tol.stochastic);
  if (m.theorem != Theorem::C) {
    // Christoffel numbers are positive, so A and B have no zero entries.
    log.expect_ge(n, k, th, "strict_positivity", sc.min_entry, 1e-300);
  }

  const double diameter = n > 1 ? m.source.back() - m.source.front() : 1.0;
  log.expect_le(n, k, th, "relation", m.relation_err, opt.tol.relation * diameter);

  const MajorizationCertificate cert = check_majorization(m.target, m.source, opt.tol.majorization);
  log.expect_ge(n, k, th, "majorization_margin", cert.min_margin(), -opt.tol.majorization);
  log.expect_le(n, k, th, "majorization_total", cert.total_residual, opt.tol.majorization);

  const double st = std::accumulate(m.target.begin(), m.target.end(), 0.0);
  const double ss = std::accumulate(m.source.begin(), m.source.end(), 0.0);
  log.expect_le(n, k, th, "trace", std::abs(st - ss), 1e-10 * trace_scale);

  if (convex) {
    for (ConvexFn f : {ConvexFn::Square, ConvexFn::Abs, ConvexFn::Exp}) {
      const ConvexReport r = convex_report(m, f);
      log.expect_ge(n, k, th, std::string("convex_") + std::string(convex_name(f)), r.margin,
                    -opt.tol.majorization);
    }
  }
}

double max_entry_diff(const Matrix& x, const Matrix& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.data().size(); ++i) d = std::max(d, std::abs(x.data()[i] - y.data()[i]));
  return d;
}

void check_identities(CaseLog& log, const RecurrenceScheme& scheme, std::size_t n,
                      const SpectralData& spectrum, const VerifyOptions& opt) {
  const double tol = opt.tol.identity;
  const double lo = spectrum.eigenvalues.front();
  const double hi = spectrum.eigenvalues.back();

  // Christoffel numbers: reciprocal sum of squares against eigenvector weights.
  try {
    const auto formula = christoffel_numbers_formula(scheme, n);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(formula[j] - spectrum.comp_sq(0, j)) / spectrum.comp_sq(0, j));
    }
    log.expect_le(n, 0, "-", "christoffel_routes", worst, tol);
  } catch (const OverflowError&) {
    // Only the eigenvector route is authoritative once p_n overflows.
  }
  log.expect_le(n, 0, "-", "christoffel_derivative", christoffel_derivative_residual(scheme, n), tol);
  log.expect_le(n, 0, "-", "christoffel_integral", christoffel_integral_residual(scheme, n), tol);

  std::mt19937_64 rng(opt.seed + n);
  std::uniform_real_distribution<double> dist(lo, n > 1 ? hi : lo + 1.0);
  double cd = 0.0, wr = 0.0, split = 0.0;
  for (std::size_t t = 0; t < opt.spot_points; ++t) {
    const double x = dist(rng);
    cd = std::max(cd, christoffel_darboux_residual(scheme, n, x));
    wr = std::max(wr, wronskian_residual(scheme, n, x));
    for (std::size_t k = 2; k + 1 <= n; ++k) {
      split = std::max(split, associated_split_residual(scheme, n, k, x));
    }
  }
  log.expect_le(n, 0, "-", "christoffel_darboux", cd, tol);
  log.expect_le(n, 0, "-", "wronskian", wr, tol);
  log.expect_le(n, 0, "-", "associated_split", split, tol);

  for (std::size_t k = 1; k <= n; ++k) {
    const PartialFractionResiduals pf = partial_fraction_residuals(scheme, n, k);
    log.expect_le(n, k, "C", "partial_fraction_leading", pf.leading, tol);
    log.expect_le(n, k, "C", "partial_fraction_trailing", pf.trailing, tol);
  }
}

CaseLog verify_order(const RecurrenceScheme& scheme, std::size_t n, const VerifyOptions& opt,
                     bool convex) {
  CaseLog log;
  try {
    const JacobiMatrix jn = jacobi_matrix(scheme, n);
    const SpectralData spectrum = eigen_decompose(jn);
    double abs_b = 0.0;
    for (double b : jn.diag()) abs_b += std::abs(b);
    const double trace_scale = 1.0 + abs_b;

    const double zero_sum =
        std::accumulate(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), 0.0);
    log.expect_le(n, 0, "-", "trace_jn", std::abs(zero_sum - jn.trace()), 1e-10 * trace_scale);

    if (n >= 2) {
      // Strict in exact arithmetic; the outermost gaps of unbounded families
      // drop below one ulp, so allow a few ulps of the spectral radius.
      const double radius = std::max({1.0, std::abs(spectrum.eigenvalues.front()),
                                      std::abs(spectrum.eigenvalues.back())});
      const double slack = -8.0 * std::numeric_limits<double>::epsilon() * radius;
      const SpectralData previous = eigen_decompose(delete_row_col(jn, n).first);
      const SpectralData assoc = eigen_decompose(delete_row_col(jn, 1).second);
      log.expect_ge(n, 0, "-", "interlacing_previous",
                    min_interlace_margin(spectrum.eigenvalues, previous.eigenvalues), slack);
      log.expect_ge(n, 0, "-", "interlacing_associated",
                    min_interlace_margin(spectrum.eigenvalues, assoc.eigenvalues), slack);
      double positive = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) positive = std::min(positive, spectrum.comp_sq(0, j));
      log.expect_ge(n, 0, "-", "christoffel_positive", positive, 1e-300);
    }

    const StochasticMatrixResult a = matrix_A(jn, spectrum);
    const StochasticMatrixResult b = matrix_B(jn, spectrum);
    check_matrix(log, a, trace_scale, opt, convex);
    check_matrix(log, b, trace_scale, opt, convex);

    if (n >= 2) {
      // Column-sum identities from the proofs: sum_{i<n} a_ij = 1 - a_nj,
      // sum_{i<n} b_ij = 1 - lambda_j.
      double col_a = 0.0, col_b = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
          sa += a.entries(i, j);
          sb += b.entries(i, j);
        }
        col_a = std::max(col_a, std::abs(sa - (1.0 - a.entries(n - 1, j))));
        col_b = std::max(col_b, std::abs(sb - (1.0 - spectrum.comp_sq(0, j))));
      }
      log.expect_le(n, n, "A", "column_identity", col_a, opt.tol.stochastic);
      log.expect_le(n, 1, "B", "column_identity", col_b, opt.tol.stochastic);
    }

    for (std::size_t k = 1; k <= n; ++k) {
      const StochasticMatrixResult c = matrix_C(jn, spectrum, k);
      check_matrix(log, c, trace_scale, opt, convex);
      if (k == n) log.expect_le(n, k, "C", "reduces_to_A", max_entry_diff(c.entries, a.entries), opt.tol.stochastic);
      if (k == 1) log.expect_le(n, k, "C", "reduces_to_B", max_entry_diff(c.entries, b.entries), opt.tol.stochastic);
    }

    if (n <= opt.identity_n_max && scheme.max_index() >= n + 1) {
      check_identities(log, scheme, n, spectrum, opt);
    }
  } catch (const std::exception& e) {
    log.failures.push_back({n, 0, "-", std::string("exception: ") + e.what(), 0.0, 0.0});
  }
  return log;
}

}  // namespace

VerifyReport verify_scheme(const RecurrenceScheme& scheme, const VerifyOptions& options) {
  VerifyReport report;
  report.family = std::string(family_name(scheme.family()));
  const std::size_t n_max = std::min(options.n_max, scheme.max_index() + 1);
  report.n_max = n_max;
  const bool convex = options.convex && has_bounded_support(scheme.family());

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);

  // Orders are handed out round-robin; results land in per-n slots so the
  // aggregate does not depend on scheduling.
  std::vector<CaseLog> logs(n_max + 1);
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t n = 1 + w; n <= n_max; n += threads) {
        logs[n] = verify_order(scheme, n, options, convex);
      }
    }));
  }
  for (auto& w : workers) w.get();

  for (std::size_t n = 1; n <= n_max; ++n) {
    report.cases += logs[n].cases;
    report.checks += logs[n].checks;
    for (auto& f : logs[n].failures) report.failures.push_back(std::move(f));
  }
  std::sort(report.failures.begin(), report.failures.end(), [](const auto& x, const auto& y) {
    return std::tie(x.n, x.theorem, x.k, x.check) < std::tie(y.n, y.theorem, y.k, y.check);
  });
  return report;
}

}  // namespace opmaj
