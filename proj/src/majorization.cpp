#include "opmaj/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <string>

#include "opmaj/errors.hpp"
#include "opmaj/orthopoly.hpp"

namespace opmaj {

std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::A: return "A";
    case Theorem::B: return "B";
    case Theorem::C: return "C";
  }
  return "?";
}

namespace {

// Factors of a theorem matrix. Every row i < n-1 has the form
//   entry(i, j) = row_factor[i] * col_weight[j] / (points[i] - source[j])^2
// and the last row is col_weight itself. When overlap is set it returns the
// same entry as a squared inner product of eigenvectors, used for close pairs.
struct Factors {
  std::vector<double> source;
  std::vector<double> col_weight;
  std::vector<double> points;
  std::vector<double> row_factor;
  double last_target = 0.0;
  std::function<double(std::size_t, std::size_t)> overlap;
};

void fill_rows_with_overlap(StochasticMatrixResult& out, const Factors& f) {
  const std::size_t n = out.n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double z = f.points[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double x = f.source[j];
      const double d = z - x;
      if (std::abs(d) < kSeparationTol * std::max({1.0, std::abs(z), std::abs(x)})) {
        out.entries(i, j) = f.overlap(i, j);
        out.from_overlap.emplace_back(i, j);
      } else {
        out.entries(i, j) = f.row_factor[i] * f.col_weight[j] / (d * d);
      }
    }
  }
}

void fill_rows_with_completion(StochasticMatrixResult& out, const Factors& f) {
  const std::size_t n = out.n;
  const double diameter = n > 1 ? f.source.back() - f.source.front() : 0.0;
  const double coincidence = kCoincidenceTol * std::max(1.0, diameter);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double z = f.points[i];
    std::size_t nearest = 0;
    for (std::size_t j = 1; j < n; ++j) {
      if (std::abs(z - f.source[j]) < std::abs(z - f.source[nearest])) nearest = j;
    }
    const bool degenerate = std::abs(z - f.source[nearest]) <= coincidence;
    double rest = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (degenerate && j == nearest) continue;
      const double d = z - f.source[j];
      const double v = f.row_factor[i] * f.col_weight[j] / (d * d);
      out.entries(i, j) = v;
      rest += v;
    }
    if (degenerate) {
      // The weight and the squared gap both vanish; the row sum fixes the limit.
      out.entries(i, nearest) = 1.0 - rest;
      out.completed.emplace_back(i, nearest);
    }
  }
}

StochasticMatrixResult assemble(Theorem theorem, std::size_t n, std::size_t k, Factors f) {
  StochasticMatrixResult out;
  out.theorem = theorem;
  out.n = n;
  out.k = k;
  out.entries = Matrix(n, n);

  if (f.overlap) {
    fill_rows_with_overlap(out, f);
  } else {
    fill_rows_with_completion(out, f);
  }
  for (std::size_t j = 0; j < n; ++j) out.entries(n - 1, j) = f.col_weight[j];

  out.target = std::move(f.points);
  out.target.push_back(f.last_target);
  out.source = std::move(f.source);

  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0, image = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += out.entries(i, j);
      col += out.entries(j, i);
      image += out.entries(i, j) * out.source[j];
    }
    out.row_sum_err = std::max(out.row_sum_err, std::abs(row - 1.0));
    out.col_sum_err = std::max(out.col_sum_err, std::abs(col - 1.0));
    out.relation_err = std::max(out.relation_err, std::abs(out.target[i] - image));
  }
  return out;
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

Factors single_point(const JacobiMatrix& jn, const SpectralData& spectrum) {
  Factors f;
  f.source = spectrum.eigenvalues;
  f.col_weight = {1.0};
  f.last_target = jn.diag()[0];
  return f;
}

void require_match(const JacobiMatrix& jn, const SpectralData& spectrum) {
  if (jn.empty() || jn.order() != spectrum.order()) {
    throw ParameterError("spectral data does not match the Jacobi matrix order");
  }
}

// Factors for deleting row and column k of J_n. Leading rows come from
// J_{k-1}; a_{k-1} p_{k-2} = -a_k p_k at zeros of p_{k-1}, so only components
// of its eigenvectors are needed. Trailing rows come from the block J^{(k)}.
Factors eigen_factors(const JacobiMatrix& jn, const SpectralData& spectrum, std::size_t k) {
  const std::size_t n = jn.order();
  const auto [leading, trailing] = delete_row_col(jn, k);
  auto lead = std::make_shared<SpectralData>(eigen_decompose(leading));
  auto trail = std::make_shared<SpectralData>(eigen_decompose(trailing));

  Factors f;
  f.source = spectrum.eigenvalues;
  f.col_weight = to_vector(spectrum.comp_sq.row(k - 1));
  if (k >= 2) {
    const double a = jn.offdiag()[k - 2];
    for (std::size_t i = 0; i + 1 < k; ++i) {
      f.points.push_back(lead->eigenvalues[i]);
      f.row_factor.push_back(a * a * lead->comp_sq(k - 2, i));
    }
  }
  if (k < n) {
    const double a = jn.offdiag()[k - 1];
    for (std::size_t i = 0; i < n - k; ++i) {
      f.points.push_back(trail->eigenvalues[i]);
      f.row_factor.push_back(a * a * trail->comp_sq(0, i));
    }
  }
  f.last_target = jn.diag()[k - 1];

  const Matrix* u = &spectrum.vectors;
  f.overlap = [lead, trail, u, k](std::size_t i, std::size_t j) {
    double dot = 0.0;
    if (i + 1 < k) {
      for (std::size_t r = 0; r + 1 < k; ++r) dot += lead->vectors(r, i) * (*u)(r, j);
    } else {
      const std::size_t t = i - (k - 1);
      for (std::size_t r = 0; r < trail->order(); ++r) dot += trail->vectors(r, t) * (*u)(k + r, j);
    }
    return dot * dot;
  };
  return f;
}

double square(double v) { return v * v; }

// p_{deg}(x) by forward recurrence; throws on overflow.
double poly_value(const RecurrenceScheme& scheme, std::size_t deg, double x) {
  const auto set = eval_all(scheme, deg, x);
  if (!all_finite(set)) {
    throw OverflowError("p_" + std::to_string(deg) + " overflows at x=" + std::to_string(x));
  }
  return set.values[deg];
}

// Literal closed-form factors: Christoffel numbers from the reciprocal sum of
// squares and polynomial values from the forward recurrence.
Factors polynomial_factors(const RecurrenceScheme& scheme, std::size_t n, std::size_t k) {
  scheme.require_depth(n);
  const JacobiMatrix jn = jacobi_matrix(scheme, n);
  const SpectralData spectrum = eigen_decompose(jn);
  const std::vector<double> lambda = christoffel_numbers_formula(scheme, n);

  Factors f;
  f.source = spectrum.eigenvalues;
  for (std::size_t j = 0; j < n; ++j) {
    f.col_weight.push_back(lambda[j] * square(poly_value(scheme, k - 1, f.source[j])));
  }
  const double ak = scheme.a(k);
  if (k >= 2) {
    const SpectralData lead = eigen_decompose(jacobi_matrix(scheme, k - 1));
    const std::vector<double> lambda_lead = christoffel_numbers_formula(scheme, k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const double z = lead.eigenvalues[i];
      f.points.push_back(z);
      f.row_factor.push_back(ak * ak * lambda_lead[i] * square(poly_value(scheme, k, z)));
    }
  }
  if (k < n) {
    const RecurrenceScheme assoc = shifted(scheme, k);
    const SpectralData trail = eigen_decompose(jacobi_matrix(assoc, n - k));
    const std::vector<double> lambda_assoc = christoffel_numbers_formula(assoc, n - k);
    for (std::size_t i = 0; i < n - k; ++i) {
      f.points.push_back(trail.eigenvalues[i]);
      f.row_factor.push_back(ak * ak * lambda_assoc[i]);
    }
  }
  f.last_target = scheme.b(k - 1);
  return f;
}

}  // namespace

StochasticMatrixResult matrix_A(const JacobiMatrix& jn, const SpectralData& spectrum) {
  require_match(jn, spectrum);
  const std::size_t n = jn.order();
  if (n == 1) return assemble(Theorem::A, 1, 1, single_point(jn, spectrum));
  return assemble(Theorem::A, n, n, eigen_factors(jn, spectrum, n));
}

StochasticMatrixResult matrix_B(const JacobiMatrix& jn, const SpectralData& spectrum) {
  require_match(jn, spectrum);
  const std::size_t n = jn.order();
  if (n == 1) return assemble(Theorem::B, 1, 1, single_point(jn, spectrum));
  return assemble(Theorem::B, n, 1, eigen_factors(jn, spectrum, 1));
}

StochasticMatrixResult matrix_C(const JacobiMatrix& jn, const SpectralData& spectrum,
                                std::size_t k) {
  require_match(jn, spectrum);
  const std::size_t n = jn.order();
  if (k < 1 || k > n) {
    throw ParameterError("k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  if (n == 1) return assemble(Theorem::C, 1, 1, single_point(jn, spectrum));
  return assemble(Theorem::C, n, k, eigen_factors(jn, spectrum, k));
}

StochasticMatrixResult matrix_A(const RecurrenceScheme& scheme, std::size_t n, EntryRoute route) {
  if (n == 0) throw ParameterError("n must be at least 1");
  if (route == EntryRoute::Polynomial && n > 1) {
    return assemble(Theorem::A, n, n, polynomial_factors(scheme, n, n));
  }
  const JacobiMatrix jn = jacobi_matrix(scheme, n);
  return matrix_A(jn, eigen_decompose(jn));
}

StochasticMatrixResult matrix_B(const RecurrenceScheme& scheme, std::size_t n, EntryRoute route) {
  if (n == 0) throw ParameterError("n must be at least 1");
  if (route == EntryRoute::Polynomial && n > 1) {
    return assemble(Theorem::B, n, 1, polynomial_factors(scheme, n, 1));
  }
  const JacobiMatrix jn = jacobi_matrix(scheme, n);
  return matrix_B(jn, eigen_decompose(jn));
}

StochasticMatrixResult matrix_C(const RecurrenceScheme& scheme, std::size_t n, std::size_t k,
                                EntryRoute route) {
  if (n == 0) throw ParameterError("n must be at least 1");
  if (k < 1 || k > n) {
    throw ParameterError("k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  if (route == EntryRoute::Polynomial && n > 1) {
    return assemble(Theorem::C, n, k, polynomial_factors(scheme, n, k));
  }
  const JacobiMatrix jn = jacobi_matrix(scheme, n);
  return matrix_C(jn, eigen_decompose(jn), k);
}

StochasticCheck check_doubly_stochastic(const Matrix& m, double tol) {
  StochasticCheck out;
  const std::size_t n = m.rows();
  if (m.cols() != n) return out;
  out.min_entry = n ? std::numeric_limits<double>::infinity() : 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += m(i, j);
      col += m(j, i);
      out.min_entry = std::min(out.min_entry, m(i, j));
      finite = finite && std::isfinite(m(i, j));
    }
    out.row_sum_err = std::max(out.row_sum_err, std::abs(row - 1.0));
    out.col_sum_err = std::max(out.col_sum_err, std::abs(col - 1.0));
  }
  out.ok = finite && out.min_entry >= -tol && out.row_sum_err <= tol && out.col_sum_err <= tol;
  return out;
}

StochasticCheck check_doubly_stochastic(const StochasticMatrixResult& m, double tol) {
  return check_doubly_stochastic(m.entries, tol);
}

double MajorizationCertificate::min_margin() const noexcept {
  if (partial_margins.empty()) return 0.0;
  return *std::min_element(partial_margins.begin(), partial_margins.end());
}

MajorizationCertificate check_majorization(std::span<const double> x, std::span<const double> y,
                                           double tol) {
  if (x.size() != y.size()) {
    throw ParameterError("majorization needs equal lengths (" + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()) + ")");
  }
  MajorizationCertificate cert;
  cert.x_sorted_desc.assign(x.begin(), x.end());
  cert.y_sorted_desc.assign(y.begin(), y.end());
  std::sort(cert.x_sorted_desc.begin(), cert.x_sorted_desc.end(), std::greater<>());
  std::sort(cert.y_sorted_desc.begin(), cert.y_sorted_desc.end(), std::greater<>());

  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0;
  bool ok = true;
  for (std::size_t j = 0; j < n; ++j) {
    sx += cert.x_sorted_desc[j];
    sy += cert.y_sorted_desc[j];
    if (j + 1 < n) {
      cert.partial_margins.push_back(sy - sx);
      ok = ok && sy - sx >= -tol;
    }
  }
  cert.total_residual = std::abs(sx - sy);
  cert.holds = ok && cert.total_residual <= tol;
  return cert;
}

std::string_view convex_name(ConvexFn f) {
  switch (f) {
    case ConvexFn::Square: return "square";
    case ConvexFn::Abs: return "abs";
    case ConvexFn::Exp: return "exp";
    case ConvexFn::Linear: return "linear";
  }
  return "?";
}

ConvexFn parse_convex(std::string_view name) {
  for (ConvexFn f : {ConvexFn::Square, ConvexFn::Abs, ConvexFn::Exp, ConvexFn::Linear}) {
    if (convex_name(f) == name) return f;
  }
  throw ParameterError("unknown convex function '" + std::string(name) + "'");
}

double apply_convex(ConvexFn f, double x) {
  switch (f) {
    case ConvexFn::Square: return x * x;
    case ConvexFn::Abs: return std::abs(x);
    case ConvexFn::Exp: return std::exp(x);
    case ConvexFn::Linear: return x;
  }
  return x;
}

ConvexReport convex_report(const StochasticMatrixResult& m, ConvexFn f) {
  ConvexReport r;
  r.f = f;
  for (double t : m.target) r.lhs += apply_convex(f, t);
  for (double s : m.source) r.rhs += apply_convex(f, s);
  r.margin = r.rhs - r.lhs;
  return r;
}

TraceResiduals trace_identities(const RecurrenceScheme& scheme, std::size_t n, std::size_t k) {
  const JacobiMatrix jn = jacobi_matrix(scheme, n);
  const SpectralData spectrum = eigen_decompose(jn);
  auto residual = [](const StochasticMatrixResult& m) {
    const double st = std::accumulate(m.target.begin(), m.target.end(), 0.0);
    const double ss = std::accumulate(m.source.begin(), m.source.end(), 0.0);
    return std::abs(st - ss);
  };
  TraceResiduals r;
  r.jacobi_trace = std::abs(std::accumulate(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), 0.0) -
                            jn.trace());
  r.a = residual(matrix_A(jn, spectrum));
  r.b = residual(matrix_B(jn, spectrum));
  r.c = residual(matrix_C(jn, spectrum, k));
  return r;
}

}  // namespace opmaj
