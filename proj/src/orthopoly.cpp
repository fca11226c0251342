#include "opmaj/orthopoly.hpp"

#include <cmath>
#include <string>

#include "opmaj/errors.hpp"

namespace opmaj {

namespace {

// Recurrence over coefficient views starting at offset `shift`.
PolynomialValueSet run_recurrence(const RecurrenceScheme& scheme, std::size_t shift,
                                  std::size_t n, double x, bool with_derivatives) {
  PolynomialValueSet out;
  out.point = x;
  out.values.assign(n + 1, 0.0);
  out.values[0] = 1.0;
  std::vector<double> dv;
  if (with_derivatives) dv.assign(n + 1, 0.0);

  const auto a = scheme.a_values();  // a[i] = a_{i+1}
  const auto b = scheme.b_values();
  double prev = 0.0, prev_d = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double a_next = a[shift + m];
    const double a_cur = m == 0 ? 0.0 : a[shift + m - 1];
    const double bm = b[shift + m];
    const double cur = out.values[m];
    out.values[m + 1] = ((x - bm) * cur - a_cur * prev) / a_next;
    if (with_derivatives) {
      const double cur_d = dv[m];
      dv[m + 1] = ((x - bm) * cur_d + cur - a_cur * prev_d) / a_next;
      prev_d = cur_d;
    }
    prev = cur;
  }
  if (with_derivatives) out.derivative_values = std::move(dv);
  return out;
}

}  // namespace

PolynomialValueSet eval_all(const RecurrenceScheme& scheme, std::size_t n, double x,
                            bool with_derivatives) {
  scheme.require_depth(n);
  return run_recurrence(scheme, 0, n, x, with_derivatives);
}

PolynomialValueSet eval_associated(const RecurrenceScheme& scheme, std::size_t k, std::size_t m,
                                   double x, bool with_derivatives) {
  scheme.require_depth(k + m);
  return run_recurrence(scheme, k, m, x, with_derivatives);
}

bool all_finite(const PolynomialValueSet& set) noexcept {
  for (double v : set.values) {
    if (!std::isfinite(v)) return false;
  }
  if (set.derivative_values) {
    for (double v : *set.derivative_values) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

double leading_coefficient(const RecurrenceScheme& scheme, std::size_t n) {
  scheme.require_depth(n);
  double gamma = 1.0;
  for (std::size_t i = 1; i <= n; ++i) gamma /= scheme.a(i);
  return gamma;
}

std::vector<double> christoffel_numbers_formula(const RecurrenceScheme& scheme, std::size_t n) {
  if (n == 0) throw ParameterError("n must be at least 1");
  const SpectralData spectrum = eigen_decompose(jacobi_matrix(scheme, n));
  std::vector<double> lambda(n);
  for (std::size_t k = 0; k < n; ++k) {
    // p_0..p_{n-1} only needs a_1..a_{n-1}, which J_n already required.
    const auto values = run_recurrence(scheme, 0, n - 1, spectrum.eigenvalues[k], false);
    double sum = 0.0;
    for (double v : values.values) sum += v * v;
    if (!std::isfinite(sum)) {
      throw OverflowError("polynomial values overflow at node " + std::to_string(k + 1) +
                          " of n=" + std::to_string(n) + "; use the eigenvector weights");
    }
    lambda[k] = 1.0 / sum;
  }
  return lambda;
}

QuadratureRule gauss_rule(const RecurrenceScheme& scheme, std::size_t n) {
  SpectralData spectrum = eigen_decompose(jacobi_matrix(scheme, n));
  const auto w = spectrum.christoffel();
  return QuadratureRule{std::move(spectrum.eigenvalues), std::vector<double>(w.begin(), w.end())};
}

SpectralData associated_spectral(const RecurrenceScheme& scheme, std::size_t k, std::size_t m) {
  if (m == 0) throw ParameterError("associated polynomial degree must be at least 1");
  if (k + m > scheme.max_index() + 1) {
    throw DepthError("insufficient scheme depth for p_" + std::to_string(m) + "^(" +
                     std::to_string(k) + ")");
  }
  const auto a = scheme.a_values();
  const auto b = scheme.b_values();
  std::vector<double> diag(b.begin() + static_cast<std::ptrdiff_t>(k),
                           b.begin() + static_cast<std::ptrdiff_t>(k + m));
  std::vector<double> off(a.begin() + static_cast<std::ptrdiff_t>(k),
                          a.begin() + static_cast<std::ptrdiff_t>(k + m - 1));
  return eigen_decompose(JacobiMatrix(std::move(diag), std::move(off)));
}

std::vector<double> recurrence_moments(const RecurrenceScheme& scheme, std::size_t degree) {
  const std::size_t order = degree / 2 + 1;
  const JacobiMatrix jm = jacobi_matrix(scheme, order);
  const auto d = jm.diag();
  const auto e = jm.offdiag();

  std::vector<double> v(order, 0.0), next(order);
  v[0] = 1.0;
  std::vector<double> moments(degree + 1);
  moments[0] = 1.0;
  for (std::size_t j = 1; j <= degree; ++j) {
    for (std::size_t i = 0; i < order; ++i) {
      double s = d[i] * v[i];
      if (i > 0) s += e[i - 1] * v[i - 1];
      if (i + 1 < order) s += e[i] * v[i + 1];
      next[i] = s;
    }
    v.swap(next);
    moments[j] = v[0];
  }
  return moments;
}

}  // namespace opmaj
