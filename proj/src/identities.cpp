#include "opmaj/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opmaj/errors.hpp"
#include "opmaj/majorization.hpp"
#include "opmaj/orthopoly.hpp"
#include "opmaj/spectra.hpp"

namespace opmaj {

namespace {

double relative(double lhs, double rhs, double scale) {
  const double s = std::max({std::abs(lhs), std::abs(rhs), scale});
  return s > 0.0 ? std::abs(lhs - rhs) / s : 0.0;
}

const std::vector<double>& derivatives(const PolynomialValueSet& set) {
  return *set.derivative_values;
}

}  // namespace

double christoffel_darboux_residual(const RecurrenceScheme& scheme, std::size_t n, double x) {
  const auto p = eval_all(scheme, n + 1, x, true);
  const auto& dp = derivatives(p);
  double lhs = 0.0;
  for (std::size_t j = 0; j <= n; ++j) lhs += p.values[j] * p.values[j];
  const double a = scheme.a(n + 1);
  const double t1 = a * dp[n + 1] * p.values[n];
  const double t2 = a * p.values[n + 1] * dp[n];
  return relative(lhs, t1 - t2, std::max(std::abs(t1), std::abs(t2)));
}

double wronskian_residual(const RecurrenceScheme& scheme, std::size_t n, double x) {
  if (n == 0) throw ParameterError("Wronskian identity needs n >= 1");
  const auto p = eval_all(scheme, n + 1, x);
  const auto q = eval_associated(scheme, 1, n, x);
  const double a = scheme.a(n + 1);
  const double t1 = a * p.values[n] * q.values[n];
  const double t2 = a * p.values[n + 1] * q.values[n - 1];
  return relative(t1 - t2, scheme.a(1), std::max(std::abs(t1), std::abs(t2)));
}

double associated_split_residual(const RecurrenceScheme& scheme, std::size_t n, std::size_t k,
                                 double x) {
  if (k < 2 || k + 1 > n) {
    throw ParameterError("identity needs 2 <= k <= n-1 (k=" + std::to_string(k) +
                         ", n=" + std::to_string(n) + ")");
  }
  const auto p = eval_all(scheme, n, x);
  const auto q = eval_associated(scheme, 1, n - 1, x);
  const auto r = eval_associated(scheme, k, n - k, x);
  const double lhs = scheme.a(1) * r.values[n - k];
  const double t1 = scheme.a(k) * p.values[k - 1] * q.values[n - 1];
  const double t2 = scheme.a(k) * p.values[n] * q.values[k - 2];
  return relative(lhs, t1 - t2, std::max(std::abs(t1), std::abs(t2)));
}

double christoffel_derivative_residual(const RecurrenceScheme& scheme, std::size_t n) {
  scheme.require_depth(n);
  const SpectralData s = eigen_decompose(jacobi_matrix(scheme, n));
  const double an = scheme.a(n);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = eval_all(scheme, n, s.eigenvalues[k], true);
    const double v = s.comp_sq(0, k) * an * derivatives(p)[n] * p.values[n - 1];
    worst = std::max(worst, std::abs(v - 1.0));
  }
  return worst;
}

double christoffel_integral_residual(const RecurrenceScheme& scheme, std::size_t n) {
  scheme.require_depth(n + 1);
  const SpectralData s = eigen_decompose(jacobi_matrix(scheme, n));
  const QuadratureRule rule = gauss_rule(scheme, n + 2);
  const double diameter = rule.nodes.back() - rule.nodes.front();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = s.eigenvalues[j];
    const double dpj = derivatives(eval_all(scheme, n, xj, true))[n];
    const double integral = gauss_quadrature(rule, [&](double t) {
      // p_n(t) / (t - x_j) tends to p'_n(x_j) when a node sits on x_j.
      const double gap = t - xj;
      const double quotient = std::abs(gap) <= 1e-10 * std::max(1.0, diameter)
                                  ? dpj
                                  : eval_all(scheme, n, t).values[n] / gap;
      return quotient * quotient / (dpj * dpj);
    });
    worst = std::max(worst, std::abs(integral - s.comp_sq(0, j)) / s.comp_sq(0, j));
  }
  return worst;
}

PartialFractionResiduals partial_fraction_residuals(const RecurrenceScheme& scheme, std::size_t n,
                                                    std::size_t k) {
  if (k < 1 || k > n) throw ParameterError("k outside [1, n]");
  scheme.require_depth(n);
  const SpectralData s = eigen_decompose(jacobi_matrix(scheme, n));
  const double ak = scheme.a(k);

  SpectralData lead, trail;
  if (k >= 2) lead = eigen_decompose(jacobi_matrix(scheme, k - 1));
  if (k < n) trail = associated_spectral(scheme, k, n - k);

  auto close_to = [&](double x, const std::vector<double>& points) {
    return std::any_of(points.begin(), points.end(),
                       [&](double z) {
                         return std::abs(z - x) <
                                kSeparationTol * std::max({1.0, std::abs(z), std::abs(x)});
                       });
  };

  PartialFractionResiduals out;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = s.eigenvalues[j];
    if (close_to(x, lead.eigenvalues) || close_to(x, trail.eigenvalues)) {
      ++out.skipped;
      continue;
    }
    const auto p = eval_all(scheme, n, x, true);
    const double pk1_sq = p.values[k - 1] * p.values[k - 1];

    if (k >= 2) {
      double lhs = 0.0;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        const double z = lead.eigenvalues[i];
        const double pk = eval_all(scheme, k, z).values[k];
        lhs += lead.comp_sq(0, i) * pk * pk / ((z - x) * (z - x));
      }
      lhs *= ak * ak;
      double sum = 0.0;
      for (std::size_t i = 0; i + 2 <= k; ++i) sum += p.values[i] * p.values[i];
      out.leading = std::max(out.leading, relative(lhs, sum / pk1_sq, 0.0));
    }
    if (k < n) {
      double lhs = 0.0;
      for (std::size_t i = 0; i < n - k; ++i) {
        const double d = x - trail.eigenvalues[i];
        lhs += trail.comp_sq(0, i) / (d * d);
      }
      lhs *= ak * ak;
      // a_1 p_n'(x) / p^{(1)}_{n-1}(x) = sum_{i<n} p_i(x)^2 at zeros of p_n; the
      // sum form avoids evaluating p^{(1)}_{n-1} next to one of its own zeros.
      double tail = 0.0;
      for (std::size_t i = k; i < n; ++i) tail += p.values[i] * p.values[i];
      out.trailing = std::max(out.trailing, relative(lhs, tail / pk1_sq, 0.0));
    }
  }
  return out;
}

}  // namespace opmaj
