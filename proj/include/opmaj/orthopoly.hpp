#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <vector>

#include "opmaj/recurrence.hpp"
#include "opmaj/spectra.hpp"

namespace opmaj {

/// p_0(x)..p_n(x), optionally with derivatives.
struct PolynomialValueSet {
  double point = 0.0;
  std::vector<double> values;
  std::optional<std::vector<double>> derivative_values;
};

/**
 * Forward recurrence
 *   p_{m+1} = ((x - b_m) p_m - a_m p_{m-1}) / a_{m+1}
 * and, when requested, its derivative
 *   p'_{m+1} = ((x - b_m) p'_m + p_m - a_m p'_{m-1}) / a_{m+1}.
 * Requires n <= max_index(). Non-finite results are returned as-is; use
 * all_finite() before trusting them.
 */
PolynomialValueSet eval_all(const RecurrenceScheme& scheme, std::size_t n, double x,
                            bool with_derivatives = false);

/// Associated polynomials p_0^{(k)}..p_m^{(k)} at x. Requires k + m <= max_index().
PolynomialValueSet eval_associated(const RecurrenceScheme& scheme, std::size_t k, std::size_t m,
                                   double x, bool with_derivatives = false);

bool all_finite(const PolynomialValueSet& set) noexcept;

/// gamma_n = 1 / (a_1 ... a_n), gamma_0 = 1.
double leading_coefficient(const RecurrenceScheme& scheme, std::size_t n);

/// lambda_{k,n} = 1 / sum_{j<n} p_j(x_{k,n})^2 with the zeros taken from J_n.
/// Throws OverflowError when the polynomial values stop being finite.
std::vector<double> christoffel_numbers_formula(const RecurrenceScheme& scheme, std::size_t n);

struct QuadratureRule {
  std::vector<double> nodes;    // strictly ascending
  std::vector<double> weights;  // positive, summing to 1

  std::size_t order() const noexcept { return nodes.size(); }
};

/// n-point Gauss rule of the scheme's measure (Golub-Welsch).
QuadratureRule gauss_rule(const RecurrenceScheme& scheme, std::size_t n);

/// sum_j w_j f(x_j); exact for polynomials of degree <= 2n - 1.
template <std::invocable<double> F>
double gauss_quadrature(const QuadratureRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) sum += rule.weights[j] * f(rule.nodes[j]);
  return sum;
}

/// Zeros y of p_m^{(k)} and the Christoffel numbers of mu^{(k)} (row 0 of
/// comp_sq). Equivalent to eigen_decompose(jacobi_matrix(shifted(scheme, k), m)).
/// Requires k + m <= max_index() + 1.
SpectralData associated_spectral(const RecurrenceScheme& scheme, std::size_t k, std::size_t m);

/// Moments m_0..m_degree of the measure, from (J^j)_{1,1} of a Jacobi matrix
/// of sufficient order. Requires degree / 2 + 1 <= max_index() + 1.
std::vector<double> recurrence_moments(const RecurrenceScheme& scheme, std::size_t degree);

}  // namespace opmaj
