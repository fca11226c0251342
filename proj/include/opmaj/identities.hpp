#pragma once

#include <cstddef>
#include <vector>

#include "opmaj/recurrence.hpp"

// Numerical certificates for the polynomial identities behind the
// doubly stochastic constructions. Every function returns a relative
// residual |lhs - rhs| / scale, where scale is the largest magnitude among
// the terms that are added, so cancellation does not hide an error.

namespace opmaj {

/// sum_{j<=n} p_j(x)^2 = a_{n+1} (p'_{n+1}(x) p_n(x) - p_{n+1}(x) p'_n(x)).
/// Needs depth n + 1.
double christoffel_darboux_residual(const RecurrenceScheme& scheme, std::size_t n, double x);

/// a_{n+1} (p_n(x) p^{(1)}_n(x) - p_{n+1}(x) p^{(1)}_{n-1}(x)) = a_1.
/// Needs depth n + 1.
double wronskian_residual(const RecurrenceScheme& scheme, std::size_t n, double x);

/// a_1 p^{(k)}_{n-k}(x) = a_k (p_{k-1}(x) p^{(1)}_{n-1}(x) - p_n(x) p^{(1)}_{k-2}(x)),
/// 2 <= k <= n - 1. Needs depth n.
double associated_split_residual(const RecurrenceScheme& scheme, std::size_t n, std::size_t k,
                                 double x);

/// max_k |lambda_{k,n} a_n p'_n(x_{k,n}) p_{n-1}(x_{k,n}) - 1| with lambda from
/// the eigenvector route. Needs depth n.
double christoffel_derivative_residual(const RecurrenceScheme& scheme, std::size_t n);

/// max_j relative error between lambda_{j,n} and the quadrature value of
/// int p_n^2(x) / ((x - x_{j,n})^2 p'_n(x_{j,n})^2) dmu, using an (n+2)-point rule.
/// Needs depth n + 1.
double christoffel_integral_residual(const RecurrenceScheme& scheme, std::size_t n);

/// Residuals of the two partial-fraction sums used for the column sums of C,
/// evaluated at every zero x_{j,n}:
///   a_k^2 sum_{i<k} lambda_{i,k-1} p_k^2(x_{i,k-1}) / (x_{i,k-1} - x)^2
///       = sum_{i<=k-2} p_i(x)^2 / p_{k-1}(x)^2
///   a_k^2 sum_i lambda^{(k)}_i / (x - y_i)^2
///       = sum_{k<=i<=n-1} p_i(x)^2 / p_{k-1}(x)^2
/// (the second right side is (a_1 p'_n / p^{(1)}_{n-1} - sum_{i<=k-1} p_i^2) / p_{k-1}^2
/// rewritten with the Christoffel and Wronskian identities). Zeros x_{j,n}
/// closer than kSeparationTol to a target point are skipped. Needs depth n.
struct PartialFractionResiduals {
  double leading = 0.0;
  double trailing = 0.0;
  std::size_t skipped = 0;
};
PartialFractionResiduals partial_fraction_residuals(const RecurrenceScheme& scheme, std::size_t n,
                                                    std::size_t k);

}  // namespace opmaj
