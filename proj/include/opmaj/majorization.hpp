#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "opmaj/matrix.hpp"
#include "opmaj/recurrence.hpp"
#include "opmaj/spectra.hpp"

namespace opmaj {

/// Which linear relation a matrix realizes:
///   A  (x_{.,n-1}, b_{n-1})                     = A x_{.,n}
///   B  (y_{.,n-1}, b_0)                         = B x_{.,n}   (zeros of p^{(1)}_{n-1})
///   C  (x_{.,k-1}, y_{.,n-k}, b_{k-1})          = C x_{.,n}   (zeros of p^{(k)}_{n-k})
enum class Theorem { A, B, C };

std::string_view theorem_name(Theorem t);

/// How the lambda * p^2 factors of the entries are obtained.
///  - Eigenvector: read from squared eigenvector components (stable for any n).
///  - Polynomial: Christoffel numbers from the reciprocal sum of squares and
///    p values from the forward recurrence; needs depth n and overflows for
///    large n. Kept for cross-validation.
enum class EntryRoute { Eigenvector, Polynomial };

struct StochasticMatrixResult {
  Theorem theorem = Theorem::A;
  std::size_t n = 0;
  std::size_t k = 0;  // n for A, 1 for B
  Matrix entries;
  std::vector<double> source;  // zeros of p_n, ascending
  std::vector<double> target;
  double row_sum_err = 0.0;
  double col_sum_err = 0.0;
  double relation_err = 0.0;
  /// (row, col) of entries taken as squared eigenvector overlaps because the
  /// target point is too close to the source zero for the closed form
  /// (eigenvector route only).
  std::vector<std::pair<std::size_t, std::size_t>> from_overlap;
  /// (row, col) of entries filled in from their row sum because a target
  /// point coincides with a source zero (polynomial route only; the closed
  /// form is 0/0 there).
  std::vector<std::pair<std::size_t, std::size_t>> completed;
};

/// Closed-form entries lose about eps * |x| / gap in relative accuracy. When
/// |z_i - x_j| < kSeparationTol * max(1, |z_i|, |x_j|) the eigenvector route
/// switches to the squared overlap of the two unit eigenvectors.
inline constexpr double kSeparationTol = 1e-4;

/// Polynomial route: gaps below this (times max(1, diameter)) count as a
/// shared zero and the entry is completed from its row sum.
inline constexpr double kCoincidenceTol = 1e-9;

StochasticMatrixResult matrix_A(const RecurrenceScheme& scheme, std::size_t n,
                                EntryRoute route = EntryRoute::Eigenvector);
StochasticMatrixResult matrix_B(const RecurrenceScheme& scheme, std::size_t n,
                                EntryRoute route = EntryRoute::Eigenvector);
/// 1 <= k <= n. C(k = n) reproduces A and C(k = 1) reproduces B.
StochasticMatrixResult matrix_C(const RecurrenceScheme& scheme, std::size_t n, std::size_t k,
                                EntryRoute route = EntryRoute::Eigenvector);

/// Eigenvector-route builders on a precomputed decomposition of J_n, for
/// sweeps that reuse one spectrum across many k.
StochasticMatrixResult matrix_A(const JacobiMatrix& jn, const SpectralData& spectrum);
StochasticMatrixResult matrix_B(const JacobiMatrix& jn, const SpectralData& spectrum);
StochasticMatrixResult matrix_C(const JacobiMatrix& jn, const SpectralData& spectrum,
                                std::size_t k);

struct StochasticCheck {
  bool ok = false;
  double row_sum_err = 0.0;
  double col_sum_err = 0.0;
  double min_entry = 0.0;
};

/// ok iff square, every entry >= -tol and every row and column sum within tol of 1.
StochasticCheck check_doubly_stochastic(const Matrix& m, double tol);
StochasticCheck check_doubly_stochastic(const StochasticMatrixResult& m, double tol);

struct MajorizationCertificate {
  std::vector<double> x_sorted_desc;
  std::vector<double> y_sorted_desc;
  /// sum(y_hat[0..j]) - sum(x_hat[0..j]) for j = 0..n-2
  std::vector<double> partial_margins;
  double total_residual = 0.0;
  bool holds = false;

  double min_margin() const noexcept;
};

/// Certificate for "x is majorized by y". Throws ParameterError on length mismatch.
MajorizationCertificate check_majorization(std::span<const double> x, std::span<const double> y,
                                           double tol);

enum class ConvexFn { Square, Abs, Exp, Linear };

std::string_view convex_name(ConvexFn f);
ConvexFn parse_convex(std::string_view name);
double apply_convex(ConvexFn f, double x);

struct ConvexReport {
  ConvexFn f = ConvexFn::Square;
  double lhs = 0.0;  // sum f(target)
  double rhs = 0.0;  // sum f(source)
  double margin = 0.0;
};

ConvexReport convex_report(const StochasticMatrixResult& m, ConvexFn f);

/// |sum target - sum source| for each construction plus the trace identity
/// of J_n itself (|sum zeros - sum b_0..b_{n-1}|).
struct TraceResiduals {
  double jacobi_trace = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

TraceResiduals trace_identities(const RecurrenceScheme& scheme, std::size_t n, std::size_t k);

}  // namespace opmaj
