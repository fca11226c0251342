#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "opmaj/matrix.hpp"
#include "opmaj/recurrence.hpp"

namespace opmaj {

/// Symmetric tridiagonal matrix with strictly positive off-diagonal.
/// Order 0 (empty) is allowed; it appears as a block of delete_row_col.
class JacobiMatrix {
 public:
  JacobiMatrix() = default;
  /// Throws ParameterError unless offdiag.size() + 1 == diag.size() (or both
  /// empty) and every off-diagonal entry is positive.
  JacobiMatrix(std::vector<double> diag, std::vector<double> offdiag);

  std::size_t order() const noexcept { return diag_.size(); }
  bool empty() const noexcept { return diag_.empty(); }
  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> offdiag() const noexcept { return offdiag_; }

  double trace() const noexcept;
  Matrix dense() const;

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

/**
 * Eigenvalues of a Jacobi matrix with the squared components of its unit
 * eigenvectors.
 *
 * comp_sq(i, j) is the squared i-th component of the eigenvector for
 * eigenvalues[j] (zero-based). For J_n built from a scheme,
 * comp_sq(i, j) = lambda_j p_i(x_j)^2, so row 0 holds the Christoffel numbers.
 * vectors(:, j) is the unit eigenvector itself, first component positive.
 */
struct SpectralData {
  std::vector<double> eigenvalues;  // strictly ascending
  Matrix comp_sq;
  Matrix vectors;

  std::size_t order() const noexcept { return eigenvalues.size(); }
  std::span<const double> christoffel() const { return comp_sq.row(0); }
};

/// J_n: diag (b_0..b_{n-1}), offdiag (a_1..a_{n-1}). Requires n <= max_index + 1.
JacobiMatrix jacobi_matrix(const RecurrenceScheme& scheme, std::size_t n);

/// Deletes row and column k (one-based, 1 <= k <= n). Returns the leading
/// block J_{k-1} and the trailing block with diag (b_k..b_{n-1}),
/// offdiag (a_{k+1}..a_{n-1}); either may be empty.
std::pair<JacobiMatrix, JacobiMatrix> delete_row_col(const JacobiMatrix& matrix, std::size_t k);

/// Sweep cap per eigenvalue for the implicit QL iteration.
inline constexpr int kMaxQlSweeps = 50;

/// Implicit-shift QL with full eigenvector accumulation. Throws
/// ConvergenceError if an eigenvalue needs more than kMaxQlSweeps sweeps or
/// if the sorted eigenvalues are not strictly increasing. An empty matrix
/// yields empty data.
SpectralData eigen_decompose(const JacobiMatrix& matrix);

}  // namespace opmaj
