#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace opmaj {

enum class Family { ChebyshevU, ChebyshevT, Legendre, Jacobi, Laguerre, Hermite, Custom };

/// Shape parameters. Jacobi uses both (weight (1-x)^alpha (1+x)^beta),
/// Laguerre uses alpha (weight x^alpha e^-x); the rest ignore them.
struct FamilyParams {
  double alpha = 0.0;
  double beta = 0.0;
};

std::string_view family_name(Family family);
/// Inverse of family_name ("chebyshev-u", "legendre", ...). Throws ParameterError.
Family parse_family(std::string_view name);

/**
 * Three-term recurrence coefficients of the orthonormal polynomials of a
 * probability measure:
 *
 *   x p_n(x) = a_{n+1} p_{n+1}(x) + b_n p_n(x) + a_n p_{n-1}(x),  p_0 = 1.
 *
 * A scheme of depth N = max_index() holds a_1..a_N and b_0..b_N, which is
 * enough for the Jacobi matrices J_1..J_{N+1} and for p_0..p_N.
 * Coefficients are computed eagerly at construction; instances are
 * immutable and safe to share across threads.
 */
class RecurrenceScheme {
 public:
  Family family() const noexcept { return family_; }
  const FamilyParams& params() const noexcept { return params_; }
  /// Total shift applied to the original coefficient sequence.
  std::size_t shift() const noexcept { return shift_; }
  std::size_t max_index() const noexcept { return a_.size(); }

  /// a_n for 1 <= n <= max_index(). Throws DepthError otherwise.
  double a(std::size_t n) const;
  /// b_n for 0 <= n <= max_index(). Throws DepthError otherwise.
  double b(std::size_t n) const;

  /// a_1..a_N
  std::span<const double> a_values() const noexcept { return a_; }
  /// b_0..b_N
  std::span<const double> b_values() const noexcept { return b_; }

  /// Fails with DepthError unless max_index() >= n.
  void require_depth(std::size_t n) const;

  friend RecurrenceScheme classical_scheme(Family, FamilyParams, std::size_t);
  friend RecurrenceScheme from_sequences(std::vector<double>, std::vector<double>);
  friend RecurrenceScheme shifted(const RecurrenceScheme&, std::size_t);

 private:
  RecurrenceScheme(Family family, FamilyParams params, std::size_t shift,
                   std::vector<double> a, std::vector<double> b);

  Family family_;
  FamilyParams params_;
  std::size_t shift_ = 0;
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Closed-form coefficients of a classical family in orthonormal,
/// unit-mass normalization. Throws ParameterError for alpha/beta <= -1,
/// for Family::Custom, or for max_index == 0.
RecurrenceScheme classical_scheme(Family family, FamilyParams params, std::size_t max_index);

/// Wraps user sequences. `a` holds a_1, a_2, ...; `b` holds b_0, b_1, ...
/// and must have length(a) or length(a)+1 entries. Depth is
/// min(length(a), length(b) - 1).
RecurrenceScheme from_sequences(std::vector<double> a, std::vector<double> b);

/// Coefficients moved up by k: a'_n = a_{n+k}, b'_n = b_{n+k}. These
/// generate the associated polynomials p^{(k)}. Requires k <= max_index-1.
RecurrenceScheme shifted(const RecurrenceScheme& scheme, std::size_t k);

}  // namespace opmaj
