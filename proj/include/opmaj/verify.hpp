#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "opmaj/recurrence.hpp"

namespace opmaj {

struct Tolerances {
  double stochastic = 1e-10;    // absolute, entries and row/column sums
  double relation = 1e-9;       // relative to the spectral diameter x_{n,n} - x_{1,n}
  double majorization = 1e-10;  // partial-sum slack and total residual
  double identity = 1e-8;       // relative residual of identity spot checks
};

inline constexpr std::uint64_t kDefaultSeed = 1234567;

struct VerifyOptions {
  std::size_t n_max = 40;
  Tolerances tol;
  std::uint64_t seed = kDefaultSeed;
  /// Convex corollary checks (x^2, |x|, e^x). Meaningful for bounded support.
  bool convex = true;
  /// Largest n for the polynomial identity spot checks.
  std::size_t identity_n_max = 15;
  std::size_t spot_points = 20;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct CheckFailure {
  std::size_t n = 0;
  std::size_t k = 0;
  std::string theorem;  // "A", "B", "C" or "-" for per-n checks
  std::string check;
  double value = 0.0;
  double limit = 0.0;
};

struct VerifyReport {
  std::string family;
  std::size_t n_max = 0;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::vector<CheckFailure> failures;  // sorted by (n, theorem, k, check)

  bool passed() const noexcept { return failures.empty(); }
};

/// Sweeps 1 <= n <= n_max (limited by the scheme depth): A, B and C for every
/// k, stochasticity, linear relation, majorization, positivity, trace
/// identities, interlacing, and for n <= identity_n_max the Christoffel,
/// Wronskian, Christoffel-Darboux and associated-split identities at
/// seeded random points.
VerifyReport verify_scheme(const RecurrenceScheme& scheme, const VerifyOptions& options);

/// True for families with compact support (Chebyshev, Legendre, Jacobi).
bool has_bounded_support(Family family) noexcept;

}  // namespace opmaj
