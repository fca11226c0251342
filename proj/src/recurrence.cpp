#include "opmaj/recurrence.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "opmaj/errors.hpp"

namespace opmaj {

namespace {

// Orthonormal Jacobi recurrence for weight (1-x)^alpha (1+x)^beta on [-1, 1].
double jacobi_b(std::size_t n, double alpha, double beta) {
  const double s = alpha + beta;
  if (n == 0) return (beta - alpha) / (s + 2.0);
  const double t = 2.0 * static_cast<double>(n) + s;
  return (beta * beta - alpha * alpha) / (t * (t + 2.0));
}

double jacobi_a(std::size_t n, double alpha, double beta) {
  const double s = alpha + beta;
  const double nn = static_cast<double>(n);
  if (n == 1) {
    // (n + alpha + beta) cancels against (2n + alpha + beta - 1); keeps
    // alpha + beta = -1 well defined.
    return std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s) * (2.0 + s) * (3.0 + s)));
  }
  const double t = 2.0 * nn + s;
  const double num = 4.0 * nn * (nn + alpha) * (nn + beta) * (nn + s);
  const double den = t * t * (t + 1.0) * (t - 1.0);
  return std::sqrt(num / den);
}

void check_param(double value, const char* name) {
  if (!(value > -1.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(name) + " must be finite and > -1, got " +
                         std::to_string(value));
  }
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::ChebyshevU: return "chebyshev-u";
    case Family::ChebyshevT: return "chebyshev-t";
    case Family::Legendre: return "legendre";
    case Family::Jacobi: return "jacobi";
    case Family::Laguerre: return "laguerre";
    case Family::Hermite: return "hermite";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::ChebyshevU, Family::ChebyshevT, Family::Legendre, Family::Jacobi,
                   Family::Laguerre, Family::Hermite, Family::Custom}) {
    if (family_name(f) == name) return f;
  }
  throw ParameterError("unknown family '" + std::string(name) + "'");
}

RecurrenceScheme::RecurrenceScheme(Family family, FamilyParams params, std::size_t shift,
                                   std::vector<double> a, std::vector<double> b)
    : family_(family), params_(params), shift_(shift), a_(std::move(a)), b_(std::move(b)) {}

double RecurrenceScheme::a(std::size_t n) const {
  if (n == 0 || n > a_.size()) {
    throw DepthError("a_" + std::to_string(n) + " not available (scheme depth " +
                     std::to_string(a_.size()) + ")");
  }
  return a_[n - 1];
}

double RecurrenceScheme::b(std::size_t n) const {
  if (n >= b_.size()) {
    throw DepthError("b_" + std::to_string(n) + " not available (scheme depth " +
                     std::to_string(a_.size()) + ")");
  }
  return b_[n];
}

void RecurrenceScheme::require_depth(std::size_t n) const {
  if (n > max_index()) {
    throw DepthError("insufficient scheme depth: need " + std::to_string(n) + ", have " +
                     std::to_string(max_index()));
  }
}

RecurrenceScheme classical_scheme(Family family, FamilyParams params, std::size_t max_index) {
  if (max_index == 0) throw ParameterError("max_index must be at least 1");

  std::vector<double> a(max_index);
  std::vector<double> b(max_index + 1);
  FamilyParams stored{};

  switch (family) {
    case Family::ChebyshevU:
      for (auto& v : a) v = 0.5;
      break;
    case Family::ChebyshevT:
      for (auto& v : a) v = 0.5;
      a[0] = std::sqrt(0.5);
      break;
    case Family::Legendre:
      for (std::size_t n = 1; n <= max_index; ++n) {
        const double nn = static_cast<double>(n);
        a[n - 1] = nn / std::sqrt(4.0 * nn * nn - 1.0);
      }
      break;
    case Family::Jacobi:
      check_param(params.alpha, "alpha");
      check_param(params.beta, "beta");
      stored = params;
      for (std::size_t n = 1; n <= max_index; ++n) a[n - 1] = jacobi_a(n, params.alpha, params.beta);
      for (std::size_t n = 0; n <= max_index; ++n) b[n] = jacobi_b(n, params.alpha, params.beta);
      break;
    case Family::Laguerre:
      check_param(params.alpha, "alpha");
      stored.alpha = params.alpha;
      for (std::size_t n = 1; n <= max_index; ++n) {
        const double nn = static_cast<double>(n);
        a[n - 1] = std::sqrt(nn * (nn + params.alpha));
      }
      for (std::size_t n = 0; n <= max_index; ++n) {
        b[n] = 2.0 * static_cast<double>(n) + params.alpha + 1.0;
      }
      break;
    case Family::Hermite:
      for (std::size_t n = 1; n <= max_index; ++n) a[n - 1] = std::sqrt(0.5 * static_cast<double>(n));
      break;
    case Family::Custom:
      throw ParameterError("custom schemes are built with from_sequences");
  }
  return RecurrenceScheme(family, stored, 0, std::move(a), std::move(b));
}

RecurrenceScheme from_sequences(std::vector<double> a, std::vector<double> b) {
  if (a.empty()) throw ParameterError("a must contain at least one coefficient");
  if (b.size() != a.size() && b.size() != a.size() + 1) {
    throw ParameterError("length mismatch: b must have length(a) or length(a)+1 entries (a: " +
                         std::to_string(a.size()) + ", b: " + std::to_string(b.size()) + ")");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !std::isfinite(a[i])) {
      throw ParameterError("a[" + std::to_string(i + 1) + "] must be positive (got " +
                           std::to_string(a[i]) + ")");
    }
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b[i])) {
      throw ParameterError("b[" + std::to_string(i) + "] must be finite");
    }
  }
  const std::size_t depth = b.size() - 1;
  if (depth == 0) {
    throw ParameterError("b must hold at least b_0 and b_1 (depth 0 scheme)");
  }
  a.resize(depth);
  return RecurrenceScheme(Family::Custom, {}, 0, std::move(a), std::move(b));
}

RecurrenceScheme shifted(const RecurrenceScheme& scheme, std::size_t k) {
  if (k == 0) return scheme;
  if (k + 1 > scheme.max_index()) {
    throw DepthError("shift " + std::to_string(k) + " exceeds available depth " +
                     std::to_string(scheme.max_index()));
  }
  std::vector<double> a(scheme.a_.begin() + static_cast<std::ptrdiff_t>(k), scheme.a_.end());
  std::vector<double> b(scheme.b_.begin() + static_cast<std::ptrdiff_t>(k), scheme.b_.end());
  return RecurrenceScheme(scheme.family_, scheme.params_, scheme.shift_ + k, std::move(a),
                          std::move(b));
}

}  // namespace opmaj
