#include "opmaj/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "opmaj/errors.hpp"

namespace opmaj {

JacobiMatrix::JacobiMatrix(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  const bool sizes_ok = diag_.empty() ? offdiag_.empty() : offdiag_.size() + 1 == diag_.size();
  if (!sizes_ok) {
    throw ParameterError("Jacobi matrix of order " + std::to_string(diag_.size()) + " needs " +
                         std::to_string(diag_.empty() ? 0 : diag_.size() - 1) +
                         " off-diagonal entries, got " + std::to_string(offdiag_.size()));
  }
  for (std::size_t i = 0; i < offdiag_.size(); ++i) {
    if (!(offdiag_[i] > 0.0)) {
      throw ParameterError("off-diagonal entry " + std::to_string(i + 1) + " must be positive");
    }
  }
}

double JacobiMatrix::trace() const noexcept {
  return std::accumulate(diag_.begin(), diag_.end(), 0.0);
}

Matrix JacobiMatrix::dense() const {
  const std::size_t n = order();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = diag_[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = offdiag_[i];
    m(i + 1, i) = offdiag_[i];
  }
  return m;
}

JacobiMatrix jacobi_matrix(const RecurrenceScheme& scheme, std::size_t n) {
  if (n == 0) throw ParameterError("Jacobi matrix order must be at least 1");
  if (n > scheme.max_index() + 1) {
    throw DepthError("insufficient scheme depth for J_" + std::to_string(n) + " (depth " +
                     std::to_string(scheme.max_index()) + ")");
  }
  const auto b = scheme.b_values();
  const auto a = scheme.a_values();
  return JacobiMatrix(std::vector<double>(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n)),
                      std::vector<double>(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n - 1)));
}

std::pair<JacobiMatrix, JacobiMatrix> delete_row_col(const JacobiMatrix& matrix, std::size_t k) {
  const std::size_t n = matrix.order();
  if (k < 1 || k > n) {
    throw ParameterError("deletion index k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(n) + "]");
  }
  const auto d = matrix.diag();
  const auto e = matrix.offdiag();
  auto slice = [](std::span<const double> s, std::size_t from, std::size_t to) {
    return to > from ? std::vector<double>(s.begin() + static_cast<std::ptrdiff_t>(from),
                                           s.begin() + static_cast<std::ptrdiff_t>(to))
                     : std::vector<double>{};
  };
  // Leading block: rows 0..k-2. Trailing block: rows k..n-1.
  JacobiMatrix leading(slice(d, 0, k - 1), slice(e, 0, k >= 2 ? k - 2 : 0));
  JacobiMatrix trailing(slice(d, k, n), slice(e, k, n >= 1 ? n - 1 : 0));
  return {std::move(leading), std::move(trailing)};
}

namespace {

template <class T>
void tridiagonal_ql(std::vector<T>& d, std::vector<T>& e, std::vector<T>& z, std::size_t n) {
  // z is n x n row-major and starts as the identity; column j ends up as the
  // eigenvector of d[j]. e[i] couples rows i and i+1; e[n-1] is scratch.
  const T eps = std::numeric_limits<T>::epsilon();
  const T tiny = std::numeric_limits<T>::min();
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const T dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= tiny) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxQlSweeps) {
        throw ConvergenceError("eigenvalue " + std::to_string(l + 1) + " did not converge in " +
                                   std::to_string(kMaxQlSweeps) + " QL sweeps",
                               l + 1);
      }
      T g = (d[l + 1] - d[l]) / (T(2) * e[l]);
      T r = std::hypot(g, T(1));
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      T s = 1, c = 1, p = 0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        T f = s * e[i];
        const T bb = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == T(0)) {
          d[i + 1] -= p;
          e[m] = 0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + T(2) * c * bb;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - bb;
        for (std::size_t row = 0; row < n; ++row) {
          T& zi = z[row * n + i];
          T& zi1 = z[row * n + i + 1];
          f = zi1;
          zi1 = s * zi + c * f;
          zi = c * zi - s * f;
        }
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0;
    }
  }
}

// Unnormalized eigenvector for eigenvalue x: forward recurrence from the top
// down to `twist`, backward from the bottom up to it. Each side runs in the
// direction in which its components grow, so small components keep their
// relative accuracy (the QL vectors only carry absolute accuracy).
void eigenvector_by_recurrence(const JacobiMatrix& m, long double x, std::size_t twist,
                               std::vector<long double>& v) {
  const std::size_t n = m.order();
  const auto d = m.diag();
  const auto e = m.offdiag();
  v[0] = 1;
  for (std::size_t i = 0; i < twist; ++i) {
    const long double prev = i > 0 ? e[i - 1] * v[i - 1] : 0.0L;
    v[i + 1] = ((x - d[i]) * v[i] - prev) / e[i];
  }
  if (twist + 1 == n) return;
  std::vector<long double> g(n);
  g[n - 1] = 1;
  for (std::size_t i = n - 1; i > twist; --i) {
    const long double next = i + 1 < n ? e[i] * g[i + 1] : 0.0L;
    g[i - 1] = ((x - d[i]) * g[i] - next) / e[i - 1];
  }
  const long double scale = v[twist] / g[twist];
  for (std::size_t i = twist + 1; i < n; ++i) v[i] = g[i] * scale;
}

}  // namespace

SpectralData eigen_decompose(const JacobiMatrix& matrix) {
  using Work = long double;
  const std::size_t n = matrix.order();
  SpectralData out;
  if (n == 0) return out;

  std::vector<Work> d(matrix.diag().begin(), matrix.diag().end());
  std::vector<Work> e(n, Work(0));
  std::copy(matrix.offdiag().begin(), matrix.offdiag().end(), e.begin());
  std::vector<Work> z(n * n, Work(0));
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1;

  tridiagonal_ql(d, e, z, n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  out.eigenvalues.resize(n);
  out.comp_sq = Matrix(n, n);
  out.vectors = Matrix(n, n);
  std::vector<Work> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = static_cast<double>(d[src]);
    std::size_t twist = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(z[i * n + src]) > std::abs(z[twist * n + src])) twist = i;
    }
    eigenvector_by_recurrence(matrix, d[src], twist, v);
    Work norm = 0;
    for (std::size_t i = 0; i < n; ++i) norm += v[i] * v[i];
    const Work root = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) {
      out.comp_sq(i, j) = static_cast<double>(v[i] * v[i] / norm);
      out.vectors(i, j) = static_cast<double>(v[i] / root);
    }
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (!(out.eigenvalues[j] > out.eigenvalues[j - 1])) {
      throw ConvergenceError("eigenvalues " + std::to_string(j) + " and " + std::to_string(j + 1) +
                                 " are not strictly increasing",
                             j + 1);
    }
  }
  return out;
}

}  // namespace opmaj
