#pragma once

// Reference computations used only by the tests. Nothing here calls the
// eigensolver: zeros come from bisection on the recurrence in quad precision,
// weights from reciprocal sums of squares, moments from dense matrix powers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "opmaj/recurrence.hpp"

namespace oracle {

using Quad = boost::multiprecision::cpp_bin_float_quad;

inline std::vector<double> chebyshev_u_zeros(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t j = 1; j <= n; ++j) {
    x[n - j] = std::cos(static_cast<double>(j) * std::numbers::pi / static_cast<double>(n + 1));
  }
  return x;
}

inline std::vector<double> chebyshev_u_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double s = std::sin(static_cast<double>(j) * std::numbers::pi / static_cast<double>(n + 1));
    w[n - j] = 2.0 * s * s / static_cast<double>(n + 1);
  }
  return w;
}

// Coefficients a_1.., b_0.. lifted to quad precision, optionally shifted.
struct QuadScheme {
  std::vector<Quad> a;  // a[0] = a_1
  std::vector<Quad> b;  // b[0] = b_0

  QuadScheme(const opmaj::RecurrenceScheme& s, std::size_t shift = 0) {
    for (std::size_t i = shift + 1; i <= s.max_index(); ++i) a.emplace_back(s.a(i));
    for (std::size_t i = shift; i <= s.max_index(); ++i) b.emplace_back(s.b(i));
  }

  // p_0..p_m at x.
  std::vector<Quad> values(std::size_t m, const Quad& x) const {
    std::vector<Quad> p(m + 1);
    p[0] = 1;
    if (m >= 1) p[1] = (x - b[0]) / a[0];
    for (std::size_t i = 1; i < m; ++i) p[i + 1] = ((x - b[i]) * p[i] - a[i - 1] * p[i - 1]) / a[i];
    return p;
  }

  // Derivative of p_m at x.
  Quad derivative(std::size_t m, const Quad& x) const {
    std::vector<Quad> p = values(m, x), d(m + 1);
    d[0] = 0;
    if (m >= 1) d[1] = 1 / a[0];
    for (std::size_t i = 1; i < m; ++i) d[i + 1] = ((x - b[i]) * d[i] + p[i] - a[i - 1] * d[i - 1]) / a[i];
    return d[m];
  }

  // Gershgorin bound on the spectra of J_1..J_m.
  Quad bound(std::size_t m) const {
    Quad r = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Quad left = i > 0 ? a[i - 1] : Quad(0);
      const Quad right = i + 1 < m ? a[i] : Quad(0);
      r = std::max(r, Quad(abs(b[i]) + left + right));
    }
    return r + 1;
  }

  // Zeros of p_m by bisection, each bracketed by consecutive zeros of p_{m-1}.
  std::vector<Quad> zeros(std::size_t m) const {
    const Quad r = bound(m);
    std::vector<Quad> prev;
    for (std::size_t deg = 1; deg <= m; ++deg) {
      std::vector<Quad> edges{-r};
      edges.insert(edges.end(), prev.begin(), prev.end());
      edges.push_back(r);
      std::vector<Quad> next;
      for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
        Quad lo = edges[j], hi = edges[j + 1];
        const bool lo_sign = values(deg, lo)[deg] > 0;
        for (int it = 0; it < 200 && hi - lo > 0; ++it) {
          const Quad mid = (lo + hi) / 2;
          if (mid == lo || mid == hi) break;
          if ((values(deg, mid)[deg] > 0) == lo_sign) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        next.push_back((lo + hi) / 2);
      }
      prev = std::move(next);
    }
    return prev;
  }

  // 1 / sum_{i<m} p_i(x)^2
  Quad christoffel(std::size_t m, const Quad& x) const {
    const auto p = values(m, x);
    Quad s = 0;
    for (std::size_t i = 0; i < m; ++i) s += p[i] * p[i];
    return 1 / s;
  }
};

/**
 * Entries of the matrix for deleting row/column k of J_n, each row
 * normalized as a quotient of weighted terms:
 *   c_ij = t_ij / sum_l t_il,   t_ij = lambda_j p_{k-1}(x_j)^2 / (z_i - x_j)^2.
 * A target point that is also a zero of p_n makes one term 0/0; then the
 * row denominator comes from its closed form and the coincident entry from
 * the row sum.
 */
inline std::vector<std::vector<double>> quotient_matrix(const opmaj::RecurrenceScheme& s,
                                                         std::size_t n, std::size_t k) {
  const QuadScheme q(s);
  const QuadScheme assoc(s, k);
  const std::vector<Quad> x = q.zeros(n);
  std::vector<Quad> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Quad pk = q.values(k - 1, x[j])[k - 1];
    w[j] = q.christoffel(n, x[j]) * pk * pk;
  }
  const Quad ak = s.a(k);
  const Quad scale = std::max(Quad(1), Quad(x.back() - x.front()));

  std::vector<std::vector<double>> c;
  auto emit_row = [&](const Quad& z, const std::function<Quad()>& closed_denominator) {
    std::vector<Quad> t(n);
    std::ptrdiff_t hit = -1;
    for (std::size_t j = 0; j < n; ++j) {
      const Quad d = z - x[j];
      if (abs(d) <= Quad(1e-25) * scale) {
        hit = static_cast<std::ptrdiff_t>(j);
        continue;
      }
      t[j] = w[j] / (d * d);
    }
    Quad denom = 0;
    if (hit < 0) {
      for (const auto& v : t) denom += v;
    } else {
      denom = closed_denominator();
    }
    std::vector<double> row(n);
    Quad rest = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<std::ptrdiff_t>(j) == hit) continue;
      row[j] = static_cast<double>(t[j] / denom);
      rest += t[j] / denom;
    }
    if (hit >= 0) row[static_cast<std::size_t>(hit)] = static_cast<double>(1 - rest);
    c.push_back(std::move(row));
  };

  if (k >= 2) {
    for (const Quad& z : q.zeros(k - 1)) {
      emit_row(z, [&] {
        const Quad pk = q.values(k, z)[k];
        return 1 / (ak * ak * q.christoffel(k - 1, z) * pk * pk);
      });
    }
  }
  if (k < n) {
    for (const Quad& y : assoc.zeros(n - k)) {
      emit_row(y, [&] { return 1 / (ak * ak * assoc.christoffel(n - k, y)); });
    }
  }
  std::vector<double> last(n);
  for (std::size_t j = 0; j < n; ++j) last[j] = static_cast<double>(w[j]);
  c.push_back(std::move(last));
  return c;
}

// m_j = (J_K^j)_{1,1} with a dense matrix power, K = degree / 2 + 1.
inline std::vector<long double> moments_by_matrix_power(const opmaj::RecurrenceScheme& s,
                                                        std::size_t degree) {
  const std::size_t K = degree / 2 + 1;
  std::vector<std::vector<long double>> J(K, std::vector<long double>(K, 0.0L));
  for (std::size_t i = 0; i < K; ++i) {
    J[i][i] = s.b(i);
    if (i + 1 < K) J[i][i + 1] = J[i + 1][i] = s.a(i + 1);
  }
  auto P = J;
  for (auto& row : P) std::fill(row.begin(), row.end(), 0.0L);
  for (std::size_t i = 0; i < K; ++i) P[i][i] = 1.0L;

  std::vector<long double> m{1.0L};
  for (std::size_t d = 1; d <= degree; ++d) {
    auto next = P;
    for (std::size_t i = 0; i < K; ++i) {
      for (std::size_t j = 0; j < K; ++j) {
        long double acc = 0.0L;
        for (std::size_t l = 0; l < K; ++l) acc += P[i][l] * J[l][j];
        next[i][j] = acc;
      }
    }
    P = std::move(next);
    m.push_back(P[0][0]);
  }
  return m;
}

// Integral of f against the family's probability measure, by double-exponential
// quadrature on the weight function.
inline double integrate(opmaj::Family family, opmaj::FamilyParams params,
                        const std::function<double(double)>& f) {
  using namespace boost::math::quadrature;
  using std::numbers::pi;
  const double tol = 1e-14;
  switch (family) {
    case opmaj::Family::ChebyshevU: {
      tanh_sinh<double> ts;
      return ts.integrate([&](double x) { return f(x) * 2.0 / pi * std::sqrt(1.0 - x * x); },
                          -1.0, 1.0, tol);
    }
    case opmaj::Family::ChebyshevT: {
      tanh_sinh<double> ts;
      // Substitute x = cos(t): the measure becomes dt / pi on [0, pi].
      return ts.integrate([&](double t) { return f(std::cos(t)) / pi; }, 0.0, pi, tol);
    }
    case opmaj::Family::Legendre: {
      tanh_sinh<double> ts;
      return ts.integrate([&](double x) { return f(x) / 2.0; }, -1.0, 1.0, tol);
    }
    case opmaj::Family::Jacobi: {
      tanh_sinh<double> ts;
      const double al = params.alpha, be = params.beta;
      const double norm = std::pow(2.0, al + be + 1.0) * boost::math::beta(al + 1.0, be + 1.0);
      // Two-argument form: xc = -1 - x left of 0 and 1 - x right of it, so the
      // endpoint distances keep full precision.
      return ts.integrate(
          [&](double x, double xc) {
            const double one_minus = x > 0 ? xc : 1.0 - x;
            const double one_plus = x < 0 ? -xc : 1.0 + x;
            return f(x) * std::pow(one_minus, al) * std::pow(one_plus, be) / norm;
          },
          -1.0, 1.0, tol);
    }
    case opmaj::Family::Laguerre: {
      exp_sinh<double> es;
      const double al = params.alpha;
      return es.integrate(
          [&](double x) {
            return x > 700.0 ? 0.0 : f(x) * std::pow(x, al) * std::exp(-x) / boost::math::tgamma(al + 1.0);
          },
          0.0, std::numeric_limits<double>::infinity(), tol);
    }
    case opmaj::Family::Hermite: {
      sinh_sinh<double> ss;
      return ss.integrate(
          [&](double x) { return std::abs(x) > 40.0 ? 0.0 : f(x) * std::exp(-x * x) / std::sqrt(pi); }, tol);
    }
    case opmaj::Family::Custom:
      break;
  }
  return std::nan("");
}

}  // namespace oracle
