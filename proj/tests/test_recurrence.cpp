#include <gtest/gtest.h>

#include <cmath>

#include "opmaj/errors.hpp"
#include "opmaj/orthopoly.hpp"
#include "opmaj/recurrence.hpp"
#include "opmaj/spectra.hpp"
#include "oracles.hpp"

using namespace opmaj;

namespace {

struct Case {
  Family family;
  FamilyParams params;
};

const Case kFamilies[] = {
    {Family::ChebyshevU, {}}, {Family::ChebyshevT, {}},      {Family::Legendre, {}},
    {Family::Jacobi, {2.0, 0.5}}, {Family::Jacobi, {-0.5, 1.5}}, {Family::Laguerre, {0.0, 0.0}},
    {Family::Laguerre, {1.5, 0.0}}, {Family::Hermite, {}},
};

}  // namespace

TEST(ClassicalScheme, ChebyshevUCoefficients) {
  const auto s = classical_scheme(Family::ChebyshevU, {}, 5);
  EXPECT_EQ(s.max_index(), 5u);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_DOUBLE_EQ(s.a(n), 0.5);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_DOUBLE_EQ(s.b(n), 0.0);
}

TEST(ClassicalScheme, LegendreCoefficients) {
  const auto s = classical_scheme(Family::Legendre, {}, 2);
  EXPECT_NEAR(s.a(1), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(s.a(1), 0.5773503, 1e-7);
  EXPECT_NEAR(s.a(2), 2.0 / std::sqrt(15.0), 1e-15);
  EXPECT_EQ(s.b(0), 0.0);
  EXPECT_EQ(s.b(1), 0.0);
}

TEST(ClassicalScheme, HermiteCoefficients) {
  const auto s = classical_scheme(Family::Hermite, {}, 1);
  EXPECT_NEAR(s.a(1), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(s.b(0), 0.0);
}

TEST(ClassicalScheme, LaguerreCoefficients) {
  const auto s = classical_scheme(Family::Laguerre, {0.0, 0.0}, 4);
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_NEAR(s.a(n), static_cast<double>(n), 1e-14);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_NEAR(s.b(n), 2.0 * n + 1.0, 1e-14);
}

TEST(ClassicalScheme, JacobiReducesToLegendreAndChebyshev) {
  const auto leg = classical_scheme(Family::Legendre, {}, 12);
  const auto jl = classical_scheme(Family::Jacobi, {0.0, 0.0}, 12);
  const auto u = classical_scheme(Family::ChebyshevU, {}, 12);
  const auto ju = classical_scheme(Family::Jacobi, {0.5, 0.5}, 12);
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_NEAR(jl.a(n), leg.a(n), 1e-15);
    EXPECT_NEAR(ju.a(n), u.a(n), 1e-15);
  }
  for (std::size_t n = 0; n <= 12; ++n) {
    EXPECT_NEAR(jl.b(n), 0.0, 1e-15);
    EXPECT_NEAR(ju.b(n), 0.0, 1e-15);
  }
}

TEST(ClassicalScheme, RejectsBadParameters) {
  EXPECT_THROW(classical_scheme(Family::Jacobi, {-1.0, 0.0}, 3), ParameterError);
  EXPECT_THROW(classical_scheme(Family::Jacobi, {0.0, -1.5}, 3), ParameterError);
  EXPECT_THROW(classical_scheme(Family::Laguerre, {-1.0, 0.0}, 3), ParameterError);
  EXPECT_THROW(classical_scheme(Family::Legendre, {}, 0), ParameterError);
  EXPECT_THROW(classical_scheme(Family::Custom, {}, 3), ParameterError);
}

TEST(ClassicalScheme, DepthIsEnforced) {
  const auto s = classical_scheme(Family::Legendre, {}, 3);
  EXPECT_THROW(s.a(0), DepthError);
  EXPECT_THROW(s.a(4), DepthError);
  EXPECT_THROW(s.b(4), DepthError);
  EXPECT_NO_THROW(s.b(3));
}

TEST(FromSequences, ChebyshevEquivalent) {
  const auto s = from_sequences({0.5, 0.5}, {0.0, 0.0, 0.0});
  EXPECT_EQ(s.family(), Family::Custom);
  EXPECT_EQ(s.max_index(), 2u);
  EXPECT_EQ(s.a(2), 0.5);
}

TEST(FromSequences, NonpositiveEntryReportsIndex) {
  try {
    from_sequences({0.0, 1.0}, {0.0, 0.0, 0.0});
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("a[1] must be positive"), std::string::npos) << e.what();
  }
  try {
    from_sequences({1.0, -1.0}, {0.0, 0.0, 0.0});
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("a[2] must be positive"), std::string::npos) << e.what();
  }
}

TEST(FromSequences, LengthMismatch) {
  EXPECT_THROW(from_sequences({1.0, 1.0}, {0.0}), ParameterError);
  EXPECT_THROW(from_sequences({1.0}, {0.0, 0.0, 0.0, 0.0}), ParameterError);
  EXPECT_THROW(from_sequences({}, {0.0}), ParameterError);
}

TEST(FromSequences, EqualLengthsDropLastA) {
  const auto s = from_sequences({2.0, 1.0}, {1.0, -1.0});
  EXPECT_EQ(s.max_index(), 1u);
}

TEST(FromSequences, TraceOfJ3) {
  const auto s = from_sequences({2.0, 1.0}, {1.0, -1.0, 3.0});
  EXPECT_DOUBLE_EQ(jacobi_matrix(s, 3).trace(), 3.0);
}

TEST(Shifted, ChebyshevUIsShiftInvariant) {
  const auto s = classical_scheme(Family::ChebyshevU, {}, 8);
  const auto t = shifted(s, 1);
  EXPECT_EQ(t.max_index(), 7u);
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(t.a(n), s.a(n));
  for (std::size_t n = 0; n <= 7; ++n) EXPECT_EQ(t.b(n), s.b(n));
  EXPECT_EQ(t.shift(), 1u);
}

TEST(Shifted, ZeroShiftIsIdentity) {
  const auto s = classical_scheme(Family::Hermite, {}, 6);
  const auto t = shifted(s, 0);
  EXPECT_TRUE(std::equal(s.a_values().begin(), s.a_values().end(), t.a_values().begin(), t.a_values().end()));
  EXPECT_TRUE(std::equal(s.b_values().begin(), s.b_values().end(), t.b_values().begin(), t.b_values().end()));
}

TEST(Shifted, LaguerreByOne) {
  const auto t = shifted(classical_scheme(Family::Laguerre, {0.0, 0.0}, 5), 1);
  EXPECT_NEAR(t.b(0), 3.0, 1e-14);
  EXPECT_NEAR(t.a(1), 2.0, 1e-14);
}

TEST(Shifted, RejectsExcessiveShift) {
  const auto s = classical_scheme(Family::Legendre, {}, 4);
  EXPECT_NO_THROW(shifted(s, 3));
  EXPECT_THROW(shifted(s, 4), DepthError);
}

TEST(Shifted, Composes) {
  for (const auto& c : kFamilies) {
    const auto s = classical_scheme(c.family, c.params, 20);
    for (std::size_t j = 0; j <= 6; ++j) {
      for (std::size_t k = 0; k <= 6; ++k) {
        const auto twice = shifted(shifted(s, j), k);
        const auto once = shifted(s, j + k);
        ASSERT_EQ(twice.max_index(), once.max_index());
        for (std::size_t n = 1; n <= once.max_index(); ++n) EXPECT_EQ(twice.a(n), once.a(n));
        for (std::size_t n = 0; n <= once.max_index(); ++n) EXPECT_EQ(twice.b(n), once.b(n));
      }
    }
  }
}

TEST(ClassicalScheme, OffDiagonalPositive) {
  for (const auto& c : kFamilies) {
    const auto s = classical_scheme(c.family, c.params, 200);
    for (double a : s.a_values()) EXPECT_GT(a, 0.0) << family_name(c.family);
  }
}

TEST(FamilyNames, RoundTrip) {
  for (Family f : {Family::ChebyshevU, Family::ChebyshevT, Family::Legendre, Family::Jacobi,
                   Family::Laguerre, Family::Hermite, Family::Custom}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_THROW(parse_family("gegenbauer"), ParameterError);
}

// Orthonormality and the integral formulas for a_n and b_n, evaluated by
// double-exponential quadrature against each weight function.
class CoefficientIntegrals : public ::testing::TestWithParam<Case> {};

TEST_P(CoefficientIntegrals, MatchWeightFunction) {
  const Case c = GetParam();
  const std::size_t n_max = 20;
  const auto s = classical_scheme(c.family, c.params, n_max + 1);
  auto p = [&](std::size_t m, double x) { return eval_all(s, m, x).values[m]; };
  auto rel = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };

  for (std::size_t n = 1; n <= n_max; ++n) {
    const double an = oracle::integrate(c.family, c.params, [&](double x) { return x * p(n, x) * p(n - 1, x); });
    EXPECT_LE(rel(s.a(n), an), 1e-10) << family_name(c.family) << " a_" << n << " " << an;
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double bn = oracle::integrate(c.family, c.params, [&](double x) { return x * p(n, x) * p(n, x); });
    EXPECT_LE(rel(s.b(n), bn), 1e-10) << family_name(c.family) << " b_" << n << " " << bn;
    const double norm = oracle::integrate(c.family, c.params, [&](double x) { return p(n, x) * p(n, x); });
    EXPECT_LE(std::abs(norm - 1.0), 1e-10) << family_name(c.family) << " ||p_" << n << "||";
  }
  EXPECT_LE(std::abs(oracle::integrate(c.family, c.params, [&](double x) { return p(7, x) * p(4, x); })),
            1e-10);
}

INSTANTIATE_TEST_SUITE_P(Families, CoefficientIntegrals, ::testing::ValuesIn(kFamilies),
                         [](const auto& info) {
                           std::string name(family_name(info.param.family));
                           name += "_" + std::to_string(info.index);
                           std::replace(name.begin(), name.end(), '-', '_');
                           return name;
                         });
