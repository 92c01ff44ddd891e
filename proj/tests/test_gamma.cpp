#include <gtest/gtest.h>

#include <numbers>

#include "hardgadget/gamma.hpp"
#include "oracles.hpp"

using namespace hardgadget;

TEST(Phi, KnownValues) {
    EXPECT_DOUBLE_EQ(phi(0.0), 0.5);
    EXPECT_DOUBLE_EQ(phi_inv(0.5), 0.0);
    EXPECT_NEAR(phi(1.6448536269514722), 0.95, 1e-10);
    for (double x = -3.0; x <= 3.0; x += 0.125) EXPECT_NEAR(phi(x), oracle::phi_series(x), 1e-13) << x;
}

TEST(Phi, InverseRoundTrips) {
    for (double a = 1e-6; a < 1.0; a += 0.0137) EXPECT_NEAR(phi(phi_inv(a)), a, 1e-12) << a;
    for (double a : {1e-12, 1e-9, 0.999999}) EXPECT_NEAR(phi(phi_inv(a)), a, 1e-12 * std::max(1.0, a));
    EXPECT_EQ(phi_inv(0.0), -std::numeric_limits<double>::infinity());
    EXPECT_EQ(phi_inv(1.0), std::numeric_limits<double>::infinity());
}

TEST(Gamma, ClosedForms) {
    for (double a = 0.0; a <= 1.0; a += 0.1)
        for (double b = 0.0; b <= 1.0; b += 0.1) {
            EXPECT_NEAR(gamma(0.0, a, b), a * b, 1e-12);
            EXPECT_NEAR(gamma(-1.0, a, b), std::max(0.0, a + b - 1.0), 1e-12);
        }
    // orthant probability at the medians
    for (double rho : {-0.95, -0.7, -0.3, -0.05})
        EXPECT_NEAR(gamma(rho, 0.5, 0.5), 0.25 + std::asin(rho) / (2.0 * std::numbers::pi), 1e-8) << rho;
    EXPECT_NEAR(gamma(-0.7, 0.5, 0.5), 0.12659165555, 1e-10);
}

TEST(Gamma, MatchesCorrelationAxisIntegral) {
    for (double rho : {-0.9, -0.7, -0.4, -0.1})
        for (double a : {0.05, 0.3, 0.5, 0.77, 0.95})
            for (double b : {0.1, 0.5, 0.88})
                EXPECT_NEAR(gamma(rho, a, b), oracle::gamma_along_rho(rho, a, b), 1e-8) << rho << " " << a << " " << b;
}

TEST(Gamma, MonotoneSymmetricAndBounded) {
    const double rho = -0.7;
    const int n = 50;
    std::vector<std::vector<double>> v(n + 1, std::vector<double>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) v[i][j] = gamma(rho, i / double(n), j / double(n));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const double a = i / double(n), b = j / double(n);
            EXPECT_NEAR(v[i][j], v[j][i], 1e-12);
            EXPECT_GE(v[i][j], std::max(0.0, a + b - 1.0) - 1e-12);
            EXPECT_LE(v[i][j], a * b + 1e-12);
            if (i > 0) {
                EXPECT_GE(v[i][j], v[i - 1][j] - 1e-12);
            }
            if (j > 0) {
                EXPECT_GE(v[i][j], v[i][j - 1] - 1e-12);
            }
        }
}

TEST(Gamma, DecreasesAsCorrelationDrops) {
    for (double a : {0.2, 0.5, 0.8}) {
        double prev = gamma(0.0, a, 0.6);
        for (double rho = -0.05; rho >= -1.0; rho -= 0.05) {
            const double g = gamma(std::max(rho, -1.0), a, 0.6);
            EXPECT_LE(g, prev + 1e-12);
            prev = g;
        }
    }
}

TEST(Gamma, AgreesWithSampling) {
    const std::array<std::array<double, 3>, 5> points{{{-0.7, 0.5, 0.5}, {-0.7, 0.3, 0.8}, {-0.4, 0.6, 0.6},
                                                        {-0.9, 0.75, 0.5}, {-0.2, 0.1, 0.9}}};
    std::uint64_t seed = 100;
    for (const auto& [rho, a, b] : points) {
        auto est = oracle::gamma_monte_carlo(rho, a, b, 400'000, seed++);
        EXPECT_LE(std::abs(gamma(rho, a, b) - est.mean), 4.0 * est.se) << rho << " " << a << " " << b;
    }
}

TEST(Gamma, RejectsBadArguments) {
    EXPECT_THROW(gamma(0.1, 0.5, 0.5), std::domain_error);
    EXPECT_THROW(gamma(-1.1, 0.5, 0.5), std::domain_error);
    EXPECT_THROW(gamma(-0.5, 1.5, 0.5), std::domain_error);
    EXPECT_THROW(gamma(-0.5, 0.5, 0.5, 0.0), std::domain_error);
}

TEST(GwCurve, Minimum) {
    EXPECT_DOUBLE_EQ(gw_curve(-1.0), 1.0);
    EXPECT_DOUBLE_EQ(gw_curve(0.0), 1.0);
    const auto m = gw_argmin();
    EXPECT_NEAR(m.rho, -0.689, 1e-3);
    EXPECT_NEAR(m.value, 0.8786, 1e-3);
    for (double r = -1.0; r <= 0.0; r += 0.01) EXPECT_GE(gw_curve(r), m.value - 1e-12);
}
