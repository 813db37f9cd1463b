#include "smt/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace smt;
using Rational = boost::multiprecision::cpp_rational;

namespace {

// Zero of J_0 in (2, 3) by bisection on the ascending series.
double bisect_j0_zero() {
    const auto series = [](double x) {
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= -(x * x / 4.0) / (k * k);
            sum += term;
        }
        return sum;
    };
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((series(mid) > 0.0) == (series(lo) > 0.0)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// 4th-order central differences.
template <class F>
std::pair<double, double> derivs(F f, double x, double h) {
    const double m2 = f(x - 2 * h), m1 = f(x - h), c = f(x), p1 = f(x + h), p2 = f(x + 2 * h);
    return {(m2 - 8 * m1 + 8 * p1 - p2) / (12 * h), (-m2 + 16 * m1 - 30 * c + 16 * p1 - p2) / (12 * h * h)};
}

}  // namespace

TEST(Order, FromDimension) {
    EXPECT_EQ(Order::from_dimension(2).alpha, 0);
    EXPECT_EQ(Order::from_dimension(4).alpha, 1);
    EXPECT_EQ(Order::from_dimension(10).alpha, 4);
    EXPECT_THROW(Order::from_dimension(3), std::domain_error);
    EXPECT_THROW(Order(-1), std::domain_error);
}

TEST(BesselJ, Trivial) {
    EXPECT_EQ(bessel_j(0, 0.0), 1.0);
    EXPECT_EQ(bessel_j(1, 0.0), 0.0);
    EXPECT_NEAR(bessel_j(0, 2.404825557695773), 0.0, 1e-12);
}

TEST(BesselJ, FirstZeroMatchesBisectionOracle) {
    EXPECT_NEAR(bessel_zeros(0, 1)[0], bisect_j0_zero(), 1e-12);
}

TEST(BesselJ, AgreesWithBoost) {
    for (int a = 0; a <= 8; ++a)
        for (double x = 0.05; x <= 50.0; x += 0.137) {
            const double ref = boost::math::cyl_bessel_j(a, x);
            EXPECT_NEAR(bessel_j(a, x), ref, 2e-14 * std::max(1.0, std::fabs(ref))) << "a=" << a << " x=" << x;
        }
}

TEST(BesselY, AgreesWithBoost) {
    for (int a = 0; a <= 8; ++a)
        for (double x = 0.3; x <= 50.0; x += 0.173) {
            const double ref = boost::math::cyl_neumann(a, x);
            EXPECT_NEAR(bessel_y(a, x), ref, 1e-13 * std::max(1.0, std::fabs(ref))) << "a=" << a << " x=" << x;
        }
}

TEST(BesselY, DivergesAtOrigin) {
    double prev = bessel_y(0, 1.0);
    for (double x : {1e-1, 1e-2, 1e-4, 1e-8}) {
        const double v = bessel_y(0, x);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_THROW(bessel_y(0, 0.0), std::domain_error);
    EXPECT_THROW(bessel_y(0, -1.0), std::domain_error);
}

TEST(BesselY, WronskianAtOne) {
    EXPECT_NEAR(bessel_j(1, 1.0) * bessel_y(0, 1.0) - bessel_j(0, 1.0) * bessel_y(1, 1.0), 2.0 / std::numbers::pi,
                1e-10);
}

TEST(BesselY, UpwardRecurrence) {
    EXPECT_NEAR(bessel_y(2, 1.0), 2.0 * bessel_y(1, 1.0) - bessel_y(0, 1.0), 1e-12);
}

TEST(BesselInvariants, WronskianOnGrid) {
    for (int a = 0; a <= 5; ++a)
        for (double x = 0.5; x <= 30.0; x += 0.25) {
            const double w = bessel_j(a + 1, x) * bessel_y(a, x) - bessel_j(a, x) * bessel_y(a + 1, x);
            EXPECT_NEAR(w, 2.0 / (std::numbers::pi * x), 1e-10) << "a=" << a << " x=" << x;
        }
}

TEST(BesselInvariants, OrdinaryOdeResidual) {
    for (int a = 0; a <= 4; ++a)
        for (double x = 0.5; x <= 30.0; x += 0.5) {
            const auto [d1, d2] = derivs([a](double t) { return bessel_j(a, t); }, x, 1e-3);
            const double r = d2 + d1 / x + (1.0 - a * a / (x * x)) * bessel_j(a, x);
            EXPECT_LT(std::fabs(r), 1e-6) << "a=" << a << " x=" << x;
        }
}

TEST(BesselInvariants, NormalizedOdeResidual) {
    for (int a = 0; a <= 4; ++a)
        for (double x = 0.5; x <= 30.0; x += 0.5) {
            const auto [j1, j2] = derivs([a](double t) { return normalized_j(a, t); }, x, 1e-3);
            EXPECT_LT(std::fabs(j2 + (2.0 * a + 1.0) / x * j1 + normalized_j(a, x)), 1e-6) << "j a=" << a << " x=" << x;
            const auto [y1, y2] = derivs([a](double t) { return normalized_y(a, t); }, x, 1e-3);
            const double scale = std::max(1.0, std::fabs(normalized_y(a, x)));
            EXPECT_LT(std::fabs(y2 + (2.0 * a + 1.0) / x * y1 + normalized_y(a, x)) / scale, 1e-6)
                << "y a=" << a << " x=" << x;
        }
}

TEST(NormalizedJ, Examples) {
    for (int a = 0; a <= 6; ++a) EXPECT_EQ(normalized_j(a, 0.0), 1.0);
    for (double x : {0.3, 4.0, 13.5, 40.0}) EXPECT_NEAR(normalized_j(0, x), bessel_j(0, x), 1e-15);
    EXPECT_NEAR(normalized_j(1, 2.0), 2.0 * boost::math::cyl_bessel_j(1, 2.0) / 2.0, 1e-15);
    EXPECT_NEAR(normalized_j(3, 17.0), 48.0 * boost::math::cyl_bessel_j(3, 17.0) / std::pow(17.0, 3), 1e-16);
    EXPECT_THROW(normalized_y(1, 0.0), std::domain_error);
}

TEST(DPowerJ, Examples) {
    for (double x : {0.7, 3.0, 15.0}) {
        EXPECT_NEAR(d_power_j(0, 1, x), -bessel_j(1, x) / x, 1e-15);
        EXPECT_NEAR(d_power_j(0, 1, x), -0.5 * normalized_j(1, x), 1e-15);
        EXPECT_NEAR(d_power_j(2, 0, x), normalized_j(2, x), 0.0);
    }
}

TEST(DPowerJ, MatchesFiniteDifferenceOfD) {
    // D f = f'/x by central differences with step 1e-4.
    const double h = 1e-4;
    const auto D = [h](auto f) {
        return [f, h](double x) { return (f(x + h) - f(x - h)) / (2 * h * x); };
    };
    const auto j1 = [](double x) { return normalized_j(1, x); };
    EXPECT_NEAR(d_power_j(1, 2, 3.0), D(D(j1))(3.0), 1e-6);
    // k-fold D with fourth-order differences, k <= 3.
    for (int a = 0; a <= 3; ++a)
        for (double x : {1.0, 2.5, 6.0, 11.0}) {
            std::function<double(double)> f = [a](double t) { return normalized_j(a, t); };
            for (int k = 1; k <= 3; ++k) {
                const auto prev = f;
                f = [prev](double t) {
                    const double e = 1e-2;
                    return (prev(t - 2 * e) - 8 * prev(t - e) + 8 * prev(t + e) - prev(t + 2 * e)) / (12 * e * t);
                };
                EXPECT_NEAR(d_power_j(a, k, x), f(x), 1e-5) << "a=" << a << " k=" << k << " x=" << x;
            }
        }
}

TEST(BesselZeros, Examples) {
    const auto z = bessel_zeros(0, 2);
    EXPECT_NEAR(z[0], 2.404825557695773, 1e-12);
    EXPECT_GT(z[1], 5.0);
    EXPECT_LT(z[1], 6.0);
    EXPECT_THROW(bessel_zeros(0, 0), std::domain_error);
}

TEST(BesselZeros, PropertiesAndInterlacing) {
    for (int a = 0; a <= 6; ++a) {
        const auto z = bessel_zeros(a, 12);
        const auto z1 = bessel_zeros(a + 1, 12);
        for (std::size_t k = 0; k < z.size(); ++k) {
            EXPECT_LT(std::fabs(bessel_j(a, z[k])), 1e-12);
            EXPECT_LT(std::fabs(boost::math::cyl_bessel_j(a, z[k])), 1e-12);
            if (k > 0) EXPECT_GT(z[k], z[k - 1]);
            // j_{a,k} < j_{a+1,k} < j_{a,k+1}
            EXPECT_LT(z[k], z1[k]);
            if (k + 1 < z.size()) EXPECT_LT(z1[k], z[k + 1]);
        }
        EXPECT_NEAR(z[10] - z[9], std::numbers::pi, 0.05) << "a=" << a;
    }
}

TEST(Gegenbauer, Examples) {
    for (double x : {-1.0, -0.3, 0.0, 0.8}) EXPECT_DOUBLE_EQ(gegenbauer_normalized(1.0, 1, x), x);
    EXPECT_NEAR(gegenbauer_normalized(0.0, 2, 0.5), -0.5, 1e-15);
    EXPECT_NEAR(gegenbauer_normalized(1.0, 2, 0.3), (4 * 0.09 - 1) / 3, 1e-15);
}

TEST(Gegenbauer, UnitAtOneAndChebyshevLimit) {
    for (double a : {0.0, 0.5, 1.0, 2.5, 7.0})
        for (int m = 0; m <= 12; ++m) EXPECT_NEAR(gegenbauer_normalized(a, m, 1.0), 1.0, 1e-13);
    for (int m = 0; m <= 10; ++m)
        for (double x = -1.0; x <= 1.0; x += 0.1) {
            EXPECT_NEAR(gegenbauer_normalized(0.0, m, x), std::cos(m * std::acos(std::clamp(x, -1.0, 1.0))), 1e-13);
            // small alpha approaches the Chebyshev limit continuously
            EXPECT_NEAR(gegenbauer_normalized(1e-9, m, x), gegenbauer_normalized(0.0, m, x), 1e-7);
        }
}

TEST(Gegenbauer, SphericalHarmonicCaseIsLegendre) {
    // alpha = 1/2: C_m^{1/2} = P_m, P_m(1) = 1
    for (int m = 0; m <= 8; ++m)
        for (double x = -0.9; x <= 0.9; x += 0.3)
            EXPECT_NEAR(gegenbauer_normalized(0.5, m, x), std::legendre(m, x), 1e-13);
}

TEST(Bell, Examples) {
    const double x1 = 1.7, x2 = -0.4, x3 = 2.2;
    EXPECT_NEAR(bell_partial<double>({3, 3}, {x1}), x1 * x1 * x1, 1e-14);
    EXPECT_NEAR(bell_partial<double>({3, 1}, {x1, x2, x3}), x3, 1e-15);
    EXPECT_NEAR(bell_partial<double>({3, 2}, {x1, x2}), 3 * x1 * x2, 1e-14);
    EXPECT_THROW(bell_partial<double>({3, 2}, {x1}), std::invalid_argument);
    EXPECT_THROW(BellIndex(2, 3), std::domain_error);
}

TEST(Bell, UnitArgumentsGiveStirlingNumbers) {
    // B_{k,j}(1,1,...) = S(k,j)
    EXPECT_EQ(bell_partial<Rational>({5, 2}, std::vector<Rational>(4, Rational(1))), Rational(15));
    EXPECT_EQ(bell_partial<Rational>({6, 3}, std::vector<Rational>(4, Rational(1))), Rational(90));
    EXPECT_EQ(bell_partial<Rational>({8, 4}, std::vector<Rational>(5, Rational(1))), Rational(1701));
}

TEST(FaaDiBruno, SpecialCaseSmallK) {
    const std::function<double(int)> F = [](int j) { return 1.0 + j * 0.5; };
    EXPECT_NEAR(faa_di_bruno_special<double>(1, F, 3.0, -2.0), F(1) * 3.0, 1e-15);
    EXPECT_NEAR(faa_di_bruno_special<double>(2, F, 3.0, -2.0), F(2) * 9.0 + F(1) * -2.0, 1e-14);
}

TEST(FaaDiBruno, PowerFunctionCrossEvaluation) {
    // F(x) = x^{3/2}; G(s) = (z^2 + w^2 - s^2)^2 - 4 z^2 w^2 at s = 0, (z, w) = (2, 1).
    const double z = 2.0, w = 1.0;
    const double G = (z * z - w * w) * (z * z - w * w);
    const double dg = -4.0 * (z * z + w * w), d2g = 8.0;
    const std::function<double(int)> F = [G](int j) {
        double c = 1.0;
        for (int i = 0; i < j; ++i) c *= 1.5 - i;
        return c * std::pow(G, 1.5 - j);
    };
    const double special = faa_di_bruno_special<double>(4, F, dg, d2g);
    const double generic = faa_di_bruno<double>(4, F, {dg, d2g, 0.0, 0.0});
    EXPECT_NEAR(special, generic, 1e-12 * std::fabs(generic));
}

TEST(FaaDiBruno, SpecialEqualsGenericExactly) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    for (int k = 1; k <= 8; ++k)
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Rational> fd(k + 1);
            for (auto& v : fd) v = Rational(num(rng), den(rng));
            const std::function<Rational(int)> F = [&fd](int j) { return fd[j]; };
            const Rational dg(num(rng), den(rng)), d2g(num(rng), den(rng));
            std::vector<Rational> g(k, Rational(0));
            g[0] = dg;
            if (k >= 2) g[1] = d2g;
            EXPECT_EQ(faa_di_bruno_special<Rational>(k, F, dg, d2g), faa_di_bruno<Rational>(k, F, g)) << "k=" << k;
        }
}

TEST(FaaDiBruno, ChainRuleForDerivationD) {
    // D = (1/s) d/ds on F(G(s)) with G = c - s^2 (so DG = -2, D^2G = 0), F = exp:
    // D^k exp(c - s^2) = (-2)^k exp(c - s^2).
    const double c = 0.3, s = 0.7;
    const double G = c - s * s;
    const std::function<double(int)> F = [G](int) { return std::exp(G); };
    for (int k = 1; k <= 6; ++k)
        EXPECT_NEAR(faa_di_bruno_special<double>(k, F, -2.0, 0.0), std::pow(-2.0, k) * std::exp(G), 1e-12);
}
