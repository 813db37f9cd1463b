// Forward spherical mean transform of functions supported in the unit ball:
// radial case, spherical-harmonic coefficients, Funk-Hecke constants,
// Monte-Carlo oracles and the Fourier-Bessel transform.
#pragma once

#include "smt/profiles.hpp"
#include "smt/quadrature.hpp"
#include "smt/specfun.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace smt {

// Constant c(n) in h(t) = c(n) int u f(u) {[(1+u)^2-t^2][t^2-(1-u)^2]}^{alpha-1/2} du.
// Convention: omega(n-1) / (omega(n) 2^{n-3}), omega(k) the area of S^{k-1}.
// The alternative omega(n-1) / (omega(n-2) 2^{n-3}) is rejected by the
// Monte-Carlo oracle (see tests/test_transform.cpp).
inline double forward_constant(Dimension dim) {
    return omega(dim.n - 1) / (omega(dim.n) * std::pow(2.0, dim.n - 3));
}

namespace detail {

// c(n) int u f(u) R_m(x) {..}^{alpha-1/2} du over |1-t| < u < 1, after
// v = sqrt(u^2 - |1-t|^2), which turns u du {..}^{alpha-1/2} into
// v^{2 alpha} ((1+t)^2 - u^2)^{alpha-1/2} dv.
inline double forward_kernel(const RadialProfile& f, Dimension dim, int m, double t, const QuadratureSpec& spec) {
    if (!(t > 0.0 && t < 2.0)) throw std::domain_error("forward transform: t must lie in (0,2)");
    if (m < 0) throw std::domain_error("forward transform: degree must be non-negative");
    const double L = std::fabs(1.0 - t);
    const double top = std::min(f.rho, 1.0);
    if (L >= top) return 0.0;
    const double bottom = std::max(f.inner, L);
    const double vlo = std::sqrt(std::max(bottom * bottom - L * L, 0.0));
    const double vhi = std::sqrt(top * top - L * L);
    const int a = dim.alpha().alpha;
    const double ga = 0.5 * (dim.n - 2);
    const double e = a - 0.5;
    const double tp2 = (1.0 + t) * (1.0 + t);
    const auto integrand = [&](double v) {
        const double u = std::sqrt(v * v + L * L);
        const double fu = f(u);
        if (fu == 0.0) return 0.0;
        double val = fu * std::pow(v, 2 * a) * std::pow(tp2 - u * u, e);
        if (m > 0) {
            const double x = std::clamp((1.0 + u * u - t * t) / (2.0 * u), -1.0, 1.0);
            val *= gegenbauer_normalized(ga, m, x);
        }
        return val;
    };
    return forward_constant(dim) * integrate(integrand, vlo, vhi, spec).value;
}

}  // namespace detail

// h(t) = t^{n-2} g(t) for a radial f.
inline double forward_radial(const RadialProfile& f, Dimension dim, double t, const QuadratureSpec& spec = {}) {
    return detail::forward_kernel(f, dim, 0, t, spec);
}

// g_{m,l}(t) for the coefficient f_{m,l} of degree m; m = 0 is forward_radial / t^{n-2}.
inline double forward_coeff(const RadialProfile& f, Dimension dim, int m, double t, const QuadratureSpec& spec = {}) {
    return detail::forward_kernel(f, dim, m, t, spec) / std::pow(t, dim.n - 2);
}

// g_{m,l} as a data profile supported in [1 - rho, 1 + rho].
inline DataProfile forward_profile(const RadialProfile& f, Dimension dim, int m = 0, const QuadratureSpec& spec = {}) {
    DataProfile g;
    g.lo = std::max(1.0 - f.rho, 1e-12);
    g.hi = std::min(1.0 + f.rho, 2.0 - 1e-12);
    g.name = "forward[" + f.name + ",m=" + std::to_string(m) + "]";
    g.eval = [f, dim, m, spec](double t) {
        if (!(t > 0.0 && t < 2.0)) return 0.0;
        return forward_coeff(f, dim, m, t, spec);
    };
    return g;
}

// omega(n-1) int_{-1}^{1} k(x) C_m^alpha(x)/C_m^alpha(1) (1-x^2)^{(n-3)/2} dx.
inline double funk_hecke_constant(const std::function<double(double)>& k, Dimension dim, int m,
                                  const QuadratureSpec& spec = {}) {
    const double e = 0.5 * (dim.n - 3);
    const double ga = 0.5 * (dim.n - 2);
    const auto smooth = [&](double x) { return k(x) * gegenbauer_normalized(ga, m, x); };
    return omega(dim.n - 1) * integrate_singular(smooth, -1.0, 1.0, {e, e}, spec).value;
}

struct MonteCarloResult {
    double estimate = 0.0;
    double std_error = 0.0;
};

namespace detail {

struct RunningMean {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    MonteCarloResult result() const {
        const double var = n > 1 ? m2 / (n - 1) : 0.0;
        return {mean, std::sqrt(var / n)};
    }
};

}  // namespace detail

// Mean of F(p + t theta) over theta uniform on S^{n-1}, from normalized
// Gaussian vectors.
inline MonteCarloResult monte_carlo_sphere_mean(const std::function<double(const std::vector<double>&)>& F,
                                                Dimension dim, const std::vector<double>& p, double t, long long N,
                                                std::uint64_t seed) {
    if (N < 1000) throw std::invalid_argument("monte_carlo_sphere_mean: need at least 1000 samples");
    if (static_cast<int>(p.size()) != dim.n) throw std::invalid_argument("monte_carlo_sphere_mean: point dimension");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    detail::RunningMean acc;
    std::vector<double> g(dim.n), x(dim.n);
    for (long long s = 0; s < N; ++s) {
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (double& gi : g) {
                gi = normal(rng);
                norm2 += gi * gi;
            }
        } while (norm2 == 0.0);
        const double inv = t / std::sqrt(norm2);
        for (int i = 0; i < dim.n; ++i) x[i] = p[i] + inv * g[i];
        acc.push(F(x));
    }
    return acc.result();
}

// Monte-Carlo oracle for the radial forward transform at p = e_1.
inline MonteCarloResult monte_carlo_forward_radial(const RadialProfile& f, Dimension dim, double t, long long N,
                                                   std::uint64_t seed) {
    std::vector<double> p(dim.n, 0.0);
    p[0] = 1.0;
    const auto F = [&f](const std::vector<double>& x) {
        double r2 = 0.0;
        for (double xi : x) r2 += xi * xi;
        return f(std::sqrt(r2));
    };
    return monte_carlo_sphere_mean(F, dim, p, t, N, seed);
}

// In the plane, the degree-m circular coefficient of the spherical means of
// F(x) = f(|x|) cos(m arg x): both the centre angle phi and the direction
// theta are sampled uniformly and the estimator is (2 - [m=0]) cos(m phi) F.
inline MonteCarloResult monte_carlo_circular_coefficient(const RadialProfile& f, int m, double t, long long N,
                                                         std::uint64_t seed) {
    if (N < 1000) throw std::invalid_argument("monte_carlo_circular_coefficient: need at least 1000 samples");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    detail::RunningMean acc;
    const double w = m == 0 ? 1.0 : 2.0;
    for (long long s = 0; s < N; ++s) {
        const double phi = angle(rng), theta = angle(rng);
        const double x = std::cos(phi) + t * std::cos(theta);
        const double y = std::sin(phi) + t * std::sin(theta);
        const double r = std::hypot(x, y);
        const double F = r > 0.0 ? f(r) * std::cos(m * std::atan2(y, x)) : f(0.0);
        acc.push(w * std::cos(m * phi) * F);
    }
    return acc.result();
}

// int g(t) j_{n/2-1}(lambda t) t^{n-1} dt over the support of g, split at the
// zeros of the kernel.
inline double fourier_bessel(const DataProfile& g, Dimension dim, double lambda, const QuadratureSpec& spec = {}) {
    if (!(lambda > 0.0)) throw std::domain_error("fourier_bessel: lambda must be positive");
    if (g.empty()) return 0.0;
    const Order a = dim.alpha();
    const int n = dim.n;
    std::vector<double> cuts{g.lo};
    const int count = static_cast<int>(std::ceil(lambda * g.hi / std::numbers::pi)) + 2;
    for (double z : bessel_zeros(a, count)) {
        const double tz = z / lambda;
        if (tz > g.lo && tz < g.hi) cuts.push_back(tz);
    }
    cuts.push_back(g.hi);
    const auto integrand = [&](double t) { return g(t) * normalized_j(a, lambda * t) * std::pow(t, n - 1); };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(integrand, cuts[i], cuts[i + 1], spec).value;
    return total;
}

}  // namespace smt
