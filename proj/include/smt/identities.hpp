// Numerical and exact checks of the identities behind the range theorems:
// equality of the two elliptic-type integrals, geometry and root relation of
// the quartic P(t) - q t, the Bessel cross-product identity, the
// Nicholson-type formula and its ODE, and the binomial combinatorics.
#pragma once

#include "smt/profiles.hpp"
#include "smt/quadrature.hpp"
#include "smt/specfun.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace smt {

// ---------------------------------------------------------------------------
// Elliptic-type integrals

struct EllipticParams {
    double s = 0.0, u = 0.0;
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    EllipticParams(double s_, double u_) : s(s_), u(u_) {
        if (!(s > 0.0 && s < u && u < 1.0)) throw std::domain_error("EllipticParams: need 0 < s < u < 1");
        a = (1.0 + u) * (1.0 + u);
        b = (1.0 + s) * (1.0 + s);
        c = (1.0 - s) * (1.0 - s);
        d = (1.0 - u) * (1.0 - u);
    }

    // (a - t)(t - b)(t - c)(t - d), positive on (d, c) and (b, a).
    double P(double t) const { return (a - t) * (t - b) * (t - c) * (t - d); }
};

struct EllipticSides {
    double lower = 0.0;  // int_d^c P^beta t^{-beta-1/2} dt
    double upper = 0.0;  // int_b^a P^beta t^{-beta-1/2} dt
};

namespace detail {

// 2 int_p^q (x - p)^beta (q - x)^beta S(x) dx, split at the midpoint so each
// half carries one singular endpoint.
inline double two_sided(const std::function<double(double)>& S, double p, double q, double beta,
                        const QuadratureSpec& spec) {
    const double mid = 0.5 * (p + q);
    const double left =
        integrate_singular([&](double x) { return S(x) * std::pow(q - x, beta); }, p, mid, {beta, 0.0}, spec).value;
    const double right =
        integrate_singular([&](double x) { return S(x) * std::pow(x - p, beta); }, mid, q, {0.0, beta}, spec).value;
    return 2.0 * (left + right);
}

}  // namespace detail

// With t = x^2 each side is 2 int (P(x^2)/x^2)^beta dx; the linear factors at
// the endpoints become Jacobi weights.
inline EllipticSides elliptic_sides(const EllipticParams& p, double beta, const QuadratureSpec& spec = {}) {
    if (!(beta > -1.0)) throw std::domain_error("elliptic: beta must be > -1");
    if (!(p.d > 0.0)) throw std::domain_error("elliptic: d must be positive");
    const double ra = std::sqrt(p.a), rb = std::sqrt(p.b), rc = std::sqrt(p.c), rd = std::sqrt(p.d);
    const auto S1 = [&](double x) {
        const double x2 = x * x;
        return std::pow((p.a - x2) * (p.b - x2) * (rc + x) * (x + rd) / x2, beta);
    };
    const auto S2 = [&](double x) {
        const double x2 = x * x;
        return std::pow((ra + x) * (x + rb) * (x2 - p.c) * (x2 - p.d) / x2, beta);
    };
    return {detail::two_sided(S1, rd, rc, beta, spec), detail::two_sided(S2, rb, ra, beta, spec)};
}

inline double elliptic_identity_residual(const EllipticParams& p, double beta, const QuadratureSpec& spec = {}) {
    const auto sides = elliptic_sides(p, beta, spec);
    return sides.upper - sides.lower;
}

// ---------------------------------------------------------------------------
// Quartic geometry

// Monic (t - a)(t - b)(t - c)(t - d) = t^4 + c3 t^3 + c2 t^2 + c1 t + c0.
struct MonicQuartic {
    double c3, c2, c1, c0;

    double operator()(double t) const { return (((t + c3) * t + c2) * t + c1) * t + c0; }
    double derivative(double t) const { return ((4.0 * t + 3.0 * c3) * t + 2.0 * c2) * t + c1; }
};

inline MonicQuartic monic_quartic(const EllipticParams& p) {
    const double a = p.a, b = p.b, c = p.c, d = p.d;
    return {-(a + b + c + d), a * b + a * c + a * d + b * c + b * d + c * d,
            -(a * b * c + a * b * d + a * c * d + b * c * d), a * b * c * d};
}

struct QuarticGeometry {
    EllipticParams params;
    std::array<double, 4> r{};
    std::array<double, 4> dy{};  // y'(r_i) with y = P/t
    double gamma = 0.0;          // 4 (u^2 - s^2)^2
    double y_r2 = 0.0, y_r4 = 0.0;
    double resolvent_identity = 0.0;  // c3^2 - 4 c2 + 8 sqrt(c0)

    bool ordered() const {
        return r[0] < 0.0 && 0.0 < params.d && params.d <= r[1] && r[1] <= params.c && params.c <= r[2] &&
               r[2] <= params.b && params.b <= r[3] && r[3] <= params.a;
    }
};

inline QuarticGeometry quartic_critical_points(double s, double u) {
    QuarticGeometry g{EllipticParams(s, u)};
    const double s2 = s * s, u2 = u * u, base = s2 + u2 + 2.0;
    const double v = base * base + 12.0 * (1.0 - u2) * (1.0 - s2);
    const double w = 8.0 * (u2 + s2) + (u2 - s2) * (u2 - s2);
    g.r = {base / 6.0 - std::sqrt(v) / 6.0, base / 2.0 - std::sqrt(w) / 2.0, base / 6.0 + std::sqrt(v) / 6.0,
           base / 2.0 + std::sqrt(w) / 2.0};
    const auto m = monic_quartic(g.params);
    for (int i = 0; i < 4; ++i) {
        const double t = g.r[i];
        // P = -M, y' = (t P' - P) / t^2
        g.dy[i] = (-t * m.derivative(t) + m(t)) / (t * t);
    }
    g.gamma = 4.0 * (u2 - s2) * (u2 - s2);
    g.y_r2 = g.params.P(g.r[1]) / g.r[1];
    g.y_r4 = g.params.P(g.r[3]) / g.r[3];
    g.resolvent_identity = m.c3 * m.c3 - 4.0 * m.c2 + 8.0 * std::sqrt(m.c0);
    return g;
}

namespace detail {

inline std::vector<std::complex<double>> companion_roots(const std::vector<double>& monic_low_to_high) {
    const int n = static_cast<int>(monic_low_to_high.size());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -monic_low_to_high[i];
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

}  // namespace detail

// Roots t1 >= t2 >= t3 >= t4 of P(t) - q t, from companion-matrix eigenvalues
// with Newton polishing.
inline std::array<double, 4> quartic_roots(const EllipticParams& p, double q) {
    auto m = monic_quartic(p);
    m.c1 += q;  // P(t) - q t = -(M(t) + q t)
    const auto roots = detail::companion_roots({m.c0, m.c1, m.c2, m.c3});
    std::array<double, 4> t{};
    for (int i = 0; i < 4; ++i) {
        if (std::fabs(roots[i].imag()) > 1e-6 * (1.0 + std::fabs(roots[i].real())))
            throw std::runtime_error("quartic_roots: complex root, q outside (0, gamma)");
        double x = roots[i].real();
        for (int it = 0; it < 2; ++it) {
            const double fx = m(x), dx = m.derivative(x);
            if (dx == 0.0) break;
            const double nx = x - fx / dx;
            if (std::fabs(m(nx)) < std::fabs(fx)) x = nx;
        }
        t[i] = x;
    }
    std::sort(t.begin(), t.end(), std::greater<>());
    if (t[3] < p.d * (1.0 - 1e-12)) throw std::runtime_error("quartic_roots: root below d");
    return t;
}

inline double quartic_root_relation_residual(double s, double u, double q) {
    const EllipticParams p(s, u);
    const double gamma = 4.0 * (u * u - s * s) * (u * u - s * s);
    if (!(q > 0.0 && q < gamma)) throw std::domain_error("quartic_root_relation_residual: q must lie in (0, gamma)");
    const auto t = quartic_roots(p, q);
    return std::sqrt(t[0]) + std::sqrt(t[3]) - std::sqrt(t[1]) - std::sqrt(t[2]);
}

// The same roots through the resolvent cubic u^3 - c2 u^2 + (c1 c3 - 4 c0) u
// - (c1^2 + c0 c3^2 - 4 c0 c2) = 0. u1 is its largest real root and the
// square root of u1^2/4 - c0 is taken with the sign fixed by the linear
// coefficient, S = (c3 u1 / 2 - c1) / (2 R).
inline std::array<double, 4> quartic_roots_resolvent(const EllipticParams& p, double q) {
    auto m = monic_quartic(p);
    m.c1 += q;
    const auto cubic = detail::companion_roots(
        {-(m.c1 * m.c1 + m.c0 * m.c3 * m.c3 - 4.0 * m.c0 * m.c2), m.c1 * m.c3 - 4.0 * m.c0, -m.c2});
    double u1 = -std::numeric_limits<double>::infinity();
    for (const auto& z : cubic)
        if (std::fabs(z.imag()) <= 1e-8 * (1.0 + std::fabs(z.real()))) u1 = std::max(u1, z.real());
    const double a3 = m.c3, a2 = m.c2, a1 = m.c1;
    const double R = std::sqrt(a3 * a3 / 4.0 + u1 - a2);
    const double S = (a3 * u1 / 2.0 - a1) / (2.0 * R);
    const double Dt = std::sqrt(a3 * a3 / 4.0 + R * R - R * a3 - 2.0 * u1 + 4.0 * S);
    const double E = std::sqrt(a3 * a3 / 4.0 + R * R + R * a3 - 2.0 * u1 - 4.0 * S);
    std::array<double, 4> t{-a3 / 4.0 + R / 2.0 + Dt / 2.0, -a3 / 4.0 + R / 2.0 - Dt / 2.0,
                            -a3 / 4.0 - R / 2.0 + E / 2.0, -a3 / 4.0 - R / 2.0 - E / 2.0};
    std::sort(t.begin(), t.end(), std::greater<>());
    return t;
}

// ---------------------------------------------------------------------------
// Bessel cross product

struct CrossProductParts {
    double int_j = 0.0;  // int t h(t) j_alpha(lambda t) dt
    double int_y = 0.0;  // int t h(t) y_alpha(lambda t) dt
    double residual = 0.0;
};

inline CrossProductParts cross_product_parts(const DataProfile& h, Order a, double lambda,
                                             const QuadratureSpec& spec = {}) {
    if (!(lambda > 0.0)) throw std::domain_error("cross_product_residual: lambda must be positive");
    CrossProductParts out;
    if (h.empty()) return out;
    if (!(h.lo > 0.0 && h.hi <= 2.0)) throw std::domain_error("cross_product_residual: support must lie in (0,2)");
    out.int_j = integrate([&](double t) { return t * h(t) * normalized_j(a, lambda * t); }, h.lo, h.hi, spec).value;
    out.int_y = integrate([&](double t) { return t * h(t) * normalized_y(a, lambda * t); }, h.lo, h.hi, spec).value;
    out.residual = normalized_y(a, lambda) * out.int_j - normalized_j(a, lambda) * out.int_y;
    return out;
}

// y_alpha(lambda) int t h j_alpha(lambda t) dt - j_alpha(lambda) int t h y_alpha(lambda t) dt.
inline double cross_product_residual(const DataProfile& h, Dimension dim, double lambda,
                                     const QuadratureSpec& spec = {}) {
    return cross_product_parts(h, dim.alpha(), lambda, spec).residual;
}

// ---------------------------------------------------------------------------
// Nicholson-type formula

struct NicholsonInput {
    Order alpha;
    double z = 0.0, w = 0.0;

    NicholsonInput(Order a, double z_, double w_) : alpha(a), z(z_), w(w_) {
        if (!(z > 0.0 && w > 0.0)) throw std::domain_error("NicholsonInput: z and w must be positive");
        if (z == w) throw std::domain_error("NicholsonInput: z must differ from w");
    }
};

// a_0 = 1, a_j = 2 (alpha - j) a_{j-1}, j < alpha.
inline std::vector<double> nicholson_coefficients(Order alpha) {
    std::vector<double> a;
    double v = 1.0;
    for (int j = 0; j < alpha.alpha; ++j) {
        if (j > 0) v *= 2.0 * (alpha.alpha - j);
        a.push_back(v);
    }
    return a;
}

// f(s) = alpha sgn(|z|-|w|) / 2^{2alpha-2} {(z^2-w^2)^2 - 2 s^2 (z^2+w^2) + s^4}^{(2alpha-1)/2} / (z w)^{2alpha}.
inline double nicholson_f(Order alpha, double z, double w, double s) {
    const int a = alpha.alpha;
    const double z2 = z * z, w2 = w * w;
    const double brace = (z2 - w2) * (z2 - w2) - 2.0 * s * s * (z2 + w2) + s * s * s * s;
    const double sgn = std::fabs(z) > std::fabs(w) ? 1.0 : -1.0;
    return a * sgn / std::pow(2.0, 2 * a - 2) * std::pow(brace, 0.5 * (2 * a - 1)) / std::pow(z * w, 2 * a);
}

namespace detail {

inline double factorial_d(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline double binomial_d(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return factorial_d(n) / (factorial_d(k) * factorial_d(n - k));
}

}  // namespace detail

// D_s^j f(0), D = (1/s) d/ds, as the double sum over q >= j/2 and r <= 2q - j.
inline double ds_f_closed_form(Order alpha, int j, double z, double w) {
    const int a = alpha.alpha;
    if (j < 0 || j > std::max(a - 1, 0)) throw std::domain_error("ds_f_closed_form: need 0 <= j <= alpha - 1");
    if (z == 0.0 || w == 0.0) throw std::domain_error("ds_f_closed_form: z and w must be non-zero");
    using detail::factorial_d;
    const double z2 = z * z, w2 = w * w;
    const double denom = std::pow(z * w, 2 * a);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    double sum = 0.0;
    for (int q = (j + 1) / 2; q <= j; ++q) {
        const double coeff = sign * factorial_d(2 * a) * factorial_d(a - q) * factorial_d(j) /
                             (factorial_d(2 * a - 2 * q) * factorial_d(a) * factorial_d(2 * q - j) * factorial_d(j - q));
        for (int r = 0; r <= 2 * q - j; ++r)
            sum += detail::binomial_d(2 * q - j, r) * coeff * std::pow(2.0 * w2, r) *
                   std::pow(z2 - w2, 2 * a - j - r - 1);
    }
    return a / std::pow(2.0, 2 * a - 2) * sum / denom;
}

// Contour integral over the real segment 0 -> ln z - ln w of
// j_alpha(sqrt(z^2 + w^2 - 2 z w cosh zeta)) sinh^{2 alpha} zeta.
inline double nicholson_integral(const NicholsonInput& in, const QuadratureSpec& spec = {}) {
    const double end = std::log(in.z) - std::log(in.w);
    const double z = in.z, w = in.w;
    const int a = in.alpha.alpha;
    const auto integrand = [&](double zeta) {
        const double r = std::max(0.0, (z - w) * (z - w) - 2.0 * z * w * (std::cosh(zeta) - 1.0));
        return normalized_j(in.alpha, std::sqrt(r)) * std::pow(std::sinh(zeta), 2 * a);
    };
    if (end > 0.0) return integrate(integrand, 0.0, end, spec).value;
    return -integrate(integrand, end, 0.0, spec).value;
}

inline double nicholson_lhs(const NicholsonInput& in, const QuadratureSpec& spec = {}) {
    double correction = 0.0;
    const auto coeffs = nicholson_coefficients(in.alpha);
    for (int j = 0; j < in.alpha.alpha; ++j) correction += coeffs[j] * ds_f_closed_form(in.alpha, j, in.z, in.w);
    return nicholson_integral(in, spec) - correction;
}

// j_alpha(z) y_alpha(w) - y_alpha(z) j_alpha(w).
inline double bessel_cross(Order a, double z, double w) {
    return normalized_j(a, z) * normalized_y(a, w) - normalized_y(a, z) * normalized_j(a, w);
}

struct NicholsonConstant {
    double estimate = 0.0;
    double spread = 0.0;  // max relative deviation from the median
    std::vector<double> ratios;
    std::vector<std::pair<double, double>> used;
    std::vector<std::pair<double, double>> excluded;
};

inline NicholsonConstant nicholson_constant(Order alpha, const std::vector<std::pair<double, double>>& grid,
                                            double min_denominator = 1e-6, const QuadratureSpec& spec = {}) {
    NicholsonConstant out;
    for (const auto& [z, w] : grid) {
        const double den = bessel_cross(alpha, z, w);
        if (!(std::fabs(den) >= min_denominator)) {
            out.excluded.emplace_back(z, w);
            continue;
        }
        out.ratios.push_back(nicholson_lhs(NicholsonInput(alpha, z, w), spec) / den);
        out.used.emplace_back(z, w);
    }
    if (out.ratios.empty()) throw std::runtime_error("nicholson_constant: every grid point was excluded");
    std::vector<double> sorted = out.ratios;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    out.estimate = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    for (double r : out.ratios) out.spread = std::max(out.spread, std::fabs(r - out.estimate) / std::fabs(out.estimate));
    return out;
}

// max_z |z y~'' + (2 alpha + 1) y~' + z y~ - alpha / (2^{2alpha-2} w^{2alpha}) ((z^2 - w^2)/z)^{2alpha-1}|
// with y~ the contour integral and fourth-order central differences of step h.
inline double nonhomogeneous_ode_residual(Order alpha, double w, const std::vector<double>& z_grid, double h = 2e-3,
                                          const QuadratureSpec& spec = {}) {
    const int a = alpha.alpha;
    double worst = 0.0;
    for (double z : z_grid) {
        if (std::fabs(z - w) <= 2.0 * h) throw std::domain_error("nonhomogeneous_ode_residual: z too close to w");
        const auto y = [&](double x) { return nicholson_integral(NicholsonInput(alpha, x, w), spec); };
        const double ym2 = y(z - 2 * h), ym1 = y(z - h), y0 = y(z), yp1 = y(z + h), yp2 = y(z + 2 * h);
        const double d1 = (ym2 - 8.0 * ym1 + 8.0 * yp1 - yp2) / (12.0 * h);
        const double d2 = (-ym2 + 16.0 * ym1 - 30.0 * y0 + 16.0 * yp1 - yp2) / (12.0 * h * h);
        const double rhs = a == 0 ? 0.0
                                  : a / (std::pow(2.0, 2 * a - 2) * std::pow(w, 2 * a)) *
                                        std::pow((z * z - w * w) / z, 2 * a - 1);
        worst = std::max(worst, std::fabs(z * d2 + (2.0 * a + 1.0) * d1 + z * y0 - rhs));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Exact combinatorics

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline BigInt factorial_big(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// 1/n!, zero for negative n.
inline Rational inv_factorial(int n) {
    if (n < 0) return Rational(0);
    return Rational(BigInt(1), factorial_big(n));
}

// binom(n, k) for n >= 0, zero outside 0 <= k <= n.
inline Rational binom(int n, int k) {
    if (n < 0 || k < 0 || k > n) return Rational(0);
    return Rational(factorial_big(n) / (factorial_big(k) * factorial_big(n - k)));
}

inline Rational rpow(const Rational& x, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

// Bivariate polynomial: (i, j) -> coefficient of X^i Y^j.
using Poly2 = std::map<std::pair<int, int>, Rational>;

inline void add_term(Poly2& p, int i, int j, const Rational& c) {
    if (c == 0) return;
    auto& slot = p[{i, j}];
    slot += c;
    if (slot == 0) p.erase({i, j});
}

inline std::vector<Rational> a_coefficients(int alpha) {
    std::vector<Rational> a(alpha + 1, Rational(0));
    a[0] = 1;
    for (int j = 1; j <= alpha; ++j) a[j] = 2 * a[j - 1] * (alpha - j);
    return a;
}

// C~(j,q,r) = binom(2q-j, r) (-1)^j (2a)! (a-q)! j! / ((2a-2q)! a! (2q-j)! (j-q)!) 2^r.
inline Rational c_tilde(int alpha, int j, int q, int r) {
    if (r < 0 || j < 0 || q < 0 || alpha - q < 0 || 2 * alpha - 2 * q < 0) return Rational(0);
    Rational v = binom(2 * q - j, r) * Rational(factorial_big(2 * alpha) * factorial_big(alpha - q) * factorial_big(j));
    v *= inv_factorial(2 * alpha - 2 * q) * inv_factorial(alpha) * inv_factorial(2 * q - j) * inv_factorial(j - q);
    if (j % 2) v = -v;
    return v * rpow(Rational(2), r);
}

// Left side of the summation lemma as a polynomial in (A, B).
inline Poly2 summation_lemma_lhs(int alpha) {
    Poly2 p;
    const Rational pre = Rational((alpha - 1) % 2 ? -1 : 1) / alpha;
    for (int q = 0; q <= alpha - 1; ++q) {
        const Rational c = pre * Rational(factorial_big(2 * alpha) * factorial_big(alpha - q)) *
                           inv_factorial(2 * alpha - 2 * q) * inv_factorial(2 * q - alpha + 1) *
                           inv_factorial(alpha - 1 - q);
        add_term(p, 2 * alpha - 2 * q - 1, 2 * q - alpha + 1, c);
    }
    return p;
}

inline Rational summation_lemma_constant(int alpha) {
    const Rational sign((alpha - 1) % 2 ? -1 : 1);
    return sign * Rational(factorial_big(alpha - 1)) / 4 * binom(2 * alpha, alpha);
}

}  // namespace detail

// (-1)^{a-1}/a sum_q (2a)!(a-q)! / ((2a-2q)! (2q-a+1)! (a-1-q)!) A^{2a-2q-1} B^{2q-a+1}
//   = (-1)^{a-1} (a-1)!/4 binom(2a, a) ((A+B)^a - (B-A)^a), compared coefficientwise.
inline bool summation_lemma_check(int alpha) {
    if (alpha < 1) throw std::domain_error("summation_lemma_check: alpha must be >= 1");
    const auto lhs = detail::summation_lemma_lhs(alpha);
    detail::Poly2 rhs;
    const Rational k = detail::summation_lemma_constant(alpha);
    for (int i = 0; i <= alpha; ++i) {
        // (A+B)^a - (B-A)^a = sum_i binom(a,i) (1 - (-1)^i) A^i B^{a-i}
        if (i % 2 == 1) detail::add_term(rhs, i, alpha - i, k * 2 * detail::binom(alpha, i));
    }
    return lhs == rhs;
}

// The lemma at A = z^2 - w^2, B = z^2 + w^2 against 2^a (z^{2a} - w^{2a}),
// at exact rational points (Z, W) = (z^2, w^2).
inline bool summation_lemma_zw_check(int alpha, const std::vector<std::pair<Rational, Rational>>& points) {
    const auto lhs = detail::summation_lemma_lhs(alpha);
    const Rational k = detail::summation_lemma_constant(alpha);
    for (const auto& [Z, W] : points) {
        const Rational A = Z - W, B = Z + W;
        Rational left(0);
        for (const auto& [ij, c] : lhs) left += c * detail::rpow(A, ij.first) * detail::rpow(B, ij.second);
        const Rational right = k * detail::rpow(Rational(2), alpha) * (detail::rpow(Z, alpha) - detail::rpow(W, alpha));
        if (left != right) return false;
    }
    return true;
}

// sum_j a_j sum_{q,r} C~(j,q,r) W^r [X^{2a-l-1} + 4(a-l-1)(2a-l-1) X^{2a-l-2}
//   + 4(2a-l-1)(2a-l-2) W X^{2a-l-3}] = X^{2a-1}, l = j + r: the correction
// sum solves the nonhomogeneous ODE.
inline bool correction_ode_check(int alpha) {
    if (alpha < 1) throw std::domain_error("correction_ode_check: alpha must be >= 1");
    const auto a = detail::a_coefficients(alpha);
    detail::Poly2 sum;  // X^i W^j
    for (int j = 0; j <= alpha - 1; ++j)
        for (int q = (j + 1) / 2; q <= j; ++q)
            for (int r = 0; r <= 2 * q - j; ++r) {
                const Rational c = a[j] * detail::c_tilde(alpha, j, q, r);
                if (c == 0) continue;
                const int l = j + r;
                detail::add_term(sum, 2 * alpha - l - 1, r, c);
                detail::add_term(sum, 2 * alpha - l - 2, r, c * 4 * (alpha - l - 1) * (2 * alpha - l - 1));
                const Rational c3 = c * 4 * (2 * alpha - l - 1) * (2 * alpha - l - 2);
                if (c3 != 0) {
                    if (2 * alpha - l - 3 < 0) return false;
                    detail::add_term(sum, 2 * alpha - l - 3, r + 1, c3);
                }
            }
    detail::Poly2 expected;
    detail::add_term(expected, 2 * alpha - 1, 0, Rational(1));
    return sum == expected;
}

struct BinomialSums {
    Rational C, C_closed, D, D_closed;
    bool ok() const { return C == C_closed && D == D_closed; }
};

// C = sum_q binom(a-q, p-q) binom(2a-m, 2q-m), D = sum_q binom(a-q, p-q) binom(2a-m+1, 2q-m),
// q from ceil(m/2) to p, against their closed forms.
inline BinomialSums binomial_sums(int alpha, int m, int p) {
    using detail::binom;
    BinomialSums out;
    for (int q = (m + 1) / 2; q <= p; ++q) {
        out.C += binom(alpha - q, p - q) * binom(2 * alpha - m, 2 * q - m);
        out.D += binom(alpha - q, p - q) * binom(2 * alpha - m + 1, 2 * q - m);
    }
    const Rational two(2);
    out.C_closed = detail::rpow(two, 2 * p - m) * binom(alpha + p - m - 1, 2 * p - m);
    if (2 * p - m - 1 >= 0) out.C_closed += detail::rpow(two, 2 * p - m - 1) * binom(alpha + p - m - 1, 2 * p - m - 1);
    out.D_closed = detail::rpow(two, 2 * p - m) * binom(alpha + p - m, 2 * p - m);
    return out;
}

inline bool binomial_sums_check(int alpha, int m, int p) { return binomial_sums(alpha, m, p).ok(); }

// Coefficient of (w^2)^{m-p} (z^2 - w^2)^{2a-1-m} in the ODE balance, in the
// reduced binomial form and in the raw C~ form; both must vanish.
inline std::pair<Rational, Rational> cancellation_sums(int alpha, int m, int p) {
    using detail::binom;
    Rational reduced(0);
    for (int q = (m + 1) / 2; q <= p; ++q)
        reduced += binom(alpha - q, p - q) *
                   (binom(2 * alpha - m, 2 * q - m) * (2 * p * (alpha - p) + 2 * (alpha - m) * (2 * alpha - m)) -
                    binom(2 * alpha - m + 1, 2 * q - m) * ((2 * alpha - m) * (2 * alpha - m - p)));
    const auto a = detail::a_coefficients(alpha);
    Rational raw(0);
    const Rational ap = p <= alpha ? a[p] : Rational(0);
    const Rational ap1 = (p >= 1 && p - 1 <= alpha) ? a[p - 1] : Rational(0);
    for (int q = m / 2; q <= p; ++q) {
        if (2 * q >= m) raw += ap * detail::c_tilde(alpha, p, q, m - p);
        if (2 * q >= m + 1)
            raw += 4 * ap1 * detail::c_tilde(alpha, p - 1, q - 1, m - p) * (alpha - m) * (2 * alpha - m);
        if (2 * q >= m)
            raw += 4 * ap1 * detail::c_tilde(alpha, p - 1, q - 1, m - p - 1) * (2 * alpha - m) * (2 * alpha - m + 1);
    }
    return {reduced, raw};
}

inline bool cancellation_check(int alpha, int m, int p) {
    const auto [reduced, raw] = cancellation_sums(alpha, m, p);
    return reduced == 0 && raw == 0;
}

struct CombinatorialResult {
    bool summation_lemma = true;
    bool summation_lemma_zw = true;
    bool correction_ode = true;
    bool binomial_sums = true;
    bool cancellation = true;
    int index_pairs = 0;

    bool all() const { return summation_lemma && summation_lemma_zw && correction_ode && binomial_sums && cancellation; }
};

// Every check for one alpha; (m, p) ranges over 2 <= m <= 2 alpha - 1,
// ceil(m/2) <= p <= min(m, alpha).
inline CombinatorialResult combinatorial_identity_check(int alpha) {
    if (alpha < 1) throw std::domain_error("combinatorial_identity_check: alpha must be >= 1");
    CombinatorialResult out;
    out.summation_lemma = summation_lemma_check(alpha);
    const std::vector<std::pair<Rational, Rational>> pts{{Rational(3, 2), Rational(1, 3)},
                                                         {Rational(2), Rational(5)},
                                                         {Rational(-7, 4), Rational(2, 9)},
                                                         {Rational(11, 3), Rational(-1, 6)}};
    out.summation_lemma_zw = summation_lemma_zw_check(alpha, pts);
    out.correction_ode = correction_ode_check(alpha);
    for (int m = 2; m <= 2 * alpha - 1; ++m)
        for (int p = (m + 1) / 2; p <= std::min(m, alpha); ++p) {
            ++out.index_pairs;
            if (!binomial_sums_check(alpha, m, p)) out.binomial_sums = false;
            if (!cancellation_check(alpha, m, p)) out.cancellation = false;
        }
    return out;
}

}  // namespace smt
