// Special functions: integer-order Bessel functions, their normalized forms
// and zeros, normalized Gegenbauer polynomials, partial Bell polynomials and
// the Faa di Bruno formula for a derivation D.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace smt {

// Non-negative integer Bessel order.
struct Order {
    int alpha = 0;

    constexpr Order() = default;
    constexpr Order(int a) : alpha(a) {
        if (a < 0) throw std::domain_error("Order: alpha must be non-negative");
    }

    // alpha = n/2 - 1 for an even dimension n >= 2.
    static constexpr Order from_dimension(int n) {
        if (n < 2 || n % 2 != 0) throw std::domain_error("Order: dimension must be even and >= 2");
        return Order(n / 2 - 1);
    }

    constexpr operator int() const { return alpha; }
};

// Index (k, j) of the partial Bell polynomial B_{k,j}.
struct BellIndex {
    int k = 1;
    int j = 1;

    constexpr BellIndex(int k_, int j_) : k(k_), j(j_) {
        if (k < 1 || j < 1 || j > k) throw std::domain_error("BellIndex: need 1 <= j <= k");
    }

    constexpr int arity() const { return k - j + 1; }
};

namespace detail {

inline long double factorial_ld(int n) {
    long double r = 1.0L;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Ascending series for J_alpha, accumulated in extended precision.
inline double bessel_j_series(int alpha, double x) {
    const long double h = 0.5L * x;
    long double term = 1.0L;
    for (int i = 1; i <= alpha; ++i) term *= h / i;
    long double sum = term;
    long double peak = std::fabs(term);
    const long double q = -h * h;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<long double>(k) * (k + alpha));
        sum += term;
        peak = std::max(peak, std::fabs(term));
        if (k > h && std::fabs(term) < 1e-21L * peak) break;
    }
    return static_cast<double>(sum);
}

// J_0 .. J_nmax at x > 0 by downward (Miller) recurrence normalized with
// J_0 + 2 sum J_{2k} = 1. Entries beyond nmax up to the start index are kept
// because the Neumann series for Y needs them.
inline std::vector<double> bessel_j_sequence(int nmax, double x) {
    const double top = std::max<double>(nmax, x);
    int start = static_cast<int>(top + 30.0 + std::sqrt(40.0 * top));
    start += start % 2;
    std::vector<double> v(start + 2, 0.0);
    v[start + 1] = 0.0;
    v[start] = 1e-30;
    for (int k = start; k >= 1; --k) {
        v[k - 1] = (2.0 * k / x) * v[k] - v[k + 1];
        if (std::fabs(v[k - 1]) > 1e250) {
            for (int i = k - 1; i <= start; ++i) v[i] *= 1e-250;
        }
    }
    double norm = v[0];
    for (int k = 2; k <= start; k += 2) norm += 2.0 * v[k];
    for (double& e : v) e /= norm;
    v.resize(start + 1);
    return v;
}

inline std::vector<double> bessel_y01(double x) {
    const auto j = bessel_j_sequence(1, x);
    const int top = static_cast<int>(j.size()) - 1;
    const double lg = std::log(0.5 * x) + std::numbers::egamma;
    double s0 = 0.0, s1 = 0.0;
    for (int k = 1; 2 * k + 1 <= top; ++k) {
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        s0 += sgn * j[2 * k] / k;
        s1 += sgn * (j[2 * k - 1] - j[2 * k + 1]) / k;
    }
    const double y0 = 2.0 / std::numbers::pi * (lg * j[0] - 2.0 * s0);
    const double y1 = 2.0 / std::numbers::pi * (-j[0] / x + lg * j[1] + s1);
    return {y0, y1};
}

}  // namespace detail

// J_alpha(x) for x >= 0.
inline double bessel_j(Order alpha, double x) {
    if (x < 0.0) throw std::domain_error("bessel_j: x must be non-negative");
    if (x == 0.0) return alpha.alpha == 0 ? 1.0 : 0.0;
    if (x <= 12.0) return detail::bessel_j_series(alpha.alpha, x);
    return detail::bessel_j_sequence(alpha.alpha, x)[alpha.alpha];
}

// Y_alpha(x) for x > 0; Y_0 and Y_1 from the Neumann series, higher orders by
// upward recurrence.
inline double bessel_y(Order alpha, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_y: x must be positive");
    const auto y = detail::bessel_y01(x);
    if (alpha.alpha == 0) return y[0];
    double prev = y[0], cur = y[1];
    for (int k = 1; k < alpha.alpha; ++k) {
        const double next = (2.0 * k / x) * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// j_alpha(x) = 2^alpha alpha! J_alpha(x) / x^alpha, with j_alpha(0) = 1.
inline double normalized_j(Order alpha, double x) {
    if (x < 0.0) throw std::domain_error("normalized_j: x must be non-negative");
    const int a = alpha.alpha;
    if (x <= 12.0) {
        const long double q = -0.25L * x * x;
        long double term = 1.0L, sum = 1.0L, peak = 1.0L;
        for (int k = 1; k < 500; ++k) {
            term *= q / (static_cast<long double>(k) * (k + a));
            sum += term;
            peak = std::max(peak, std::fabs(term));
            if (k > 0.5 * x && std::fabs(term) < 1e-21L * peak) break;
        }
        return static_cast<double>(sum);
    }
    const long double scale = std::pow(2.0L / x, a) * detail::factorial_ld(a);
    return static_cast<double>(scale * bessel_j(alpha, x));
}

// y_alpha(x) = 2^alpha alpha! Y_alpha(x) / x^alpha.
inline double normalized_y(Order alpha, double x) {
    if (!(x > 0.0)) throw std::domain_error("normalized_y: x must be positive");
    const long double scale = std::pow(2.0L / x, alpha.alpha) * detail::factorial_ld(alpha.alpha);
    return static_cast<double>(scale * bessel_y(alpha, x));
}

// D^k j_alpha with D = (1/x) d/dx:
// (-1)^k alpha! / (2^k (alpha+k)!) j_{alpha+k}(x).
inline double d_power_j(Order alpha, int k, double x) {
    if (k < 0) throw std::domain_error("d_power_j: k must be non-negative");
    long double c = 1.0L;
    for (int i = 1; i <= k; ++i) c /= -2.0L * (alpha.alpha + i);
    return static_cast<double>(c * normalized_j(Order(alpha.alpha + k), x));
}

// First `count` positive zeros of J_alpha.
inline std::vector<double> bessel_zeros(Order alpha, int count) {
    if (count < 1) throw std::domain_error("bessel_zeros: count must be >= 1");
    const int a = alpha.alpha;
    const auto J = [a](double x) { return bessel_j(Order(a), x); };
    const auto dJ = [a](double x) { return (a / x) * bessel_j(Order(a), x) - bessel_j(Order(a + 1), x); };
    std::vector<double> zeros;
    zeros.reserve(count);
    const double step = 0.25;
    double lo = std::max(0.5, static_cast<double>(a));
    double flo = J(lo);
    while (static_cast<int>(zeros.size()) < count) {
        const double hi = lo + step;
        const double fhi = J(hi);
        if (fhi == 0.0) {
            zeros.push_back(hi);
        } else if ((flo < 0.0) != (fhi < 0.0) && flo != 0.0) {
            double l = lo, r = hi, fl = flo;
            const int k = static_cast<int>(zeros.size()) + 1;
            const double mu = 4.0 * a * a;
            const double beta = (k + 0.5 * a - 0.25) * std::numbers::pi;
            double x = beta - (mu - 1.0) / (8.0 * beta);
            if (!(x > l && x < r)) x = 0.5 * (l + r);
            bool done = false;
            for (int it = 0; it < 200 && !done; ++it) {
                const double fx = J(x);
                if (fx == 0.0) break;
                if ((fx < 0.0) == (fl < 0.0)) {
                    l = x;
                    fl = fx;
                } else {
                    r = x;
                }
                double nx = x - fx / dJ(x);
                if (!(nx > l && nx < r)) nx = 0.5 * (l + r);
                if (std::fabs(nx - x) <= 4e-16 * x || r - l <= 4e-16 * x) done = true;
                x = nx;
            }
            if (!done && std::fabs(J(x)) > 1e-12)
                throw std::runtime_error("bessel_zeros: refinement failed to converge");
            zeros.push_back(x);
        }
        lo = hi;
        flo = fhi;
        if (lo > 1e6) throw std::runtime_error("bessel_zeros: bracketing failed");
    }
    return zeros;
}

// C_m^alpha(x) / C_m^alpha(1); the Chebyshev polynomial T_m at alpha = 0.
inline double gegenbauer_normalized(double alpha, int m, double x) {
    if (alpha < 0.0) throw std::domain_error("gegenbauer_normalized: alpha must be non-negative");
    if (m < 0) throw std::domain_error("gegenbauer_normalized: degree must be non-negative");
    if (m == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int k = 2; k <= m; ++k) {
        const double next = (2.0 * (k + alpha - 1.0) * x * cur - (k - 1.0) * prev) / (2.0 * alpha + k - 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Partial Bell polynomial B_{k,j}(x_1, ..., x_{k-j+1}) by enumeration of the
// index sequences with i_1 + ... = j and i_1 + 2 i_2 + ... = k.
template <class T>
T bell_partial(BellIndex idx, const std::vector<T>& args) {
    const int n = idx.arity();
    if (static_cast<int>(args.size()) != n)
        throw std::invalid_argument("bell_partial: expected " + std::to_string(n) + " arguments");
    T fact_k(1);
    for (int i = 2; i <= idx.k; ++i) fact_k *= T(i);
    std::vector<T> fact(idx.k + 1, T(1));
    for (int i = 1; i <= idx.k; ++i) fact[i] = fact[i - 1] * T(i);

    T total(0);
    std::vector<int> mult(n + 1, 0);
    const std::function<void(int, int, int)> walk = [&](int r, int left_j, int left_k) {
        if (r > n) {
            if (left_j != 0 || left_k != 0) return;
            T term = fact_k;
            for (int s = 1; s <= n; ++s) {
                for (int e = 0; e < mult[s]; ++e) term = term * args[s - 1] / fact[s];
                term /= fact[mult[s]];
            }
            total += term;
            return;
        }
        for (int i = 0; i <= left_j && i * r <= left_k; ++i) {
            mult[r] = i;
            walk(r + 1, left_j - i, left_k - i * r);
        }
        mult[r] = 0;
    };
    walk(1, idx.j, idx.k);
    return total;
}

// D^k F(G) = sum_j F^{(j)}(G) B_{k,j}(DG, D^2G, ...); g_derivs[i] = D^{i+1} G.
template <class T>
T faa_di_bruno(int k, const std::function<T(int)>& f_derivs, const std::vector<T>& g_derivs) {
    if (k < 1) throw std::domain_error("faa_di_bruno: k must be >= 1");
    if (static_cast<int>(g_derivs.size()) < k) throw std::invalid_argument("faa_di_bruno: need k derivatives of G");
    T total(0);
    for (int j = 1; j <= k; ++j) {
        const BellIndex idx(k, j);
        std::vector<T> args(g_derivs.begin(), g_derivs.begin() + idx.arity());
        total += f_derivs(j) * bell_partial<T>(idx, args);
    }
    return total;
}

// D^k F(G) when D^j G = 0 for j >= 3:
// sum_{k/2 <= j <= k} k! / ((2j-k)! (k-j)! 2^{k-j}) F^{(j)} (DG)^{2j-k} (D^2G)^{k-j}.
template <class T>
T faa_di_bruno_special(int k, const std::function<T(int)>& f_derivs, const T& dg, const T& d2g) {
    if (k < 1) throw std::domain_error("faa_di_bruno_special: k must be >= 1");
    std::vector<T> fact(k + 1, T(1));
    for (int i = 1; i <= k; ++i) fact[i] = fact[i - 1] * T(i);
    T total(0);
    for (int j = (k + 1) / 2; j <= k; ++j) {
        T term = fact[k] / (fact[2 * j - k] * fact[k - j]);
        for (int e = 0; e < k - j; ++e) term /= T(2);
        for (int e = 0; e < 2 * j - k; ++e) term *= dg;
        for (int e = 0; e < k - j; ++e) term *= d2g;
        total += term * f_derivs(j);
    }
    return total;
}

}  // namespace smt
