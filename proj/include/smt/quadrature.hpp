// One-dimensional quadrature: composite Gauss-Legendre for smooth integrands,
// Gauss-Jacobi for endpoint algebraic singularities, tanh-sinh fallback.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace smt {

enum class QuadratureMethod { gauss_legendre, gauss_jacobi, tanh_sinh };

struct QuadratureSpec {
    QuadratureMethod method = QuadratureMethod::gauss_legendre;
    int nodes = 64;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_refinements = 6;

    void validate() const {
        if (nodes < 4) throw std::invalid_argument("QuadratureSpec: nodes must be >= 4");
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
        if (max_refinements < 1) throw std::invalid_argument("QuadratureSpec: max_refinements must be >= 1");
    }
};

// Weight (t - a)^exp_left (b - t)^exp_right.
struct SingularWeight {
    double exp_left = 0.0;
    double exp_right = 0.0;

    void validate() const {
        if (!(exp_left > -1.0) || !(exp_right > -1.0))
            throw std::domain_error("SingularWeight: exponents must be > -1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

// Nodes and weights on [-1, 1].
struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;
};

namespace detail {

inline double jacobi_diag(int k, double a, double b) {
    if (k == 0) return (b - a) / (a + b + 2.0);
    const double s = 2.0 * k + a + b;
    return (b * b - a * a) / (s * (s + 2.0));
}

// Squared off-diagonal of the monic Jacobi recurrence, k >= 1.
inline double jacobi_offdiag_sq(int k, double a, double b) {
    if (k == 1) return 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    const double s = 2.0 * k + a + b;
    return 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
}

}  // namespace detail

// Gauss-Jacobi rule for (1 - x)^a (1 + x)^b: Golub-Welsch eigenvalues,
// Newton polish on the orthonormal recurrence, Christoffel weights.
inline QuadratureRule gauss_jacobi_rule(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi_rule: n must be positive");
    if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("gauss_jacobi_rule: exponents must be > -1");
    std::vector<double> diag(n), off(n + 1, 0.0);
    for (int k = 0; k < n; ++k) diag[k] = detail::jacobi_diag(k, a, b);
    for (int k = 1; k <= n; ++k) off[k] = std::sqrt(detail::jacobi_offdiag_sq(k, a, b));

    Eigen::VectorXd d(n), e(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) d[k] = diag[k];
    for (int k = 0; k + 1 < n; ++k) e[k] = off[k + 1];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e.head(n - 1), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver.eigenvalues();

    const double mu0 = std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(a + b + 2.0));
    QuadratureRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = ev[i];
        double sum = 0.0;
        for (int pass = 0; pass < 3; ++pass) {
            double p_prev = 0.0, p = 1.0 / std::sqrt(mu0);
            double dp_prev = 0.0, dp = 0.0;
            sum = p * p;
            for (int k = 0; k < n; ++k) {
                const double p_next = ((x - diag[k]) * p - off[k] * p_prev) / off[k + 1];
                const double dp_next = ((x - diag[k]) * dp + p - off[k] * dp_prev) / off[k + 1];
                p_prev = p;
                p = p_next;
                dp_prev = dp;
                dp = dp_next;
                if (k + 1 < n) sum += p * p;
            }
            if (pass < 2 && dp != 0.0) {
                const double nx = x - p / dp;
                if (nx > -1.0 && nx < 1.0) x = nx;
            }
        }
        rule.x[i] = x;
        rule.w[i] = 1.0 / sum;
    }
    return rule;
}

// Gauss-Legendre rule; common sizes come from an immutable table built once.
inline const QuadratureRule& gauss_legendre_rule(int n) {
    static const std::map<int, QuadratureRule> table = [] {
        std::map<int, QuadratureRule> t;
        for (int size : {8, 16, 32, 64, 128, 256, 512}) t.emplace(size, gauss_jacobi_rule(size, 0.0, 0.0));
        return t;
    }();
    if (auto it = table.find(n); it != table.end()) return it->second;
    thread_local std::map<int, QuadratureRule> extra;
    auto [it, inserted] = extra.try_emplace(n);
    if (inserted) it->second = gauss_jacobi_rule(n, 0.0, 0.0);
    return it->second;
}

inline double apply_rule(const std::function<double(double)>& f, double a, double b, const QuadratureRule& rule,
                         int panels) {
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double half = 0.5 * width;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f(lo + half * (1.0 + rule.x[i]));
        total += half * s;
    }
    return total;
}

inline bool within_tol(double diff, double value, const QuadratureSpec& spec) {
    return diff <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(value));
}

// Weighted integral of (t-a)^el (b-t)^er f(t) by tanh-sinh with endpoint
// distances taken from the transformation, never from t - a.
inline QuadratureResult tanh_sinh(const std::function<double(double)>& f, double a, double b, SingularWeight w,
                                  const QuadratureSpec& spec) {
    const double half = 0.5 * (b - a);
    const double umax = 4.0;
    const auto term = [&](double u) {
        const double v = 0.5 * std::numbers::pi * std::sinh(u);
        const double ev = std::exp(-2.0 * std::fabs(v));
        // 1 - tanh|v| = 2 ev / (1 + ev)
        const double small = 2.0 * ev / (1.0 + ev);
        const double large = 2.0 - small;
        const double onepx = v < 0.0 ? small : large;
        const double onemx = v < 0.0 ? large : small;
        const double dl = half * onepx, dr = half * onemx;
        if (dl <= 0.0 || dr <= 0.0) return 0.0;
        const double t = v < 0.0 ? a + dl : b - dr;
        const double ch = std::cosh(v);
        const double jac = 0.5 * std::numbers::pi * std::cosh(u) / (ch * ch);
        double weight = 1.0;
        if (w.exp_left != 0.0) weight *= std::pow(dl, w.exp_left);
        if (w.exp_right != 0.0) weight *= std::pow(dr, w.exp_right);
        if (!std::isfinite(jac) || jac == 0.0) return 0.0;
        return weight * f(t) * jac * half;
    };
    double h = 0.5;
    double sum = term(0.0);
    for (double u = h; u <= umax; u += h) sum += term(u) + term(-u);
    double prev = sum * h;
    QuadratureResult res{prev, std::numeric_limits<double>::infinity(), false};
    const int levels = std::max(spec.max_refinements, 8);
    for (int level = 0; level < levels; ++level) {
        h *= 0.5;
        for (double u = h; u <= umax; u += 2.0 * h) sum += term(u) + term(-u);
        const double cur = sum * h;
        res.value = cur;
        res.error = std::fabs(cur - prev);
        if (level >= 1 && within_tol(res.error, cur, spec)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

// Integral of a smooth f over (a, b) by composite Gauss-Legendre; each
// refinement doubles the number of panels.
inline QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureSpec& spec = {}) {
    spec.validate();
    if (a == b) return {0.0, 0.0, true};
    if (!(a < b)) throw std::domain_error("integrate: need a < b");
    if (spec.method == QuadratureMethod::tanh_sinh) return tanh_sinh(f, a, b, {}, spec);
    const QuadratureRule& rule = gauss_legendre_rule(spec.nodes);
    double prev = apply_rule(f, a, b, rule, 1);
    QuadratureResult res{prev, std::numeric_limits<double>::infinity(), false};
    int panels = 1;
    for (int r = 0; r < spec.max_refinements; ++r) {
        panels *= 2;
        const double cur = apply_rule(f, a, b, rule, panels);
        res.value = cur;
        res.error = std::fabs(cur - prev);
        if (within_tol(res.error, cur, spec)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

// Integral of (t - a)^el (b - t)^er f_smooth(t) over (a, b). Gauss-Jacobi with
// node doubling up to 512 nodes, then tanh-sinh.
inline QuadratureResult integrate_singular(const std::function<double(double)>& f_smooth, double a, double b,
                                           SingularWeight w, const QuadratureSpec& spec = {}) {
    spec.validate();
    w.validate();
    if (a == b) return {0.0, 0.0, true};
    if (!(a < b)) throw std::domain_error("integrate_singular: need a < b");
    if (spec.method == QuadratureMethod::tanh_sinh) return tanh_sinh(f_smooth, a, b, w, spec);
    const double half = 0.5 * (b - a);
    const double scale = std::pow(half, w.exp_left + w.exp_right + 1.0);
    const auto eval = [&](int n) {
        const QuadratureRule rule = (w.exp_left == 0.0 && w.exp_right == 0.0)
                                        ? gauss_legendre_rule(n)
                                        : gauss_jacobi_rule(n, w.exp_right, w.exp_left);
        double s = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f_smooth(a + half * (1.0 + rule.x[i]));
        return scale * s;
    };
    int n = spec.nodes;
    double prev = eval(n);
    QuadratureResult res{prev, std::numeric_limits<double>::infinity(), false};
    for (int r = 0; r < spec.max_refinements && 2 * n <= 512; ++r) {
        n *= 2;
        const double cur = eval(n);
        res.value = cur;
        res.error = std::fabs(cur - prev);
        if (within_tol(res.error, cur, spec)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    QuadratureResult ts = tanh_sinh(f_smooth, a, b, w, spec);
    if (ts.converged || ts.error < res.error) return ts;
    return res;
}

}  // namespace smt
