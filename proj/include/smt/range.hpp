// Range conditions for spherical mean data: the symmetry residuals on either
// side of t = 1 (radial and degree-m), the D^{-m} antiderivative, and the
// classical vanishing of the Fourier-Bessel transform at Bessel zeros.
#pragma once

#include "smt/profiles.hpp"
#include "smt/quadrature.hpp"
#include "smt/report.hpp"
#include "smt/specfun.hpp"
#include "smt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace smt {

// Tight defaults for nested integrals whose outputs feed cancellation-sensitive sums.
inline QuadratureSpec fine_spec() {
    QuadratureSpec s;
    s.rel_tol = 1e-12;
    s.abs_tol = 1e-15;
    return s;
}

// `count` Chebyshev points mapped to (lo, hi), ascending.
inline std::vector<double> chebyshev_grid(int count = 20, double lo = 0.02, double hi = 0.98) {
    if (count < 1) throw std::invalid_argument("chebyshev_grid: count must be positive");
    std::vector<double> s(count);
    for (int k = 0; k < count; ++k)
        s[k] = 0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * count));
    return s;
}

inline double l1_norm(const DataProfile& h, const QuadratureSpec& spec = {}) {
    if (h.empty()) return 0.0;
    return integrate([&](double t) { return std::fabs(h(t)); }, h.lo, h.hi, spec).value;
}

inline void check_support(const DataProfile& h) {
    if (h.empty()) return;
    if (!(h.lo >= 0.0 && h.hi <= 2.0)) throw std::domain_error("data profile support must lie in (0,2)");
}

// int_0^{1-s} t h(t) t^{-2a} {[(1+t)^2-s^2][(1-t)^2-s^2]}^{a-1/2} dt minus the
// same integral over (1+s, 2), for an explicit order a.
inline double symmetry_residual(const DataProfile& h, Order a, double s, const QuadratureSpec& spec = fine_spec()) {
    if (!(s > 0.0 && s < 1.0)) throw std::domain_error("symmetry_residual: s must lie in (0,1)");
    check_support(h);
    if (h.empty()) return 0.0;
    const double e = a.alpha - 0.5;
    const int pw = 1 - 2 * a.alpha;
    const double sp2 = s * s;

    double left = 0.0;
    {
        const double lo = std::max(h.lo, 0.0), edge = 1.0 - s;
        const double hi = std::min(h.hi, edge);
        if (lo < hi) {
            const auto smooth = [&](double t) {
                const double v = h(t);
                if (v == 0.0) return 0.0;
                return v * std::pow(t, pw) * std::pow((1.0 + t) * (1.0 + t) - sp2, e) * std::pow(1.0 + s - t, e);
            };
            if (h.hi >= edge) left = integrate_singular(smooth, lo, edge, {0.0, e}, spec).value;
            else left = integrate([&](double t) { return smooth(t) * std::pow(edge - t, e); }, lo, hi, spec).value;
        }
    }
    double right = 0.0;
    {
        const double edge = 1.0 + s, hi = std::min(h.hi, 2.0);
        const double lo = std::max(h.lo, edge);
        if (lo < hi) {
            const auto smooth = [&](double t) {
                const double v = h(t);
                if (v == 0.0) return 0.0;
                return v * std::pow(t, pw) * std::pow((1.0 + t) * (1.0 + t) - sp2, e) * std::pow(t - 1.0 + s, e);
            };
            if (h.lo <= edge) right = integrate_singular(smooth, edge, hi, {e, 0.0}, spec).value;
            else right = integrate([&](double t) { return smooth(t) * std::pow(t - edge, e); }, lo, hi, spec).value;
        }
    }
    return left - right;
}

inline double radial_range_residual(const DataProfile& h, Dimension dim, double s, const QuadratureSpec& spec = fine_spec()) {
    return symmetry_residual(h, dim.alpha(), s, spec);
}

struct DInverseResult {
    DataProfile phi;
    double support_violation = 0.0;
};

// (D^{-k} h)(t) = int_0^t sigma h(sigma) (t^2 - sigma^2)^{k-1} / (2^{k-1} (k-1)!) dsigma,
// the k-fold antiderivative int_0^t tau psi(tau) dtau.
inline double d_inverse_value(const DataProfile& h, int k, double t, const QuadratureSpec& spec = fine_spec()) {
    if (k == 0) return h(t);
    if (h.empty() || t <= h.lo) return 0.0;
    double c = 1.0;
    for (int i = 1; i < k; ++i) c *= 2.0 * i;
    const double t2 = t * t;
    const auto integrand = [&](double sg) { return sg * h(sg) * std::pow(t2 - sg * sg, k - 1); };
    return integrate(integrand, h.lo, std::min(t, h.hi), spec).value / c;
}

// phi = D^{-m} h; support_violation = max_{j<m} |D^j phi| on [2 - eps, 2].
inline DInverseResult d_inverse(const DataProfile& h, int m, double eps = 0.05, const QuadratureSpec& spec = fine_spec()) {
    if (m < 0) throw std::domain_error("d_inverse: m must be non-negative");
    check_support(h);
    DInverseResult out;
    if (m == 0) {
        out.phi = h;
        return out;
    }
    DataProfile phi;
    phi.lo = h.empty() ? 1.0 : h.lo;
    phi.hi = h.empty() ? 1.0 : 2.0;
    phi.name = "D^-" + std::to_string(m) + "[" + h.name + "]";
    phi.eval = [h, m, spec](double t) { return d_inverse_value(h, m, t, spec); };
    phi.dpow = [h, m, spec](int j, double t) {
        if (j < m) return d_inverse_value(h, m - j, t, spec);
        if (j == m) return h(t);
        if (!h.dpow) throw std::invalid_argument("d_inverse: D^j beyond m needs closed-form derivatives of h");
        return h.dpow(j - m, t);
    };
    out.phi = phi;
    if (!h.empty()) {
        for (int j = 0; j < m; ++j)
            for (int i = 0; i <= 10; ++i) {
                const double t = 2.0 - eps + eps * i / 10.0;
                out.support_violation = std::max(out.support_violation, std::fabs(d_inverse_value(h, m - j, t, spec)));
            }
    }
    return out;
}

struct GeneralResidual {
    double residual = 0.0;
    double support_violation = 0.0;
};

// Degree-m condition: phi = D^{-m}(t^{n-2} g), then the radial residual of phi
// with order alpha + m.
inline GeneralResidual general_range_residual(const DataProfile& g, Dimension dim, int m, double s,
                                              const QuadratureSpec& spec = fine_spec()) {
    const auto inv = d_inverse(to_h(g, dim), m, 0.05, spec);
    return {symmetry_residual(inv.phi, Order(dim.alpha().alpha + m), s, spec), inv.support_violation};
}

// |g^(lambda_k)| with lambda_k the k-th positive zero of j_{m + n/2 - 1}.
inline double vanishing_condition_residual(const DataProfile& g, Dimension dim, int m, int k,
                                           const QuadratureSpec& spec = fine_spec()) {
    if (k < 1) throw std::domain_error("vanishing_condition_residual: k must be >= 1");
    const double lambda = bessel_zeros(Order(dim.alpha().alpha + m), k).back();
    return std::fabs(fourier_bessel(g, dim, lambda, spec));
}

struct RangeSweepOptions {
    std::vector<double> s_grid = chebyshev_grid();
    double rel_threshold = 1e-6;
    double violation_threshold = 1e-8;
    unsigned threads = 1;
};

// Symmetry residual over an s-grid for g_{m,l}; threshold = rel_threshold * ||h||_1.
inline ResidualReport range_sweep(const DataProfile& g, Dimension dim, int m, const RangeSweepOptions& opt = {},
                                  const QuadratureSpec& spec = fine_spec()) {
    ResidualReport rep;
    rep.name = m == 0 ? "radial_range" : "general_range";
    rep.param_names = {"s"};
    const DataProfile h = to_h(g, dim);
    const auto inv = d_inverse(h, m, 0.05, spec);
    const Order a(dim.alpha().alpha + m);
    const auto vals = parallel_map<double>(
        opt.s_grid.size(), [&](std::size_t i) { return symmetry_residual(inv.phi, a, opt.s_grid[i], spec); },
        opt.threads);
    for (std::size_t i = 0; i < vals.size(); ++i) rep.add({opt.s_grid[i]}, vals[i]);
    const double norm = l1_norm(h);
    rep.metrics["l1_norm_h"] = norm;
    rep.finalize(opt.rel_threshold * norm);
    if (m > 0) {
        rep.metrics["support_violation"] = inv.support_violation;
        if (!(inv.support_violation <= opt.violation_threshold)) {
            rep.pass = false;
            rep.notes.push_back("D^-m h is not compactly supported in (0,2)");
        }
    }
    return rep;
}

// |g^(lambda_k)| for k = 1..count.
inline ResidualReport vanishing_sweep(const DataProfile& g, Dimension dim, int m, int count = 10,
                                      double threshold = 1e-6, unsigned threads = 1,
                                      const QuadratureSpec& spec = fine_spec()) {
    ResidualReport rep;
    rep.name = "vanishing";
    rep.param_names = {"k", "lambda"};
    const auto zeros = bessel_zeros(Order(dim.alpha().alpha + m), count);
    const auto vals = parallel_map<double>(
        zeros.size(), [&](std::size_t i) { return std::fabs(fourier_bessel(g, dim, zeros[i], spec)); }, threads);
    for (std::size_t i = 0; i < vals.size(); ++i) rep.add({static_cast<double>(i + 1), zeros[i]}, vals[i]);
    rep.finalize(threshold);
    return rep;
}

}  // namespace smt
