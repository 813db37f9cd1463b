// Dimension bookkeeping, radial source profiles f and data profiles g, h, phi
// on (0, 2), the bump catalog and spline-sampled profiles.
#pragma once

#include "smt/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace smt {

// Surface area of the unit sphere S^{k-1} in R^k.
inline double omega(int k) {
    if (k < 1) throw std::domain_error("omega: k must be >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k);
}

struct Dimension {
    int n = 2;

    Dimension() = default;
    Dimension(int n_) : n(n_) {
        if (n < 2 || n % 2 != 0) throw std::domain_error("Dimension: n must be even and >= 2");
    }

    Order alpha() const { return Order::from_dimension(n); }
};

// Number of linearly independent spherical harmonics of degree m in R^n.
inline long long harmonic_count(Dimension dim, int m) {
    if (m < 0) throw std::domain_error("harmonic_count: degree must be non-negative");
    if (m == 0) return 1;
    const int n = dim.n;
    // (2m+n-2) (n+m-3)! / (m! (n-2)!)
    long double c = 2.0L * m + n - 2;
    for (int i = 1; i <= n - 3; ++i) c *= static_cast<long double>(m + i) / i;
    if (n == 2) c /= m;
    else c /= (n - 2);
    return static_cast<long long>(std::llround(c));
}

// Radial profile on [0, 1), zero for r >= rho.
struct RadialProfile {
    std::function<double(double)> eval;
    double rho = 0.0;
    double inner = 0.0;
    std::string name;

    double operator()(double r) const { return (r < 0.0 || r >= rho) ? 0.0 : eval(r); }
};

// Profile on (0, 2) supported in [lo, hi]. `dpow(j, t)` is D^j with D = (1/t) d/dt
// when it is known in closed form.
struct DataProfile {
    std::function<double(double)> eval;
    double lo = 0.0;
    double hi = 0.0;
    std::string name;
    std::function<double(int, double)> dpow;

    double operator()(double t) const { return (t < lo || t > hi) ? 0.0 : eval(t); }
    bool empty() const { return !(hi > lo); }
};

inline DataProfile scale(const DataProfile& p, double c) {
    DataProfile q = p;
    q.eval = [e = p.eval, c](double t) { return c * e(t); };
    if (p.dpow) q.dpow = [d = p.dpow, c](int j, double t) { return c * d(j, t); };
    return q;
}

inline DataProfile add(const DataProfile& p, const DataProfile& q) {
    DataProfile r;
    r.lo = std::min(p.lo, q.lo);
    r.hi = std::max(p.hi, q.hi);
    r.name = p.name + "+" + q.name;
    r.eval = [p, q](double t) { return p(t) + q(t); };
    return r;
}

// h(t) = t^{n-2} g(t).
inline DataProfile to_h(const DataProfile& g, Dimension dim) {
    DataProfile h = g;
    const int e = dim.n - 2;
    h.eval = [ev = g.eval, e](double t) { return std::pow(t, e) * ev(t); };
    h.dpow = nullptr;
    return h;
}

inline DataProfile to_g(const DataProfile& h, Dimension dim) {
    DataProfile g = h;
    const int e = dim.n - 2;
    g.eval = [ev = h.eval, e](double t) { return ev(t) / std::pow(t, e); };
    g.dpow = nullptr;
    return g;
}

inline DataProfile zero_data() {
    DataProfile z;
    z.eval = [](double) { return 0.0; };
    z.lo = 1.0;
    z.hi = 1.0;
    z.name = "zero";
    z.dpow = [](int, double) { return 0.0; };
    return z;
}

namespace detail {

// d^k/dx^k exp(-1/(1-x^2)) = P_k(x) / (1-x^2)^{2k} exp(-1/(1-x^2)); returns P_k
// as power-series coefficients.
inline std::vector<std::vector<double>> bump_derivative_polys(int kmax) {
    std::vector<std::vector<double>> P(kmax + 1);
    P[0] = {1.0};
    for (int k = 0; k < kmax; ++k) {
        const auto& p = P[k];
        std::vector<double> next(p.size() + 3, 0.0);
        // -2x P_k
        for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] += -2.0 * p[i];
        // (1 - x^2)^2 P_k' = (1 - 2x^2 + x^4) P_k'
        for (std::size_t i = 1; i < p.size(); ++i) {
            const double d = i * p[i];
            next[i - 1] += d;
            next[i + 1] += -2.0 * d;
            next[i + 3] += d;
        }
        // 4k x (1 - x^2) P_k
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += 4.0 * k * p[i];
            next[i + 3] += -4.0 * k * p[i];
        }
        while (next.size() > 1 && next.back() == 0.0) next.pop_back();
        P[k + 1] = std::move(next);
    }
    return P;
}

inline double horner(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

// Coefficients c_{j,i} with D^j psi = sum_i c_{j,i} t^{i-2j} psi^{(i)}.
inline std::vector<std::vector<double>> d_power_coeffs(int jmax) {
    std::vector<std::vector<double>> c(jmax + 1, std::vector<double>(jmax + 1, 0.0));
    c[0][0] = 1.0;
    for (int j = 0; j < jmax; ++j)
        for (int i = 0; i <= j + 1; ++i) {
            const double keep = i <= j ? (i - 2.0 * j) * c[j][i] : 0.0;
            const double shift = i >= 1 ? c[j][i - 1] : 0.0;
            c[j + 1][i] = keep + shift;
        }
    return c;
}

}  // namespace detail

// f(r) = amp * exp(-1/(1-(r/rho)^2)) for r < rho.
inline RadialProfile radial_bump(double rho, double amp = 1.0) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("radial_bump: rho must lie in (0,1)");
    RadialProfile p;
    p.rho = rho;
    p.name = "bump(rho=" + std::to_string(rho) + ")";
    p.eval = [rho, amp](double r) {
        const double x = r / rho;
        return x < 1.0 ? amp * std::exp(-1.0 / (1.0 - x * x)) : 0.0;
    };
    return p;
}

// Bump supported on [center - width, center + width] inside (0, 1); vanishes
// near the origin so it is a smooth coefficient for every degree m.
inline RadialProfile annular_bump(double center, double width, double amp = 1.0) {
    if (!(width > 0.0 && center - width > 0.0 && center + width < 1.0))
        throw std::domain_error("annular_bump: support must lie in (0,1)");
    RadialProfile p;
    p.rho = center + width;
    p.inner = center - width;
    p.name = "annulus(c=" + std::to_string(center) + ",w=" + std::to_string(width) + ")";
    p.eval = [center, width, amp](double r) {
        const double x = (r - center) / width;
        return std::fabs(x) < 1.0 ? amp * std::exp(-1.0 / (1.0 - x * x)) : 0.0;
    };
    return p;
}

inline RadialProfile zero_radial() {
    RadialProfile p;
    p.rho = 0.5;
    p.name = "zero";
    p.eval = [](double) { return 0.0; };
    return p;
}

// Shifted bump amp * exp(-1/(1-x^2)), x = (t - center)/width, with D^j in
// closed form.
inline DataProfile shifted_bump(double center, double width, double amp = 1.0) {
    if (!(width > 0.0 && center - width > 0.0 && center + width < 2.0))
        throw std::domain_error("shifted_bump: support must lie in (0,2)");
    DataProfile p;
    p.lo = center - width;
    p.hi = center + width;
    p.name = "shifted_bump(c=" + std::to_string(center) + ",w=" + std::to_string(width) + ")";
    p.eval = [center, width, amp](double t) {
        const double x = (t - center) / width;
        return std::fabs(x) < 1.0 ? amp * std::exp(-1.0 / (1.0 - x * x)) : 0.0;
    };
    p.dpow = [center, width, amp](int j, double t) {
        const double x = (t - center) / width;
        if (!(std::fabs(x) < 1.0)) return 0.0;
        const auto polys = detail::bump_derivative_polys(j);
        const auto coeffs = detail::d_power_coeffs(j);
        const double q = 1.0 - x * x;
        const double base = amp * std::exp(-1.0 / q);
        double sum = 0.0;
        for (int i = 0; i <= j; ++i) {
            if (coeffs[j][i] == 0.0) continue;
            const double deriv = detail::horner(polys[i], x) / std::pow(q, 2 * i) / std::pow(width, i) * base;
            sum += coeffs[j][i] * std::pow(t, i - 2 * j) * deriv;
        }
        return sum;
    };
    return p;
}

// Piecewise Chebyshev interpolant of p on [p.lo, p.hi]: `panels` equal panels,
// `order` + 1 Chebyshev-Lobatto nodes each, barycentric evaluation.
inline DataProfile tabulate(const DataProfile& p, int panels = 64, int order = 16) {
    if (panels < 1 || order < 2) throw std::invalid_argument("tabulate: need panels >= 1 and order >= 2");
    if (p.empty()) return p;
    struct Table {
        double lo, width;
        int panels, order;
        std::vector<double> x, bw, values;
    };
    auto tab = std::make_shared<Table>();
    tab->lo = p.lo;
    tab->width = (p.hi - p.lo) / panels;
    tab->panels = panels;
    tab->order = order;
    for (int i = 0; i <= order; ++i) {
        tab->x.push_back(-std::cos(std::numbers::pi * i / order));
        tab->bw.push_back(((i % 2) ? -1.0 : 1.0) * ((i == 0 || i == order) ? 0.5 : 1.0));
    }
    tab->values.resize(static_cast<std::size_t>(panels) * (order + 1));
    for (int k = 0; k < panels; ++k)
        for (int i = 0; i <= order; ++i) {
            const double t = tab->lo + tab->width * (k + 0.5 * (1.0 + tab->x[i]));
            tab->values[k * (order + 1) + i] = p(t);
        }
    DataProfile q;
    q.lo = p.lo;
    q.hi = p.hi;
    q.name = p.name;
    q.eval = [tab](double t) {
        const double r = (t - tab->lo) / tab->width;
        int k = std::clamp(static_cast<int>(std::floor(r)), 0, tab->panels - 1);
        const double x = 2.0 * (r - k) - 1.0;
        const double* v = &tab->values[k * (tab->order + 1)];
        double num = 0.0, den = 0.0;
        for (int i = 0; i <= tab->order; ++i) {
            const double d = x - tab->x[i];
            if (d == 0.0) return v[i];
            const double c = tab->bw[i] / d;
            num += c * v[i];
            den += c;
        }
        return num / den;
    };
    return q;
}

// Clamped cubic spline through (t_i, v_i) with zero end slopes; zero outside
// the sample range.
class CubicSpline {
public:
    CubicSpline(std::vector<double> t, std::vector<double> v) : t_(std::move(t)), v_(std::move(v)) {
        const std::size_t n = t_.size();
        if (n < 2 || v_.size() != n) throw std::invalid_argument("CubicSpline: need at least two samples");
        for (std::size_t i = 1; i < n; ++i)
            if (!(t_[i] > t_[i - 1])) throw std::invalid_argument("CubicSpline: grid must be strictly increasing");
        // Tridiagonal system for second derivatives with clamped slopes 0.
        std::vector<double> a(n), b(n), c(n), r(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0) {
                const double h = t_[1] - t_[0];
                b[i] = h / 3.0;
                c[i] = h / 6.0;
                r[i] = (v_[1] - v_[0]) / h;
            } else if (i == n - 1) {
                const double h = t_[i] - t_[i - 1];
                a[i] = h / 6.0;
                b[i] = h / 3.0;
                r[i] = -(v_[i] - v_[i - 1]) / h;
            } else {
                const double h0 = t_[i] - t_[i - 1], h1 = t_[i + 1] - t_[i];
                a[i] = h0 / 6.0;
                b[i] = (h0 + h1) / 3.0;
                c[i] = h1 / 6.0;
                r[i] = (v_[i + 1] - v_[i]) / h1 - (v_[i] - v_[i - 1]) / h0;
            }
        }
        for (std::size_t i = 1; i < n; ++i) {
            const double m = a[i] / b[i - 1];
            b[i] -= m * c[i - 1];
            r[i] -= m * r[i - 1];
        }
        m_.assign(n, 0.0);
        m_[n - 1] = r[n - 1] / b[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
    }

    double operator()(double x) const {
        if (x < t_.front() || x > t_.back()) return 0.0;
        auto it = std::upper_bound(t_.begin(), t_.end(), x);
        std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
        if (i >= t_.size() - 1) i = t_.size() - 2;
        const double h = t_[i + 1] - t_[i];
        const double A = (t_[i + 1] - x) / h, B = (x - t_[i]) / h;
        return A * v_[i] + B * v_[i + 1] + ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
    }

    double front() const { return t_.front(); }
    double back() const { return t_.back(); }

private:
    std::vector<double> t_, v_, m_;
};

// Parses `t,value` CSV text; rejects empty input and non-increasing grids.
inline std::pair<std::vector<double>, std::vector<double>> read_samples_csv(std::istream& in) {
    std::vector<double> t, v;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (!header_seen) {
            header_seen = true;
            std::string h;
            for (char ch : line)
                if (ch != ' ' && ch != '\t') h += ch;
            if (h != "t,value") throw std::invalid_argument("CSV: expected header 't,value'");
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("CSV: malformed row '" + line + "'");
        try {
            std::size_t used = 0;
            const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
            const double tv = std::stod(a, &used);
            if (a.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(a);
            const double vv = std::stod(b, &used);
            if (b.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(b);
            if (!t.empty() && !(tv > t.back())) throw std::invalid_argument("CSV: t must be strictly increasing");
            t.push_back(tv);
            v.push_back(vv);
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()).rfind("CSV:", 0) == 0) throw;
            throw std::invalid_argument("CSV: malformed number in row '" + line + "'");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("CSV: number out of range in row '" + line + "'");
        }
    }
    if (t.size() < 2) throw std::invalid_argument("CSV: need at least two samples");
    return {t, v};
}

inline DataProfile sampled_data(std::vector<double> t, std::vector<double> v, std::string name = "sampled") {
    auto spline = std::make_shared<const CubicSpline>(std::move(t), std::move(v));
    DataProfile p;
    p.lo = std::max(spline->front(), 0.0);
    p.hi = std::min(spline->back(), 2.0);
    p.name = std::move(name);
    p.eval = [spline](double x) { return (*spline)(x); };
    return p;
}

inline DataProfile load_data_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    auto [t, v] = read_samples_csv(in);
    if (!(t.front() > 0.0 && t.back() < 2.0)) throw std::invalid_argument("CSV: samples must lie in (0,2)");
    return sampled_data(std::move(t), std::move(v), path);
}

}  // namespace smt
