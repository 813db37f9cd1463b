// Report builders for every verification suite and the textual profile
// grammar shared by the CLI and the acceptance runner.
#pragma once

#include "smt/identities.hpp"
#include "smt/profiles.hpp"
#include "smt/range.hpp"
#include "smt/report.hpp"
#include "smt/transform.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace smt {

// "kind:key=value,key=value", e.g. "radial:rho=0.8,amp=2" or "shifted:center=0.4,width=0.2".
struct ProfileSpec {
    std::string kind;
    std::map<std::string, double> args;

    double get(const std::string& key, double fallback) const {
        const auto it = args.find(key);
        return it == args.end() ? fallback : it->second;
    }
};

inline ProfileSpec parse_profile_spec(const std::string& text) {
    ProfileSpec p;
    const auto colon = text.find(':');
    p.kind = text.substr(0, colon);
    if (p.kind.empty()) throw std::invalid_argument("profile: empty kind");
    if (colon == std::string::npos) return p;
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("profile: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != val.size() || val.empty()) throw std::invalid_argument("profile: bad number '" + val + "'");
        p.args[key] = v;
    }
    return p;
}

inline bool is_radial_kind(const std::string& kind) { return kind == "radial" || kind == "annular" || kind == "zero"; }

inline RadialProfile make_radial(const ProfileSpec& p) {
    if (p.kind == "radial") return radial_bump(p.get("rho", 0.8), p.get("amp", 1.0));
    if (p.kind == "annular") return annular_bump(p.get("center", 0.5), p.get("width", 0.3), p.get("amp", 1.0));
    if (p.kind == "zero") return zero_radial();
    throw std::invalid_argument("profile: '" + p.kind + "' is not a radial source (radial, annular, zero)");
}

// Data g_m on (0,2): radial kinds go through the forward transform, "shifted"
// is a bump placed directly in data space.
inline DataProfile make_data(const ProfileSpec& p, Dimension dim, int m) {
    if (is_radial_kind(p.kind)) return tabulate(forward_profile(make_radial(p), dim, m));
    if (p.kind == "shifted") return shifted_bump(p.get("center", 1.0), p.get("width", 0.3), p.get("amp", 1.0));
    throw std::invalid_argument("profile: unknown kind '" + p.kind + "'");
}

// 10 x 10 grid with 0.05 < s < u < 0.95.
inline std::vector<std::pair<double, double>> elliptic_grid(int count = 10) {
    std::vector<std::pair<double, double>> g;
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) {
            const double s = 0.05 + 0.9 * (i + 1) / (count + 1.0);
            g.emplace_back(s, s + (0.95 - s) * (j + 1) / (count + 1.0));
        }
    return g;
}

inline std::vector<double> default_betas() { return {-0.5, 0.0, 0.5, 1.0, 1.5, 2.5, 3.5}; }

inline ResidualReport elliptic_report(const std::vector<double>& betas = default_betas(), int count = 10,
                                      double threshold = 1e-8, unsigned threads = 1) {
    ResidualReport rep;
    rep.name = "elliptic";
    rep.param_names = {"beta", "s", "u"};
    const auto grid = elliptic_grid(count);
    std::vector<std::array<double, 3>> pts;
    for (double b : betas)
        for (const auto& [s, u] : grid) pts.push_back({b, s, u});
    const auto vals = parallel_map<double>(
        pts.size(), [&](std::size_t i) { return elliptic_identity_residual(EllipticParams(pts[i][1], pts[i][2]), pts[i][0]); },
        threads);
    for (std::size_t i = 0; i < pts.size(); ++i) rep.add({pts[i][0], pts[i][1], pts[i][2]}, vals[i]);
    rep.finalize(threshold);
    return rep;
}

// Random (s, u, q) with q = gamma (0.001 + 0.998 U) kept away from the double roots.
inline std::vector<std::array<double, 3>> random_quartic_triples(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<std::array<double, 3>> out;
    for (int k = 0; k < count; ++k) {
        const double s = 0.05 + 0.85 * U(rng);
        const double u = s + (0.98 - s) * (0.05 + 0.9 * U(rng));
        const double gamma = 4.0 * (u * u - s * s) * (u * u - s * s);
        out.push_back({s, u, gamma * (0.001 + 0.998 * U(rng))});
    }
    return out;
}

inline ResidualReport quartic_report(int count = 100, std::uint64_t seed = 20240611, double threshold = 1e-9) {
    ResidualReport rep;
    rep.name = "quartic";
    rep.param_names = {"s", "u", "q"};
    rep.seed = seed;
    double resolvent_gap = 0.0, geometry = 0.0;
    for (const auto& [s, u, q] : random_quartic_triples(count, seed)) {
        rep.add({s, u, q}, quartic_root_relation_residual(s, u, q));
        const auto a = quartic_roots(EllipticParams(s, u), q), b = quartic_roots_resolvent(EllipticParams(s, u), q);
        for (int i = 0; i < 4; ++i) resolvent_gap = std::max(resolvent_gap, std::fabs(a[i] - b[i]));
        const auto g = quartic_critical_points(s, u);
        if (!g.ordered()) rep.notes.push_back("critical points out of order");
        for (double d : g.dy) geometry = std::max(geometry, std::fabs(d));
        geometry = std::max({geometry, std::fabs(g.y_r2 - g.gamma), std::fabs(g.y_r4 - g.gamma),
                             std::fabs(g.resolvent_identity)});
    }
    rep.metrics["resolvent_root_gap"] = resolvent_gap;
    rep.metrics["critical_point_residual"] = geometry;
    rep.finalize(threshold);
    if (!rep.notes.empty()) rep.pass = false;
    return rep;
}

inline std::vector<double> default_lambda_grid() { return {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}; }

inline ResidualReport cross_product_report(const DataProfile& h, Dimension dim,
                                           const std::vector<double>& lambdas = default_lambda_grid(),
                                           double threshold = 1e-7) {
    ResidualReport rep;
    rep.name = "cross_product";
    rep.param_names = {"lambda"};
    for (double l : lambdas) rep.add({l}, cross_product_residual(h, dim, l));
    rep.finalize(threshold);
    return rep;
}

inline std::vector<std::pair<double, double>> default_nicholson_grid() {
    std::vector<std::pair<double, double>> g;
    for (double z : {0.5, 1.1, 1.9, 2.7, 3.6})
        for (double w : {0.8, 1.4, 2.3, 3.1, 4.2}) g.emplace_back(z, w);
    return g;
}

// Rows with check = 0 are relative deviations of the ratio from the median,
// rows with check = 1 are antisymmetry sums y(z,w) + y(w,z).
inline ResidualReport nicholson_report(const std::vector<int>& alphas = {0, 1, 2, 3},
                                       const std::vector<std::pair<double, double>>& grid = default_nicholson_grid(),
                                       double threshold = 1e-6) {
    ResidualReport rep;
    rep.name = "nicholson";
    rep.param_names = {"alpha", "check", "z", "w"};
    for (int a : alphas) {
        const auto c = nicholson_constant(a, grid);
        for (std::size_t i = 0; i < c.ratios.size(); ++i)
            rep.add({double(a), 0.0, c.used[i].first, c.used[i].second},
                    std::fabs(c.ratios[i] - c.estimate) / std::fabs(c.estimate));
        for (const auto& [z, w] : grid)
            rep.add({double(a), 1.0, z, w},
                    nicholson_lhs(NicholsonInput(a, z, w)) + nicholson_lhs(NicholsonInput(a, w, z)));
        rep.metrics["C_estimate_alpha" + std::to_string(a)] = c.estimate;
        rep.metrics["spread_alpha" + std::to_string(a)] = c.spread;
        if (!c.excluded.empty())
            rep.notes.push_back("alpha " + std::to_string(a) + ": " + std::to_string(c.excluded.size()) +
                                " pairs excluded for small denominators");
    }
    rep.finalize(threshold);
    return rep;
}

// One row per alpha and check; residual 0 means exact rational equality.
inline ResidualReport combinatorial_report(int alpha_max = 10, double threshold = 0.0) {
    ResidualReport rep;
    rep.name = "combinatorial";
    rep.param_names = {"alpha", "check"};
    rep.notes.push_back("checks: 0 summation lemma, 1 lemma at A=z^2-w^2 B=z^2+w^2, 2 correction ODE, "
                        "3 binomial sums, 4 cancellation");
    int pairs = 0;
    for (int a = 1; a <= alpha_max; ++a) {
        const auto r = combinatorial_identity_check(a);
        const bool ok[] = {r.summation_lemma, r.summation_lemma_zw, r.correction_ode, r.binomial_sums, r.cancellation};
        for (int k = 0; k < 5; ++k) rep.add({double(a), double(k)}, ok[k] ? 0.0 : 1.0);
        pairs += r.index_pairs;
    }
    rep.metrics["index_pairs"] = pairs;
    rep.finalize(threshold);
    return rep;
}

inline ResidualReport ode_report(const std::vector<int>& alphas = {0, 1, 2, 3}, double w = 1.7,
                                 const std::vector<double>& z_grid = {0.5, 1.0, 2.5, 3.5}, double threshold = 1e-4) {
    ResidualReport rep;
    rep.name = "ode";
    rep.param_names = {"alpha", "z", "w"};
    for (int a : alphas)
        for (double z : z_grid) rep.add({double(a), z, w}, nonhomogeneous_ode_residual(a, w, {z}));
    rep.finalize(threshold);
    return rep;
}

inline const std::vector<std::string>& identity_suite_names() {
    static const std::vector<std::string> names{"elliptic", "quartic", "cross-product", "nicholson", "combinatorial", "ode"};
    return names;
}

}  // namespace smt
