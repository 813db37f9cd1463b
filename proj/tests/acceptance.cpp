// One PASS/FAIL line per acceptance criterion, with the measured quantity,
// its bound and the runtime. Exit status 1 when any criterion fails.
#include "smt/suites.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace smt;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> lines;  // sub-check details

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void info(const std::string& what) { lines.push_back("info " + what); }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::vector<RadialProfile> catalog() {
    return {radial_bump(0.8), radial_bump(0.5, 2.0), radial_bump(0.95), annular_bump(0.5, 0.3),
            annular_bump(0.3, 0.2, 3.0)};
}

template <class F>
std::pair<double, double> derivs(F f, double x, double h) {
    const double m2 = f(x - 2 * h), m1 = f(x - h), c = f(x), p1 = f(x + h), p2 = f(x + 2 * h);
    return {(m2 - 8 * m1 + 8 * p1 - p2) / (12 * h), (-m2 + 16 * m1 - 30 * c + 16 * p1 - p2) / (12 * h * h)};
}

Outcome elliptic() {
    Outcome o;
    const auto rep = elliptic_report(default_betas(), 10, 1e-8);
    o.check(rep.pass, fmt("max |residual| = %.3e over %.0f points (< 1e-8)", rep.max_abs, double(rep.residuals.size())));
    return o;
}

Outcome quartic() {
    Outcome o;
    const auto rep = quartic_report(100, 20240611, 1e-9);
    o.check(rep.pass, fmt("max |sqrt t1 + sqrt t4 - sqrt t2 - sqrt t3| = %.3e over 100 triples (< 1e-9)", rep.max_abs));
    o.info(fmt("resolvent cross-check max root gap %.3e", rep.metrics.at("resolvent_root_gap")));
    return o;
}

Outcome forward_mc() {
    Outcome o;
    std::uint64_t seed = 20240611;
    double worst = 0.0;
    int count = 0;
    for (const auto& f : catalog())
        for (int n : {2, 4})
            for (double t : {0.7, 1.0, 1.15}) {
                const auto mc = monte_carlo_forward_radial(f, n, t, 1'000'000, seed++);
                const double h = forward_radial(f, n, t) / std::pow(t, n - 2);
                const double z = std::fabs(h - mc.estimate) / mc.std_error;
                worst = std::max(worst, z);
                ++count;
                if (z > 3.0) o.check(false, f.name + fmt(" n=%.0f t=%.2f: %.2f standard errors", n, t, z));
            }
    o.check(worst <= 3.0, fmt("max deviation %.2f standard errors over %.0f comparisons (<= 3)", worst, count));
    return o;
}

struct InRange {
    DataProfile g;
    int n, m;
    std::string name;
};

std::vector<InRange> in_range_corpus() {
    std::vector<InRange> c;
    for (const auto& f : catalog())
        for (int n : {2, 4}) c.push_back({tabulate(forward_profile(f, n, 0)), n, 0, f.name});
    for (int m : {1, 2})
        for (const auto& f : {annular_bump(0.5, 0.3), annular_bump(0.6, 0.25, 2.0)})
            c.push_back({tabulate(forward_profile(f, 2, m)), 2, m, f.name});
    return c;
}

Outcome necessity(const std::vector<InRange>& corpus) {
    Outcome o;
    double radial = 0.0, general = 0.0, violation = 0.0;
    bool radial_ok = true;
    for (const auto& d : corpus) {
        const auto rep = range_sweep(d.g, d.n, d.m);
        if (d.m == 0) {
            radial = std::max(radial, rep.max_abs / rep.metrics.at("l1_norm_h"));
            radial_ok = radial_ok && rep.pass;
        } else {
            general = std::max(general, rep.max_abs);
            violation = std::max(violation, rep.metrics.at("support_violation"));
        }
    }
    o.check(radial_ok && radial < 1e-6,
            fmt("radial n in {2,4}: max |residual| / ||h||_1 = %.3e on the 20-point grid (< 1e-6)", radial));
    o.check(general < 1e-5, fmt("general n=2, m in {1,2}: max |residual| = %.3e (< 1e-5)", general));
    o.check(violation < 1e-8, fmt("d_inverse support violation = %.3e (< 1e-8)", violation));
    return o;
}

Outcome sufficiency(const std::vector<InRange>& corpus) {
    Outcome o;
    double worst = 0.0;
    for (const auto& d : corpus) worst = std::max(worst, vanishing_sweep(d.g, d.n, d.m, 10).max_abs);
    o.check(worst < 1e-6, fmt("in-range: max |g^(lambda_k)|, k <= 10 = %.3e (< 1e-6)", worst));
    struct Probe {
        DataProfile g;
        int n, m;
    };
    const std::vector<Probe> probes{{shifted_bump(0.4, 0.2), 2, 0},     {shifted_bump(0.4, 0.2), 4, 0},
                                    {shifted_bump(1.3, 0.4, -1.0), 2, 0}, {shifted_bump(1.3, 0.4, -1.0), 4, 0},
                                    {shifted_bump(0.8, 0.3), 2, 1}};
    for (const auto& p : probes) {
        RangeSweepOptions opt;
        if (p.m) opt.s_grid = chebyshev_grid(8);
        const auto rr = range_sweep(p.g, p.n, p.m, opt);
        const auto vr = vanishing_sweep(p.g, p.n, p.m, 10);
        o.check(!rr.pass && !vr.pass && rr.max_abs > 1e-3 && vr.max_abs > 1e-3,
                p.g.name + fmt(" n=%.0f m=%.0f", p.n, p.m) +
                    fmt(": new max %.3e, classical max %.3e (both > 1e-3, both verdicts fail)", rr.max_abs, vr.max_abs));
    }
    return o;
}

Outcome cross_product(const std::vector<InRange>& corpus) {
    Outcome o;
    double worst = 0.0;
    for (const auto& d : corpus) {
        if (d.m != 0) continue;
        worst = std::max(worst, cross_product_report(to_h(d.g, d.n), d.n).max_abs);
    }
    o.check(worst < 1e-7, fmt("max |residual| over lambda in {0.5,1,2,5,10,20}, 10 datasets = %.3e (< 1e-7)", worst));
    return o;
}

Outcome nicholson() {
    Outcome o;
    const auto grid = default_nicholson_grid();
    double c0 = 0.0;
    for (int a = 0; a <= 3; ++a) {
        const auto c = nicholson_constant(a, grid);
        if (a == 0) c0 = c.estimate;
        o.check(c.spread < 1e-6 && c.used.size() == 25,
                fmt("alpha=%.0f: ratio spread %.3e (< 1e-6), C estimate %.15f", a, c.spread, c.estimate));
    }
    o.check(std::fabs(c0 - std::numbers::pi / 2) < 1e-6,
            fmt("alpha=0: |C(0) - pi/2| = %.3e (< 1e-6)", std::fabs(c0 - std::numbers::pi / 2)));
    o.info(fmt("alpha=0: ||C(0)| - pi/2| = %.3e; C(0) = -pi/2 with the contour 0 -> ln z - ln w",
               std::fabs(std::fabs(c0) - std::numbers::pi / 2)));
    double anti = 0.0;
    for (int a = 0; a <= 3; ++a)
        for (const auto& [z, w] : grid)
            anti = std::max(anti, std::fabs(nicholson_lhs(NicholsonInput(a, z, w)) + nicholson_lhs(NicholsonInput(a, w, z))));
    o.check(anti < 1e-9, fmt("antisymmetry max |y(z,w) + y(w,z)| = %.3e (< 1e-9)", anti));
    const auto ode = ode_report();
    o.check(ode.max_abs < 1e-4, fmt("non-homogeneous ODE residual = %.3e (< 1e-4)", ode.max_abs));
    return o;
}

Outcome combinatorics() {
    Outcome o;
    bool lemma = true, zw = true, bin = true, canc = true, corr = true;
    int pairs = 0;
    for (int a = 1; a <= 10; ++a) {
        const auto r = combinatorial_identity_check(a);
        lemma = lemma && r.summation_lemma;
        zw = zw && r.summation_lemma_zw;
        bin = bin && r.binomial_sums;
        canc = canc && r.cancellation;
        corr = corr && r.correction_ode;
        pairs += r.index_pairs;
    }
    o.check(lemma, "summation lemma, exact polynomial equality in A, B, alpha <= 10");
    o.check(zw, "lemma at A = z^2 - w^2, B = z^2 + w^2 gives 2^alpha (z^{2alpha} - w^{2alpha}), exact");
    o.check(bin, fmt("binomial sums C and D equal their closed forms on %.0f (alpha, m, p) triples", pairs));
    o.check(canc, "S(m, p) = 0 in reduced and raw form on every in-range (m, p)");
    o.check(corr, "correction sum solves the non-homogeneous ODE exactly");
    return o;
}

Outcome specfun() {
    Outcome o;
    double ode_j = 0.0, ode_y = 0.0, wr = 0.0, dpow = 0.0, zeros = 0.0, spacing = 0.0, geg = 0.0;
    for (int a = 0; a <= 4; ++a)
        for (double x = 0.5; x <= 30.0; x += 0.5) {
            const auto [j1, j2] = derivs([a](double t) { return normalized_j(a, t); }, x, 1e-3);
            ode_j = std::max(ode_j, std::fabs(j2 + (2.0 * a + 1.0) / x * j1 + normalized_j(a, x)));
            const auto [y1, y2] = derivs([a](double t) { return normalized_y(a, t); }, x, 1e-3);
            const double y0 = normalized_y(a, x);
            ode_y = std::max(ode_y, std::fabs(y2 + (2.0 * a + 1.0) / x * y1 + y0) / std::max(1.0, std::fabs(y0)));
        }
    for (int a = 0; a <= 5; ++a)
        for (double x = 0.5; x <= 30.0; x += 0.25)
            wr = std::max(wr, std::fabs(bessel_j(a + 1, x) * bessel_y(a, x) - bessel_j(a, x) * bessel_y(a + 1, x) -
                                        2.0 / (std::numbers::pi * x)));
    for (int a = 0; a <= 3; ++a)
        for (double x : {1.0, 2.5, 6.0, 11.0}) {
            std::function<double(double)> f = [a](double t) { return normalized_j(a, t); };
            for (int k = 1; k <= 3; ++k) {
                const auto prev = f;
                f = [prev](double t) {
                    const double e = 1e-2;
                    return (prev(t - 2 * e) - 8 * prev(t - e) + 8 * prev(t + e) - prev(t + 2 * e)) / (12 * e * t);
                };
                dpow = std::max(dpow, std::fabs(d_power_j(a, k, x) - f(x)));
            }
        }
    for (int a = 0; a <= 6; ++a) {
        const auto z = bessel_zeros(a, 10);
        for (double zk : z) zeros = std::max(zeros, std::fabs(bessel_j(a, zk)));
        spacing = std::max(spacing, std::fabs(z[9] - z[8] - std::numbers::pi));
        for (int m = 0; m <= 8; ++m) geg = std::max(geg, std::fabs(gegenbauer_normalized(0.5 * a, m, 1.0) - 1.0));
    }
    // Faa di Bruno: special form against the Bell expansion in exact arithmetic
    using Rational = boost::multiprecision::cpp_rational;
    bool fdb = true;
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
            fdb = fdb && faa_di_bruno_special<Rational>(k, F, dg, d2g) == faa_di_bruno<Rational>(k, F, g);
        }
    o.check(ode_j < 1e-6, fmt("j_alpha ODE residual, alpha <= 4, x in [0.5, 30]: %.3e (< 1e-6)", ode_j));
    o.check(ode_y < 1e-6, fmt("y_alpha ODE residual relative to max(1, |y|): %.3e (< 1e-6)", ode_y));
    o.check(wr < 1e-10, fmt("Wronskian J_{a+1} Y_a - J_a Y_{a+1} - 2/(pi x): %.3e (< 1e-10)", wr));
    o.check(dpow < 1e-5, fmt("derivation formula D^k j_alpha vs finite differences, k <= 3: %.3e (< 1e-5)", dpow));
    o.check(zeros < 1e-12, fmt("|J_alpha(z_k)| at computed zeros: %.3e (< 1e-12)", zeros));
    o.check(spacing < 0.05, fmt("|z_10 - z_9 - pi|: %.3e (< 0.05)", spacing));
    o.check(geg < 1e-14, fmt("gegenbauer_normalized(alpha, m, 1) - 1: %.3e", geg));
    o.check(fdb, "special Faa di Bruno equals the Bell expansion exactly, k <= 8");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string title;
        double budget;  // seconds, 0 when none
        std::function<Outcome()> run;
    };
    std::vector<InRange> corpus;
    const std::vector<Criterion> criteria{
        {1, "elliptic-integral identity", 30.0, elliptic},
        {2, "quartic-root relation", 5.0, quartic},
        {3, "forward transform vs Monte Carlo", 120.0, forward_mc},
        {4, "necessity of the range conditions", 0.0,
         [&] {
             corpus = in_range_corpus();
             return necessity(corpus);
         }},
        {5, "sufficiency cross-check with the vanishing test", 0.0, [&] { return sufficiency(corpus); }},
        {6, "cross-product identity", 0.0, [&] { return cross_product(corpus); }},
        {7, "Nicholson-type identity", 0.0, nicholson},
        {8, "appendix combinatorics (exact)", 0.0, combinatorics},
        {9, "special-function floor", 10.0, specfun},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget > 0.0) out.check(secs < c.budget, fmt("runtime %.2f s (< %.0f s)", secs, c.budget));
        if (!out.pass) ++failed;
        std::printf("[%s] criterion %d: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
        for (const auto& l : out.lines) std::printf("         %s\n", l.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
