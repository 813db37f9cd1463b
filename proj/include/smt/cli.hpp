// Command-line front end: forward, range-check, identities and bessel
// subcommands. Exit codes: 0 all pass, 1 any verdict fails, 2 usage or IO error.
#pragma once

#include "smt/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace smt {

struct CliOptions {
    int n = 2;
    int m = 0;
    std::string profile = "radial:rho=0.8";
    std::string csv;
    std::string s_grid = "cheb:20";
    std::string lambda_grid = "0.5,1,2,5,10,20";
    std::vector<std::string> only;
    std::optional<double> threshold;
    std::uint64_t seed = 20240611;
    std::string out;
    int points = 200;
    long mc_samples = 0;
    int alpha = 0;
    int zeros = 0;
    double x_max = 20.0;
    int vanishing = 10;
    unsigned threads = 1;
};

// "cheb:N[:lo:hi]", "lin:N:lo:hi" or an explicit comma list.
inline std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    while (std::getline(ss, item, sep)) parts.push_back(item);
    const auto num = [](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size()) throw std::invalid_argument("grid: bad number '" + s + "'");
        return v;
    };
    if (sep == ':') {
        if (parts.size() < 2) throw std::invalid_argument("grid: expected kind:count");
        const int count = static_cast<int>(num(parts[1]));
        if (count < 1) throw std::invalid_argument("grid: count must be positive");
        if (parts[0] == "cheb") {
            if (parts.size() == 2) return chebyshev_grid(count);
            if (parts.size() == 4) return chebyshev_grid(count, num(parts[2]), num(parts[3]));
        } else if (parts[0] == "lin" && parts.size() == 4) {
            const double lo = num(parts[2]), hi = num(parts[3]);
            std::vector<double> g(count);
            for (int i = 0; i < count; ++i) g[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1.0);
            return g;
        }
        throw std::invalid_argument("grid: unknown form '" + text + "'");
    }
    std::vector<double> g;
    for (const auto& p : parts) g.push_back(num(p));
    if (g.empty()) throw std::invalid_argument("grid: empty");
    return g;
}

inline std::map<std::string, std::string> options_map(const CliOptions& o, const std::string& command) {
    std::ostringstream thr;
    if (o.threshold) thr << std::setprecision(17) << *o.threshold;
    std::string only;
    for (const auto& s : o.only) only += (only.empty() ? "" : ",") + s;
    return {{"command", command},
            {"n", std::to_string(o.n)},
            {"m", std::to_string(o.m)},
            {"profile", o.csv.empty() ? o.profile : ""},
            {"csv", o.csv},
            {"s-grid", o.s_grid},
            {"lambda-grid", o.lambda_grid},
            {"only", only},
            {"threshold", thr.str()},
            {"seed", std::to_string(o.seed)},
            {"points", std::to_string(o.points)},
            {"mc-samples", std::to_string(o.mc_samples)},
            {"vanishing", std::to_string(o.vanishing)},
            {"threads", std::to_string(o.threads)}};
}

namespace detail {

inline void emit_reports(const std::string& command, const CliOptions& o, std::vector<ResidualReport>& reports,
                         std::ostream& out) {
    const auto cfg = options_map(o, command);
    bool all = true;
    nlohmann::json doc;
    doc["command"] = command;
    doc["config"] = cfg;
    doc["seed"] = o.seed;
    doc["reports"] = nlohmann::json::array();
    for (auto& r : reports) {
        r.config = cfg;
        r.seed = o.seed;
        all = all && r.pass;
        doc["reports"].push_back(r.to_json());
    }
    doc["pass"] = all;
    if (o.out.empty()) {
        out << doc.dump(2) << '\n';
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << doc.dump(2) << '\n';
    for (const auto& r : reports)
        out << r.name << ": " << r.verdict() << " max_abs=" << r.max_abs << " threshold=" << r.threshold << '\n';
}

inline bool all_pass(const std::vector<ResidualReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

inline std::ostream& open_out(const CliOptions& o, std::ofstream& file, std::ostream& fallback) {
    if (o.out.empty()) return fallback;
    file.open(o.out);
    if (!file) throw std::runtime_error("cannot write " + o.out);
    return file;
}

inline int cmd_forward(const CliOptions& o, std::ostream& out) {
    const Dimension dim(o.n);
    if (o.points < 1) throw std::invalid_argument("--points must be positive");
    const auto f = make_radial(parse_profile_spec(o.profile));
    const bool mc = o.mc_samples > 0;
    if (mc && o.m > 0 && o.n != 2) throw std::invalid_argument("Monte Carlo column for m > 0 needs n = 2");
    std::ofstream file;
    std::ostream& dst = open_out(o, file, out);
    dst << std::setprecision(17) << "t,g,h" << (mc ? ",mc,mc_std_error" : "") << '\n';
    for (int i = 0; i < o.points; ++i) {
        const double t = 2.0 * (i + 0.5) / o.points;
        const double g = forward_coeff(f, dim, o.m, t);
        dst << t << ',' << g << ',' << g * std::pow(t, o.n - 2);
        if (mc) {
            const auto r = o.m == 0 ? monte_carlo_forward_radial(f, dim, t, o.mc_samples, o.seed + i)
                                    : monte_carlo_circular_coefficient(f, o.m, t, o.mc_samples, o.seed + i);
            const double sc = o.m == 0 ? std::pow(t, -(o.n - 2)) : 1.0;
            dst << ',' << r.estimate * sc << ',' << r.std_error * sc;
        }
        dst << '\n';
    }
    return 0;
}

inline int cmd_range_check(const CliOptions& o, std::ostream& out) {
    const Dimension dim(o.n);
    if (o.m < 0) throw std::invalid_argument("--m must be non-negative");
    const DataProfile g = o.csv.empty() ? make_data(parse_profile_spec(o.profile), dim, o.m) : load_data_csv(o.csv);
    RangeSweepOptions opt;
    opt.s_grid = parse_grid(o.s_grid);
    opt.threads = o.threads;
    if (o.threshold) opt.rel_threshold = *o.threshold;
    std::vector<ResidualReport> reports;
    reports.push_back(range_sweep(g, dim, o.m, opt));
    reports.push_back(vanishing_sweep(g, dim, o.m, o.vanishing, o.threshold.value_or(1e-6), o.threads));
    emit_reports("range-check", o, reports, out);
    return all_pass(reports) ? 0 : 1;
}

inline int cmd_identities(const CliOptions& o, std::ostream& out) {
    std::vector<std::string> selected;
    for (const auto& item : o.only) {
        std::stringstream ss(item);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (std::find(identity_suite_names().begin(), identity_suite_names().end(), name) ==
                identity_suite_names().end())
                throw std::invalid_argument("--only: unknown identity '" + name + "'");
            selected.push_back(name);
        }
    }
    if (selected.empty()) selected = identity_suite_names();
    const auto want = [&](const std::string& n) { return std::find(selected.begin(), selected.end(), n) != selected.end(); };
    const auto thr = [&](double dflt) { return o.threshold.value_or(dflt); };
    std::vector<ResidualReport> reports;
    if (want("elliptic")) reports.push_back(elliptic_report(default_betas(), 10, thr(1e-8), o.threads));
    if (want("quartic")) reports.push_back(quartic_report(100, o.seed, thr(1e-9)));
    if (want("cross-product")) {
        const Dimension dim(o.n);
        const DataProfile h = to_h(make_data(parse_profile_spec(o.profile), dim, 0), dim);
        reports.push_back(cross_product_report(h, dim, parse_grid(o.lambda_grid), thr(1e-7)));
    }
    if (want("nicholson")) reports.push_back(nicholson_report({0, 1, 2, 3}, default_nicholson_grid(), thr(1e-6)));
    if (want("combinatorial")) reports.push_back(combinatorial_report(10, thr(0.0)));
    if (want("ode")) reports.push_back(ode_report({0, 1, 2, 3}, 1.7, {0.5, 1.0, 2.5, 3.5}, thr(1e-4)));
    emit_reports("identities", o, reports, out);
    return all_pass(reports) ? 0 : 1;
}

inline int cmd_bessel(const CliOptions& o, std::ostream& out) {
    const Order a(o.alpha);
    std::ofstream file;
    std::ostream& dst = open_out(o, file, out);
    dst << std::setprecision(17);
    if (o.zeros > 0) {
        dst << "k,zero\n";
        const auto z = bessel_zeros(a, o.zeros);
        for (std::size_t k = 0; k < z.size(); ++k) dst << k + 1 << ',' << z[k] << '\n';
        return 0;
    }
    if (o.points < 1 || !(o.x_max > 0.0)) throw std::invalid_argument("--points and --x-max must be positive");
    dst << "x,J,Y,j,y\n";
    for (int i = 1; i <= o.points; ++i) {
        const double x = o.x_max * i / o.points;
        dst << x << ',' << bessel_j(a, x) << ',' << bessel_y(a, x) << ',' << normalized_j(a, x) << ','
            << normalized_y(a, x) << '\n';
    }
    return 0;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliOptions o;
    CLI::App app{"Spherical mean transform: forward data, range conditions and identity checks", "smt-cli"};
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
    app.require_subcommand(1);
    app.add_option("--n", o.n, "even spatial dimension");
    app.add_option("--m", o.m, "spherical harmonic degree");
    app.add_option("--profile", o.profile, "radial:rho=..,amp=.. | annular:center=..,width=..,amp=.. | zero | shifted:...")
        ->multi_option_policy(CLI::MultiOptionPolicy::Join)
        ->delimiter(',');
    app.add_option("--csv", o.csv, "sampled data g(t) with header t,value");
    app.add_option("--s-grid", o.s_grid, "cheb:N[:lo:hi], lin:N:lo:hi or comma list")
        ->multi_option_policy(CLI::MultiOptionPolicy::Join)
        ->delimiter(',');
    app.add_option("--lambda-grid", o.lambda_grid, "lambda values for the cross-product identity")
        ->multi_option_policy(CLI::MultiOptionPolicy::Join)
        ->delimiter(',');
    app.add_option("--only", o.only, "identity subset: elliptic, quartic, cross-product, nicholson, combinatorial, ode");
    app.add_option("--threshold", o.threshold, "override every pass threshold");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--out", o.out, "output file (JSON for reports, CSV for tables)");
    app.add_option("--points", o.points, "rows in forward and bessel tables");
    app.add_option("--mc-samples", o.mc_samples, "Monte Carlo samples per forward row (0 disables)");
    app.add_option("--alpha", o.alpha, "Bessel order for the bessel subcommand");
    app.add_option("--zeros", o.zeros, "list this many positive zeros of j_alpha");
    app.add_option("--x-max", o.x_max, "upper end of the bessel table");
    app.add_option("--vanishing", o.vanishing, "number of Bessel zeros in the vanishing test");
    app.add_option("--threads", o.threads, "worker threads for grid sweeps");
    auto* forward = app.add_subcommand("forward", "tabulate t, g(t), h(t) for a radial source");
    auto* range = app.add_subcommand("range-check", "range residual sweep plus the vanishing test");
    auto* ident = app.add_subcommand("identities", "certify the supporting identities");
    auto* bessel = app.add_subcommand("bessel", "tabulate Bessel functions or their zeros");
    for (auto* sub : {forward, range, ident, bessel}) sub->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        if (forward->parsed()) return detail::cmd_forward(o, out);
        if (range->parsed()) return detail::cmd_range_check(o, out);
        if (ident->parsed()) return detail::cmd_identities(o, out);
        return detail::cmd_bessel(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace smt
