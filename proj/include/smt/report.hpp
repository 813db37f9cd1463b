// Residual reports and deterministic parallel sweeps.
#pragma once

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace smt {

struct ResidualReport {
    std::string name;
    std::vector<std::string> param_names;
    std::vector<std::vector<double>> params;
    std::vector<double> residuals;
    std::vector<std::string> notes;
    std::map<std::string, double> metrics;
    double max_abs = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::map<std::string, std::string> config;
    std::uint64_t seed = 0;

    void add(std::vector<double> point, double residual) {
        params.push_back(std::move(point));
        residuals.push_back(residual);
    }

    // verdict = pass iff max_abs <= threshold; a NaN residual fails.
    void finalize(double thr) {
        threshold = thr;
        max_abs = 0.0;
        bool nan = false;
        for (double r : residuals) {
            if (std::isnan(r)) nan = true;
            else max_abs = std::max(max_abs, std::fabs(r));
        }
        if (nan) max_abs = std::numeric_limits<double>::infinity();
        pass = max_abs <= threshold;
    }

    std::string verdict() const { return pass ? "pass" : "fail"; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["name"] = name;
        j["param_names"] = param_names;
        j["params"] = params;
        nlohmann::json res = nlohmann::json::array();
        for (double r : residuals) res.push_back(std::isfinite(r) ? nlohmann::json(r) : nlohmann::json(nullptr));
        j["residuals"] = res;
        j["max_abs"] = std::isfinite(max_abs) ? nlohmann::json(max_abs) : nlohmann::json(nullptr);
        j["threshold"] = threshold;
        j["verdict"] = verdict();
        j["config"] = config;
        j["seed"] = seed;
        if (!notes.empty()) j["notes"] = notes;
        if (!metrics.empty()) j["metrics"] = metrics;
        return j;
    }

    // One row per grid point: parameter columns then the residual.
    void write_csv(std::ostream& out) const {
        for (const auto& p : param_names) out << p << ',';
        out << "residual\n";
        out.precision(17);
        for (std::size_t i = 0; i < residuals.size(); ++i) {
            for (double v : params[i]) out << v << ',';
            out << residuals[i] << '\n';
        }
    }
};

// Evaluates fn(0..count-1) on up to `threads` workers; results are stored by
// index, so output never depends on scheduling.
template <class R>
std::vector<R> parallel_map(std::size_t count, const std::function<R(std::size_t)>& fn, unsigned threads = 0) {
    std::vector<R> out(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
                next = count;
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace smt
