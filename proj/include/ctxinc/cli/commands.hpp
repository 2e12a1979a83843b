// Copyright 2026 The ctxinc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommand bodies. They write to strings rather than streams so tests can
// run them in-process and compare outputs byte for byte.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ctxinc/cli/scenario.hpp"
#include "ctxinc/error.hpp"
#include "ctxinc/scenarios.hpp"
#include "ctxinc/verify.hpp"
#include "json.hpp"

namespace ctxinc::cli {

struct CommandResult {
    int status = 0;
    std::string out;
    std::string err;
};

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Fixed six decimal places; negative zero prints as zero.
inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

inline double display_units(double nats, bool bits) { return bits ? nats / std::log(2.0) : nats; }

/// Rounded to six decimals so JSON output matches the text output.
inline double rounded6(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;
}

// ---------------------------------------------------------------------------

struct Example1Options {
    bool json = false;
    bool bits = false;
};

inline CommandResult cmd_example1(const Example1Options &opt) {
    const Example1Result r = run_example1();
    const char *units = opt.bits ? "bits" : "nats";
    CommandResult res;
    if (opt.json) {
        json j;
        j["units"] = units;
        j["old_avg"] = rounded6(display_units(r.old_avg, opt.bits));
        j["new_avg"] = rounded6(display_units(r.new_avg, opt.bits));
        j["contexts"] = json::array();
        for (const auto &e : r.entries) {
            j["contexts"].push_back({{"x", std::string(1, e.x_axis)},
                                     {"y", std::string(1, e.y_axis)},
                                     {"old_ipc", rounded6(display_units(e.old_value, opt.bits))},
                                     {"ipc_modified", rounded6(display_units(e.new_value, opt.bits))}});
        }
        res.out = j.dump(2) + "\n";
        return res;
    }
    std::string s = "state: I/2, X and Y drawn uniformly from {sigma_z, sigma_x}\n";
    s += "units: " + std::string(units) + "\n";
    s += "X        Y        old_ipc    ipc_modified\n";
    for (const auto &e : r.entries) {
        char line[128];
        std::snprintf(line, sizeof line, "sigma_%c  sigma_%c  %-9s  %s\n", e.x_axis, e.y_axis,
                      fixed6(display_units(e.old_value, opt.bits)).c_str(),
                      fixed6(display_units(e.new_value, opt.bits)).c_str());
        s += line;
    }
    s += "old_avg = " + fixed6(display_units(r.old_avg, opt.bits)) + "\n";
    s += "new_avg = " + fixed6(display_units(r.new_avg, opt.bits)) + "\n";
    res.out = s;
    return res;
}

// ---------------------------------------------------------------------------

struct Example2Options {
    double alpha = 0.25;
    double p_min = 0.5;
    double p_max = 1.0;
    std::size_t p_steps = 101;
    std::string basis = "y";
    std::string out_path;  // empty: CSV to stdout
    bool bits = false;
};

inline const char *kExample2Header =
    "p,concurrence,mutual_info,leak_no_mem,leak_with_mem,leak_diff,concurrence_norm,mutual_info_norm,leak_diff_norm";

inline std::string example2_csv(const Example2Result &r, bool bits) {
    std::string s = std::string(kExample2Header) + "\n";
    for (const auto &row : r.rows) {
        const double vals[] = {row.p,
                               row.concurrence,
                               display_units(row.mutual_info, bits),
                               display_units(row.leak_no_mem, bits),
                               display_units(row.leak_with_mem, bits),
                               display_units(row.leak_difference, bits),
                               row.concurrence_norm,
                               row.mutual_info_norm,
                               row.leak_difference_norm};
        for (std::size_t k = 0; k < std::size(vals); ++k) {
            if (k) s += ',';
            s += fixed6(vals[k]);
        }
        s += '\n';
    }
    return s;
}

inline CommandResult cmd_example2(const Example2Options &opt) {
    CommandResult res;
    auto usage = [&](const std::string &msg) {
        res.status = kExitUsage;
        res.err = "usage error: " + msg + "\n";
        return res;
    };
    if (!(opt.p_min >= 0.5)) return usage("--p-min must be at least 0.5 (alpha' is negative below p = 1/2)");
    if (!(opt.p_max <= 1.0)) return usage("--p-max must be at most 1");
    if (!(opt.p_min <= opt.p_max)) return usage("--p-min must not exceed --p-max");
    if (opt.p_steps < 1) return usage("--p-steps must be at least 1");
    if (!(opt.alpha >= 0.0 && opt.alpha <= 1.0)) return usage("--alpha must lie in [0, 1]");
    Example2Config cfg;
    cfg.alpha = opt.alpha;
    if (opt.basis == "x") cfg.eigenbasis = QubitBasis::sigma_x;
    else if (opt.basis == "y") cfg.eigenbasis = QubitBasis::sigma_y;
    else if (opt.basis == "z") cfg.eigenbasis = QubitBasis::sigma_z;
    else return usage("--basis must be x, y or z");
    cfg.p_grid = uniform_grid(opt.p_min, opt.p_max, opt.p_steps);

    Example2Result r;
    MonotonicityReport mono;
    try {
        r = run_example2(cfg);
        mono = probe_conjecture(cfg);
    } catch (const Error &e) {
        return usage(e.what());
    }
    const std::string csv = example2_csv(r, opt.bits);

    std::string summary;
    summary += "rows: " + std::to_string(r.rows.size()) + "\n";
    summary += "concurrence zero crossing p* = " + fixed6(concurrence_zero_crossing(opt.alpha)) + "\n";
    summary += std::string("monotone along p: concurrence ") + (mono.concurrence_nondecreasing ? "yes" : "no") +
               ", mutual_info " + (mono.mutual_info_nondecreasing ? "yes" : "no") + ", leak_diff " +
               (mono.leak_difference_nondecreasing ? "yes" : "no") + "\n";
    for (auto [flag, name] : {std::pair{r.concurrence_unnormalized, "concurrence"},
                              std::pair{r.mutual_info_unnormalized, "mutual_info"},
                              std::pair{r.leak_difference_unnormalized, "leak_diff"}}) {
        if (flag) summary += "note: " + std::string(name) + " is zero on the whole grid and left unnormalized\n";
    }

    if (opt.out_path.empty()) {
        res.out = csv;
        res.err = summary;
        return res;
    }
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) {
        res.status = kExitFailure;
        res.err = "error: cannot write '" + opt.out_path + "'\n";
        return res;
    }
    f << csv;
    res.out = "wrote " + opt.out_path + "\n" + summary;
    return res;
}

// ---------------------------------------------------------------------------

struct RunOptions {
    std::string path;
    bool json = false;
    bool bits = false;
};

inline CommandResult cmd_run(const RunOptions &opt) {
    CommandResult res;
    Scenario s;
    try {
        s = load_scenario(opt.path);
    } catch (const Error &e) {
        res.status = kExitUsage;
        res.err = opt.path + ": " + e.what() + "\n";
        return res;
    }
    ScenarioReport rep;
    try {
        rep = evaluate(s);
    } catch (const Error &e) {
        res.status = kExitFailure;
        res.err = opt.path + ": " + e.what() + "\n";
        return res;
    }
    const char *units = opt.bits ? "bits" : "nats";
    if (opt.json) {
        json j;
        j["scenario"] = s.name;
        j["units"] = units;
        j["values"] = json::object();
        for (const auto &v : rep.values) j["values"][v.key] = rounded6(display_units(v.value, opt.bits));
        j["notes"] = rep.notes;
        res.out = j.dump(2) + "\n";
        return res;
    }
    std::string out;
    if (!s.name.empty()) out += "scenario: " + s.name + "\n";
    out += "units: " + std::string(units) + "\n";
    for (const auto &v : rep.values) out += v.key + " = " + fixed6(display_units(v.value, opt.bits)) + "\n";
    for (const auto &n : rep.notes) out += "note: " + n + "\n";
    res.out = out;
    return res;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    std::string suite = "all";
};

inline CommandResult cmd_verify(const VerifyOptions &opt) {
    CommandResult res;
    std::vector<SuiteResult> results;
    try {
        results = run_verify(opt.suite, opt.seed, opt.trials);
    } catch (const Error &e) {
        res.status = kExitUsage;
        std::string names;
        for (const auto &s : verify_suites()) names += " " + s.name;
        res.err = std::string("usage error: ") + e.what() + "; suites: all" + names + "\n";
        return res;
    }
    std::string out = "seed " + std::to_string(opt.seed) + ", trials " + std::to_string(opt.trials) + "\n";
    out += "suite                 max_violation  tolerance  result\n";
    bool all = true;
    for (const auto &r : results) {
        char line[160];
        std::snprintf(line, sizeof line, "%-20s  %.6e   %.0e      %s\n", r.name.c_str(), r.max_violation,
                      r.tolerance, r.passed ? "PASS" : "FAIL");
        out += line;
        all = all && r.passed;
    }
    out += all ? "all suites passed\n" : "some suites FAILED\n";
    res.out = out;
    res.status = all ? 0 : kExitFailure;
    return res;
}

}  // namespace ctxinc::cli
