// SPDX-License-Identifier: Apache-2.0
//
// Run orchestration shared by the CLI and the test suites: single-point
// evaluation, parameter sweeps, figure presets, and the JSON/CSV record
// formats. Every output embeds the seed and the fully resolved config so a
// row can be reproduced from the file alone.
#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thzcov/analysis.hpp"
#include "thzcov/config.hpp"
#include "thzcov/montecarlo.hpp"
#include "thzcov/version.hpp"

namespace thzcov {

enum class RunMode { analytic, mc, both };

inline const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::analytic: return "analytic";
        case RunMode::mc: return "mc";
        default: return "both";
    }
}

struct RunOptions {
    RunMode mode = RunMode::both;
    std::uint64_t seed = 1;
    std::int64_t realizations = 100000;
    int threads = 0;
    McMode mc_mode = McMode::distribution;
    QuadratureOptions quad;
};

/// Serialize a double with full round-trip precision; CSV cells use this.
inline std::string format_g17(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline nlohmann::json to_json(const McEstimate& e) {
    return {{"value", e.value}, {"std_error", e.std_error}, {"n", e.n}};
}

inline nlohmann::json to_json(const AssociationBreakdown& a) {
    return {{"direct", a.direct}, {"ris", a.ris}, {"composite", a.composite}, {"none", a.none}};
}

inline nlohmann::json to_json(const CoverageResult& c) {
    return {{"total", c.total},
            {"direct", c.contrib_direct},
            {"ris", c.contrib_ris},
            {"composite", c.contrib_composite},
            {"quad_error_estimate", c.quad_error_estimate},
            {"evaluations", c.evaluations}};
}

/// Evaluate one scenario with the requested engines and return the full
/// machine-readable record.
inline nlohmann::json run_point(const NetworkConfig& cfg, const RunOptions& opts) {
    nlohmann::json out;
    out["tool"] = "thzcov";
    out["version"] = version_string;
    out["seed"] = opts.seed;
    out["scenario"] = to_string(cfg.regime);
    out["config"] = to_json(cfg);

    if (opts.mode != RunMode::mc) {
        out["analytic"] = to_json(coverage_auto(cfg, opts.quad));
        out["association_analytic"] = to_json(association_mass(cfg));
    }
    if (opts.mode != RunMode::analytic) {
        const auto mc = estimate(cfg, opts.realizations, opts.mc_mode, opts.seed, opts.threads);
        nlohmann::json j;
        j["mode"] = opts.mc_mode == McMode::distribution ? "distribution" : "full_channel";
        j["coverage"] = to_json(mc.coverage);
        j["association"] = {{"direct", to_json(mc.association.direct)},
                            {"ris", to_json(mc.association.ris)},
                            {"composite", to_json(mc.association.composite)},
                            {"none", to_json(mc.association.none)}};
        out["mc"] = j;
    }
    return out;
}

/// Overwrite one scalar config field and re-validate. Accepts the "_db"
/// spelling for tau and the gains, mirroring the config-file convention.
inline NetworkConfig apply_param(NetworkConfig cfg, const std::string& name, double value) {
    static const std::map<std::string, double NetworkConfig::*> fields = {
        {"lambda_a", &NetworkConfig::lambda_a}, {"lambda_b", &NetworkConfig::lambda_b},
        {"radius", &NetworkConfig::radius},     {"h_a", &NetworkConfig::h_a},
        {"h_u", &NetworkConfig::h_u},           {"h_r", &NetworkConfig::h_r},
        {"h_b", &NetworkConfig::h_b},           {"r_b", &NetworkConfig::r_b},
        {"v0", &NetworkConfig::v0},             {"ue_offset", &NetworkConfig::ue_offset},
        {"p_a", &NetworkConfig::p_a},           {"freq", &NetworkConfig::freq},
        {"k_abs", &NetworkConfig::k_abs},       {"g_a", &NetworkConfig::g_a},
        {"g_u", &NetworkConfig::g_u},           {"g_ris", &NetworkConfig::g_ris},
        {"n_elements", &NetworkConfig::n_elements},
        {"l_x", &NetworkConfig::l_x},           {"l_y", &NetworkConfig::l_y},
        {"tau", &NetworkConfig::tau}};

    std::string key = name;
    double v = value;
    if (key.size() > 3 && key.ends_with("_db")) {
        key = key.substr(0, key.size() - 3);
        if (key != "tau" && key != "g_a" && key != "g_u" && key != "g_ris") {
            throw ConfigError(ConfigError::Kind::bad_value,
                              "'" + name + "' is not a dB-valued parameter");
        }
        v = std::pow(10.0, value / 10.0);
    }
    const auto it = fields.find(key);
    if (it == fields.end()) {
        throw ConfigError(ConfigError::Kind::bad_value,
                          "unknown sweep parameter '" + name + "'");
    }
    cfg.*(it->second) = v;
    return finalize(cfg);
}

struct SweepSpec {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    bool log_spacing = false;
    RunOptions run;
};

inline std::vector<double> sweep_grid(const SweepSpec& spec) {
    if (spec.steps < 2) {
        throw ConfigError(ConfigError::Kind::bad_value, "sweep needs at least 2 steps");
    }
    if (!(spec.from < spec.to)) {
        throw ConfigError(ConfigError::Kind::bad_value, "sweep requires from < to");
    }
    if (spec.log_spacing && !(spec.from > 0.0)) {
        throw ConfigError(ConfigError::Kind::bad_value, "log spacing requires from > 0");
    }
    std::vector<double> grid(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        const double t = static_cast<double>(i) / (spec.steps - 1);
        grid[static_cast<std::size_t>(i)] =
            spec.log_spacing
                ? std::exp(std::log(spec.from) + t * (std::log(spec.to) - std::log(spec.from)))
                : spec.from + t * (spec.to - spec.from);
    }
    return grid;
}

struct SweepPoint {
    double value = 0.0;
    std::string scenario;
    std::string error;
    std::optional<CoverageResult> analytic;
    std::optional<AssociationBreakdown> assoc_analytic;
    std::optional<McRunResult> mc;
};

/// Evaluate the sweep grid point by point. Per-point failures are recorded
/// in the point's error field and the sweep continues.
inline std::vector<SweepPoint> run_sweep(const NetworkConfig& base, const SweepSpec& spec) {
    const auto grid = sweep_grid(spec);
    std::vector<SweepPoint> points(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepPoint& pt = points[i];
        pt.value = grid[i];
        try {
            const NetworkConfig cfg = apply_param(base, spec.param, grid[i]);
            pt.scenario = to_string(cfg.regime);
            if (spec.run.mode != RunMode::mc) {
                pt.analytic = coverage_auto(cfg, spec.run.quad);
                pt.assoc_analytic = association_mass(cfg);
            }
            if (spec.run.mode != RunMode::analytic) {
                pt.mc = estimate(cfg, spec.run.realizations, spec.run.mc_mode, spec.run.seed,
                                 spec.run.threads);
            }
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
    }
    return points;
}

inline const char* sweep_csv_header() {
    return "param,value,scenario,cp_analytic,cp_analytic_direct,cp_analytic_ris,"
           "cp_analytic_composite,cp_analytic_err,cp_mc,cp_mc_stderr,assoc_direct,assoc_ris,"
           "assoc_composite,assoc_none,error";
}

inline std::string sweep_to_csv(const NetworkConfig& base, const SweepSpec& spec,
                                const std::vector<SweepPoint>& points) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::string out;
    out += "# thzcov " + std::string(version_string) + " sweep\n";
    out += "# seed: " + std::to_string(spec.run.seed) + "\n";
    out += "# realizations: " + std::to_string(spec.run.realizations) + "\n";
    out += "# mode: " + std::string(to_string(spec.run.mode)) + "\n";
    out += "# config: " + to_json(base).dump() + "\n";
    out += sweep_csv_header();
    out += "\n";
    for (const auto& pt : points) {
        const bool an = pt.analytic.has_value();
        const bool mc = pt.mc.has_value();
        const AssociationBreakdown assoc =
            pt.assoc_analytic.has_value()
                ? *pt.assoc_analytic
                : (mc ? AssociationBreakdown{pt.mc->association.direct.value,
                                             pt.mc->association.ris.value,
                                             pt.mc->association.composite.value,
                                             pt.mc->association.none.value}
                      : AssociationBreakdown{nan, nan, nan, nan});
        out += spec.param + ",";
        out += format_g17(pt.value) + ",";
        out += pt.scenario + ",";
        out += format_g17(an ? pt.analytic->total : nan) + ",";
        out += format_g17(an ? pt.analytic->contrib_direct : nan) + ",";
        out += format_g17(an ? pt.analytic->contrib_ris : nan) + ",";
        out += format_g17(an ? pt.analytic->contrib_composite : nan) + ",";
        out += format_g17(an ? pt.analytic->quad_error_estimate : nan) + ",";
        out += format_g17(mc ? pt.mc->coverage.value : nan) + ",";
        out += format_g17(mc ? pt.mc->coverage.std_error : nan) + ",";
        out += format_g17(assoc.direct) + ",";
        out += format_g17(assoc.ris) + ",";
        out += format_g17(assoc.composite) + ",";
        out += format_g17(assoc.none) + ",";
        out += pt.error + "\n";
    }
    return out;
}

/// Tabular result of a figure preset: named numeric columns, NaN for cells
/// the preset's engine selection leaves empty.
struct FigureResult {
    std::string name;
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    double at(std::size_t row, const std::string& column) const {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c] == column) return rows.at(row).at(c);
        }
        throw std::out_of_range("no column '" + column + "' in preset " + name);
    }

    std::string to_csv() const {
        std::string out;
        for (const auto& c : comments) out += "# " + c + "\n";
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out += columns[c];
            out += (c + 1 < columns.size()) ? "," : "\n";
        }
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out += format_g17(row[c]);
                out += (c + 1 < row.size()) ? "," : "\n";
            }
        }
        return out;
    }
};

/// Reproduction sweeps for the six report figures. Exact grids behind the
/// published plots are not part of the model; the presets document their own
/// grids and are meant for trend inspection.
inline FigureResult figure_preset(const std::string& name, const RunOptions& opts) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const NetworkConfig base = default_paper_config();
    FigureResult fig;
    fig.name = name;
    fig.comments = {"thzcov " + std::string(version_string) + " figure preset " + name,
                    "seed: " + std::to_string(opts.seed),
                    "realizations: " + std::to_string(opts.realizations),
                    "config: " + to_json(base).dump()};

    auto grid_lin = [](double a, double b, int n) {
        SweepSpec s;
        s.from = a;
        s.to = b;
        s.steps = n;
        return sweep_grid(s);
    };
    auto grid_log = [](double a, double b, int n) {
        SweepSpec s;
        s.from = a;
        s.to = b;
        s.steps = n;
        s.log_spacing = true;
        return sweep_grid(s);
    };

    if (name == "fig2") {
        // association probabilities vs blockage density, both engines
        fig.columns = {"lambda_b",
                       "assoc_direct_analytic", "assoc_ris_analytic",
                       "assoc_composite_analytic", "assoc_none_analytic",
                       "assoc_direct_mc", "assoc_ris_mc", "assoc_composite_mc", "assoc_none_mc"};
        for (double lb : grid_lin(0.0, 4.0, 17)) {
            const auto cfg = apply_param(base, "lambda_b", lb);
            const auto a = association_mass(cfg);
            const auto mc = estimate(cfg, opts.realizations, McMode::distribution, opts.seed,
                                     opts.threads);
            fig.rows.push_back({lb, a.direct, a.ris, a.composite, a.none,
                                mc.association.direct.value, mc.association.ris.value,
                                mc.association.composite.value, mc.association.none.value});
        }
    } else if (name == "fig3") {
        // coverage vs blockage density, both engines
        fig.columns = {"lambda_b", "cp_total_analytic", "cp_mc",
                       "cp_direct", "cp_ris", "cp_composite"};
        for (double lb : grid_lin(0.25, 4.0, 9)) {
            const auto cfg = apply_param(base, "lambda_b", lb);
            const auto cov = coverage(cfg, opts.quad);
            const auto mc = estimate(cfg, opts.realizations, McMode::distribution, opts.seed,
                                     opts.threads);
            fig.rows.push_back({lb, cov.total, mc.coverage.value, cov.contrib_direct,
                                cov.contrib_ris, cov.contrib_composite});
        }
    } else if (name == "fig4") {
        // coverage vs RIS-UE distance for three RIS heights, analytic
        fig.columns = {"h_r", "v0", "cp_total_analytic"};
        for (double hr : {1.8, 2.25, 2.7}) {
            for (double v : grid_lin(1.0, 8.0, 8)) {
                auto cfg = apply_param(base, "h_r", hr);
                cfg = apply_param(cfg, "v0", v);
                fig.rows.push_back({hr, v, coverage(cfg, opts.quad).total});
            }
        }
    } else if (name == "fig5") {
        // coverage vs AP density for three SIR thresholds, analytic
        fig.columns = {"tau_db", "lambda_a", "cp_total_analytic"};
        for (double tau_db : {-5.0, 2.0, 10.0}) {
            for (double la : grid_log(1e-2, 1e1, 13)) {
                auto cfg = apply_param(base, "tau_db", tau_db);
                cfg = apply_param(cfg, "lambda_a", la);
                fig.rows.push_back({tau_db, la, coverage(cfg, opts.quad).total});
            }
        }
    } else if (name == "fig6") {
        // coverage vs UE displacement, Monte-Carlo only (the closed forms
        // assume a centered UE)
        fig.columns = {"lambda_a", "ue_offset", "cp_mc", "cp_mc_stderr"};
        for (double la : {1.0, 2.0}) {
            for (double off : grid_lin(0.0, 0.95 * base.radius, 11)) {
                auto cfg = apply_param(base, "lambda_a", la);
                cfg = apply_param(cfg, "ue_offset", off);
                const auto mc = estimate(cfg, opts.realizations, McMode::distribution,
                                         opts.seed, opts.threads);
                fig.rows.push_back({la, off, mc.coverage.value, mc.coverage.std_error});
            }
        }
    } else if (name == "fig7") {
        // low-RIS deployment (h_r = 0.75 h_b) vs the default height, analytic
        fig.columns = {"lambda_b", "cp_low_ris", "cp_high_ris"};
        const double hr_low = 0.75 * base.h_b;
        for (double lb : grid_lin(0.5, 4.0, 8)) {
            auto low = apply_param(base, "h_r", hr_low);
            low = apply_param(low, "lambda_b", lb);
            const auto high = apply_param(base, "lambda_b", lb);
            fig.rows.push_back({lb, coverage_low_ris(low, opts.quad).total,
                                coverage(high, opts.quad).total});
        }
    } else {
        (void)nan;
        throw ConfigError(ConfigError::Kind::bad_value, "unknown figure preset '" + name + "'");
    }
    return fig;
}

}  // namespace thzcov
