// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "thzcov/errors.hpp"

namespace thzcov {

inline constexpr double speed_of_light = 299792458.0;  // m/s

/// Deployment regime of the RIS panel relative to the blockage height.
/// Low means the AP-RIS hop itself is subject to blockage.
enum class RisRegime { high, low };

inline const char* to_string(RisRegime r) {
    return r == RisRegime::high ? "high_ris" : "low_ris";
}

/// Complete, validated scenario description. Immutable after validation and
/// safe to share by const reference across threads.
///
/// Distances are meters, powers watts, gains and the SIR threshold linear.
struct NetworkConfig {
    // deployment geometry
    double lambda_a = 0.0;   ///< AP density, APs per m^2
    double lambda_b = 0.0;   ///< blockage density, blockages per m^2
    double radius = 0.0;     ///< service disk radius, m
    double h_a = 0.0;        ///< AP height, m
    double h_u = 0.0;        ///< UE height, m
    double h_r = 0.0;        ///< RIS height, m
    double h_b = 0.0;        ///< blockage height, m
    double r_b = 0.0;        ///< blockage cylinder radius, m
    double v0 = 0.0;         ///< 2D RIS-UE distance, m
    double ue_offset = 0.0;  ///< UE 2D displacement from disk center (Monte-Carlo only), m

    // radio
    double p_a = 0.0;                    ///< AP transmit power, W
    int n_antennas = 0;                  ///< antennas per AP
    std::vector<double> precoder_mags;   ///< per-antenna precoder magnitudes |f_j|
    double freq = 0.0;                   ///< carrier frequency, Hz
    double k_abs = 0.0;                  ///< molecular absorption coefficient, 1/m
    double g_a = 0.0;                    ///< AP antenna gain, linear
    double g_u = 0.0;                    ///< UE antenna gain, linear
    double g_ris = 1.0;                  ///< active-RIS extra gain, linear (1 = passive)

    // RIS panel
    double n_elements = 0.0;  ///< element count (real-valued; sweeps reach 1e14)
    double l_x = 0.0;         ///< element length, m
    double l_y = 0.0;         ///< element width, m

    double tau = 0.0;  ///< SIR threshold, linear

    // derived quantities, filled in by validate()
    double hhat_a = 0.0;     ///< h_a - h_u
    double hhat_b = 0.0;     ///< h_b - h_u
    double hhat_r = 0.0;     ///< h_r - h_u
    double beta_d = 0.0;     ///< direct-link blockage rate, 1/m
    double beta_r = 0.0;     ///< RIS-UE blockage rate, 1/m
    double beta_ar = 0.0;    ///< AP-RIS blockage rate (low-RIS regime), 1/m
    double sum_f_sq = 0.0;   ///< sum of |f_j|^2
    double sum_f_abs = 0.0;  ///< sum of |f_j|
    RisRegime regime = RisRegime::high;
};

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError(ConfigError::Kind::bad_value, "field '" + key + "' must be a number");
    }
    return v.get<double>();
}

/// Fetch a scalar that may be given either linearly or as "<key>_db".
inline double linear_or_db(const nlohmann::json& j, const std::string& key, bool& found) {
    const std::string db_key = key + "_db";
    const bool has_lin = j.contains(key);
    const bool has_db = j.contains(db_key);
    if (has_lin && has_db) {
        throw ConfigError(ConfigError::Kind::bad_value,
                          "both '" + key + "' and '" + db_key + "' given");
    }
    found = has_lin || has_db;
    if (has_lin) return require_number(j, key);
    if (has_db) return std::pow(10.0, require_number(j, db_key) / 10.0);
    return 0.0;
}

inline void require_positive(double v, const std::string& name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(ConfigError::Kind::non_positive_value,
                          "field '" + name + "' must be strictly positive");
    }
}

inline void require_non_negative(double v, const std::string& name) {
    if (v < 0.0 || !std::isfinite(v)) {
        throw ConfigError(ConfigError::Kind::non_positive_value,
                          "field '" + name + "' must be non-negative");
    }
}

}  // namespace detail

/// Recompute every derived quantity and check all invariants. Called by the
/// JSON loaders; call it again after editing fields directly (sweeps do).
inline NetworkConfig finalize(NetworkConfig cfg) {
    using detail::require_non_negative;
    using detail::require_positive;

    require_positive(cfg.lambda_a, "lambda_a");
    require_non_negative(cfg.lambda_b, "lambda_b");
    require_positive(cfg.radius, "radius");
    require_positive(cfg.h_a, "h_a");
    require_positive(cfg.h_u, "h_u");
    require_positive(cfg.h_r, "h_r");
    require_positive(cfg.h_b, "h_b");
    require_positive(cfg.r_b, "r_b");
    require_positive(cfg.v0, "v0");
    require_positive(cfg.p_a, "p_a");
    require_positive(cfg.freq, "freq");
    require_non_negative(cfg.k_abs, "k_abs");
    require_positive(cfg.g_a, "g_a");
    require_positive(cfg.g_u, "g_u");
    require_positive(cfg.g_ris, "g_ris");
    require_positive(cfg.n_elements, "n_elements");
    require_positive(cfg.tau, "tau");
    if (cfg.n_antennas < 1) {
        throw ConfigError(ConfigError::Kind::non_positive_value,
                          "field 'n_antennas' must be >= 1");
    }

    if (cfg.l_x == 0.0) cfg.l_x = speed_of_light / (2.0 * cfg.freq);
    if (cfg.l_y == 0.0) cfg.l_y = speed_of_light / (2.0 * cfg.freq);
    require_positive(cfg.l_x, "l_x");
    require_positive(cfg.l_y, "l_y");

    if (cfg.precoder_mags.empty()) {
        cfg.precoder_mags.assign(static_cast<size_t>(cfg.n_antennas), 1.0);
    }
    if (cfg.precoder_mags.size() != static_cast<size_t>(cfg.n_antennas)) {
        throw ConfigError(ConfigError::Kind::bad_value,
                          "'precoder_mags' must have one entry per antenna");
    }
    for (double m : cfg.precoder_mags) require_positive(m, "precoder_mags[j]");

    if (!(cfg.h_u < cfg.h_a)) {
        throw ConfigError(ConfigError::Kind::geometry_violation,
                          "UE height must be below AP height (h_u < h_a)");
    }
    if (!(cfg.h_u < cfg.h_r)) {
        throw ConfigError(ConfigError::Kind::geometry_violation,
                          "UE height must be below RIS height (h_u < h_r)");
    }
    require_non_negative(cfg.ue_offset, "ue_offset");
    if (!(cfg.ue_offset < cfg.radius)) {
        throw ConfigError(ConfigError::Kind::offset_out_of_disk,
                          "ue_offset must be smaller than the disk radius");
    }

    // heights with respect to the UE plane (h_u = 0)
    cfg.hhat_a = cfg.h_a - cfg.h_u;
    cfg.hhat_b = cfg.h_b - cfg.h_u;
    cfg.hhat_r = cfg.h_r - cfg.h_u;

    cfg.beta_d = 2.0 * cfg.lambda_b * cfg.r_b * std::abs(cfg.hhat_b / cfg.hhat_a);
    cfg.beta_r = 2.0 * cfg.lambda_b * cfg.r_b * std::abs(cfg.hhat_b / cfg.hhat_r);
    cfg.beta_ar =
        2.0 * cfg.lambda_b * cfg.r_b * std::abs((cfg.h_b - cfg.h_r) / (cfg.h_a - cfg.h_r));

    cfg.sum_f_sq = 0.0;
    cfg.sum_f_abs = 0.0;
    for (double m : cfg.precoder_mags) {
        cfg.sum_f_sq += m * m;
        cfg.sum_f_abs += m;
    }

    // h_r == h_b counts as low-RIS; beta_ar is then 0 and the low-RIS
    // formulas reduce continuously to the high-RIS ones.
    cfg.regime = (cfg.h_r <= cfg.h_b) ? RisRegime::low : RisRegime::high;
    return cfg;
}

/// Validate a raw JSON parameter map. Unknown keys are an error so typos do
/// not silently fall back to defaults. Gains and tau accept a "_db" suffix.
inline NetworkConfig validate(const nlohmann::json& raw) {
    if (!raw.is_object()) {
        throw ConfigError(ConfigError::Kind::bad_value, "config must be a JSON object");
    }

    static const std::set<std::string> known = {
        "lambda_a", "lambda_b", "radius", "h_a", "h_u", "h_r", "h_b", "r_b", "v0",
        "ue_offset", "p_a", "n_antennas", "precoder_mags", "freq", "k_abs",
        "g_a", "g_a_db", "g_u", "g_u_db", "g_ris", "g_ris_db",
        "n_elements", "l_x", "l_y", "tau", "tau_db"};
    for (const auto& item : raw.items()) {
        if (!known.count(item.key())) {
            throw ConfigError(ConfigError::Kind::unknown_key,
                              "unknown config key '" + item.key() + "'");
        }
    }

    auto need = [&](const char* key) {
        if (!raw.contains(key)) {
            throw ConfigError(ConfigError::Kind::missing_field,
                              std::string("missing required field '") + key + "'");
        }
        return detail::require_number(raw, key);
    };

    NetworkConfig cfg;
    cfg.lambda_a = need("lambda_a");
    cfg.lambda_b = need("lambda_b");
    cfg.radius = need("radius");
    cfg.h_a = need("h_a");
    cfg.h_u = need("h_u");
    cfg.h_r = need("h_r");
    cfg.h_b = need("h_b");
    cfg.r_b = need("r_b");
    cfg.v0 = need("v0");
    cfg.p_a = need("p_a");
    cfg.freq = need("freq");
    cfg.k_abs = need("k_abs");
    cfg.n_elements = need("n_elements");

    if (!raw.contains("n_antennas") || !raw.at("n_antennas").is_number_integer()) {
        throw ConfigError(ConfigError::Kind::missing_field,
                          "missing or non-integer field 'n_antennas'");
    }
    cfg.n_antennas = raw.at("n_antennas").get<int>();

    bool found = false;
    cfg.g_a = detail::linear_or_db(raw, "g_a", found);
    if (!found) throw ConfigError(ConfigError::Kind::missing_field, "missing field 'g_a'");
    cfg.g_u = detail::linear_or_db(raw, "g_u", found);
    if (!found) throw ConfigError(ConfigError::Kind::missing_field, "missing field 'g_u'");
    cfg.tau = detail::linear_or_db(raw, "tau", found);
    if (!found) throw ConfigError(ConfigError::Kind::missing_field, "missing field 'tau'");
    cfg.g_ris = detail::linear_or_db(raw, "g_ris", found);
    if (!found) cfg.g_ris = 1.0;

    cfg.ue_offset = raw.contains("ue_offset") ? detail::require_number(raw, "ue_offset") : 0.0;
    cfg.l_x = raw.contains("l_x") ? detail::require_number(raw, "l_x") : 0.0;
    cfg.l_y = raw.contains("l_y") ? detail::require_number(raw, "l_y") : 0.0;

    if (raw.contains("precoder_mags")) {
        const auto& arr = raw.at("precoder_mags");
        if (!arr.is_array()) {
            throw ConfigError(ConfigError::Kind::bad_value, "'precoder_mags' must be an array");
        }
        for (const auto& m : arr) {
            if (!m.is_number()) {
                throw ConfigError(ConfigError::Kind::bad_value,
                                  "'precoder_mags' entries must be numbers");
            }
            cfg.precoder_mags.push_back(m.get<double>());
        }
    }

    return finalize(cfg);
}

/// Serialize back to the JSON schema accepted by validate(). Gains and tau
/// are written linearly.
inline nlohmann::json to_json(const NetworkConfig& cfg) {
    nlohmann::json j;
    j["lambda_a"] = cfg.lambda_a;
    j["lambda_b"] = cfg.lambda_b;
    j["radius"] = cfg.radius;
    j["h_a"] = cfg.h_a;
    j["h_u"] = cfg.h_u;
    j["h_r"] = cfg.h_r;
    j["h_b"] = cfg.h_b;
    j["r_b"] = cfg.r_b;
    j["v0"] = cfg.v0;
    j["ue_offset"] = cfg.ue_offset;
    j["p_a"] = cfg.p_a;
    j["n_antennas"] = cfg.n_antennas;
    j["precoder_mags"] = cfg.precoder_mags;
    j["freq"] = cfg.freq;
    j["k_abs"] = cfg.k_abs;
    j["g_a"] = cfg.g_a;
    j["g_u"] = cfg.g_u;
    j["g_ris"] = cfg.g_ris;
    j["n_elements"] = cfg.n_elements;
    j["l_x"] = cfg.l_x;
    j["l_y"] = cfg.l_y;
    j["tau"] = cfg.tau;
    return j;
}

/// The baseline indoor scenario used throughout: 1 mW 10-antenna APs at
/// 0.3 THz, a 2.25 m RIS panel with 1e13 half-wavelength elements, 30 dB
/// antenna gains, 2 dB SIR threshold, blockage field of 1.63 m cylinders.
inline NetworkConfig default_paper_config() {
    nlohmann::json j;
    j["lambda_a"] = 1.0;
    j["lambda_b"] = 2.0;
    j["radius"] = std::sqrt(140.0);
    j["h_a"] = 3.0;
    j["h_u"] = 1.0;
    j["h_r"] = 2.25;
    j["h_b"] = 1.63;
    j["r_b"] = 0.22;
    j["v0"] = std::sqrt(2.0);
    j["p_a"] = 1e-3;
    j["n_antennas"] = 10;
    j["freq"] = 3e11;
    j["k_abs"] = 0.075;
    j["g_a_db"] = 30.0;
    j["g_u_db"] = 30.0;
    j["n_elements"] = 1e13;
    j["tau_db"] = 2.0;
    return validate(j);
}

inline NetworkConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(ConfigError::Kind::bad_value, "cannot open config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(ConfigError::Kind::bad_value,
                          "malformed JSON in '" + path + "': " + e.what());
    }
    return validate(j);
}

}  // namespace thzcov
