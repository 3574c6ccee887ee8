// SPDX-License-Identifier: Apache-2.0
//
// Per-link physics: blockage-driven LoS probabilities, THz pathlosses with
// molecular absorption, the signal-power distribution parameters, and the
// MGF of the through-RIS interference fading. Everything here is a pure
// function of the validated config and is safe for unrestricted parallel use.
//
// All pathloss and kappa computations carry a log-domain twin. The element
// counts in play (up to 1e14) push squared pathloss products through
// ~1e-26-scale intermediates, and the log path keeps sweeps well away from
// the double underflow cliff. The two paths agree to 12 significant digits
// wherever both are representable.
#pragma once

#include <cmath>

#include "thzcov/config.hpp"
#include "thzcov/quadrature.hpp"

namespace thzcov {

/// Geometry of one AP link as seen from the UE: r is the AP-UE 2D distance,
/// phi the AP azimuth measured from the UE-to-RIS axis, z the AP-RIS 2D
/// distance obtained from the cosine rule.
struct LinkGeometry {
    double r = 0.0;
    double z = 0.0;
    double phi = 0.0;
};

/// AP-RIS 2D distance for an AP at polar position (r, phi) around the UE,
/// with the RIS at distance v0 along phi = 0.
inline double ap_ris_distance(double r, double v0, double phi) {
    const double zz = r * r + v0 * v0 - 2.0 * r * v0 * std::cos(phi);
    return std::sqrt(std::max(zz, 0.0));
}

inline LinkGeometry make_link_geometry(const NetworkConfig& cfg, double r, double phi) {
    return LinkGeometry{r, ap_ris_distance(r, cfg.v0, phi), phi};
}

/// P[AP-UE link unobstructed] for an AP at 2D distance r.
inline double p_los_direct(const NetworkConfig& cfg, double r) {
    return std::exp(-cfg.beta_d * r);
}

/// P[RIS-UE link unobstructed].
inline double p_los_ris_ue(const NetworkConfig& cfg) {
    return std::exp(-cfg.beta_r * cfg.v0);
}

/// P[AP-RIS link unobstructed] for an AP at 2D distance z from the RIS.
/// In the high-RIS regime the panel clears every blockage and this is 1.
inline double p_los_ap_ris(const NetworkConfig& cfg, double z) {
    if (cfg.regime == RisRegime::high) return 1.0;
    return std::exp(-cfg.beta_ar * z);
}

/// log of the direct-link pathloss at AP-UE 2D distance r:
///   PL_D(r) = G_U G_A c^2 / (4 pi f)^2 * exp(-k_a d) / d^2,  d^2 = r^2 + hhat_a^2
inline double log_pathloss_direct(const NetworkConfig& cfg, double r) {
    const double d_sq = r * r + cfg.hhat_a * cfg.hhat_a;
    const double d = std::sqrt(d_sq);
    const double amp = speed_of_light / (4.0 * M_PI * cfg.freq);
    return std::log(cfg.g_u) + std::log(cfg.g_a) + 2.0 * std::log(amp) - cfg.k_abs * d -
           std::log(d_sq);
}

inline double pathloss_direct(const NetworkConfig& cfg, double r) {
    const double d_sq = r * r + cfg.hhat_a * cfg.hhat_a;
    const double d = std::sqrt(d_sq);
    const double amp = speed_of_light / (4.0 * M_PI * cfg.freq);
    return cfg.g_u * cfg.g_a * amp * amp * std::exp(-cfg.k_abs * d) / d_sq;
}

/// log of the cascaded AP-RIS-UE pathloss at AP-RIS 2D distance z. Both
/// absorption legs and the cos^2 incidence factor
///   F(theta) = dh^2 / (z^2 + dh^2),  dh = hhat_a - hhat_r
/// are included. The active-RIS gain g_ris multiplies this pathloss; it
/// therefore scales the RIS-routed signal and interference alike (the
/// amplification sits on the reflected path itself).
///
/// The v0 argument lets the Monte-Carlo engine price a displaced UE; the
/// default is the configured RIS-UE distance.
inline double log_pathloss_ris(const NetworkConfig& cfg, double z, double v0) {
    const double dh = cfg.hhat_a - cfg.hhat_r;
    const double hop1_sq = z * z + dh * dh;                // AP->RIS
    const double hop2_sq = v0 * v0 + cfg.hhat_r * cfg.hhat_r;  // RIS->UE
    const double area = cfg.l_x * cfg.l_y;
    return std::log(cfg.g_ris) + std::log(cfg.g_u) + std::log(cfg.g_a) + 2.0 * std::log(area) -
           2.0 * std::log(4.0 * M_PI) - cfg.k_abs * (std::sqrt(hop1_sq) + std::sqrt(hop2_sq)) +
           2.0 * std::log(std::abs(dh)) - 2.0 * std::log(hop1_sq) - std::log(hop2_sq);
}

inline double log_pathloss_ris(const NetworkConfig& cfg, double z) {
    return log_pathloss_ris(cfg, z, cfg.v0);
}

inline double pathloss_ris(const NetworkConfig& cfg, double z, double v0) {
    const double dh = cfg.hhat_a - cfg.hhat_r;
    const double hop1_sq = z * z + dh * dh;
    const double hop2_sq = v0 * v0 + cfg.hhat_r * cfg.hhat_r;
    const double area = cfg.l_x * cfg.l_y;
    const double incidence = dh * dh / hop1_sq;  // cos^2 of the AP incidence angle
    return cfg.g_ris * cfg.g_u * cfg.g_a * area * area / (16.0 * M_PI * M_PI) *
           std::exp(-cfg.k_abs * (std::sqrt(hop1_sq) + std::sqrt(hop2_sq))) * incidence /
           (hop1_sq * hop2_sq);
}

inline double pathloss_ris(const NetworkConfig& cfg, double z) {
    return pathloss_ris(cfg, z, cfg.v0);
}

/// Distribution parameters of the received signal powers and of the
/// through-RIS interference fading:
///  - the direct-link fading |h^T f|^2 is Exp(kappa_d),
///  - the full RIS-link power S_R is Exp(kappa_r(z0)),
///  - the full composite-link power S_C is Exp(kappa_c(r0, z0)),
///  - the through-RIS interference fading is noncentral chi^2_1(kappa_i)
///    built from the double-Rayleigh moments mu_b, sigma_b_sq.
struct SignalDistParams {
    double kappa_d = 0.0;
    double kappa_r = 0.0;
    double kappa_c = 0.0;
    double kappa_i = 0.0;
    double mu_b = 0.0;
    double sigma_b_sq = 0.0;
};

inline double kappa_d(const NetworkConfig& cfg) {
    return 1.0 / (2.0 * cfg.sum_f_sq * cfg.sum_f_sq);
}

inline double log_kappa_r(const NetworkConfig& cfg, double z0, double v0) {
    const double log_mean_amp =
        std::log(cfg.n_elements) + std::log(cfg.p_a) + log_pathloss_ris(cfg, z0, v0) +
        std::log(cfg.sum_f_sq);
    return -std::log(2.0) - 2.0 * log_mean_amp;
}

inline double kappa_r(const NetworkConfig& cfg, double z0, double v0) {
    return std::exp(log_kappa_r(cfg, z0, v0));
}

inline double kappa_r(const NetworkConfig& cfg, double z0) {
    return kappa_r(cfg, z0, cfg.v0);
}

inline double kappa_c(const NetworkConfig& cfg, double r0, double z0, double v0) {
    // N * PL_R and PL_D live on very different scales; combine in the log
    // domain before squaring.
    const double log_n_plr = std::log(cfg.n_elements) + log_pathloss_ris(cfg, z0, v0);
    const double log_sum = log_sum_exp({log_n_plr, log_pathloss_direct(cfg, r0)});
    return std::exp(-std::log(2.0) - 2.0 * (log_sum + std::log(cfg.sum_f_sq)));
}

inline double kappa_c(const NetworkConfig& cfg, double r0, double z0) {
    return kappa_c(cfg, r0, z0, cfg.v0);
}

inline double kappa_i(const NetworkConfig& cfg) {
    const double mu_b = M_PI / 2.0;
    const double sigma_b_sq = 4.0 * (1.0 - M_PI * M_PI / 16.0);
    return mu_b / (2.0 * cfg.sum_f_abs * sigma_b_sq);
}

inline SignalDistParams dist_params(const NetworkConfig& cfg, double r0, double z0, double v0) {
    SignalDistParams p;
    p.mu_b = M_PI / 2.0;
    p.sigma_b_sq = 4.0 * (1.0 - M_PI * M_PI / 16.0);
    p.kappa_d = kappa_d(cfg);
    p.kappa_r = kappa_r(cfg, z0, v0);
    p.kappa_c = kappa_c(cfg, r0, z0, v0);
    p.kappa_i = kappa_i(cfg);
    return p;
}

inline SignalDistParams dist_params(const NetworkConfig& cfg, double r0, double z0) {
    return dist_params(cfg, r0, z0, cfg.v0);
}

/// MGF factor of the noncentral chi^2_1 through-RIS interference fading:
///   Q(x) = (1 + 2x)^(-1/2) * exp(-kappa_i x / (1 + 2x)),  Q(0) = 1.
inline double mgf_q(double kappa_i, double x) {
    return std::exp(-0.5 * std::log1p(2.0 * x) - kappa_i * x / (1.0 + 2.0 * x));
}

/// 1 - Q(x) without cancellation for small x (the common case: one RIS
/// reflection attenuates an interferer by many orders of magnitude).
inline double one_minus_mgf_q(double kappa_i, double x) {
    return -std::expm1(-0.5 * std::log1p(2.0 * x) - kappa_i * x / (1.0 + 2.0 * x));
}

}  // namespace thzcov
