// SPDX-License-Identifier: Apache-2.0
//
// The stochastic twin of the analytical engine: samples the network model
// end to end (PPP of APs, Bernoulli blockage thinning per link, fading) and
// tallies empirical association and coverage frequencies.
//
// Blockage is probabilistic thinning with exactly the channel-module LoS
// probabilities, not geometric cylinder intersection, so the cross-engine
// comparison is sharp: both engines integrate the same stochastic model.
//
// Two fidelity modes:
//  - distribution: fading is drawn from the derived laws (exponential signal
//    powers, Exp(kappa_d) direct interference fading, noncentral chi^2_1
//    through-RIS fading),
//  - full_channel: every channel coefficient is drawn CN(0,1) and signal and
//    interference are computed from the raw array expressions, with the RIS
//    phase profile conjugating the RIS-UE channel phases. Capped at 1e4
//    elements and 64 antennas.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "thzcov/analysis.hpp"
#include "thzcov/channel.hpp"
#include "thzcov/config.hpp"
#include "thzcov/errors.hpp"
#include "thzcov/rng.hpp"

namespace thzcov {

enum class LinkScenario { direct, ris, composite, none };

enum class McMode { distribution, full_channel };

inline constexpr double full_channel_max_elements = 1e4;
inline constexpr int full_channel_max_antennas = 64;

/// Fixed 2D frame of one run: disk centered at the origin, RIS anchored at
/// azimuth 45 degrees and distance v0 from the disk center, UE displaced
/// along +x by ue_offset. With a centered UE this reduces to the analytical
/// geometry; with an offset the RIS stays put and the effective RIS-UE
/// distance changes accordingly.
struct McGeometry {
    double ue_x = 0.0;
    double ue_y = 0.0;
    double ris_x = 0.0;
    double ris_y = 0.0;
    double v0_eff = 0.0;
};

inline McGeometry mc_geometry(const NetworkConfig& cfg) {
    McGeometry g;
    g.ris_x = cfg.v0 * M_SQRT1_2;
    g.ris_y = cfg.v0 * M_SQRT1_2;
    g.ue_x = cfg.ue_offset;
    g.ue_y = 0.0;
    g.v0_eff = std::hypot(g.ris_x - g.ue_x, g.ris_y - g.ue_y);
    return g;
}

/// One complete draw of the network. Vectors are indexed by AP.
struct Realization {
    std::vector<double> x, y;          ///< AP positions in the disk
    std::vector<double> r;             ///< 2D distance UE -> AP
    std::vector<double> z;             ///< 2D distance RIS -> AP
    std::vector<std::uint8_t> direct_los;
    std::vector<std::uint8_t> ap_ris_los;  ///< only populated in the low-RIS regime
    bool ris_ue_los = false;
    std::int64_t serving = -1;  ///< nearest AP, -1 for an empty draw
    std::vector<double> fade_direct;  ///< Exp(kappa_d) draw per interfering LoS AP
    std::vector<double> fade_ris;     ///< noncentral chi^2_1 draw per through-RIS interferer
    double u_signal = 0.5;            ///< uniform behind the serving-link power draw
    PhiloxStream stream;  ///< stream continuation (full-channel fading starts here)

    std::size_t size() const { return x.size(); }
};

/// Association scenario of the serving AP from the drawn link states.
inline LinkScenario classify(const NetworkConfig& cfg, const Realization& real) {
    if (real.serving < 0) return LinkScenario::none;
    const auto s = static_cast<std::size_t>(real.serving);
    const bool direct_ok = real.direct_los[s] != 0;
    bool ris_ok = real.ris_ue_los;
    if (cfg.regime == RisRegime::low) {
        ris_ok = ris_ok && real.ap_ris_los[s] != 0;
    }
    if (direct_ok && ris_ok) return LinkScenario::composite;
    if (direct_ok) return LinkScenario::direct;
    if (ris_ok) return LinkScenario::ris;
    return LinkScenario::none;
}

/// Sample one realization into a reusable buffer. Draw order is fixed:
/// AP count, positions, RIS-UE flag, direct flags, AP-RIS flags (low-RIS),
/// signal uniform, then interference fading for the scenarios that use it.
inline void sample_realization_into(const NetworkConfig& cfg, const McGeometry& geom,
                                    PhiloxStream& rng, Realization& out,
                                    bool draw_distribution_fades = true) {
    const double mean = cfg.lambda_a * M_PI * cfg.radius * cfg.radius;
    const auto n = std::poisson_distribution<std::int64_t>(mean)(rng);

    out.x.clear();
    out.y.clear();
    out.r.clear();
    out.z.clear();
    out.x.reserve(n);
    out.y.reserve(n);
    out.r.reserve(n);
    out.z.reserve(n);
    for (std::int64_t i = 0; i < n; ++i) {
        const double rad = cfg.radius * std::sqrt(rng.u01());
        const double ang = 2.0 * M_PI * rng.u01();
        const double px = rad * std::cos(ang);
        const double py = rad * std::sin(ang);
        out.x.push_back(px);
        out.y.push_back(py);
        out.r.push_back(std::hypot(px - geom.ue_x, py - geom.ue_y));
        out.z.push_back(std::hypot(px - geom.ris_x, py - geom.ris_y));
    }

    out.ris_ue_los = rng.u01() < std::exp(-cfg.beta_r * geom.v0_eff);

    out.direct_los.resize(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.direct_los[i] = rng.u01() < std::exp(-cfg.beta_d * out.r[i]) ? 1 : 0;
    }
    out.ap_ris_los.clear();
    if (cfg.regime == RisRegime::low) {
        out.ap_ris_los.resize(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.ap_ris_los[i] = rng.u01() < std::exp(-cfg.beta_ar * out.z[i]) ? 1 : 0;
        }
    }

    out.serving = -1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out.serving < 0 || out.r[i] < out.r[static_cast<std::size_t>(out.serving)]) {
            out.serving = static_cast<std::int64_t>(i);
        }
    }

    out.u_signal = rng.u01();

    out.fade_direct.assign(out.size(), 0.0);
    out.fade_ris.assign(out.size(), 0.0);
    if (draw_distribution_fades && classify(cfg, out) != LinkScenario::none) {
        const double kd = kappa_d(cfg);
        const double sqrt_ki = std::sqrt(kappa_i(cfg));
        const bool low = cfg.regime == RisRegime::low;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (static_cast<std::int64_t>(i) == out.serving) continue;
            if (out.direct_los[i]) {
                out.fade_direct[i] = rng.exponential(kd);
            }
            if (out.ris_ue_los && (!low || out.ap_ris_los[i])) {
                const double zeta_root = rng.normal() + sqrt_ki;
                out.fade_ris[i] = zeta_root * zeta_root;
            }
        }
    }
    out.stream = rng;
}

inline Realization sample_realization(const NetworkConfig& cfg, PhiloxStream& rng) {
    Realization out;
    sample_realization_into(cfg, mc_geometry(cfg), rng, out);
    return out;
}

namespace detail {

inline std::complex<double> cn01(PhiloxStream& rng) {
    return {rng.normal() * M_SQRT1_2, rng.normal() * M_SQRT1_2};
}

// |h^T f|^2 with h entrywise CN(0,1).
inline double raw_direct_fading(const NetworkConfig& cfg, PhiloxStream& rng) {
    std::complex<double> amp = 0.0;
    for (double fj : cfg.precoder_mags) amp += fj * cn01(rng);
    return std::norm(amp);
}

// |w^T H f|^2 with H entrywise CN(0,1) and w the RIS combining row |g_i|
// left by the phase-conjugating panel profile.
inline double raw_ris_fading(const NetworkConfig& cfg, const std::vector<double>& w,
                             PhiloxStream& rng, std::complex<double>* amp_out = nullptr) {
    std::complex<double> amp = 0.0;
    for (double wi : w) {
        std::complex<double> row = 0.0;
        for (double fj : cfg.precoder_mags) row += fj * cn01(rng);
        amp += wi * row;
    }
    if (amp_out) *amp_out = amp;
    return std::norm(amp);
}

inline void require_full_channel(const NetworkConfig& cfg) {
    if (cfg.n_elements > full_channel_max_elements ||
        cfg.n_antennas > full_channel_max_antennas) {
        throw ModeUnavailableError(
            "full-channel mode requires n_elements <= 1e4 and n_antennas <= 64");
    }
}

}  // namespace detail

/// SIR of one realization. Returns 0 when the UE has no association and
/// +infinity when it is served but sees no interferer (the interference-
/// limited model has no noise floor, so such draws always count as covered).
inline double sir_sample(const NetworkConfig& cfg, const Realization& real,
                         McMode mode = McMode::distribution) {
    const LinkScenario scenario = classify(cfg, real);
    if (scenario == LinkScenario::none) return 0.0;

    const McGeometry geom = mc_geometry(cfg);
    const auto serving = static_cast<std::size_t>(real.serving);
    const double r0 = real.r[serving];
    const double z0 = real.z[serving];
    const bool low = cfg.regime == RisRegime::low;

    double signal = 0.0;
    double interference = 0.0;

    if (mode == McMode::distribution) {
        const auto params = dist_params(cfg, r0, z0, geom.v0_eff);
        const double unit_exp = -std::log(real.u_signal);
        switch (scenario) {
            case LinkScenario::direct:
                signal = cfg.p_a * pathloss_direct(cfg, r0) * unit_exp / params.kappa_d;
                break;
            case LinkScenario::ris:
                signal = unit_exp / params.kappa_r;
                break;
            default:
                signal = unit_exp / params.kappa_c;
                break;
        }
        for (std::size_t i = 0; i < real.size(); ++i) {
            if (i == serving) continue;
            if (real.direct_los[i]) {
                interference +=
                    cfg.p_a * pathloss_direct(cfg, real.r[i]) * real.fade_direct[i];
            }
            if (real.ris_ue_los && (!low || real.ap_ris_los[i])) {
                interference +=
                    cfg.p_a * pathloss_ris(cfg, real.z[i], geom.v0_eff) * real.fade_ris[i];
            }
        }
    } else {
        detail::require_full_channel(cfg);
        PhiloxStream rng = real.stream;
        const auto n_elements = static_cast<std::size_t>(cfg.n_elements);

        // one RIS-UE channel per realization; the panel conjugates its phases
        std::vector<double> w(n_elements);
        for (auto& wi : w) wi = std::abs(detail::cn01(rng));

        std::complex<double> amp_dir = 0.0;
        for (double fj : cfg.precoder_mags) amp_dir += fj * detail::cn01(rng);
        std::complex<double> amp_ris;
        detail::raw_ris_fading(cfg, w, rng, &amp_ris);

        const double pl_d = pathloss_direct(cfg, r0);
        const double pl_r = pathloss_ris(cfg, z0, geom.v0_eff);
        switch (scenario) {
            case LinkScenario::direct:
                signal = cfg.p_a * pl_d * std::norm(amp_dir);
                break;
            case LinkScenario::ris:
                signal = cfg.p_a * pl_r * std::norm(amp_ris);
                break;
            default:
                signal = cfg.p_a *
                         std::norm(std::sqrt(pl_d) * amp_dir + std::sqrt(pl_r) * amp_ris);
                break;
        }
        for (std::size_t i = 0; i < real.size(); ++i) {
            if (i == serving) continue;
            if (real.direct_los[i]) {
                interference += cfg.p_a * pathloss_direct(cfg, real.r[i]) *
                                detail::raw_direct_fading(cfg, rng);
            }
            if (real.ris_ue_los && (!low || real.ap_ris_los[i])) {
                interference += cfg.p_a * pathloss_ris(cfg, real.z[i], geom.v0_eff) *
                                detail::raw_ris_fading(cfg, w, rng);
            }
        }
    }

    if (interference == 0.0) return std::numeric_limits<double>::infinity();
    return signal / interference;
}

/// Empirical probability with its binomial standard error.
struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
};

struct McAssociation {
    McEstimate direct, ris, composite, none;
};

struct McRunResult {
    McEstimate coverage;
    McAssociation association;
};

namespace detail {

/// Fixed-size chunks dispatched to a small worker pool. Chunk boundaries do
/// not depend on the worker count, so per-chunk results reduce identically
/// no matter how the chunks were scheduled.
template <class ChunkFn>
void run_chunked(std::int64_t n, int threads, std::int64_t chunk_size, ChunkFn&& fn) {
    const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= n_chunks) break;
            const std::int64_t begin = c * chunk_size;
            const std::int64_t end = std::min(n, begin + chunk_size);
            fn(c, begin, end);
        }
    };
    threads = std::max(1, threads);
    if (threads == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

inline McEstimate make_probability_estimate(std::int64_t hits, std::int64_t n,
                                            std::uint64_t seed) {
    McEstimate e;
    e.n = n;
    e.seed = seed;
    e.value = n > 0 ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
    e.std_error = n > 0 ? std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n)) : 0.0;
    return e;
}

}  // namespace detail

/// Empirical coverage and association frequencies over n realizations.
/// Deterministic for fixed (cfg, n, seed): realization i always consumes
/// stream (seed, i) and tallies are integer counts.
inline McRunResult estimate(const NetworkConfig& cfg, std::int64_t n, McMode mode,
                            std::uint64_t seed, int threads = 0) {
    if (n < 1) {
        throw std::invalid_argument("estimate() needs at least one realization");
    }
    if (mode == McMode::full_channel) detail::require_full_channel(cfg);
    if (threads <= 0) {
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    const McGeometry geom = mc_geometry(cfg);

    constexpr std::int64_t chunk_size = 1024;
    const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
    struct Tally {
        std::int64_t covered = 0;
        std::int64_t scenario[4] = {0, 0, 0, 0};
    };
    std::vector<Tally> tallies(static_cast<std::size_t>(n_chunks));

    detail::run_chunked(n, threads, chunk_size, [&](std::int64_t c, std::int64_t begin,
                                                    std::int64_t end) {
        Realization real;
        Tally t;
        for (std::int64_t i = begin; i < end; ++i) {
            PhiloxStream rng(seed, static_cast<std::uint64_t>(i), 0);
            sample_realization_into(cfg, geom, rng, real, mode == McMode::distribution);
            const LinkScenario scenario = classify(cfg, real);
            t.scenario[static_cast<int>(scenario)] += 1;
            if (scenario != LinkScenario::none && sir_sample(cfg, real, mode) > cfg.tau) {
                t.covered += 1;
            }
        }
        tallies[static_cast<std::size_t>(c)] = t;
    });

    Tally total;
    for (const auto& t : tallies) {
        total.covered += t.covered;
        for (int k = 0; k < 4; ++k) total.scenario[k] += t.scenario[k];
    }

    McRunResult out;
    out.coverage = detail::make_probability_estimate(total.covered, n, seed);
    out.association.direct = detail::make_probability_estimate(
        total.scenario[static_cast<int>(LinkScenario::direct)], n, seed);
    out.association.ris = detail::make_probability_estimate(
        total.scenario[static_cast<int>(LinkScenario::ris)], n, seed);
    out.association.composite = detail::make_probability_estimate(
        total.scenario[static_cast<int>(LinkScenario::composite)], n, seed);
    out.association.none = detail::make_probability_estimate(
        total.scenario[static_cast<int>(LinkScenario::none)], n, seed);
    return out;
}

/// Mean of a bounded statistic with its sample standard error.
struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n = 0;
};

namespace detail {

template <class DrawFn>
MeanEstimate mc_mean(std::int64_t n, int threads, DrawFn&& draw) {
    if (threads <= 0) {
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    constexpr std::int64_t chunk_size = 1024;
    const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<double> sums(static_cast<std::size_t>(n_chunks), 0.0);
    std::vector<double> sq_sums(static_cast<std::size_t>(n_chunks), 0.0);
    run_chunked(n, threads, chunk_size,
                [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                    double s = 0.0, s2 = 0.0;
                    for (std::int64_t i = begin; i < end; ++i) {
                        const double v = draw(i);
                        s += v;
                        s2 += v * v;
                    }
                    sums[static_cast<std::size_t>(c)] = s;
                    sq_sums[static_cast<std::size_t>(c)] = s2;
                });
    double s = 0.0, s2 = 0.0;
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        s += sums[static_cast<std::size_t>(c)];
        s2 += sq_sums[static_cast<std::size_t>(c)];
    }
    MeanEstimate e;
    e.n = n;
    e.mean = s / static_cast<double>(n);
    const double var = std::max(0.0, (s2 - static_cast<double>(n) * e.mean * e.mean) /
                                         static_cast<double>(std::max<std::int64_t>(1, n - 1)));
    e.std_error = std::sqrt(var / static_cast<double>(n));
    return e;
}

// Radius of a point uniform (w.r.t. area) on the annulus [r0, R].
inline double annulus_radius(double r0, double radius, double u) {
    return std::sqrt(r0 * r0 + u * (radius * radius - r0 * r0));
}

}  // namespace detail

/// Monte-Carlo estimate of E[exp(-s I_D)] conditioned on the nearest AP at
/// distance r0: interferers are a PPP on the annulus thinned by the direct
/// LoS probability, each with Exp(kappa_d) fading. Oracle counterpart of
/// LaplaceEvaluator::direct.
inline MeanEstimate mc_laplace_direct(const NetworkConfig& cfg, double s, double r0,
                                      std::int64_t n, std::uint64_t seed, int threads = 0) {
    const double kd = kappa_d(cfg);
    const double area = M_PI * (cfg.radius * cfg.radius - r0 * r0);
    const double mean_count = cfg.lambda_a * std::max(0.0, area);
    return detail::mc_mean(n, threads, [&, kd, mean_count](std::int64_t i) {
        PhiloxStream rng(seed, static_cast<std::uint64_t>(i), 1);
        const auto m = std::poisson_distribution<std::int64_t>(mean_count)(rng);
        double interference = 0.0;
        for (std::int64_t k = 0; k < m; ++k) {
            const double r = detail::annulus_radius(r0, cfg.radius, rng.u01());
            if (rng.u01() < std::exp(-cfg.beta_d * r)) {
                interference += cfg.p_a * pathloss_direct(cfg, r) * rng.exponential(kd);
            }
        }
        return std::exp(-s * interference);
    });
}

/// Monte-Carlo estimate of E[exp(-s I_R)] (or E[exp(-s I'_R)] with
/// thinned = true) conditioned on the nearest AP at distance r0. Oracle
/// counterpart of LaplaceEvaluator::ris / ris_low.
inline MeanEstimate mc_laplace_ris(const NetworkConfig& cfg, double s, double r0, std::int64_t n,
                                   std::uint64_t seed, bool thinned = false, int threads = 0) {
    const double sqrt_ki = std::sqrt(kappa_i(cfg));
    const double area = M_PI * (cfg.radius * cfg.radius - r0 * r0);
    const double mean_count = cfg.lambda_a * std::max(0.0, area);
    return detail::mc_mean(n, threads, [&, sqrt_ki, mean_count](std::int64_t i) {
        PhiloxStream rng(seed, static_cast<std::uint64_t>(i), 2);
        const auto m = std::poisson_distribution<std::int64_t>(mean_count)(rng);
        double interference = 0.0;
        for (std::int64_t k = 0; k < m; ++k) {
            const double r = detail::annulus_radius(r0, cfg.radius, rng.u01());
            const double phi = 2.0 * M_PI * rng.u01();
            const double z = ap_ris_distance(r, cfg.v0, phi);
            if (thinned && !(rng.u01() < std::exp(-cfg.beta_ar * z))) continue;
            const double zeta_root = rng.normal() + sqrt_ki;
            interference += cfg.p_a * pathloss_ris(cfg, z) * zeta_root * zeta_root;
        }
        return std::exp(-s * interference);
    });
}

/// Empirical conditional coverage probabilities at a fixed serving geometry
/// (r0, phi0) with random interferers, the oracle for conditional_coverage.
struct McConditionalCoverage {
    McEstimate direct, ris, composite;
};

inline McConditionalCoverage mc_conditional_coverage(const NetworkConfig& cfg, double r0,
                                                     double phi0, std::int64_t n,
                                                     std::uint64_t seed, int threads = 0) {
    const double z0 = ap_ris_distance(r0, cfg.v0, phi0);
    const auto params = dist_params(cfg, r0, z0);
    const double sqrt_ki = std::sqrt(params.kappa_i);
    const double area = M_PI * (cfg.radius * cfg.radius - r0 * r0);
    const double mean_count = cfg.lambda_a * std::max(0.0, area);

    constexpr std::int64_t chunk_size = 1024;
    const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
    struct Tally {
        std::int64_t direct = 0, ris = 0, composite = 0;
    };
    std::vector<Tally> tallies(static_cast<std::size_t>(n_chunks));
    if (threads <= 0) {
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    detail::run_chunked(n, threads, chunk_size, [&](std::int64_t c, std::int64_t begin,
                                                    std::int64_t end) {
        Tally t;
        for (std::int64_t i = begin; i < end; ++i) {
            PhiloxStream rng(seed, static_cast<std::uint64_t>(i), 4);
            const auto m = std::poisson_distribution<std::int64_t>(mean_count)(rng);
            double i_d = 0.0;
            double i_r = 0.0;
            for (std::int64_t k = 0; k < m; ++k) {
                const double r = detail::annulus_radius(r0, cfg.radius, rng.u01());
                const double phi = 2.0 * M_PI * rng.u01();
                const double z = ap_ris_distance(r, cfg.v0, phi);
                if (rng.u01() < std::exp(-cfg.beta_d * r)) {
                    i_d += cfg.p_a * pathloss_direct(cfg, r) * rng.exponential(params.kappa_d);
                }
                const double zeta_root = rng.normal() + sqrt_ki;
                i_r += cfg.p_a * pathloss_ris(cfg, z) * zeta_root * zeta_root;
            }
            const double s_d = cfg.p_a * pathloss_direct(cfg, r0) *
                               rng.exponential(params.kappa_d);
            const double s_r = rng.exponential(params.kappa_r);
            const double s_c = rng.exponential(params.kappa_c);
            const double i_tot = i_d + i_r;
            if (i_d == 0.0 || s_d > cfg.tau * i_d) t.direct += 1;
            if (i_tot == 0.0 || s_r > cfg.tau * i_tot) t.ris += 1;
            if (i_tot == 0.0 || s_c > cfg.tau * i_tot) t.composite += 1;
        }
        tallies[static_cast<std::size_t>(c)] = t;
    });

    Tally total;
    for (const auto& t : tallies) {
        total.direct += t.direct;
        total.ris += t.ris;
        total.composite += t.composite;
    }
    McConditionalCoverage out;
    out.direct = detail::make_probability_estimate(total.direct, n, seed);
    out.ris = detail::make_probability_estimate(total.ris, n, seed);
    out.composite = detail::make_probability_estimate(total.composite, n, seed);
    return out;
}

/// Raw-channel draws of the serving-link received power (RIS or composite
/// scenario) at fixed geometry, for distribution-shape checks against the
/// derived exponential laws.
inline std::vector<double> sample_signal_powers_full(const NetworkConfig& cfg,
                                                     LinkScenario scenario, double r0, double z0,
                                                     std::int64_t n, std::uint64_t seed) {
    detail::require_full_channel(cfg);
    const auto n_elements = static_cast<std::size_t>(cfg.n_elements);
    const double pl_d = pathloss_direct(cfg, r0);
    const double pl_r = pathloss_ris(cfg, z0);
    std::vector<double> powers(static_cast<std::size_t>(n));
    std::vector<double> w(n_elements);
    for (std::int64_t i = 0; i < n; ++i) {
        PhiloxStream rng(seed, static_cast<std::uint64_t>(i), 5);
        for (auto& wi : w) wi = std::abs(detail::cn01(rng));
        std::complex<double> amp_ris;
        detail::raw_ris_fading(cfg, w, rng, &amp_ris);
        if (scenario == LinkScenario::ris) {
            powers[static_cast<std::size_t>(i)] = cfg.p_a * pl_r * std::norm(amp_ris);
        } else {
            std::complex<double> amp_dir = 0.0;
            for (double fj : cfg.precoder_mags) amp_dir += fj * detail::cn01(rng);
            powers[static_cast<std::size_t>(i)] =
                cfg.p_a *
                std::norm(std::sqrt(pl_d) * amp_dir + std::sqrt(pl_r) * amp_ris);
        }
    }
    return powers;
}

}  // namespace thzcov
