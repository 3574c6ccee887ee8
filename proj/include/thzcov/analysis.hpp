// SPDX-License-Identifier: Apache-2.0
//
// The analytical engine: association probabilities of the three serving
// scenarios, Laplace transforms of the direct and through-RIS interference,
// conditional coverage probabilities, and the total coverage integral over
// the nearest-AP distance law. The twin of this engine is the Monte-Carlo
// sampler in montecarlo.hpp; each validates the other.
#pragma once

#include <array>
#include <cmath>
#include <map>
#include <utility>

#include "thzcov/channel.hpp"
#include "thzcov/config.hpp"
#include "thzcov/errors.hpp"
#include "thzcov/quadrature.hpp"

namespace thzcov {

/// Probabilities of how the UE is served, conditioned on the serving-AP
/// geometry. The four components partition the unit interval.
struct AssociationBreakdown {
    double direct = 0.0;
    double ris = 0.0;
    double composite = 0.0;
    double none = 0.0;
};

/// High-RIS association, conditioned on the nearest-AP distance r0.
inline AssociationBreakdown association(const NetworkConfig& cfg, double r0) {
    if (cfg.regime != RisRegime::high) {
        throw ScenarioMismatchError("association() requires the high-RIS regime");
    }
    const double pd = p_los_direct(cfg, r0);
    const double pr = p_los_ris_ue(cfg);
    return AssociationBreakdown{pd * (1.0 - pr), (1.0 - pd) * pr, pd * pr,
                                (1.0 - pd) * (1.0 - pr)};
}

/// Low-RIS association with the direct case split by which RIS-side hop
/// failed; the split drives the two direct terms of the coverage integral.
struct LowRisAssociationSplit {
    double direct_ap_ris_blocked = 0.0;  ///< direct LoS, RIS-UE LoS, AP-RIS blocked
    double direct_ris_ue_blocked = 0.0;  ///< direct LoS, RIS-UE blocked
    double ris = 0.0;
    double composite = 0.0;
    double none = 0.0;
};

inline LowRisAssociationSplit association_low_ris_split(const NetworkConfig& cfg, double r0,
                                                        double z0) {
    if (cfg.regime != RisRegime::low) {
        throw ScenarioMismatchError("association_low_ris() requires the low-RIS regime");
    }
    const double pd = p_los_direct(cfg, r0);
    const double pr = p_los_ris_ue(cfg);
    const double par = std::exp(-cfg.beta_ar * z0);
    LowRisAssociationSplit a;
    a.direct_ap_ris_blocked = pd * pr * (1.0 - par);
    a.direct_ris_ue_blocked = pd * (1.0 - pr);
    a.ris = (1.0 - pd) * pr * par;
    a.composite = pd * pr * par;
    a.none = (1.0 - pd) * (1.0 - pr * par);
    return a;
}

inline AssociationBreakdown association_low_ris(const NetworkConfig& cfg, double r0, double z0) {
    const auto s = association_low_ris_split(cfg, r0, z0);
    return AssociationBreakdown{s.direct_ap_ris_blocked + s.direct_ris_ue_blocked, s.ris,
                                s.composite, s.none};
}

/// PDF of the 2D distance from the UE to the nearest AP of an unbounded
/// PPP. Deliberately not truncated to the disk; the residual nearest-AP
/// mass beyond the disk radius is booked as no coverage.
inline double nearest_ap_pdf(const NetworkConfig& cfg, double r0) {
    return 2.0 * M_PI * cfg.lambda_a * r0 * std::exp(-cfg.lambda_a * M_PI * r0 * r0);
}

/// Tolerances and budgets of the nested coverage quadratures.
struct QuadratureOptions {
    double tol_lt = 1e-6;      ///< absolute tolerance of each LT evaluation
    double tol_phi = 1e-5;     ///< absolute tolerance of the inner azimuth average
    double tol_outer = 1e-4;   ///< absolute tolerance of the outer coverage integral
    long lt_budget = 1000000;  ///< integrand-evaluation budget per LT call
    long outer_budget = 1000000;
};

/// Evaluates the interference Laplace transforms, conditioned on the
/// nearest-AP distance r0:
///   direct():    L_ID, the PGFL integral over the LoS-thinned direct APs
///   ris():       L_IR, the (r, phi) PGFL integral over through-RIS paths
///   ris_low():   L_I'R, as ris() with AP-RIS LoS thinning of the integrand
///   composite(): L_IC = L_ID * L_IR, composed from the summed exponents
///
/// Evaluations are memoized on the exact (s, r0) pair, which captures the
/// repeats generated by the nested coverage quadrature. Instances are not
/// synchronized: give each worker thread its own evaluator.
class LaplaceEvaluator {
  public:
    explicit LaplaceEvaluator(const NetworkConfig& cfg, QuadratureOptions opts = {})
        : cfg_(&cfg), opts_(opts) {}

    double direct(double s, double r0) {
        return std::exp(memoized(memo_direct_, s, r0, [&] { return exponent_direct(s, r0); }));
    }

    double ris(double s, double r0) {
        return std::exp(memoized(memo_ris_, s, r0, [&] { return exponent_ris(s, r0, false); }));
    }

    double ris_low(double s, double r0) {
        return std::exp(memoized(memo_ris_low_, s, r0, [&] { return exponent_ris(s, r0, true); }));
    }

    double composite(double s, double r0) {
        const double ed = memoized(memo_direct_, s, r0, [&] { return exponent_direct(s, r0); });
        const double er = memoized(memo_ris_, s, r0, [&] { return exponent_ris(s, r0, false); });
        return std::exp(ed + er);
    }

    long evaluations() const { return evals_; }

  private:
    using Memo = std::map<std::pair<double, double>, double>;

    template <class Fn>
    double memoized(Memo& memo, double s, double r0, Fn&& compute) {
        const auto key = std::make_pair(s, r0);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const double v = compute();
        memo.emplace(key, v);
        return v;
    }

    // exponent of L_ID: -2 pi lambda_a int_{r0}^{Rt} t/(kd + t) P_los(r) r dr
    // with t = s P_A PL_D(r)
    double exponent_direct(double s, double r0) {
        if (s <= 0.0 || r0 >= cfg_->radius) return 0.0;
        const double kd = kappa_d(*cfg_);
        const double prefactor = 2.0 * M_PI * cfg_->lambda_a;
        const auto res = integrate_1d(
            [&](double r) {
                const double t = s * cfg_->p_a * pathloss_direct(*cfg_, r);
                return t / (kd + t) * p_los_direct(*cfg_, r) * r;
            },
            r0, cfg_->radius, opts_.tol_lt / prefactor, opts_.lt_budget);
        evals_ += res.evaluations;
        if (!res.converged) {
            throw QuadratureError("direct-interference LT did not converge");
        }
        return -prefactor * res.value;
    }

    // exponent of L_IR / L_I'R:
    //   -2 lambda_a int_0^pi int_{r0}^{Rt} (1 - Q(s P_A PL_R(z(r,phi))))
    //                                      [exp(-beta_ar z)] r dr dphi
    // The azimuth integral runs over the half range with doubled intensity,
    // using the cosine symmetry of z(r, phi).
    double exponent_ris(double s, double r0, bool thinned) {
        if (s <= 0.0 || r0 >= cfg_->radius) return 0.0;
        const double ki = kappa_i(*cfg_);
        const double prefactor = 2.0 * cfg_->lambda_a;
        const auto res = integrate_2d(
            [&](double r, double phi) {
                const double z = ap_ris_distance(r, cfg_->v0, phi);
                const double x = s * cfg_->p_a * pathloss_ris(*cfg_, z);
                double g = one_minus_mgf_q(ki, x) * r;
                if (thinned) g *= std::exp(-cfg_->beta_ar * z);
                return g;
            },
            r0, cfg_->radius, 0.0, M_PI, opts_.tol_lt / prefactor, opts_.lt_budget);
        evals_ += res.evaluations;
        if (!res.converged) {
            throw QuadratureError("through-RIS interference LT did not converge");
        }
        return -prefactor * res.value;
    }

    const NetworkConfig* cfg_;
    QuadratureOptions opts_;
    Memo memo_direct_;
    Memo memo_ris_;
    Memo memo_ris_low_;
    long evals_ = 0;
};

/// Convenience single-shot wrappers around LaplaceEvaluator.
inline double lt_interference_direct(const NetworkConfig& cfg, double s, double r0,
                                     QuadratureOptions opts = {}) {
    LaplaceEvaluator lt(cfg, opts);
    return lt.direct(s, r0);
}

inline double lt_interference_ris(const NetworkConfig& cfg, double s, double r0,
                                  QuadratureOptions opts = {}) {
    LaplaceEvaluator lt(cfg, opts);
    return lt.ris(s, r0);
}

inline double lt_interference_ris_low(const NetworkConfig& cfg, double s, double r0,
                                      QuadratureOptions opts = {}) {
    if (cfg.regime != RisRegime::low) {
        throw ScenarioMismatchError("lt_interference_ris_low() requires the low-RIS regime");
    }
    LaplaceEvaluator lt(cfg, opts);
    return lt.ris_low(s, r0);
}

/// Conditional coverage probabilities of the three serving scenarios at a
/// fixed serving geometry (high-RIS regime):
///   P_D = L_ID(tau kd / (P_A PL_D(r0)))
///   P_R = L_ID(tau kappa_r(z0)) L_IR(tau kappa_r(z0))
///   P_C = L_ID(tau kappa_c(r0, z0)) L_IR(tau kappa_c(r0, z0))
struct ConditionalCoverage {
    double direct = 0.0;
    double ris = 0.0;
    double composite = 0.0;
};

inline ConditionalCoverage conditional_coverage(const NetworkConfig& cfg, double r0, double phi0,
                                                QuadratureOptions opts = {}) {
    if (cfg.regime != RisRegime::high) {
        throw ScenarioMismatchError("conditional_coverage() requires the high-RIS regime");
    }
    LaplaceEvaluator lt(cfg, opts);
    const double z0 = ap_ris_distance(r0, cfg.v0, phi0);
    const double s_d = cfg.tau * kappa_d(cfg) / (cfg.p_a * pathloss_direct(cfg, r0));
    const double s_r = cfg.tau * kappa_r(cfg, z0);
    const double s_c = cfg.tau * kappa_c(cfg, r0, z0);
    ConditionalCoverage out;
    out.direct = lt.direct(s_d, r0);
    out.ris = lt.direct(s_r, r0) * lt.ris(s_r, r0);
    out.composite = lt.direct(s_c, r0) * lt.ris(s_c, r0);
    return out;
}

/// Total coverage probability with its per-scenario contributions. The
/// contributions sum to the total by construction (one quadrature carries
/// all components on shared nodes).
struct CoverageResult {
    double total = 0.0;
    double contrib_direct = 0.0;
    double contrib_ris = 0.0;
    double contrib_composite = 0.0;
    double quad_error_estimate = 0.0;
    long evaluations = 0;
};

namespace detail {

template <class Inner>
CoverageResult coverage_integral(const NetworkConfig& cfg, const QuadratureOptions& opts,
                                 LaplaceEvaluator& lt, Inner&& scenario_terms) {
    long phi_nodes = 0;
    const auto outer = integrate_1d_vec<3>(
        [&](double r0) -> std::array<double, 3> {
            const double f = nearest_ap_pdf(cfg, r0);
            if (f <= 0.0) return {0.0, 0.0, 0.0};
            const auto inner = integrate_1d_vec<3>(
                [&](double phi0) { return scenario_terms(r0, phi0); }, 0.0, M_PI, opts.tol_phi,
                opts.lt_budget);
            phi_nodes += inner.evaluations;
            if (!inner.converged) {
                throw QuadratureError("azimuth average did not converge");
            }
            return {f * inner.value[0] / M_PI, f * inner.value[1] / M_PI,
                    f * inner.value[2] / M_PI};
        },
        0.0, cfg.radius, opts.tol_outer, opts.outer_budget);
    if (!outer.converged) {
        throw QuadratureError("coverage integral did not converge");
    }

    CoverageResult res;
    res.contrib_direct = outer.value[0];
    res.contrib_ris = outer.value[1];
    res.contrib_composite = outer.value[2];
    res.total = res.contrib_direct + res.contrib_ris + res.contrib_composite;
    // outer rule error, plus the tolerance handed to the azimuth averages and
    // to the (at most two) LT factors inside every conditional probability
    res.quad_error_estimate = outer.error_estimate + opts.tol_phi + 2.0 * opts.tol_lt;
    res.evaluations = outer.evaluations + phi_nodes + lt.evaluations();
    return res;
}

}  // namespace detail

/// Total coverage probability in the high-RIS regime: the nearest-AP law
/// against the association-weighted conditional coverage probabilities,
/// azimuth-averaged over the serving AP direction.
inline CoverageResult coverage(const NetworkConfig& cfg, QuadratureOptions opts = {}) {
    if (cfg.regime != RisRegime::high) {
        throw ScenarioMismatchError("coverage() requires the high-RIS regime");
    }
    LaplaceEvaluator lt(cfg, opts);
    const double kd = kappa_d(cfg);
    return detail::coverage_integral(
        cfg, opts, lt, [&](double r0, double phi0) -> std::array<double, 3> {
            const auto a = association(cfg, r0);
            const double z0 = ap_ris_distance(r0, cfg.v0, phi0);
            const double s_d = cfg.tau * kd / (cfg.p_a * pathloss_direct(cfg, r0));
            const double s_r = cfg.tau * kappa_r(cfg, z0);
            const double s_c = cfg.tau * kappa_c(cfg, r0, z0);
            const double p_d = lt.direct(s_d, r0);
            const double p_r = lt.direct(s_r, r0) * lt.ris(s_r, r0);
            const double p_c = lt.direct(s_c, r0) * lt.ris(s_c, r0);
            return {a.direct * p_d, a.ris * p_r, a.composite * p_c};
        });
}

/// Total coverage probability in the low-RIS regime. The direct scenario
/// carries two sub-terms: with the serving AP-RIS hop blocked but the
/// RIS-UE hop open, the UE still collects through-RIS interference, so that
/// term composes L_ID with L_I'R; with the RIS-UE hop blocked, only direct
/// interference reaches the UE. At beta_ar = 0 this reduces exactly to
/// coverage().
inline CoverageResult coverage_low_ris(const NetworkConfig& cfg, QuadratureOptions opts = {}) {
    if (cfg.regime != RisRegime::low) {
        throw ScenarioMismatchError("coverage_low_ris() requires the low-RIS regime");
    }
    LaplaceEvaluator lt(cfg, opts);
    const double kd = kappa_d(cfg);
    return detail::coverage_integral(
        cfg, opts, lt, [&](double r0, double phi0) -> std::array<double, 3> {
            const double z0 = ap_ris_distance(r0, cfg.v0, phi0);
            const auto a = association_low_ris_split(cfg, r0, z0);
            const double s_d = cfg.tau * kd / (cfg.p_a * pathloss_direct(cfg, r0));
            const double s_r = cfg.tau * kappa_r(cfg, z0);
            const double s_c = cfg.tau * kappa_c(cfg, r0, z0);
            const double lid_d = lt.direct(s_d, r0);
            const double p_d1 = lid_d * lt.ris_low(s_d, r0);
            const double p_d2 = lid_d;
            const double p_r = lt.direct(s_r, r0) * lt.ris_low(s_r, r0);
            const double p_c = lt.direct(s_c, r0) * lt.ris_low(s_c, r0);
            return {a.direct_ap_ris_blocked * p_d1 + a.direct_ris_ue_blocked * p_d2, a.ris * p_r,
                    a.composite * p_c};
        });
}

/// Scenario dispatch on the configured regime.
inline CoverageResult coverage_auto(const NetworkConfig& cfg, QuadratureOptions opts = {}) {
    return cfg.regime == RisRegime::high ? coverage(cfg, opts) : coverage_low_ris(cfg, opts);
}

/// Association probabilities integrated against the nearest-AP law (and
/// azimuth-averaged in the low-RIS regime). The nearest-AP mass beyond the
/// disk radius is booked under none.
inline AssociationBreakdown association_mass(const NetworkConfig& cfg) {
    const auto integrand = [&](double r0) -> std::array<double, 4> {
        const double f = nearest_ap_pdf(cfg, r0);
        if (f <= 0.0) return {0.0, 0.0, 0.0, 0.0};
        if (cfg.regime == RisRegime::high) {
            const auto a = association(cfg, r0);
            return {f * a.direct, f * a.ris, f * a.composite, f * a.none};
        }
        const auto avg = integrate_1d_vec<4>(
            [&](double phi0) -> std::array<double, 4> {
                const double z0 = ap_ris_distance(r0, cfg.v0, phi0);
                const auto a = association_low_ris(cfg, r0, z0);
                return {a.direct, a.ris, a.composite, a.none};
            },
            0.0, M_PI, 1e-10, 200000);
        return {f * avg.value[0] / M_PI, f * avg.value[1] / M_PI, f * avg.value[2] / M_PI,
                f * avg.value[3] / M_PI};
    };
    const auto res = integrate_1d_vec<4>(integrand, 0.0, cfg.radius, 1e-9, 1000000);
    if (!res.converged) {
        throw QuadratureError("association integral did not converge");
    }
    AssociationBreakdown out{res.value[0], res.value[1], res.value[2], res.value[3]};
    out.none += std::exp(-cfg.lambda_a * M_PI * cfg.radius * cfg.radius);
    return out;
}

}  // namespace thzcov
