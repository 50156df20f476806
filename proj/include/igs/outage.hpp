// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>

#include "igs/laguerre.hpp"
#include "igs/params.hpp"
#include "igs/rates.hpp"

namespace igs {

enum class OutageKind { closed_form, conditional, upper_bound, quadrature, monte_carlo };

/// A probability with how it was obtained. Quadrature results carry the
/// final node count per axis and the relative change of the last doubling.
struct OutageValue {
    double value = 0.0;
    OutageKind kind = OutageKind::closed_form;
    int order = 0;
    double rel_change = 0.0;
    bool warning = false; // refinement did not reach the convergence target
};

namespace detail {

// Accumulated floating error within 1e-12 of [0,1] is clamped; anything
// larger is a bug, not roundoff.
inline double clamp_probability(double v) {
    if (v >= 0.0 && v <= 1.0) return v;
    if (v < 0.0 && v >= -1e-12) return 0.0;
    if (v > 1.0 && v <= 1.0 + 1e-12) return 1.0;
    throw numeric_error("probability " + std::to_string(v) + " outside [0,1] beyond roundoff");
}

// Treat 1-cx^2 below this as the maximally improper limit. The cx = 1
// singularity of the SU closed form is removable: Psi_s/(1-cx^2) tends to
// Gamma_s / (2 ps gbar_s).
inline constexpr double kCxOneEps = 1e-9;

inline double su_exponent_rate(const SystemParams& params, const SignalDesign& d) {
    const double u = 1.0 - d.cx * d.cx;
    const double gam = snr_threshold(params.r0_s);
    if (u < kCxOneEps) return gam / (2.0 * d.ps * params.gbar_s);
    return (std::sqrt(1.0 + u * gam) - 1.0) / (d.ps * params.gbar_s * u);
}

inline double su_outage_core(const SystemParams& params, const SignalDesign& d) {
    const double u = 1.0 - d.cx * d.cx;
    if (u < kCxOneEps) {
        const double t = su_exponent_rate(params, d);
        return 1.0 - std::exp(-t) /
                         ((params.p[0] * params.ibar_p[0] * t + 1.0) *
                          (params.p[1] * params.ibar_p[1] * t + 1.0));
    }
    const double psi = (std::sqrt(1.0 + u * snr_threshold(params.r0_s)) - 1.0) /
                       (d.ps * params.gbar_s);
    return 1.0 - u * u * std::exp(-psi / u) /
                     ((params.p[0] * params.ibar_p[0] * psi + u) *
                      (params.p[1] * params.ibar_p[1] * psi + u));
}

inline double pu_outage_conditional_core(const SystemParams& params, int i, int j,
                                         const SignalDesign& d, double i_s_j, double v_p_j) {
    const double c = params.p[j] * v_p_j + d.ps * i_s_j + 1.0;
    const double x = d.ps * i_s_j * d.cx / c;
    const double gam = snr_threshold(params.r0_p[i]);
    const double psi = (std::sqrt(1.0 + gam * (1.0 - x * x)) - 1.0) /
                       (params.p[i] * params.gbar_p[i]);
    return 1.0 - std::exp(-c * psi);
}

inline double pu_outage_upper_core(const SystemParams& params, int i, int j,
                                   const SignalDesign& d) {
    return pu_outage_conditional_core(params, i, j, d, params.ibar_s[j], params.vbar_p[j]);
}

// Tensor-product expectation of the conditional outage over the two
// exponential variables, n nodes per axis. A zero mean collapses its axis
// to a point mass at 0.
inline double pu_outage_quadrature(const SystemParams& params, int i, int j,
                                   const SignalDesign& d, int n) {
    const double mean_i = params.ibar_s[j];
    const double mean_v = params.vbar_p[j];
    auto rule = laguerre_rule(n);
    static const LaguerreRule kPointMass{{0.0}, {1.0}};
    const LaguerreRule& rx = mean_i > 0.0 ? *rule : kPointMass;
    const LaguerreRule& ry = mean_v > 0.0 ? *rule : kPointMass;
    double acc = 0.0;
    for (std::size_t a = 0; a < rx.nodes.size(); ++a) {
        const double is = mean_i * rx.nodes[a];
        double inner = 0.0;
        for (std::size_t b = 0; b < ry.nodes.size(); ++b)
            inner += ry.weights[b] *
                     pu_outage_conditional_core(params, i, j, d, is, mean_v * ry.nodes[b]);
        acc += rx.weights[a] * inner;
    }
    return acc;
}

} // namespace detail

/// SU outage conditioned on the two instantaneous PU interference CNRs.
inline double su_outage_conditional(const SystemParams& params, const SignalDesign& d,
                                    double i_p1, double i_p2) {
    d.validate();
    if (d.ps <= 0.0) throw domain_error("su_outage_conditional requires ps > 0");
    if (!std::isfinite(i_p1) || i_p1 < 0.0 || !std::isfinite(i_p2) || i_p2 < 0.0)
        throw domain_error("interference CNRs must be finite and >= 0");
    const double den = params.p[0] * i_p1 + params.p[1] * i_p2 + 1.0;
    return detail::clamp_probability(1.0 - std::exp(-den * detail::su_exponent_rate(params, d)));
}

/// Closed-form SU outage probability, averaged over the fading statistics.
inline double su_outage(const SystemParams& params, const SignalDesign& d) {
    d.validate();
    if (d.ps <= 0.0) throw domain_error("su_outage requires ps > 0");
    return detail::clamp_probability(detail::su_outage_core(params, d));
}

/// PU outage of direction `node`, conditioned on the partner receiver's
/// instantaneous SU-interference and RSI CNRs.
inline double pu_outage_conditional(const SystemParams& params, int node, const SignalDesign& d,
                                    double i_s_j, double v_p_j) {
    const int i = check_node(node) - 1;
    const int j = partner(node) - 1;
    d.validate();
    if (!std::isfinite(i_s_j) || i_s_j < 0.0 || !std::isfinite(v_p_j) || v_p_j < 0.0)
        throw domain_error("conditional CNRs must be finite and >= 0");
    return detail::clamp_probability(
        detail::pu_outage_conditional_core(params, i, j, d, i_s_j, v_p_j));
}

/// Exact closed-form PU outage under proper SU signaling (cx = 0).
inline double pu_outage_proper(const SystemParams& params, int node, double ps) {
    const int j = partner(node) - 1;
    if (!std::isfinite(ps) || ps < 0.0) throw domain_error("ps must be finite and >= 0");
    const double psi0 = psi_p(params, node, 0.0);
    return detail::clamp_probability(
        1.0 - std::exp(-psi0) / ((ps * params.ibar_s[j] * psi0 + 1.0) *
                                 (params.p[j] * params.vbar_p[j] * psi0 + 1.0)));
}

/// Jensen upper bound on the PU outage: the conditional form evaluated at
/// the mean CNRs. Dominates the exact expectation pointwise.
inline double pu_outage_upper(const SystemParams& params, int node, const SignalDesign& d) {
    const int i = check_node(node) - 1;
    const int j = partner(node) - 1;
    d.validate();
    return detail::clamp_probability(detail::pu_outage_upper_core(params, i, j, d));
}

/// PU outage by tensor-product Gauss-Laguerre quadrature over the two
/// exponential interference variables. Starts at `order` nodes per axis and
/// doubles until the relative change drops below 1e-6; giving up past 256
/// marks the result with a warning instead of failing silently.
inline OutageValue pu_outage_exact(const SystemParams& params, int node, const SignalDesign& d,
                                   int order = 64) {
    const int i = check_node(node) - 1;
    const int j = partner(node) - 1;
    d.validate();
    if (order < 8) throw domain_error("pu_outage_exact requires order >= 8");

    int n = order;
    double prev = detail::pu_outage_quadrature(params, i, j, d, n);
    for (;;) {
        const double next = detail::pu_outage_quadrature(params, i, j, d, 2 * n);
        const double rel = std::abs(next - prev) / std::max(std::abs(next), 1e-12);
        if (rel <= 1e-6)
            return {detail::clamp_probability(next), OutageKind::quadrature, 2 * n, rel, false};
        if (n >= 256)
            return {detail::clamp_probability(next), OutageKind::quadrature, 2 * n, rel, true};
        n *= 2;
        prev = next;
    }
}

} // namespace igs
