// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <string>

#include "igs/errors.hpp"

namespace igs {

// The two full-duplex PU directions are carried as an indexed pair throughout.
// Public operations take 1-based node indices (1 or 2) to match the usual
// i / j = 3 - i convention; storage is 0-based.
inline constexpr int kNumPuNodes = 2;

inline int check_node(int node) {
    if (node < 1 || node > kNumPuNodes)
        throw domain_error("PU node index must be 1 or 2, got " + std::to_string(node));
    return node;
}

inline int partner(int node) { return 3 - check_node(node); }

/// One spectrum-sharing scenario. All CNR means and powers are linear; noise
/// power is normalized to 1, so every CNR is already noise-normalized.
/// dB inputs are converted once at parse time (see config.hpp).
struct SystemParams {
    std::array<double, 2> p{};      // PU transmit power per node [W]
    std::array<double, 2> gbar_p{}; // mean PU direct CNR
    std::array<double, 2> ibar_p{}; // mean PU -> SU interference CNR
    std::array<double, 2> ibar_s{}; // mean SU -> PU interference CNR
    std::array<double, 2> vbar_p{}; // mean residual self-interference CNR
    double gbar_s = 0;              // mean SU direct CNR
    std::array<double, 2> r0_p{};   // PU target rate [b/s/Hz]
    double r0_s = 0;                // SU target rate [b/s/Hz]
    std::array<double, 2> o_p{};    // PU max outage threshold, in (0,1)
    double ps_max = 0;              // SU power budget [W]

    void validate() const {
        auto pos = [](double v, const char* name) {
            if (!std::isfinite(v) || v <= 0.0)
                throw domain_error(std::string(name) + " must be finite and > 0");
        };
        auto nonneg = [](double v, const char* name) {
            if (!std::isfinite(v) || v < 0.0)
                throw domain_error(std::string(name) + " must be finite and >= 0");
        };
        for (int k = 0; k < 2; ++k) {
            pos(p[k], "pu power");
            pos(gbar_p[k], "gbar_p");
            pos(ibar_p[k], "ibar_p");
            pos(ibar_s[k], "ibar_s");
            pos(vbar_p[k], "vbar_p");
            nonneg(r0_p[k], "r0_p");
            if (!std::isfinite(o_p[k]) || o_p[k] <= 0.0 || o_p[k] >= 1.0)
                throw domain_error("o_p must lie strictly inside (0,1)");
        }
        pos(gbar_s, "gbar_s");
        nonneg(r0_s, "r0_s");
        pos(ps_max, "ps_max");
    }
};

/// Scalar constants of one PU direction's QoS constraint, in the form used by
/// the quadratic power bound: Gamma(1-Cx^2) Ibar^2 ps^2 + 2 Lambda Ibar ps - Upsilon <= 0.
struct PuConstraintConstants {
    double gamma_p = 0;  // SNR threshold 2^{2 r0} - 1
    double mu = 0;       // QoS log-margin p * gbar * ln(1/(1-O))
    double beta = 0;     // partner RSI-plus-noise factor p_j * vbar_j + 1
    double lambda = 0;   // beta * gamma_p - mu
    double upsilon = 0;  // mu^2 + 2 beta mu - gamma_p beta^2
};

/// 2^{2 r0} - 1; the linear SNR threshold of a rate target.
inline double snr_threshold(double r0) {
    if (!std::isfinite(r0) || r0 < 0.0)
        throw domain_error("rate target must be finite and >= 0");
    return std::exp2(2.0 * r0) - 1.0;
}

/// p * gbar * ln(1/(1-o)): the outage budget expressed as a log margin.
inline double qos_margin(double p_i, double gbar_p_i, double o_p_i) {
    if (!std::isfinite(p_i) || p_i <= 0.0) throw domain_error("p must be finite and > 0");
    if (!std::isfinite(gbar_p_i) || gbar_p_i <= 0.0)
        throw domain_error("gbar_p must be finite and > 0");
    if (!std::isfinite(o_p_i) || o_p_i < 0.0 || o_p_i >= 1.0)
        throw domain_error("o_p must lie in [0,1)");
    return -p_i * gbar_p_i * std::log1p(-o_p_i);
}

inline PuConstraintConstants constraint_constants(const SystemParams& params, int node) {
    const int i = check_node(node) - 1;
    const int j = partner(node) - 1;
    PuConstraintConstants c;
    c.gamma_p = snr_threshold(params.r0_p[i]);
    c.mu = qos_margin(params.p[i], params.gbar_p[i], params.o_p[i]);
    c.beta = params.p[j] * params.vbar_p[j] + 1.0;
    c.lambda = c.beta * c.gamma_p - c.mu;
    c.upsilon = c.mu * c.mu + 2.0 * c.beta * c.mu - c.gamma_p * c.beta * c.beta;
    return c;
}

/// [mu/(sqrt(1+Gamma)-1) - 1]^+, the largest interference-to-noise ratio the
/// PU direction tolerates at its outage threshold. Diagnostic only: the
/// designers consume mu directly.
inline double max_interference_margin(const PuConstraintConstants& c) {
    if (c.gamma_p <= 0.0) throw domain_error("max_interference_margin requires gamma_p > 0");
    const double v = c.mu / (std::sqrt(1.0 + c.gamma_p) - 1.0) - 1.0;
    return v > 0.0 ? v : 0.0;
}

} // namespace igs
