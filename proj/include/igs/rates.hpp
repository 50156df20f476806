// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>

#include "igs/params.hpp"

namespace igs {

/// One joint draw of all nine instantaneous CNRs under Rayleigh fading.
struct FadingRealization {
    std::array<double, 2> g_p{}; // PU direct
    std::array<double, 2> i_p{}; // PU -> SU interference
    std::array<double, 2> i_s{}; // SU -> PU interference
    std::array<double, 2> v_p{}; // residual self-interference
    double g_s = 0;              // SU direct

    void validate() const {
        auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
        bool good = ok(g_s);
        for (int k = 0; k < 2; ++k)
            good = good && ok(g_p[k]) && ok(i_p[k]) && ok(i_s[k]) && ok(v_p[k]);
        if (!good) throw domain_error("fading realization entries must be finite and >= 0");
    }
};

/// An SU operating point: transmit power and circularity coefficient.
/// cx = 0 is proper signaling, cx = 1 maximally improper.
struct SignalDesign {
    double ps = 0;
    double cx = 0;

    void validate() const {
        if (!std::isfinite(ps) || ps < 0.0) throw domain_error("ps must be finite and >= 0");
        if (!std::isfinite(cx) || cx < 0.0 || cx > 1.0)
            throw domain_error("cx must lie in [0,1]");
    }
};

namespace detail {

// log2 argument of the SU rate; outage compares this against 1 + Gamma_s.
inline double su_rate_arg(double ps_gs, double den, double cx) {
    const double q = ps_gs / den;
    return q * q * (1.0 - cx * cx) + 2.0 * q + 1.0;
}

// Numerator and denominator of the PU rate's log2 ratio.
struct PuRateRatio {
    double num;
    double den;
};

inline PuRateRatio pu_rate_ratio(double pg, double pv, double psi, double cx) {
    const double a = pg + pv + psi + 1.0;
    const double c = pv + psi + 1.0;
    const double b = psi * cx;
    return {a * a - b * b, c * c - b * b};
}

} // namespace detail

/// Instantaneous achievable rate of PU direction `node` [b/s/Hz].
inline double pu_rate(const SystemParams& params, int node, const FadingRealization& real,
                      const SignalDesign& d) {
    const int i = check_node(node) - 1;
    const int j = partner(node) - 1;
    real.validate();
    d.validate();
    const auto r = detail::pu_rate_ratio(params.p[i] * real.g_p[i], params.p[j] * real.v_p[j],
                                         d.ps * real.i_s[j], d.cx);
    return 0.5 * std::log2(r.num / r.den);
}

/// Instantaneous achievable SU rate [b/s/Hz].
inline double su_rate(const SystemParams& params, const FadingRealization& real,
                      const SignalDesign& d) {
    real.validate();
    d.validate();
    const double den = params.p[0] * real.i_p[0] + params.p[1] * real.i_p[1] + 1.0;
    return 0.5 * std::log2(detail::su_rate_arg(d.ps * real.g_s, den, d.cx));
}

/// Psi_s(ps, cx) = (sqrt(1 + (1-cx^2) Gamma_s) - 1) / (ps gbar_s).
/// The SU outage formulas scale every interference term by this quantity.
inline double psi_s(const SystemParams& params, const SignalDesign& d) {
    d.validate();
    if (d.ps <= 0.0) throw domain_error("psi_s requires ps > 0");
    const double gam = snr_threshold(params.r0_s);
    return (std::sqrt(1.0 + (1.0 - d.cx * d.cx) * gam) - 1.0) / (d.ps * params.gbar_s);
}

/// Psi_{p_i}(x) = (sqrt(1 + Gamma_{p_i}(1-x^2)) - 1) / (p_i gbar_{p_i}), x in [0,1].
inline double psi_p(const SystemParams& params, int node, double x) {
    const int i = check_node(node) - 1;
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) throw domain_error("psi_p argument must lie in [0,1]");
    const double gam = snr_threshold(params.r0_p[i]);
    return (std::sqrt(1.0 + gam * (1.0 - x * x)) - 1.0) / (params.p[i] * params.gbar_p[i]);
}

} // namespace igs
