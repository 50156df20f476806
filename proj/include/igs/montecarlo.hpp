// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <thread>
#include <vector>

#include "igs/outage.hpp"
#include "igs/params.hpp"
#include "igs/rates.hpp"

namespace igs {

/// Pinned generator identity; recorded in every estimate.
inline constexpr std::string_view kRngId = "splitmix64-c1";

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    unsigned streams = 1;

    void validate() const {
        if (samples < 1) throw domain_error("mc samples must be >= 1");
        if (streams < 1) throw domain_error("mc streams must be >= 1");
    }
};

struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t samples = 0;
    std::string_view rng = kRngId;
};

namespace detail {

// splitmix64 in counter mode: output k is a pure function of (seed, k), so
// any counter partition gives provably non-overlapping substreams and O(1)
// jump-ahead. One 64-bit output per uniform variate.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double uniform01_at(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(splitmix64_at(seed, counter) >> 11) * 0x1.0p-53;
}

// Inverse-CDF exponential draw; exactly one uniform per CNR. A zero mean is
// the degenerate point mass at 0 (its counter slot stays reserved).
inline double exponential_at(double mean, std::uint64_t seed, std::uint64_t counter) {
    if (mean <= 0.0) return 0.0;
    return -mean * std::log1p(-uniform01_at(seed, counter));
}

// Fixed variate budget per realization. Slot layout:
//   0,1: g_p   2,3: i_p   4,5: i_s   6,7: v_p   8: g_s
inline constexpr std::uint64_t kVariatesPerDraw = 9;

} // namespace detail

/// Draw realization `index` of the stream identified by `seed`. Consumes the
/// nine counter slots [9*index, 9*index + 9); identical (seed, index) always
/// reproduce the same realization, independent of host or thread layout.
inline FadingRealization draw_realization(const SystemParams& params, std::uint64_t seed,
                                          std::uint64_t index) {
    const std::uint64_t base = index * detail::kVariatesPerDraw;
    FadingRealization r;
    for (int k = 0; k < 2; ++k) {
        r.g_p[k] = detail::exponential_at(params.gbar_p[k], seed, base + k);
        r.i_p[k] = detail::exponential_at(params.ibar_p[k], seed, base + 2 + k);
        r.i_s[k] = detail::exponential_at(params.ibar_s[k], seed, base + 4 + k);
        r.v_p[k] = detail::exponential_at(params.vbar_p[k], seed, base + 6 + k);
    }
    r.g_s = detail::exponential_at(params.gbar_s, seed, base + 8);
    return r;
}

namespace detail {

// Outage indicators use the threshold form: the log2 argument is compared
// against 2^{2 R0} directly, avoiding log evaluation near the boundary.
template <typename Indicator>
McEstimate estimate_outage(const McConfig& cfg, Indicator&& outage_at) {
    cfg.validate();
    const std::uint64_t n = cfg.samples;
    const unsigned streams =
        static_cast<unsigned>(std::min<std::uint64_t>(cfg.streams, n));

    auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t c = 0;
        for (std::uint64_t k = lo; k < hi; ++k) c += outage_at(k) ? 1 : 0;
        return c;
    };

    std::uint64_t count = 0;
    if (streams <= 1) {
        count = count_range(0, n);
    } else {
        // Contiguous index blocks per stream, any remainder going to the last
        // stream; integer counts make the reduction order irrelevant, so
        // threading cannot change the result.
        const std::uint64_t base = n / streams;
        std::vector<std::uint64_t> counts(streams, 0);
        std::vector<std::thread> workers;
        for (unsigned s = 0; s < streams; ++s) {
            const std::uint64_t lo = s * base;
            const std::uint64_t hi = (s + 1 == streams) ? n : lo + base;
            workers.emplace_back([&, s, lo, hi] { counts[s] = count_range(lo, hi); });
        }
        for (auto& w : workers) w.join();
        for (unsigned s = 0; s < streams; ++s) count += counts[s];
    }

    McEstimate est;
    est.samples = n;
    est.mean = static_cast<double>(count) / static_cast<double>(n);
    est.std_err = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(n));
    return est;
}

} // namespace detail

/// Empirical SU outage: fraction of fading draws with su_rate below the target.
inline McEstimate estimate_su_outage(const SystemParams& params, const SignalDesign& d,
                                     const McConfig& cfg) {
    params.validate();
    d.validate();
    const double gam = snr_threshold(params.r0_s);
    return detail::estimate_outage(cfg, [&](std::uint64_t k) {
        const FadingRealization r = draw_realization(params, cfg.seed, k);
        const double den = params.p[0] * r.i_p[0] + params.p[1] * r.i_p[1] + 1.0;
        return detail::su_rate_arg(d.ps * r.g_s, den, d.cx) < 1.0 + gam;
    });
}

/// Empirical PU outage of direction `node`.
inline McEstimate estimate_pu_outage(const SystemParams& params, int node, const SignalDesign& d,
                                     const McConfig& cfg) {
    params.validate();
    d.validate();
    const int i = check_node(node) - 1;
    const int j = partner(node) - 1;
    const double gam = snr_threshold(params.r0_p[i]);
    return detail::estimate_outage(cfg, [&](std::uint64_t k) {
        const FadingRealization r = draw_realization(params, cfg.seed, k);
        const auto rr = detail::pu_rate_ratio(params.p[i] * r.g_p[i], params.p[j] * r.v_p[j],
                                              d.ps * r.i_s[j], d.cx);
        return rr.num < (1.0 + gam) * rr.den;
    });
}

} // namespace igs
