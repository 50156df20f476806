// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "igs/outage.hpp"
#include "igs/params.hpp"
#include "igs/rates.hpp"

namespace igs {

/// A power upper bound from one PU QoS constraint. `watts` is +inf when the
/// constraint never binds; `degenerate` flags the lambda = 0, cx = 1 corner
/// where the quadratic loses both its ps terms.
struct PowerCap {
    double watts = 0.0;
    bool unbounded = false;
    bool degenerate = false;
};

enum class BreakpointSource { cap_vs_budget_1, cap_vs_budget_2, cap_vs_cap };

/// Ordered circularity-axis boundaries partitioning the improper design
/// problem: starts at 0, ends at 1, at most three interior points.
struct Breakpoints {
    std::vector<double> points;
    std::vector<BreakpointSource> sources; // one per interior point
};

enum class ActiveLimit { budget = 0, cap1 = 1, cap2 = 2 };

struct DesignCandidate {
    double ps = 0.0;
    double cx = 0.0;
    double outage = 1.0;
    int interval = 0;
    ActiveLimit active = ActiveLimit::budget;
};

struct DesignOutcome {
    double ps_star = 0.0;
    double cx_star = 0.0;
    double outage = 1.0;
    bool silent = true;
    std::vector<DesignCandidate> candidates;
    std::vector<std::string> notes;
};

namespace detail {

// Positive root of Gamma(1-cx^2) Ibar^2 ps^2 + 2 Lambda Ibar ps - Upsilon = 0.
// For lambda >= 0 the rationalized form Upsilon / ((S + Lambda) Ibar) avoids
// the cancellation near cx = 1 and carries the analytic limit for free.
inline PowerCap improper_cap_core(const PuConstraintConstants& c, double ibar, double cx) {
    if (c.upsilon <= 0.0) return {0.0, false, false};
    const double a = c.gamma_p * (1.0 - cx * cx);
    if (a <= 0.0) { // constraint is linear in ps
        if (c.lambda > 0.0) return {c.upsilon / (2.0 * c.lambda * ibar), false, false};
        return {std::numeric_limits<double>::infinity(), true, c.lambda == 0.0};
    }
    const double s = std::sqrt(c.lambda * c.lambda + a * c.upsilon);
    if (c.lambda >= 0.0) return {c.upsilon / ((s + c.lambda) * ibar), false, false};
    return {(s - c.lambda) / (a * ibar), false, false};
}

} // namespace detail

/// Largest SU power keeping PU direction `node` at its outage threshold under
/// proper signaling (exact closed form). 0 means the SU must stay silent;
/// +inf means the constraint never binds (zero-rate target).
inline double proper_power_cap(const SystemParams& params, int node) {
    const int j = partner(node) - 1;
    const double psi0 = psi_p(params, node, 0.0);
    if (psi0 == 0.0) return std::numeric_limits<double>::infinity();
    const int i = node - 1;
    const double f = (1.0 - params.o_p[i]) * (params.p[j] * params.vbar_p[j] * psi0 + 1.0);
    const double num = std::exp(-psi0) - f;
    if (num <= 0.0) return 0.0;
    return num / (params.ibar_s[j] * psi0 * f);
}

/// Largest SU power keeping PU direction `node` at its outage threshold under
/// the Jensen upper bound, as a function of the circularity coefficient.
inline PowerCap improper_power_cap(const SystemParams& params, int node, double cx) {
    if (!std::isfinite(cx) || cx < 0.0 || cx > 1.0) throw domain_error("cx must lie in [0,1]");
    const int j = partner(node) - 1;
    return detail::improper_cap_core(constraint_constants(params, node), params.ibar_s[j], cx);
}

/// Proper-signaling design: cx = 0, power at the tightest of the two PU caps
/// and the budget.
inline DesignOutcome design_proper(const SystemParams& params) {
    params.validate();
    const double cap1 = proper_power_cap(params, 1);
    const double cap2 = proper_power_cap(params, 2);
    DesignOutcome out;
    double ps = params.ps_max;
    ActiveLimit active = ActiveLimit::budget;
    if (cap1 < ps) { ps = cap1; active = ActiveLimit::cap1; }
    if (cap2 < ps) { ps = cap2; active = ActiveLimit::cap2; }
    out.silent = ps <= 0.0;
    out.ps_star = out.silent ? 0.0 : ps;
    out.cx_star = 0.0;
    out.outage = out.silent ? 1.0 : su_outage(params, {ps, 0.0});
    out.candidates.push_back({out.ps_star, 0.0, out.outage, 0, active});
    return out;
}

/// Circularity where the cap of `node` crosses the power budget, when the cap
/// starts below the budget and ends above it.
inline std::optional<double> budget_intersection(const SystemParams& params, int node) {
    const PuConstraintConstants c = constraint_constants(params, node);
    if (c.upsilon <= 0.0) return std::nullopt;
    const int j = partner(node) - 1;
    const double ibar = params.ibar_s[j];
    const PowerCap at0 = detail::improper_cap_core(c, ibar, 0.0);
    const PowerCap at1 = detail::improper_cap_core(c, ibar, 1.0);
    if (!(at0.watts < params.ps_max)) return std::nullopt;
    if (!(at1.unbounded || at1.watts > params.ps_max)) return std::nullopt;
    const double q = params.ps_max * ibar;
    const double rad = 1.0 + (2.0 * q * c.lambda - c.upsilon) / (c.gamma_p * q * q);
    if (!(rad > 0.0 && rad < 1.0)) {
        if (rad >= -1e-12 && rad <= 1.0 + 1e-12)
            return std::sqrt(std::min(std::max(rad, 0.0), 1.0));
        throw numeric_error("budget intersection radicand inconsistent with existence test");
    }
    return std::sqrt(rad);
}

/// Circularity where the two caps cross, when their ordering swaps between
/// cx = 0 and cx = 1. Symmetric directions have identical caps and no
/// crossing.
inline std::optional<double> cap_intersection(const SystemParams& params) {
    const PuConstraintConstants c1 = constraint_constants(params, 1);
    const PuConstraintConstants c2 = constraint_constants(params, 2);
    if (c1.upsilon <= 0.0 || c2.upsilon <= 0.0) return std::nullopt;
    const double d1 = params.ibar_s[1]; // cap of direction 1 sees node 2's receiver
    const double d2 = params.ibar_s[0];
    if (c1.gamma_p == c2.gamma_p && c1.lambda == c2.lambda && c1.upsilon == c2.upsilon &&
        d1 == d2)
        return std::nullopt; // identical cap functions
    const PowerCap a10 = detail::improper_cap_core(c1, d1, 0.0);
    const PowerCap a11 = detail::improper_cap_core(c1, d1, 1.0);
    const PowerCap a20 = detail::improper_cap_core(c2, d2, 0.0);
    const PowerCap a21 = detail::improper_cap_core(c2, d2, 1.0);
    const bool swap = (a10.watts < a20.watts && a11.watts > a21.watts) ||
                      (a20.watts < a10.watts && a21.watts > a11.watts);
    if (!swap) return std::nullopt;
    const double num = 4.0 * d1 * d2 *
                       (c2.lambda * c1.upsilon * d2 - c1.lambda * c2.upsilon * d1) *
                       (c1.gamma_p * c2.lambda * d1 - c2.gamma_p * c1.lambda * d2);
    const double den = c2.gamma_p * c1.upsilon * d2 * d2 - c1.gamma_p * c2.upsilon * d1 * d1;
    const double kappa = num / (den * den);
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw numeric_error("cap intersection kappa outside [0,1] despite passing existence test");
    return std::sqrt(1.0 - kappa);
}

/// All existing intersection points, deduplicated and bracketed by 0 and 1.
inline Breakpoints breakpoints(const SystemParams& params) {
    struct Entry {
        double cx;
        BreakpointSource src;
    };
    std::vector<Entry> entries;
    if (auto r = budget_intersection(params, 1))
        entries.push_back({*r, BreakpointSource::cap_vs_budget_1});
    if (auto r = budget_intersection(params, 2))
        entries.push_back({*r, BreakpointSource::cap_vs_budget_2});
    if (auto r = cap_intersection(params)) entries.push_back({*r, BreakpointSource::cap_vs_cap});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.cx < b.cx; });

    Breakpoints bp;
    bp.points.push_back(0.0);
    for (const Entry& e : entries) {
        if (e.cx <= bp.points.back() + 1e-12 || e.cx >= 1.0 - 1e-12) continue;
        bp.points.push_back(e.cx);
        bp.sources.push_back(e.src);
    }
    bp.points.push_back(1.0);
    return bp;
}

/// Whether the SU outage restricted to ps = cap_node(cx) strictly decreases
/// in cx: lambda < 0, or Gamma_s below Gamma_p Upsilon / Lambda^2.
inline bool is_decreasing_on_cap(const SystemParams& params, int node) {
    const PuConstraintConstants c = constraint_constants(params, node);
    if (c.upsilon <= 0.0) throw domain_error("is_decreasing_on_cap requires upsilon > 0");
    if (c.lambda < 0.0) return true;
    if (c.lambda == 0.0) return true; // threshold diverges
    return snr_threshold(params.r0_s) < c.gamma_p * c.upsilon / (c.lambda * c.lambda);
}

/// Analytic d/dcx of the SU outage along ps = cap_node(cx). The sign decides
/// which interval endpoint Algorithm I's cap-bound branch picks, and must
/// agree with is_decreasing_on_cap.
inline double su_outage_cx_derivative(const SystemParams& params, int node, double cx) {
    if (!(cx > 0.0 && cx < 1.0)) throw domain_error("derivative defined on open interval (0,1)");
    const PuConstraintConstants c = constraint_constants(params, node);
    if (c.upsilon <= 0.0) throw domain_error("su_outage_cx_derivative requires upsilon > 0");
    const double gam_s = snr_threshold(params.r0_s);
    if (gam_s == 0.0) return 0.0; // outage identically zero

    const int j = partner(node) - 1;
    const double d = params.ibar_s[j];
    const double u = 1.0 - cx * cx;
    const double a = c.gamma_p * u;
    const double s = std::sqrt(c.lambda * c.lambda + a * c.upsilon);
    const double s_minus_lambda =
        c.lambda >= 0.0 ? a * c.upsilon / (s + c.lambda) : s - c.lambda;
    const double v = std::sqrt(1.0 + u * gam_s);

    const double ps_cap = detail::improper_cap_core(c, d, cx).watts;
    const double w = ps_cap * params.gbar_s * u / (v - 1.0); // G * Y
    const double a1 = params.p[0] * params.ibar_p[0];
    const double a2 = params.p[1] * params.ibar_p[1];
    const double theta = (a1 + w) * (a2 + w);
    const double t = std::exp(-1.0 / w) * (w * (a1 * a2 + theta - w * w) + theta) /
                     (theta * theta);

    return t * cx * params.gbar_s * s_minus_lambda / (c.gamma_p * d * (v - 1.0) * u) *
           (c.lambda / s - 1.0 / v);
}

/// Interval-wise optimizer over the piecewise power limit: in each interval
/// the binding limit is identified at the midpoint, the monotonicity of the
/// outage along that limit picks the candidate endpoint, and the best
/// candidate overall wins.
inline DesignOutcome design_improper(const SystemParams& params) {
    params.validate();
    const PuConstraintConstants c1 = constraint_constants(params, 1);
    const PuConstraintConstants c2 = constraint_constants(params, 2);
    DesignOutcome out;
    if (c1.upsilon <= 0.0 || c2.upsilon <= 0.0) {
        out.notes.push_back("PU QoS unreachable even with a silent SU (upsilon <= 0)");
        return out;
    }
    const double d1 = params.ibar_s[1];
    const double d2 = params.ibar_s[0];
    auto limit = [&](ActiveLimit which, double cx) {
        switch (which) {
            case ActiveLimit::budget: return params.ps_max;
            case ActiveLimit::cap1: return detail::improper_cap_core(c1, d1, cx).watts;
            default: return detail::improper_cap_core(c2, d2, cx).watts;
        }
    };
    auto min_limit = [&](double cx) {
        return std::min({params.ps_max, limit(ActiveLimit::cap1, cx),
                         limit(ActiveLimit::cap2, cx)});
    };

    const Breakpoints bp = breakpoints(params);
    for (std::size_t z = 1; z < bp.points.size(); ++z) {
        const double left = bp.points[z - 1];
        const double right = bp.points[z];
        const double mid = 0.5 * (left + right);

        // Ties prefer the budget, then node 1, then node 2; tied limits
        // coincide on the whole interval, so the choice is value-neutral.
        ActiveLimit active = ActiveLimit::budget;
        double best = params.ps_max;
        if (limit(ActiveLimit::cap1, mid) < best) {
            best = limit(ActiveLimit::cap1, mid);
            active = ActiveLimit::cap1;
        }
        if (limit(ActiveLimit::cap2, mid) < best) {
            best = limit(ActiveLimit::cap2, mid);
            active = ActiveLimit::cap2;
        }

        // The midpoint's branch must stay (weakly) minimal at both endpoints;
        // a violation means the binding limit switched inside the interval.
        for (double e : {left, right}) {
            const double m = min_limit(e);
            if (limit(active, e) > m + 1e-9 * std::max(1.0, m))
                out.notes.push_back("interval " + std::to_string(z) +
                                    ": active limit changes inside the interval");
        }

        double cand_cx;
        if (active == ActiveLimit::budget) {
            cand_cx = left; // outage strictly increases in cx at fixed power
        } else {
            const bool decr = is_decreasing_on_cap(params, active == ActiveLimit::cap1 ? 1 : 2);
            cand_cx = decr ? right : left;
        }
        const double cand_ps = min_limit(cand_cx);
        const double cand_out =
            cand_ps > 0.0 ? su_outage(params, {cand_ps, cand_cx}) : 1.0;
        out.candidates.push_back({cand_ps, cand_cx, cand_out, static_cast<int>(z), active});
    }

    // Adjacent intervals share endpoints; drop repeated candidate points.
    std::vector<DesignCandidate> unique;
    for (const DesignCandidate& c : out.candidates) {
        bool dup = false;
        for (const DesignCandidate& u : unique)
            if (std::abs(u.cx - c.cx) <= 1e-15 && std::abs(u.ps - c.ps) <= 1e-12 * (1.0 + c.ps))
                dup = true;
        if (!dup) unique.push_back(c);
    }
    out.candidates = std::move(unique);

    const DesignCandidate* winner = nullptr;
    for (const DesignCandidate& c : out.candidates)
        if (winner == nullptr || c.outage < winner->outage) winner = &c;
    if (winner == nullptr || winner->ps <= 0.0) {
        out.silent = true;
        out.ps_star = 0.0;
        out.cx_star = 0.0;
        out.outage = 1.0;
        return out;
    }
    out.silent = false;
    out.ps_star = winner->ps;
    out.cx_star = winner->cx;
    out.outage = winner->outage;
    return out;
}

/// Exhaustive oracle: best SU outage over a uniform (ps, cx) grid, with
/// feasibility checked point-by-point against the Jensen bound. Independent
/// of the breakpoint machinery by construction.
inline DesignOutcome grid_search_design(const SystemParams& params, int n_ps, int n_cx) {
    params.validate();
    if (n_ps < 2 || n_cx < 2) throw domain_error("grid sizes must be >= 2");
    DesignOutcome out;
    double best = std::numeric_limits<double>::infinity();
    for (int ci = 0; ci < n_cx; ++ci) {
        const double cx = static_cast<double>(ci) / (n_cx - 1);
        for (int pi = 1; pi < n_ps; ++pi) {
            const double ps = params.ps_max * static_cast<double>(pi) / (n_ps - 1);
            const SignalDesign d{ps, cx};
            if (detail::pu_outage_upper_core(params, 0, 1, d) > params.o_p[0]) continue;
            if (detail::pu_outage_upper_core(params, 1, 0, d) > params.o_p[1]) continue;
            const double v = detail::su_outage_core(params, d);
            if (v < best) {
                best = v;
                out.ps_star = ps;
                out.cx_star = cx;
            }
        }
    }
    if (std::isfinite(best)) {
        out.silent = false;
        out.outage = best;
        out.candidates.push_back({out.ps_star, out.cx_star, best, 0, ActiveLimit::budget});
    }
    return out;
}

} // namespace igs
