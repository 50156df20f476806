// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles. Everything here deliberately takes a different route
// from the library: std::mt19937_64 sampling instead of the counter RNG,
// adaptive Simpson instead of Gauss-Laguerre, direct log2 rate evaluation
// instead of threshold comparison, bisection instead of closed forms.
#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "igs/params.hpp"
#include "igs/rates.hpp"

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 40) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// E[f(X)] for X ~ Exp(mean), via the probability-transform substitution
/// t = 1 - e^{-x/mean}; f must be bounded.
inline double expectation_exponential(const std::function<double(double)>& f, double mean,
                                      double tol = 1e-11) {
    if (mean <= 0.0) return f(0.0);
    auto g = [&](double t) { return f(-mean * std::log1p(-t)); };
    return adaptive_simpson(g, 0.0, 1.0 - 1e-12, tol);
}

inline double expectation_exponential_2d(const std::function<double(double, double)>& f,
                                         double mean_x, double mean_y, double tol = 1e-9) {
    auto outer = [&](double x) {
        return expectation_exponential([&](double y) { return f(x, y); }, mean_y, tol / 10.0);
    };
    return expectation_exponential(outer, mean_x, tol);
}

/// Finds the root of f on [lo, hi]; f(lo) and f(hi) must straddle zero.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
    double flo = f(lo);
    for (int it = 0; it < iters; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Richardson-extrapolated central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + h / 2.0) - f(x - h / 2.0)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

struct McResult {
    double mean;
    double std_err;
};

/// SU outage by direct simulation: exponential draws from <random>, rate by
/// the log2 formula, comparison against the rate target itself.
inline McResult mc_su_outage(const igs::SystemParams& p, double ps, double cx, long long n,
                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> e_gs(1.0 / p.gbar_s);
    std::exponential_distribution<double> e_i1(1.0 / p.ibar_p[0]);
    std::exponential_distribution<double> e_i2(1.0 / p.ibar_p[1]);
    long long cnt = 0;
    for (long long k = 0; k < n; ++k) {
        const double gs = e_gs(rng), i1 = e_i1(rng), i2 = e_i2(rng);
        const double den = p.p[0] * i1 + p.p[1] * i2 + 1.0;
        const double rate = 0.5 * std::log2(ps * ps * gs * gs * (1.0 - cx * cx) / (den * den) +
                                            2.0 * ps * gs / den + 1.0);
        if (rate < p.r0_s) ++cnt;
    }
    const double m = static_cast<double>(cnt) / static_cast<double>(n);
    return {m, std::sqrt(m * (1.0 - m) / static_cast<double>(n))};
}

inline McResult mc_pu_outage(const igs::SystemParams& p, int node, double ps, double cx,
                             long long n, std::uint64_t seed) {
    const int i = node - 1, j = 2 - node;
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> e_g(1.0 / p.gbar_p[i]);
    std::exponential_distribution<double> e_is(1.0 / p.ibar_s[j]);
    std::exponential_distribution<double> e_v(1.0 / p.vbar_p[j]);
    long long cnt = 0;
    for (long long k = 0; k < n; ++k) {
        const double g = e_g(rng), is = e_is(rng), vv = e_v(rng);
        const double c = p.p[j] * vv + ps * is + 1.0;
        const double b = ps * is * cx;
        const double rate =
            0.5 * std::log2(((p.p[i] * g + c) * (p.p[i] * g + c) - b * b) / (c * c - b * b));
        if (rate < p.r0_p[i]) ++cnt;
    }
    const double m = static_cast<double>(cnt) / static_cast<double>(n);
    return {m, std::sqrt(m * (1.0 - m) / static_cast<double>(n))};
}

/// Shared baseline scenario used across the tests.
inline igs::SystemParams baseline() {
    auto lin = [](double db) { return std::pow(10.0, db / 10.0); };
    igs::SystemParams p;
    p.p = {1.0, 1.0};
    p.gbar_p = {lin(25), lin(25)};
    p.ibar_p = {lin(3), lin(3)};
    p.ibar_s = {lin(13), lin(13)};
    p.vbar_p = {lin(5), lin(5)};
    p.gbar_s = lin(20);
    p.r0_p = {0.5, 0.5};
    p.r0_s = 0.5;
    p.o_p = {0.01, 0.01};
    p.ps_max = 1.0;
    return p;
}

/// Random valid scenario drawn from broad dB ranges; deterministic per rng.
inline igs::SystemParams random_params(std::mt19937_64& rng) {
    auto lin = [](double db) { return std::pow(10.0, db / 10.0); };
    auto uni = [&](double a, double b) {
        return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    };
    igs::SystemParams p;
    for (int k = 0; k < 2; ++k) {
        p.p[k] = uni(0.5, 2.0);
        p.gbar_p[k] = lin(uni(15.0, 35.0));
        p.ibar_p[k] = lin(uni(-5.0, 10.0));
        p.ibar_s[k] = lin(uni(-5.0, 15.0));
        p.vbar_p[k] = lin(uni(0.0, 10.0));
        p.r0_p[k] = uni(0.25, 1.0);
        p.o_p[k] = uni(0.005, 0.1);
    }
    p.gbar_s = lin(uni(10.0, 30.0));
    p.r0_s = uni(0.25, 1.0);
    p.ps_max = uni(0.5, 2.0);
    return p;
}

} // namespace oracle
