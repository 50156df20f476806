// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "igs/errors.hpp"

namespace igs {

/// Gauss-Laguerre rule: sum_k w_k f(x_k) ~= integral_0^inf f(x) e^{-x} dx.
/// Exact for polynomials up to degree 2n-1, which makes it the natural
/// expectation rule for unit-mean exponential random variables.
struct LaguerreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
// Laguerre recurrence (diag 2k+1, off-diag k), weights come from the first
// components of the eigenvectors. Eigen decomposition by implicit-shift QL
// on the symmetric tridiagonal matrix, tracking only the first row of the
// eigenvector matrix.
inline LaguerreRule build_laguerre_rule(int n) {
    std::vector<double> d(n), e(n, 0.0), z(n, 0.0);
    for (int k = 0; k < n; ++k) d[k] = 2.0 * k + 1.0;
    for (int k = 1; k < n; ++k) e[k - 1] = static_cast<double>(k);
    z[0] = 1.0;

    const double eps = 2.3e-16;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (++iter > 60) throw numeric_error("laguerre rule: QL iteration stalled");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    LaguerreRule rule;
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    for (int idx : order) {
        rule.nodes.push_back(d[idx]);
        rule.weights.push_back(z[idx] * z[idx]); // mu_0 = integral e^{-x} dx = 1
    }
    return rule;
}

} // namespace detail

/// Shared, immutable rule for a given node count. Thread-safe cache.
inline std::shared_ptr<const LaguerreRule> laguerre_rule(int n) {
    if (n < 1) throw domain_error("laguerre rule needs at least one node");
    static std::mutex mtx;
    static std::map<int, std::shared_ptr<const LaguerreRule>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto rule = std::make_shared<const LaguerreRule>(detail::build_laguerre_rule(n));
    cache.emplace(n, rule);
    return rule;
}

} // namespace igs
