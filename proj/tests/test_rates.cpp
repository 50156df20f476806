#include "doctest.h"

#include <cmath>
#include <random>

#include "igs/rates.hpp"
#include "oracle.hpp"

using namespace igs;

namespace {

FadingRealization make_real(double g_p, double i_p, double i_s, double v_p, double g_s) {
    FadingRealization r;
    r.g_p = {g_p, g_p};
    r.i_p = {i_p, i_p};
    r.i_s = {i_s, i_s};
    r.v_p = {v_p, v_p};
    r.g_s = g_s;
    return r;
}

} // namespace

TEST_CASE("pu_rate closed cases") {
    const SystemParams p = oracle::baseline();

    // p_i g = 10, p_j v = 2, ps I = 1, cx = 1: 0.5*log2(195/15) = 0.5*log2(13)
    const FadingRealization r = make_real(10.0, 0.0, 1.0, 2.0, 0.0);
    CHECK(pu_rate(p, 1, r, {1.0, 1.0}) == doctest::Approx(1.85021985907055).epsilon(1e-13));

    // cx = 0 reduces to the proper rate
    const double proper = pu_rate(p, 1, r, {1.0, 0.0});
    CHECK(proper == doctest::Approx(std::log2(1.0 + 10.0 / (2.0 + 1.0 + 1.0))).epsilon(1e-13));

    // ps = 0: independent of cx
    CHECK(pu_rate(p, 1, r, {0.0, 0.3}) ==
          doctest::Approx(std::log2(1.0 + 10.0 / (2.0 + 1.0))).epsilon(1e-13));
    CHECK(pu_rate(p, 1, r, {0.0, 0.9}) == pu_rate(p, 1, r, {0.0, 0.0}));
}

TEST_CASE("su_rate closed cases") {
    SystemParams p = oracle::baseline();
    p.p = {1.0, 1.0};

    // ps gs = 10, den = 2 => i_p sums to 1 over both nodes
    const FadingRealization r = make_real(0.0, 0.5, 0.0, 0.0, 10.0);
    CHECK(su_rate(p, r, {1.0, 0.5}) == doctest::Approx(2.44740888165397).epsilon(1e-13));
    CHECK(su_rate(p, r, {1.0, 0.0}) == doctest::Approx(std::log2(1.0 + 10.0 / 2.0)).epsilon(1e-13));
    CHECK(su_rate(p, r, {1.0, 1.0}) ==
          doctest::Approx(0.5 * std::log2(1.0 + 2.0 * 10.0 / 2.0)).epsilon(1e-13));
}

TEST_CASE("rate monotonicity in the circularity coefficient") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const SystemParams p = oracle::random_params(rng);
        FadingRealization r;
        r.g_p = {20.0 * u01(rng), 20.0 * u01(rng)};
        r.i_p = {5.0 * u01(rng), 5.0 * u01(rng)};
        r.i_s = {0.1 + 10.0 * u01(rng), 0.1 + 10.0 * u01(rng)};
        r.v_p = {5.0 * u01(rng), 5.0 * u01(rng)};
        r.g_s = 0.1 + 30.0 * u01(rng);
        const double ps = 0.1 + u01(rng);
        const double cx = 0.9 * u01(rng);
        const double dcx = 0.05;
        const int node = 1 + static_cast<int>(rng() % 2);

        // pu_rate strictly increasing in cx when the SU interferes
        CHECK(pu_rate(p, node, r, {ps, cx + dcx}) > pu_rate(p, node, r, {ps, cx}));
        // su_rate strictly decreasing in cx when the SU link carries power
        CHECK(su_rate(p, r, {ps, cx + dcx}) < su_rate(p, r, {ps, cx}));
        // su_rate strictly increasing in ps at fixed cx
        CHECK(su_rate(p, r, {ps * 1.05, cx}) > su_rate(p, r, {ps, cx}));
        // impropriety never hurts the PU: pu_rate(cx) >= pu_rate(0)
        CHECK(pu_rate(p, node, r, {ps, cx}) >= pu_rate(p, node, r, {ps, 0.0}));
    }
}

TEST_CASE("psi_s values and edge cases") {
    SystemParams p = oracle::baseline();
    p.gbar_s = 100.0; // 20 dB
    CHECK(psi_s(p, {1.0, 0.0}) == doctest::Approx(4.14213562373095e-3).epsilon(1e-13));
    CHECK(psi_s(p, {1.0, 1.0}) == 0.0);
    p.r0_s = 0.0;
    CHECK(psi_s(p, {1.0, 0.3}) == 0.0);
    CHECK_THROWS_AS(psi_s(p, {0.0, 0.3}), domain_error);
}

TEST_CASE("psi_p values and edge cases") {
    const SystemParams p = oracle::baseline();
    CHECK(psi_p(p, 1, 0.0) == doctest::Approx(1.3098582948312e-3).epsilon(1e-12));
    CHECK(psi_p(p, 1, 1.0) == 0.0);
    CHECK_THROWS_AS(psi_p(p, 1, -0.1), domain_error);
    CHECK_THROWS_AS(psi_p(p, 1, 1.1), domain_error);

    SystemParams z = oracle::baseline();
    z.r0_p = {0.0, 0.0};
    for (double x : {0.0, 0.3, 0.9, 1.0}) CHECK(psi_p(z, 1, x) == 0.0);

    // non-increasing in x
    double prev = psi_p(p, 1, 0.0);
    for (int k = 1; k <= 20; ++k) {
        const double cur = psi_p(p, 1, k / 20.0);
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("psi_p equals psi_s under matched parameters") {
    // Structural identity: same Gamma, power and mean CNR give the same value.
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        SystemParams p = oracle::baseline();
        const double r0 = u01(rng);
        const double ps = 0.2 + 2.0 * u01(rng);
        const double gbar = 10.0 + 200.0 * u01(rng);
        const double x = u01(rng);
        p.r0_s = r0;
        p.gbar_s = gbar;
        p.r0_p = {r0, r0};
        p.p = {ps, ps};
        p.gbar_p = {gbar, gbar};
        CHECK(psi_p(p, 1, x) == doctest::Approx(psi_s(p, {ps, x})).epsilon(1e-12));
    }
}

TEST_CASE("input validation") {
    const SystemParams p = oracle::baseline();
    FadingRealization bad = make_real(1.0, 1.0, 1.0, 1.0, -1.0);
    CHECK_THROWS_AS(su_rate(p, bad, {1.0, 0.0}), domain_error);
    const FadingRealization ok = make_real(1.0, 1.0, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(su_rate(p, ok, {1.0, 1.5}), domain_error);
    CHECK_THROWS_AS(su_rate(p, ok, {-0.5, 0.0}), domain_error);
}
