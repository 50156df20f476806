#include "doctest.h"

#include <cmath>
#include <random>

#include "igs/params.hpp"
#include "igs/units.hpp"
#include "oracle.hpp"

using namespace igs;

TEST_CASE("snr_threshold maps rate targets to linear thresholds") {
    CHECK(snr_threshold(0.0) == 0.0);
    CHECK(snr_threshold(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(snr_threshold(1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(snr_threshold(-0.1), domain_error);
    CHECK_THROWS_AS(snr_threshold(std::nan("")), domain_error);
}

TEST_CASE("snr_threshold is strictly increasing and convex") {
    double prev = snr_threshold(0.0);
    double prev_slope = -1.0;
    for (int k = 1; k <= 40; ++k) {
        const double r = 0.1 * k;
        const double v = snr_threshold(r);
        CHECK(v > prev);
        const double slope = (v - prev) / 0.1;
        CHECK(slope > prev_slope);
        prev = v;
        prev_slope = slope;
    }
}

TEST_CASE("qos_margin values and domain") {
    CHECK(qos_margin(1.0, 10.0, 0.0) == 0.0);
    // p=1, gbar=25 dB, o=0.01
    CHECK(qos_margin(1.0, db_to_linear(25.0), 0.01) ==
          doctest::Approx(3.17819525467171).epsilon(1e-13));
    CHECK_THROWS_AS(qos_margin(1.0, 10.0, 1.0), domain_error);
    CHECK_THROWS_AS(qos_margin(1.0, 10.0, -0.1), domain_error);
    CHECK_THROWS_AS(qos_margin(0.0, 10.0, 0.5), domain_error);

    // strictly increasing in each argument
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double p = 0.1 + 3.0 * u01(rng);
        const double g = 1.0 + 500.0 * u01(rng);
        const double o = 0.98 * u01(rng);
        const double base = qos_margin(p, g, o);
        CHECK(qos_margin(p * 1.01, g, o) >= base);
        CHECK(qos_margin(p, g * 1.01, o) >= base);
        CHECK(qos_margin(p, g, o + 0.01) > base);
    }
}

TEST_CASE("max_interference_margin clamp behavior") {
    PuConstraintConstants c;
    c.gamma_p = 3.0;
    c.mu = 1.0; // exactly sqrt(1+3)-1
    CHECK(max_interference_margin(c) == 0.0);
    c.mu = 2.0;
    CHECK(max_interference_margin(c) == doctest::Approx(1.0).epsilon(1e-15));
    c.mu = 0.5;
    CHECK(max_interference_margin(c) == 0.0);
    c.gamma_p = 0.0;
    CHECK_THROWS_AS(max_interference_margin(c), domain_error);
}

TEST_CASE("constraint_constants at the baseline") {
    const SystemParams p = oracle::baseline();
    const PuConstraintConstants c = constraint_constants(p, 1);
    CHECK(c.gamma_p == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.mu == doctest::Approx(3.17819525467171).epsilon(1e-13));
    CHECK(c.beta == doctest::Approx(4.16227766016838).epsilon(1e-13));
    CHECK(c.lambda == doctest::Approx(0.984082405496668).epsilon(1e-12));
    CHECK(c.upsilon == doctest::Approx(19.2334319728275).epsilon(1e-12));

    // symmetric scenario: identical constants per direction
    const PuConstraintConstants c2 = constraint_constants(p, 2);
    CHECK(c.gamma_p == c2.gamma_p);
    CHECK(c.mu == c2.mu);
    CHECK(c.beta == c2.beta);
    CHECK(c.lambda == c2.lambda);
    CHECK(c.upsilon == c2.upsilon);

    // consistency: lambda and upsilon recompute exactly from the raw parts
    CHECK(c.lambda == c.beta * c.gamma_p - c.mu);
    CHECK(c.upsilon == c.mu * c.mu + 2.0 * c.beta * c.mu - c.gamma_p * c.beta * c.beta);
}

TEST_CASE("constraint_constants forced signs at zero outage budget") {
    SystemParams p = oracle::baseline();
    p.o_p = {0.0, 0.0}; // bypasses validate(); the constants are still defined
    const PuConstraintConstants c = constraint_constants(p, 1);
    CHECK(c.mu == 0.0);
    CHECK(c.lambda > 0.0);
    CHECK(c.lambda == doctest::Approx(c.beta * c.gamma_p));
    CHECK(c.upsilon < 0.0);
}

TEST_CASE("upsilon sign equals the positive-root condition on mu") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 10000; ++k) {
        const SystemParams p = oracle::random_params(rng);
        const int node = 1 + static_cast<int>(rng() % 2);
        const PuConstraintConstants c = constraint_constants(p, node);
        const bool by_sign = c.upsilon > 0.0;
        const bool by_root = c.mu > c.beta * (std::sqrt(1.0 + c.gamma_p) - 1.0);
        CHECK(by_sign == by_root);
    }
}

TEST_CASE("dB round-trip is identity to 1e-12 relative") {
    for (double db = -40.0; db <= 40.0; db += 0.37) {
        const double back = linear_to_db(db_to_linear(db));
        CHECK(back == doctest::Approx(db).epsilon(1e-12));
    }
    for (double x : {0.001, 0.5, 1.0, 3.7, 316.227766, 1e4}) {
        CHECK(db_to_linear(linear_to_db(x)) == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("SystemParams validation rejects bad fields") {
    SystemParams p = oracle::baseline();
    CHECK_NOTHROW(p.validate());
    p.o_p[1] = 1.5;
    CHECK_THROWS_AS(p.validate(), domain_error);
    p = oracle::baseline();
    p.gbar_s = 0.0;
    CHECK_THROWS_AS(p.validate(), domain_error);
    p = oracle::baseline();
    p.ps_max = -1.0;
    CHECK_THROWS_AS(p.validate(), domain_error);
    CHECK_THROWS_AS(check_node(0), domain_error);
    CHECK_THROWS_AS(check_node(3), domain_error);
    CHECK(partner(1) == 2);
    CHECK(partner(2) == 1);
}
