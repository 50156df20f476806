// SPDX-License-Identifier: Apache-2.0
//
// igsim: outage analysis and SU signal design for an underlay secondary link
// sharing spectrum with a full-duplex primary pair.
//
//   igsim eval     --config FILE    all point metrics at the configured design
//   igsim design   --config FILE    proper + improper designs for the scenario
//   igsim sweep    --config FILE    run the configured sweep, emit CSV
//   igsim validate [--config FILE]  oracle-agreement checks, pass/fail lines
//
// Exit codes: 0 ok, 1 validation/parse error, 2 numeric error, 3 I/O error.
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "igs/igs.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw igs::io_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw igs::io_error("failed reading config file '" + path + "'");
    return ss.str();
}

igs::SystemParams builtin_baseline() {
    igs::SystemParams p;
    p.p = {1.0, 1.0};
    p.gbar_p = {igs::db_to_linear(25), igs::db_to_linear(25)};
    p.ibar_p = {igs::db_to_linear(3), igs::db_to_linear(3)};
    p.ibar_s = {igs::db_to_linear(13), igs::db_to_linear(13)};
    p.vbar_p = {igs::db_to_linear(5), igs::db_to_linear(5)};
    p.gbar_s = igs::db_to_linear(20);
    p.r0_p = {0.5, 0.5};
    p.r0_s = 0.5;
    p.o_p = {0.01, 0.01};
    p.ps_max = 1.0;
    return p;
}

struct CommonOpts {
    std::string config;
    std::string out;
    bool has_seed = false;
    std::uint64_t seed = 0;
    bool has_samples = false;
    std::uint64_t samples = 0;
    int quad_order = 0; // 0: use config value
};

void apply_overrides(igs::SweepSpec& spec, const CommonOpts& opt) {
    if (opt.has_seed) spec.mc.seed = opt.seed;
    if (opt.has_samples) spec.mc.samples = opt.samples;
    if (opt.quad_order > 0) spec.quad_order = opt.quad_order;
    spec.mc.validate();
}

int cmd_eval(const CommonOpts& opt) {
    igs::SweepSpec spec = igs::parse_config(read_file(opt.config));
    apply_overrides(spec, opt);
    if (!spec.has_point)
        throw igs::parse_error("eval needs 'design.ps_w' and 'design.cx' in the config");
    const igs::SystemParams& p = spec.scenario;
    const igs::SignalDesign& d = spec.point;

    std::printf("design point: ps = %.12g W, cx = %.12g\n", d.ps, d.cx);
    if (d.ps > 0.0)
        std::printf("su_outage            = %.12g\n", igs::su_outage(p, d));
    else
        std::printf("su_outage            = silent (ps = 0)\n");
    for (int node : {1, 2}) {
        std::printf("pu%d_outage_proper    = %.12g   (cx = 0, same ps)\n", node,
                    igs::pu_outage_proper(p, node, d.ps));
        std::printf("pu%d_outage_ub        = %.12g\n", node, igs::pu_outage_upper(p, node, d));
        const igs::OutageValue ex = igs::pu_outage_exact(p, node, d, spec.quad_order);
        std::printf("pu%d_outage_exact     = %.12g   (order %d, rel change %.3g%s)\n", node,
                    ex.value, ex.order, ex.rel_change, ex.warning ? ", NOT CONVERGED" : "");
    }
    const igs::McEstimate su = igs::estimate_su_outage(p, d, spec.mc);
    std::printf("su_outage_mc         = %.12g +- %.3g   (n = %" PRIu64 ", rng = %s, seed = %" PRIu64
                ")\n",
                su.mean, su.std_err, su.samples, std::string(su.rng).c_str(), spec.mc.seed);
    for (int node : {1, 2}) {
        const igs::McEstimate pu = igs::estimate_pu_outage(p, node, d, spec.mc);
        std::printf("pu%d_outage_mc        = %.12g +- %.3g\n", node, pu.mean, pu.std_err);
    }
    return 0;
}

void print_outcome(const char* name, const igs::DesignOutcome& o) {
    if (o.silent) {
        std::printf("%s: silent (no feasible positive power), outage = 1\n", name);
    } else {
        std::printf("%s: ps* = %.12g W, cx* = %.12g, su outage = %.12g\n", name, o.ps_star,
                    o.cx_star, o.outage);
    }
    for (const igs::DesignCandidate& c : o.candidates) {
        const char* active = c.active == igs::ActiveLimit::budget
                                 ? "budget"
                                 : (c.active == igs::ActiveLimit::cap1 ? "cap1" : "cap2");
        std::printf("  interval %d candidate: ps = %.12g, cx = %.12g, outage = %.12g (%s)\n",
                    c.interval, c.ps, c.cx, c.outage, active);
    }
    for (const std::string& note : o.notes) std::printf("  note: %s\n", note.c_str());
}

int cmd_design(const CommonOpts& opt) {
    const igs::SweepSpec spec = igs::parse_config(read_file(opt.config));
    const igs::SystemParams& p = spec.scenario;

    for (int node : {1, 2}) {
        const igs::PuConstraintConstants c = igs::constraint_constants(p, node);
        std::printf("pu%d constraint: gamma = %.6g, mu = %.6g, beta = %.6g, lambda = %.6g, "
                    "upsilon = %.6g, max interference margin = %.6g\n",
                    node, c.gamma_p, c.mu, c.beta, c.lambda, c.upsilon,
                    c.gamma_p > 0.0 ? igs::max_interference_margin(c) : 0.0);
    }
    const igs::Breakpoints bp = igs::breakpoints(p);
    std::printf("breakpoints:");
    for (double x : bp.points) std::printf(" %.12g", x);
    std::printf("\n");
    print_outcome("proper  ", igs::design_proper(p));
    print_outcome("improper", igs::design_improper(p));
    return 0;
}

int cmd_sweep(const CommonOpts& opt) {
    igs::SweepSpec spec = igs::parse_config(read_file(opt.config));
    apply_overrides(spec, opt);
    const igs::SweepResult result = igs::run_sweep(spec);
    if (opt.out.empty() || opt.out == "-") {
        igs::emit_csv(result, std::cout);
        return 0;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw igs::io_error("cannot open output file '" + opt.out + "'");
    const std::size_t bytes = igs::emit_csv(result, out);
    out.close();
    if (!out) throw igs::io_error("failed writing output file '" + opt.out + "'");
    std::fprintf(stderr, "wrote %zu bytes (%zu rows) to %s\n", bytes, result.rows.size(),
                 opt.out.c_str());
    return 0;
}

int cmd_validate(const CommonOpts& opt) {
    igs::SystemParams p = builtin_baseline();
    igs::McConfig mc;
    mc.samples = 200000;
    mc.seed = 20240101;
    mc.streams = 2;
    int quad_order = 64;
    if (!opt.config.empty()) {
        igs::SweepSpec spec = igs::parse_config(read_file(opt.config));
        p = spec.scenario;
        mc = spec.mc;
        quad_order = spec.quad_order;
    }
    if (opt.has_seed) mc.seed = opt.seed;
    if (opt.has_samples) mc.samples = opt.samples;
    if (opt.quad_order > 0) quad_order = opt.quad_order;

    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& detail) {
        std::printf("[%s] %-44s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
        if (!ok) ++failures;
    };
    char buf[160];

    {
        const igs::SignalDesign d{std::min(1.0, p.ps_max), 0.0};
        const double closed = igs::su_outage(p, d);
        const igs::McEstimate e = igs::estimate_su_outage(p, d, mc);
        std::snprintf(buf, sizeof buf, "closed %.6g vs mc %.6g +- %.2g", closed, e.mean,
                      e.std_err);
        report("su outage closed form vs Monte Carlo", std::abs(closed - e.mean) <= 3 * e.std_err,
               buf);
    }
    {
        const igs::SignalDesign d{std::min(1.0, p.ps_max), 0.0};
        const double closed = igs::pu_outage_proper(p, 1, d.ps);
        const igs::McEstimate e = igs::estimate_pu_outage(p, 1, d, mc);
        std::snprintf(buf, sizeof buf, "closed %.6g vs mc %.6g +- %.2g", closed, e.mean,
                      e.std_err);
        report("pu outage proper closed form vs Monte Carlo",
               std::abs(closed - e.mean) <= 3 * e.std_err, buf);
    }
    {
        const igs::SignalDesign d{std::min(1.0, p.ps_max), 0.5};
        const igs::OutageValue ex = igs::pu_outage_exact(p, 1, d, quad_order);
        const igs::McEstimate e = igs::estimate_pu_outage(p, 1, d, mc);
        std::snprintf(buf, sizeof buf, "quad %.6g (order %d) vs mc %.6g +- %.2g", ex.value,
                      ex.order, e.mean, e.std_err);
        report("pu outage quadrature vs Monte Carlo",
               !ex.warning && std::abs(ex.value - e.mean) <= 3 * e.std_err, buf);
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (double cx = 0.0; cx <= 1.0; cx += 0.1) {
            const igs::SignalDesign d{std::min(1.0, p.ps_max), cx};
            const igs::OutageValue ex = igs::pu_outage_exact(p, 1, d, quad_order);
            const double ub = igs::pu_outage_upper(p, 1, d);
            ok = ok && ub >= ex.value - 1e-10;
            worst = std::max(worst, ex.value - ub);
        }
        std::snprintf(buf, sizeof buf, "max violation %.3g", worst);
        report("Jensen bound dominates the exact outage", ok, buf);
    }
    {
        const double limit = igs::su_outage(p, {std::min(1.0, p.ps_max), 1.0});
        const double near = igs::su_outage(p, {std::min(1.0, p.ps_max), 1.0 - 1e-8});
        std::snprintf(buf, sizeof buf, "limit %.6g vs cx=1-1e-8 %.6g", limit, near);
        report("cx -> 1 continuity of the SU closed form", std::abs(limit - near) <= 1e-6, buf);
    }
    {
        const igs::SignalDesign d{std::min(1.0, p.ps_max), 0.25};
        const igs::McEstimate a = igs::estimate_su_outage(p, d, mc);
        const igs::McEstimate b = igs::estimate_su_outage(p, d, mc);
        report("Monte-Carlo determinism", a.mean == b.mean && a.std_err == b.std_err,
               "two runs bit-identical");
    }
    {
        const igs::DesignOutcome di = igs::design_improper(p);
        const igs::DesignOutcome dp = igs::design_proper(p);
        bool ok = di.silent || ((di.ps_star <= p.ps_max + 1e-12) &&
                                igs::pu_outage_upper(p, 1, {di.ps_star, di.cx_star}) <=
                                    p.o_p[0] + 1e-9 &&
                                igs::pu_outage_upper(p, 2, {di.ps_star, di.cx_star}) <=
                                    p.o_p[1] + 1e-9);
        std::snprintf(buf, sizeof buf, "proper outage %.6g, improper outage %.6g", dp.outage,
                      di.outage);
        report("improper design feasible", ok, buf);
    }
    if (failures > 0) throw igs::numeric_error(std::to_string(failures) + " validation check(s) failed");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"outage analysis and SU signal design for spectrum sharing with a full-duplex "
                 "primary pair"};
    app.require_subcommand(1);

    CommonOpts opt;
    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", opt.config, "scenario / sweep config file");
        if (config_required) c->required();
        sub->add_option("--seed", opt.seed, "override mc.seed")->each([&](const std::string&) {
            opt.has_seed = true;
        });
        sub->add_option("--samples", opt.samples, "override mc.samples")
            ->each([&](const std::string&) { opt.has_samples = true; });
        sub->add_option("--quadrature-order", opt.quad_order,
                        "override quadrature.order (nodes per axis)");
    };

    CLI::App* eval = app.add_subcommand("eval", "all metrics at one design point");
    add_common(eval, true);
    CLI::App* design = app.add_subcommand("design", "proper and improper designs");
    add_common(design, true);
    CLI::App* sweep = app.add_subcommand("sweep", "run a sweep and emit CSV");
    add_common(sweep, true);
    sweep->add_option("--out", opt.out, "output CSV path (default: stdout)");
    CLI::App* validate = app.add_subcommand("validate", "oracle-agreement checks");
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(eval)) return cmd_eval(opt);
        if (app.got_subcommand(design)) return cmd_design(opt);
        if (app.got_subcommand(sweep)) return cmd_sweep(opt);
        if (app.got_subcommand(validate)) return cmd_validate(opt);
    } catch (const igs::io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const igs::numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 2;
    } catch (const igs::parse_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const igs::domain_error& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
