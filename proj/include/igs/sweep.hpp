// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "igs/config.hpp"
#include "igs/design.hpp"
#include "igs/montecarlo.hpp"
#include "igs/outage.hpp"

namespace igs {

/// A labeled, rectangular metrics table. NaN cells mark per-task numeric
/// failures; everything else is a probability, power, or echoed axis value.
struct SweepResult {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

namespace detail {

inline std::string axis_companion(const std::string& label) {
    if (label.size() > 3 && label.compare(label.size() - 3, 3, "_db") == 0)
        return label.substr(0, label.size() - 3) + "_lin";
    if (label.size() > 2 && label.compare(label.size() - 2, 2, "_w") == 0)
        return label.substr(0, label.size() - 2) + "_dbw";
    return {};
}

inline bool label_is_db(const std::string& label) {
    return label.size() > 3 && label.compare(label.size() - 3, 3, "_db") == 0;
}

} // namespace detail

/// Evaluates every enabled task at every grid point. Deterministic given the
/// spec: Monte-Carlo rows draw from per-row seeds derived from mc.seed, so
/// re-running an identical spec reproduces every byte.
inline SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.tasks.empty()) throw domain_error("sweep has no tasks enabled");
    if (spec.axes.empty()) throw domain_error("sweep needs at least one axis");

    const bool has_upper =
        std::find(spec.tasks.begin(), spec.tasks.end(), Task::pu_upper) != spec.tasks.end();

    SweepResult result;
    for (const SweepAxis& axis : spec.axes)
        for (const std::string& label : axis.labels) {
            result.header.push_back(label);
            const std::string companion = detail::axis_companion(label);
            if (!companion.empty()) result.header.push_back(companion);
        }
    for (Task t : spec.tasks) switch (t) {
            case Task::su_closed: result.header.push_back("su_outage"); break;
            case Task::pu_proper:
                result.header.insert(result.header.end(), {"pu1_outage_proper", "pu2_outage_proper"});
                break;
            case Task::pu_upper:
                result.header.insert(result.header.end(), {"pu1_outage_ub", "pu2_outage_ub"});
                break;
            case Task::pu_exact:
                result.header.insert(result.header.end(), {"pu1_outage_exact", "pu2_outage_exact"});
                if (has_upper)
                    result.header.insert(result.header.end(), {"pu1_ub_gap_rel", "pu2_ub_gap_rel"});
                break;
            case Task::pu_mc:
                result.header.insert(result.header.end(),
                                     {"pu1_outage_mc", "pu1_outage_mc_se", "pu2_outage_mc",
                                      "pu2_outage_mc_se"});
                break;
            case Task::su_mc:
                result.header.insert(result.header.end(), {"su_outage_mc", "su_outage_mc_se"});
                break;
            case Task::design_proper:
                result.header.insert(result.header.end(),
                                     {"proper_ps_w", "proper_outage", "proper_silent"});
                break;
            case Task::design_improper:
                result.header.insert(result.header.end(),
                                     {"improper_ps_w", "improper_cx", "improper_outage",
                                      "improper_silent"});
                break;
        }

    const SweepAxis& a1 = spec.axes[0];
    const std::size_t n2 = spec.axes.size() > 1 ? spec.axes[1].tuples.size() : 1;
    const double nan = std::nan("");
    std::uint64_t row_index = 0;

    for (std::size_t k1 = 0; k1 < a1.tuples.size(); ++k1) {
        for (std::size_t k2 = 0; k2 < n2; ++k2, ++row_index) {
            SystemParams sp = spec.scenario;
            SignalDesign pt = spec.point;
            std::vector<double> row;

            for (std::size_t ax = 0; ax < spec.axes.size(); ++ax) {
                const SweepAxis& axis = spec.axes[ax];
                const std::vector<double>& tuple = axis.tuples[ax == 0 ? k1 : k2];
                for (std::size_t e = 0; e < axis.labels.size(); ++e) {
                    std::string err;
                    for (const std::string& key : axis.keys[e])
                        if (!detail::apply_param(sp, pt, key, tuple[e], &err))
                            throw domain_error(err);
                    row.push_back(tuple[e]);
                    if (!detail::axis_companion(axis.labels[e]).empty())
                        row.push_back(detail::label_is_db(axis.labels[e])
                                          ? db_to_linear(tuple[e])
                                          : linear_to_db(tuple[e]));
                }
            }

            McConfig mc = spec.mc;
            mc.seed = detail::splitmix64_at(spec.mc.seed, row_index);

            auto guarded = [&](auto&& fn, std::size_t n_cols) {
                try {
                    fn();
                } catch (const domain_error&) {
                    row.insert(row.end(), n_cols, nan);
                } catch (const numeric_error&) {
                    row.insert(row.end(), n_cols, nan);
                }
            };

            for (Task t : spec.tasks) switch (t) {
                    case Task::su_closed:
                        guarded([&] { row.push_back(su_outage(sp, pt)); }, 1);
                        break;
                    case Task::pu_proper:
                        guarded(
                            [&] {
                                row.push_back(pu_outage_proper(sp, 1, pt.ps));
                                row.push_back(pu_outage_proper(sp, 2, pt.ps));
                            },
                            2);
                        break;
                    case Task::pu_upper:
                        guarded(
                            [&] {
                                row.push_back(pu_outage_upper(sp, 1, pt));
                                row.push_back(pu_outage_upper(sp, 2, pt));
                            },
                            2);
                        break;
                    case Task::pu_exact:
                        guarded(
                            [&] {
                                const OutageValue e1 = pu_outage_exact(sp, 1, pt, spec.quad_order);
                                const OutageValue e2 = pu_outage_exact(sp, 2, pt, spec.quad_order);
                                row.push_back(e1.value);
                                row.push_back(e2.value);
                                if (has_upper) {
                                    row.push_back((pu_outage_upper(sp, 1, pt) - e1.value) /
                                                  std::max(e1.value, 1e-300));
                                    row.push_back((pu_outage_upper(sp, 2, pt) - e2.value) /
                                                  std::max(e2.value, 1e-300));
                                }
                            },
                            has_upper ? 4 : 2);
                        break;
                    case Task::pu_mc:
                        guarded(
                            [&] {
                                const McEstimate m1 = estimate_pu_outage(sp, 1, pt, mc);
                                const McEstimate m2 = estimate_pu_outage(sp, 2, pt, mc);
                                row.insert(row.end(), {m1.mean, m1.std_err, m2.mean, m2.std_err});
                            },
                            4);
                        break;
                    case Task::su_mc:
                        guarded(
                            [&] {
                                const McEstimate m = estimate_su_outage(sp, pt, mc);
                                row.insert(row.end(), {m.mean, m.std_err});
                            },
                            2);
                        break;
                    case Task::design_proper:
                        guarded(
                            [&] {
                                const DesignOutcome o = design_proper(sp);
                                row.insert(row.end(),
                                           {o.ps_star, o.outage, o.silent ? 1.0 : 0.0});
                            },
                            3);
                        break;
                    case Task::design_improper:
                        guarded(
                            [&] {
                                const DesignOutcome o = design_improper(sp);
                                row.insert(row.end(), {o.ps_star, o.cx_star, o.outage,
                                                       o.silent ? 1.0 : 0.0});
                            },
                            4);
                        break;
                }

            if (row.size() != result.header.size())
                throw numeric_error("sweep row width mismatch");
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

/// RFC-4180-style CSV: header first, CRLF line endings, floats at 12
/// significant digits, NaN cells rendered as `nan`. Returns bytes written.
inline std::size_t emit_csv(const SweepResult& result, std::ostream& out) {
    for (const std::vector<double>& row : result.rows)
        if (row.size() != result.header.size())
            throw domain_error("sweep result is not rectangular");

    std::size_t bytes = 0;
    auto put = [&](const std::string& s) {
        out.write(s.data(), static_cast<std::streamsize>(s.size()));
        bytes += s.size();
    };
    for (std::size_t c = 0; c < result.header.size(); ++c) {
        if (c) put(",");
        put(result.header[c]);
    }
    put("\r\n");
    char buf[64];
    for (const std::vector<double>& row : result.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) put(",");
            if (std::isnan(row[c])) {
                put("nan");
            } else {
                std::snprintf(buf, sizeof buf, "%.12g", row[c]);
                put(buf);
            }
        }
        put("\r\n");
    }
    out.flush();
    if (!out) throw io_error("failed writing CSV output stream");
    return bytes;
}

} // namespace igs
