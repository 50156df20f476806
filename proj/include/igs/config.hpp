// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "igs/errors.hpp"
#include "igs/montecarlo.hpp"
#include "igs/params.hpp"
#include "igs/rates.hpp"
#include "igs/units.hpp"

namespace igs {

enum class Task {
    su_closed,
    pu_proper,
    pu_upper,
    pu_exact,
    pu_mc,
    su_mc,
    design_proper,
    design_improper,
};

inline const std::vector<std::pair<Task, std::string>>& task_names() {
    static const std::vector<std::pair<Task, std::string>> names = {
        {Task::su_closed, "su_closed"},       {Task::pu_proper, "pu_proper"},
        {Task::pu_upper, "pu_upper"},         {Task::pu_exact, "pu_exact"},
        {Task::pu_mc, "pu_mc"},               {Task::su_mc, "su_mc"},
        {Task::design_proper, "design_proper"}, {Task::design_improper, "design_improper"},
    };
    return names;
}

/// One sweep axis: a declared target (possibly a `pu.*.` wildcard covering
/// both nodes, or a comma-separated group swept in lockstep) plus the value
/// tuples applied point by point, in config units.
struct SweepAxis {
    std::vector<std::string> labels;             // declared entries, for CSV echo
    std::vector<std::vector<std::string>> keys;  // concrete keys per entry
    std::vector<std::vector<double>> tuples;     // tuples[point][entry]
};

struct SweepSpec {
    SystemParams scenario;
    SignalDesign point;
    bool has_point = false;
    std::vector<SweepAxis> axes;
    std::vector<Task> tasks;
    McConfig mc;
    int quad_order = 64;
};

namespace detail {

struct ConfigLine {
    int line;
    std::string key;
    std::string value;
};

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, next - pos)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

inline double parse_number(const ConfigLine& cl, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw parse_error(cl.line, "key '" + cl.key + "': '" + t + "' is not a number");
    return v;
}

inline std::uint64_t parse_u64(const ConfigLine& cl) {
    const std::string t = trim(cl.value);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || t[0] == '-')
        throw parse_error(cl.line, "key '" + cl.key + "': '" + t +
                                       "' is not an unsigned integer");
    return v;
}

// Sweepable scalar parameters, their units, and range rules. dB-valued keys
// are converted to linear exactly once, here.
inline bool apply_param(SystemParams& sp, SignalDesign& pt, const std::string& key, double v,
                        std::string* err) {
    auto fail = [&](const char* what) {
        if (err) *err = "key '" + key + "': " + what;
        return false;
    };
    auto node_field = [&](const std::string& prefix, const std::string& suffix,
                          int* node) -> bool {
        if (key.size() > prefix.size() + suffix.size() && key.compare(0, prefix.size(), prefix) == 0 &&
            key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0) {
            const std::string mid = key.substr(prefix.size(), key.size() - prefix.size() - suffix.size());
            if (mid == "1.") { *node = 0; return true; }
            if (mid == "2.") { *node = 1; return true; }
        }
        return false;
    };
    int n = -1;
    if (node_field("pu.", "power_w", &n)) {
        if (v <= 0) return fail("power must be > 0 W");
        sp.p[n] = v;
    } else if (node_field("pu.", "gbar_db", &n)) {
        sp.gbar_p[n] = db_to_linear(v);
    } else if (node_field("pu.", "ibar_p_db", &n)) {
        sp.ibar_p[n] = db_to_linear(v);
    } else if (node_field("pu.", "ibar_s_db", &n)) {
        sp.ibar_s[n] = db_to_linear(v);
    } else if (node_field("pu.", "vbar_db", &n)) {
        sp.vbar_p[n] = db_to_linear(v);
    } else if (node_field("pu.", "rate_target", &n)) {
        if (v < 0) return fail("rate target must be >= 0");
        sp.r0_p[n] = v;
    } else if (node_field("pu.", "outage_max", &n)) {
        if (!(v > 0 && v < 1)) return fail("outage threshold must lie in (0,1)");
        sp.o_p[n] = v;
    } else if (key == "su.gbar_db") {
        sp.gbar_s = db_to_linear(v);
    } else if (key == "su.rate_target") {
        if (v < 0) return fail("rate target must be >= 0");
        sp.r0_s = v;
    } else if (key == "su.ps_max_w") {
        if (v <= 0) return fail("power budget must be > 0 W");
        sp.ps_max = v;
    } else if (key == "design.ps_w") {
        if (v < 0) return fail("design power must be >= 0 W");
        pt.ps = v;
    } else if (key == "design.cx") {
        if (!(v >= 0 && v <= 1)) return fail("circularity must lie in [0,1]");
        pt.cx = v;
    } else {
        return fail("not a sweepable parameter");
    }
    return true;
}

inline const std::vector<std::string>& scenario_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const char* f : {"power_w", "gbar_db", "ibar_p_db", "ibar_s_db", "vbar_db",
                              "rate_target", "outage_max"})
            for (const char* n : {"1", "2"})
                k.push_back(std::string("pu.") + n + "." + f);
        k.push_back("su.gbar_db");
        k.push_back("su.rate_target");
        k.push_back("su.ps_max_w");
        return k;
    }();
    return keys;
}

inline SweepAxis parse_axis(const std::string& prefix,
                            const std::map<std::string, ConfigLine>& kv) {
    auto get = [&](const std::string& name) -> const ConfigLine* {
        auto it = kv.find(prefix + name);
        return it == kv.end() ? nullptr : &it->second;
    };
    const ConfigLine* param = get("param");
    SweepAxis axis;
    if (param == nullptr) return axis;

    for (const std::string& entry : split(param->value, ',')) {
        axis.labels.push_back(entry);
        std::vector<std::string> expanded;
        const std::size_t star = entry.find(".*.");
        if (star != std::string::npos) {
            expanded.push_back(entry.substr(0, star) + ".1." + entry.substr(star + 3));
            expanded.push_back(entry.substr(0, star) + ".2." + entry.substr(star + 3));
        } else {
            expanded.push_back(entry);
        }
        SystemParams probe_sp;
        SignalDesign probe_pt;
        std::string err;
        for (const std::string& k : expanded)
            if (!apply_param(probe_sp, probe_pt, k, 0.5, &err) && err.find("not a sweepable") != std::string::npos)
                throw parse_error(param->line, "key '" + prefix + "param': '" + k +
                                                   "' is not a sweepable parameter");
        axis.keys.push_back(std::move(expanded));
    }

    const ConfigLine* values = get("values");
    const ConfigLine* from = get("from");
    const ConfigLine* to = get("to");
    const ConfigLine* step = get("step");
    if (values != nullptr && (from != nullptr || to != nullptr || step != nullptr))
        throw parse_error(values->line,
                          "key '" + prefix + "values' excludes '" + prefix + "from/to/step'");
    if (values != nullptr) {
        for (const std::string& tuple_text : split(values->value, ',')) {
            std::vector<double> tuple;
            for (const std::string& part : split(tuple_text, ':'))
                tuple.push_back(parse_number(*values, part));
            if (tuple.size() != axis.labels.size())
                throw parse_error(values->line, "key '" + prefix + "values': tuple '" +
                                                    tuple_text + "' needs " +
                                                    std::to_string(axis.labels.size()) +
                                                    " value(s)");
            axis.tuples.push_back(std::move(tuple));
        }
    } else {
        if (from == nullptr || to == nullptr || step == nullptr)
            throw parse_error("sweep axis '" + prefix +
                              "' needs either 'values' or all of 'from', 'to', 'step'");
        const double a = parse_number(*from, from->value);
        const double b = parse_number(*to, to->value);
        const double s = parse_number(*step, step->value);
        if (!(s > 0) || b < a)
            throw parse_error(step->line, "key '" + prefix + "step': need step > 0 and to >= from");
        const int count = static_cast<int>(std::floor((b - a) / s + 1e-9)) + 1;
        for (int k = 0; k < count; ++k)
            axis.tuples.push_back(std::vector<double>(axis.labels.size(), a + k * s));
    }
    if (axis.tuples.empty())
        throw parse_error("sweep axis '" + prefix + "' has no points");
    return axis;
}

} // namespace detail

/// Parses the flat key-value config format. Unknown keys, missing required
/// keys, and out-of-range values are reported with key name and line.
inline SweepSpec parse_config(const std::string& text) {
    using detail::ConfigLine;

    std::map<std::string, ConfigLine> kv;
    {
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t eol = text.find('\n', pos);
            std::string line = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
            pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw parse_error(line_no, "expected 'key = value', got '" + line + "'");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty()) throw parse_error(line_no, "empty key");
            if (kv.count(key))
                throw parse_error(line_no, "duplicate key '" + key + "' (first on line " +
                                               std::to_string(kv[key].line) + ")");
            kv[key] = {line_no, key, value};
        }
    }

    // Reject unknown keys before anything else so typos surface clearly.
    {
        static const std::vector<std::string> other = {
            "design.ps_w", "design.cx",    "tasks",      "mc.samples", "mc.seed",
            "mc.streams",  "quadrature.order"};
        static const std::vector<std::string> axis_suffixes = {"param", "from", "to", "step",
                                                               "values"};
        for (const auto& [key, cl] : kv) {
            bool known = false;
            for (const std::string& k : detail::scenario_keys()) known = known || key == k;
            for (const std::string& k : other) known = known || key == k;
            for (const char* prefix : {"sweep.", "sweep2."})
                for (const std::string& s : axis_suffixes) known = known || key == prefix + s;
            if (!known) throw parse_error(cl.line, "unknown key '" + key + "'");
        }
    }

    SweepSpec spec;

    // Scenario: every key required.
    {
        std::string missing;
        for (const std::string& key : detail::scenario_keys()) {
            auto it = kv.find(key);
            if (it == kv.end()) {
                missing += missing.empty() ? key : ", " + key;
                continue;
            }
            const double v = detail::parse_number(it->second, it->second.value);
            std::string err;
            if (!detail::apply_param(spec.scenario, spec.point, key, v, &err))
                throw parse_error(it->second.line, err);
        }
        if (!missing.empty()) throw parse_error("missing required keys: " + missing);
        spec.scenario.validate();
    }

    if (kv.count("design.ps_w") || kv.count("design.cx")) {
        for (const char* key : {"design.ps_w", "design.cx"}) {
            auto it = kv.find(key);
            if (it == kv.end()) throw parse_error(std::string("missing required keys: ") + key);
            const double v = detail::parse_number(it->second, it->second.value);
            std::string err;
            if (!detail::apply_param(spec.scenario, spec.point, key, v, &err))
                throw parse_error(it->second.line, err);
        }
        spec.has_point = true;
    }

    if (auto it = kv.find("tasks"); it != kv.end()) {
        for (const std::string& name : detail::split(it->second.value, ',')) {
            bool found = false;
            for (const auto& [task, task_name] : task_names())
                if (name == task_name) {
                    if (std::find(spec.tasks.begin(), spec.tasks.end(), task) == spec.tasks.end())
                        spec.tasks.push_back(task);
                    found = true;
                }
            if (!found) throw parse_error(it->second.line, "unknown task '" + name + "'");
        }
    }

    for (const char* prefix : {"sweep.", "sweep2."}) {
        SweepAxis axis = detail::parse_axis(prefix, kv);
        if (!axis.labels.empty()) spec.axes.push_back(std::move(axis));
        else if (prefix == std::string("sweep.") && kv.count("sweep2.param"))
            throw parse_error("'sweep2.param' given without 'sweep.param'");
    }

    if (auto it = kv.find("mc.samples"); it != kv.end()) spec.mc.samples = detail::parse_u64(it->second);
    if (auto it = kv.find("mc.seed"); it != kv.end()) spec.mc.seed = detail::parse_u64(it->second);
    if (auto it = kv.find("mc.streams"); it != kv.end()) {
        const std::uint64_t s = detail::parse_u64(it->second);
        if (s < 1 || s > 4096) throw parse_error(it->second.line, "key 'mc.streams': must be in [1,4096]");
        spec.mc.streams = static_cast<unsigned>(s);
    }
    spec.mc.validate();
    if (auto it = kv.find("quadrature.order"); it != kv.end()) {
        const double v = detail::parse_number(it->second, it->second.value);
        if (v < 8 || v != std::floor(v))
            throw parse_error(it->second.line, "key 'quadrature.order': integer >= 8 required");
        spec.quad_order = static_cast<int>(v);
    }

    // Point tasks need a design point unless the sweep axes provide it.
    {
        bool needs_point = false;
        for (Task t : spec.tasks)
            needs_point = needs_point || (t != Task::design_proper && t != Task::design_improper);
        bool axis_covers = false;
        for (const SweepAxis& axis : spec.axes)
            for (const auto& keys : axis.keys)
                for (const std::string& k : keys)
                    axis_covers = axis_covers || k.rfind("design.", 0) == 0;
        if (needs_point && !spec.has_point && !axis_covers)
            throw parse_error("point tasks need 'design.ps_w' and 'design.cx'");
    }

    return spec;
}

} // namespace igs
