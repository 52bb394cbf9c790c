#include "gridsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gridsim/errors.hpp"

namespace gridsim {

namespace {

std::string num(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

bool hasPhases(const SimulationTrace& tr, const std::string& base) {
    return tr.hasChannel(base + "_a") && tr.hasChannel(base + "_b") && tr.hasChannel(base + "_c");
}

std::array<std::vector<double>, 3> phaseWindows(const SimulationTrace& tr,
                                                const std::string& base, double from,
                                                double to) {
    return {tr.window(base + "_a", from, to), tr.window(base + "_b", from, to),
            tr.window(base + "_c", from, to)};
}

WindowMetrics windowMetrics(const SimulationTrace& tr, double from, double to, double f0,
                            int cycles) {
    WindowMetrics m;
    m.t_from = from;
    m.t_to = to;
    if (!hasPhases(tr, "v_bus") || !hasPhases(tr, "i_source")) return m;
    const auto v = phaseWindows(tr, "v_bus", from, to);
    const auto i = phaseWindows(tr, "i_source", from, to);
    if (v[0].empty() || i[0].empty()) return m;

    try {
        m.thd_i_source = thd(spectrum(i[0], tr.dt(), f0, cycles));
        m.has_thd = true;
    } catch (const UndefinedMetricError&) {
    } catch (const InsufficientDataError&) {
    }
    try {
        m.power = powerMetrics(v, i);
        const auto pq = meanPq(v, i);
        m.mean_p_pq = pq[0];
        m.mean_q_pq = pq[1];
        m.has_power = true;
    } catch (const UndefinedMetricError&) {
    } catch (const InsufficientDataError&) {
    }
    try {
        m.displacement_pf = displacementPowerFactor(spectrum(v[0], tr.dt(), f0, cycles),
                                                    spectrum(i[0], tr.dt(), f0, cycles));
        m.has_dpf = true;
    } catch (const UndefinedMetricError&) {
    } catch (const InsufficientDataError&) {
    }
    return m;
}

double windowMean(const std::vector<double>& w) {
    double acc = 0.0;
    for (double x : w) acc += x;
    return w.empty() ? 0.0 : acc / static_cast<double>(w.size());
}

} // namespace

ReportSummary summarize(const ScenarioConfig& cfg, const RunResult& result, int cycles) {
    if (cycles < 2) throw ConfigError("summarize: require cycles >= 2");
    const SimulationTrace& tr = result.trace;
    ReportSummary s;
    s.scenario_name = cfg.name;
    s.fundamental_hz = cfg.frequency;
    s.cycles = cycles;

    const double t_end = static_cast<double>(tr.length()) * tr.dt();
    const double win = static_cast<double>(cycles) / cfg.frequency;
    if (t_end < win) return s;  // run shorter than one window: nothing to report

    // regimes split at the engage instant; engage outside (0, t_end] means a
    // single regime and only the end window exists
    const bool split = cfg.sapf_enabled && cfg.sapf_engage_time > 0.0 &&
                       cfg.sapf_engage_time <= t_end && cfg.sapf_engage_time >= win;
    if (split) {
        s.pre = windowMetrics(tr, cfg.sapf_engage_time - win, cfg.sapf_engage_time,
                              cfg.frequency, cycles);
        s.has_pre = true;
    }
    s.post = windowMetrics(tr, t_end - win, t_end, cfg.frequency, cycles);
    s.has_post = true;

    if (cfg.sapf_enabled && tr.hasChannel("v_dc_sapf")) {
        const auto w = tr.window("v_dc_sapf", t_end - win, t_end);
        if (!w.empty()) {
            s.v_dc_mean = windowMean(w);
            const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
            s.v_dc_ripple = *hi - *lo;
            s.has_dc_link = true;
        }
    }
    if (cfg.pv_enabled && tr.hasChannel("p_pv")) {
        const auto w = tr.window("p_pv", t_end - win, t_end);
        if (!w.empty()) {
            s.p_pv_mean = windowMean(w);
            s.has_pv = true;
            if (cfg.pv_irradiance == 1000.0) {
                s.mpp_error_pct = 100.0 * std::abs(s.p_pv_mean - cfg.pv_p_mpp) / cfg.pv_p_mpp;
                s.has_mpp_error = true;
            }
        }
    }
    if (cfg.mhp_enabled && tr.hasChannel("elc_steps")) {
        s.elc_mean_steps = windowMean(tr.window("elc_steps", 0.0, t_end));
        s.elc_switchings = result.stats.elc_switchings;
        s.has_elc = true;
    }
    if (cfg.rectifier_enabled) {
        s.diode_iteration_misses = result.stats.rectifier_fixed_point_misses;
        s.has_rectifier = true;
    }
    return s;
}

namespace {

std::string padLeft(const std::string& v, std::size_t width) {
    return v.size() >= width ? v : std::string(width - v.size(), ' ') + v;
}

std::string padRight(const std::string& v, std::size_t width) {
    return v.size() >= width ? v : v + std::string(width - v.size(), ' ');
}

std::string row(const std::string& label, const std::string& pre, const std::string& post) {
    return padRight(label, 20) + padLeft(pre, 16) + padLeft(post, 17) + "\n";
}

std::string windowLabel(const WindowMetrics& m, bool present) {
    if (!present) return "n/a";
    return "[" + num(m.t_from, 3) + ", " + num(m.t_to, 3) + ")";
}

std::string cell(bool present, bool flag, double value, int prec) {
    return present && flag ? num(value, prec) : "n/a";
}

} // namespace

std::string formatReport(const ReportSummary& s) {
    std::string out;
    out += "scenario: " + s.scenario_name + "\n";
    out += "fundamental: " + num(s.fundamental_hz, 1) + " Hz, windows of " +
           std::to_string(s.cycles) + " cycles\n\n";

    out += row("metric", "pre-engage", "post-engage");
    out += row("window [s]", windowLabel(s.pre, s.has_pre), windowLabel(s.post, s.has_post));
    out += row("thd i_source [%]",
               cell(s.has_pre, s.pre.has_thd, 100.0 * s.pre.thd_i_source, 2),
               cell(s.has_post, s.post.has_thd, 100.0 * s.post.thd_i_source, 2));
    out += row("p source [kW]",
               cell(s.has_pre, s.pre.has_power, s.pre.power.p / 1e3, 2),
               cell(s.has_post, s.post.has_power, s.post.power.p / 1e3, 2));
    out += row("q source [kvar]",
               cell(s.has_pre, s.pre.has_power, s.pre.power.q / 1e3, 2),
               cell(s.has_post, s.post.has_power, s.post.power.q / 1e3, 2));
    out += row("s source [kVA]",
               cell(s.has_pre, s.pre.has_power, s.pre.power.s / 1e3, 2),
               cell(s.has_post, s.post.has_power, s.post.power.s / 1e3, 2));
    out += row("power factor",
               cell(s.has_pre, s.pre.has_power, s.pre.power.power_factor, 3),
               cell(s.has_post, s.post.has_power, s.post.power.power_factor, 3));
    out += row("displacement pf",
               cell(s.has_pre, s.pre.has_dpf, s.pre.displacement_pf, 3),
               cell(s.has_post, s.post.has_dpf, s.post.displacement_pf, 3));
    out += "\n";

    if (s.has_dc_link)
        out += "sapf dc link [V]: mean " + num(s.v_dc_mean, 2) + ", ripple " +
               num(s.v_dc_ripple, 2) + "\n";
    if (s.has_pv) {
        out += "pv [kW]: mean " + num(s.p_pv_mean / 1e3, 2);
        if (s.has_mpp_error) out += " (mpp error " + num(s.mpp_error_pct, 2) + " %)";
        out += "\n";
    }
    if (s.has_elc)
        out += "elc: mean active steps " + num(s.elc_mean_steps, 2) + ", switchings " +
               std::to_string(s.elc_switchings) + "\n";
    if (s.has_rectifier)
        out += "rectifier: unsettled diode iterations " +
               std::to_string(s.diode_iteration_misses) + "\n";
    return out;
}

} // namespace gridsim
