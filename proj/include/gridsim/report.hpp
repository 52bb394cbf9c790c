#ifndef GRIDSIM_REPORT_HPP
#define GRIDSIM_REPORT_HPP

#include <cstdint>
#include <string>

#include "gridsim/engine.hpp"
#include "gridsim/scenario.hpp"
#include "gridsim/spectrum.hpp"

namespace gridsim {

// Source-side metrics over one measurement window. Flags mark metrics that
// could not be computed (zero signal, channel not recorded, ...); formatting
// renders those as "n/a".
struct WindowMetrics {
    double t_from = 0.0;
    double t_to = 0.0;
    bool has_thd = false;
    double thd_i_source = 0.0;  // ratio, not percent
    bool has_power = false;
    PowerMetrics power;
    double mean_p_pq = 0.0;  // W, mean instantaneous p
    double mean_q_pq = 0.0;  // var, mean instantaneous q
    bool has_dpf = false;
    double displacement_pf = 0.0;
};

// Everything the text report prints. Sections for disabled components stay
// absent instead of printing zeros.
struct ReportSummary {
    std::string scenario_name;
    double fundamental_hz = 0.0;
    int cycles = 0;

    bool has_pre = false;
    bool has_post = false;
    WindowMetrics pre;
    WindowMetrics post;

    bool has_dc_link = false;
    double v_dc_mean = 0.0;
    double v_dc_ripple = 0.0;  // max - min over the post window

    bool has_pv = false;
    double p_pv_mean = 0.0;
    bool has_mpp_error = false;
    double mpp_error_pct = 0.0;

    bool has_elc = false;
    double elc_mean_steps = 0.0;
    std::uint64_t elc_switchings = 0;

    bool has_rectifier = false;
    std::uint64_t diode_iteration_misses = 0;
};

/// Windowed metrics of a finished run. The two windows are the final
/// `cycles` fundamental periods of each regime: before the filter engages
/// and at the end of the run. Without an engage instant inside the run only
/// the end window exists (reported as post).
ReportSummary summarize(const ScenarioConfig& cfg, const RunResult& result, int cycles = 10);

/// Fixed-layout text rendering; identical summaries yield identical bytes.
std::string formatReport(const ReportSummary& s);

} // namespace gridsim

#endif
