#ifndef GRIDSIM_SCENARIO_HPP
#define GRIDSIM_SCENARIO_HPP

#include <string>
#include <vector>

#include "gridsim/bus.hpp"

namespace gridsim {

// Full declarative description of one simulation run. Defaults describe the
// stock system; scenario files override per key. Fully deterministic — there
// is no random state anywhere in a run.
struct ScenarioConfig {
    std::string name = "scenario";

    // [bus]
    BusKind bus_kind = BusKind::Stiff;
    double bus_voltage_ll_rms = 400.0;
    double frequency = 50.0;
    double bus_series_r = 0.0;
    double bus_series_l = 0.0;

    // [sim]
    double dt = 20e-6;
    double t_end = 1.0;
    std::vector<std::string> record_channels;  // empty records every channel

    // component enables
    bool pv_enabled = true;
    bool mhp_enabled = true;
    bool sapf_enabled = true;
    bool rectifier_enabled = true;
    bool linear_enabled = true;

    // [pv]
    double pv_p_mpp = 50e3;
    double pv_v_mpp = 640.0;
    double pv_v_oc = 800.0;
    double pv_i_sc = 86.5;
    double pv_irradiance = 1000.0;
    double mppt_step = 2.0;
    double mppt_period = 1e-3;
    double mppt_v_initial = 500.0;

    // [mhp]
    double mhp_rated_power = 50e3;
    double mhp_mech_power = 50e3;
    double mhp_inertia_h = 1.0;

    // [elc]
    int elc_n_steps = 8;
    double elc_step_power = 10e3;
    double elc_deadband = 5e-4;
    double elc_gain = 1000.0;
    double elc_period = 10e-3;

    // [rectifier]
    double rect_dc_resistance = 10.0;
    double rect_dc_capacitance = 5000e-6;
    double rect_ac_inductance = 1e-3;
    double rect_ac_resistance = 0.05;
    double rect_diode_r_on = 1e-3;
    double rect_diode_r_off = 1e6;

    // [linear] — either R/L directly, or power/power_factor sizing
    double linear_resistance = 7.22;
    double linear_inductance = 7.5537e-3;
    double linear_power = 0.0;        // W; > 0 selects power/pf sizing
    double linear_power_factor = 0.95;

    // [sapf]
    double sapf_engage_time = 0.0;
    double sapf_v_dc_ref = 800.0;
    double sapf_c_dc = 4700e-6;
    double sapf_l_filter = 2.5e-3;
    double sapf_r_filter = 0.05;
    double sapf_band = 2.0;
    double sapf_hp_cutoff = 10.0;
    double sapf_dc_kp = 125.0;
    double sapf_dc_ki = 600.0;
    double sapf_p_limit = 20e3;
};

/// Load and validate a scenario file. Unknown sections or keys are errors;
/// messages name the offending "[section].key".
ScenarioConfig loadScenario(const std::string& path);

/// Parse a scenario from TOML text (name stays at its default).
ScenarioConfig parseScenario(const std::string& text);

/// Validate bounds and cross-field constraints; throws ConfigError.
void validateScenario(const ScenarioConfig& cfg);

/// Channel names a run of this scenario will record.
std::vector<std::string> scenarioChannels(const ScenarioConfig& cfg);

/// All channel names the engine can record.
const std::vector<std::string>& allChannelNames();

} // namespace gridsim

#endif
