#ifndef GRIDSIM_PV_HPP
#define GRIDSIM_PV_HPP

namespace gridsim {

// Single-diode PV array model:
//   I(v) = photo_current_stc * (irradiance / 1000) - sat_current * (exp(v / diode_ideality_voltage) - 1)
// clamped to I >= 0. Calibrated so the maximum-power point at 1000 W/m^2
// matches (v_mpp_ref, p_mpp_ref).
struct PvArray {
    double p_mpp_ref = 50e3;   // W at STC
    double v_mpp_ref = 640.0;  // V at STC
    double v_oc = 800.0;       // V
    double i_sc = 0.0;         // A at STC
    double diode_ideality_voltage = 0.0;  // V (thermal voltage * ideality * cells)
    double photo_current_stc = 0.0;       // A
    double sat_current = 0.0;             // A
    double irradiance = 1000.0;           // W/m^2
};

/// Diode-law current at terminal voltage v. Throws on v outside [0, v_oc].
double pvCurrent(const PvArray& pv, double v);

/// Fit (photo_current_stc, sat_current, diode_ideality_voltage) so that
/// I(0) = i_sc, the maximum-power point sits at (v_mpp, p_mpp), and
/// I(v_oc) = 0 within 0.5% of i_sc. Throws CalibrationError when the four
/// conditions cannot be met together.
PvArray calibratePv(double p_mpp, double v_mpp, double v_oc, double i_sc);

// Perturb-and-observe tracker state. The perturbation direction is inferred
// from the signs of the last power and voltage changes.
struct MpptState {
    double v_ref = 0.0;       // commanded array voltage
    double prev_power = 0.0;  // W at the previous decision
    double prev_voltage = 0.0;
    double step = 2.0;        // V, > 0
    double period = 1e-3;     // s between decisions
};

/// One perturb-and-observe decision; call once per `period`.
void mpptStep(MpptState& m, double v_meas, double i_meas, double v_oc);

} // namespace gridsim

#endif
