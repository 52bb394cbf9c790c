#include "gridsim/pv.hpp"

#include <cmath>

#include "gridsim/errors.hpp"

namespace gridsim {

double pvCurrent(const PvArray& pv, double v) {
    if (!(v >= 0.0) || !(v <= pv.v_oc))
        throw ConfigError("pvCurrent: voltage outside [0, v_oc]");
    const double i_ph = pv.photo_current_stc * (pv.irradiance / 1000.0);
    const double i = i_ph - pv.sat_current * (std::exp(v / pv.diode_ideality_voltage) - 1.0);
    return i > 0.0 ? i : 0.0;
}

PvArray calibratePv(double p_mpp, double v_mpp, double v_oc, double i_sc) {
    if (!(0.0 < v_mpp && v_mpp < v_oc))
        throw ConfigError("calibratePv: require 0 < v_mpp < v_oc");
    const double i_mpp = p_mpp / v_mpp;
    if (!(i_mpp < i_sc))
        throw ConfigError("calibratePv: require p_mpp/v_mpp < i_sc");

    // I(0) = i_sc fixes the photo current exactly. The two MPP conditions
    //   I(v_mpp) = i_mpp,  d(vI)/dv = 0 at v_mpp
    // reduce to
    //   eta = v_mpp * (i_sc + i_s - i_mpp) / i_mpp,
    //   i_s = (eta * i_mpp / v_mpp) * exp(-v_mpp / eta),
    // solved by fixed point (i_s is tiny, convergence is immediate).
    double i_s = 0.0;
    double eta = v_mpp * (i_sc - i_mpp) / i_mpp;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const double eta_next = v_mpp * (i_sc + i_s - i_mpp) / i_mpp;
        const double i_s_next = (eta_next * i_mpp / v_mpp) * std::exp(-v_mpp / eta_next);
        if (std::abs(eta_next - eta) <= 1e-12 * eta_next && std::abs(i_s_next - i_s) <= 1e-15 + 1e-12 * i_s_next) {
            eta = eta_next;
            i_s = i_s_next;
            converged = true;
            break;
        }
        eta = eta_next;
        i_s = i_s_next;
    }
    if (!converged || !(eta > 0.0) || !(i_s > 0.0))
        throw CalibrationError("calibratePv: MPP fit did not converge");

    PvArray pv;
    pv.p_mpp_ref = p_mpp;
    pv.v_mpp_ref = v_mpp;
    pv.v_oc = v_oc;
    pv.i_sc = i_sc;
    pv.photo_current_stc = i_sc;
    pv.sat_current = i_s;
    pv.diode_ideality_voltage = eta;
    pv.irradiance = 1000.0;

    // The open-circuit condition is over-determined by the three fitted
    // parameters; accept only inputs for which it closes within 0.5% of i_sc.
    const double i_voc = i_sc - i_s * (std::exp(v_oc / eta) - 1.0);
    if (std::abs(i_voc) > 0.005 * i_sc)
        throw CalibrationError("calibratePv: I(v_oc) misses zero by more than 0.5% of i_sc; "
                               "v_oc/i_sc inconsistent with the MPP");
    return pv;
}

void mpptStep(MpptState& m, double v_meas, double i_meas, double v_oc) {
    const double power = v_meas * i_meas;
    const double dp = power - m.prev_power;
    const double dv = v_meas - m.prev_voltage;
    // Climb: keep going if power rose, back up otherwise. A zero voltage
    // change (clamped perturbation) counts as a positive direction.
    double dir = (dv >= 0.0) ? 1.0 : -1.0;
    if (dp < 0.0) dir = -dir;
    m.v_ref = m.v_ref + dir * m.step;
    if (m.v_ref < 0.0) m.v_ref = 0.0;
    if (m.v_ref > v_oc) m.v_ref = v_oc;
    m.prev_power = power;
    m.prev_voltage = v_meas;
}

} // namespace gridsim
