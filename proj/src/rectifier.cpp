#include "gridsim/rectifier.hpp"

#include <Eigen/Dense>

#include "gridsim/errors.hpp"

namespace gridsim {

namespace {

// Unknown ordering: x = [i_a, i_b, i_c, v'_a, v'_b, v'_c, v_p, v_n] where
// v'_k are the bridge ac-terminal potentials and v_p/v_n the dc rails, all
// referenced to the bus neutral.
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

Vec8 solveBridge(const RectifierLoad& r, const ThreePhase& v_bus, double dt,
                 const std::array<bool, 6>& on) {
    const double a = r.ac_inductance / dt + r.ac_resistance;
    const double l_dt = r.ac_inductance / dt;
    const double g_load = 1.0 / r.dc_resistance;
    const double c_dt = r.dc_capacitance / dt;

    Mat8 m = Mat8::Zero();
    Vec8 rhs = Vec8::Zero();
    for (int k = 0; k < 3; ++k) {
        const double gu = 1.0 / (on[k] ? r.diode_r_on : r.diode_r_off);
        const double gd = 1.0 / (on[k + 3] ? r.diode_r_on : r.diode_r_off);

        // branch KVL: (L/dt + R_s) i_k + v'_k = v_bus_k + (L/dt) i_k^n
        m(k, k) = a;
        m(k, 3 + k) = 1.0;
        rhs(k) = v_bus(k) + l_dt * r.i_phase(k);

        // KCL at the bridge terminal: i_k = (v'_k - v_p) gu - (v_n - v'_k) gd
        m(3 + k, k) = 1.0;
        m(3 + k, 3 + k) = -(gu + gd);
        m(3 + k, 6) = gu;
        m(3 + k, 7) = gd;

        // rail KCLs accumulate the diode currents
        m(6, 3 + k) += gu;
        m(6, 6) += -gu;
        m(7, 3 + k) += -gd;
        m(7, 7) += gd;
    }
    // KCL at +rail: sum_u = v_dc/R + C dv_dc/dt, at -rail: sum_d = same.
    // Both rows subtract the identical dc-side current so that adding them
    // yields sum_u = sum_d, i.e. the phase currents sum to zero exactly.
    m(6, 6) += -(g_load + c_dt);
    m(6, 7) += g_load + c_dt;
    rhs(6) = -c_dt * r.v_dc;
    m(7, 6) += -(g_load + c_dt);
    m(7, 7) += g_load + c_dt;
    rhs(7) = -c_dt * r.v_dc;

    return m.partialPivLu().solve(rhs);
}

} // namespace

ThreePhase rectifierStep(RectifierLoad& r, const ThreePhase& v_bus, double dt) {
    if (!(dt > 0.0) || dt > 50e-6)
        throw ConfigError("rectifierStep: require 0 < dt <= 50e-6");
    if (!(r.diode_r_off / r.diode_r_on >= 1e6))
        throw ConfigError("rectifierStep: require r_off/r_on >= 1e6");

    std::array<bool, 6> on = r.conducting;
    Vec8 x = Vec8::Zero();
    bool settled = false;
    for (int it = 0; it < 10; ++it) {
        x = solveBridge(r, v_bus, dt, on);
        const double v_p = x(6), v_n = x(7);
        // For a piecewise resistance, "forward voltage positive" is the valid
        // conduction test in both states: it implies positive current when on
        // and a missed turn-on when off.
        std::array<bool, 6> next = on;
        for (int k = 0; k < 3; ++k) {
            next[k] = x(3 + k) - v_p > 0.0;      // upper: phase node -> +rail
            next[k + 3] = v_n - x(3 + k) > 0.0;  // lower: -rail -> phase node
        }
        if (next == on) {
            settled = true;
            break;
        }
        on = next;
    }
    if (!settled)
        ++r.fixed_point_misses;

    r.conducting = on;
    r.i_phase = x.head<3>();
    r.v_dc = x(6) - x(7);
    return r.i_phase;
}

} // namespace gridsim
