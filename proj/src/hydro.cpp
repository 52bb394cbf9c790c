#include "gridsim/hydro.hpp"

#include <bit>
#include <cmath>

#include "gridsim/errors.hpp"

namespace gridsim {

void generatorStep(HydroGenerator& g, double p_elec, double p_dump, double dt) {
    const double accel = (g.mech_power - p_elec - p_dump) / (2.0 * g.inertia_h * g.rated_power);
    g.speed_pu += accel * dt;
}

int elcActiveSteps(const ElcState& e) {
    return std::popcount(e.active_mask);
}

double elcDumpPower(const ElcState& e) {
    return elcActiveSteps(e) * e.step_power;
}

void elcDispatch(ElcState& e, double speed_pu) {
    const double error = speed_pu - 1.0;
    if (std::abs(error) <= e.deadband)
        return;  // hold the current mask
    // Round half up on the real-valued product. The 1e-9 bias keeps decimal
    // inputs that sit a few ulps under a half-step (e.g. 100 * 0.035) from
    // rounding down; it is far below any physical speed error.
    int target = static_cast<int>(std::floor(e.gain * error + 0.5 + 1e-9));
    if (target < 0) target = 0;
    if (target > e.n_steps) target = e.n_steps;
    e.active_mask = (target >= 32) ? ~0u : ((1u << target) - 1u);
}

} // namespace gridsim
