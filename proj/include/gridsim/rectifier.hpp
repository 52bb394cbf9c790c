#ifndef GRIDSIM_RECTIFIER_HPP
#define GRIDSIM_RECTIFIER_HPP

#include <array>
#include <cstdint>

#include "gridsim/types.hpp"

namespace gridsim {

// Three-phase six-diode bridge with per-phase series R-L on the ac side and
// a parallel R-C load on the dc side. Diodes are piecewise resistances
// (r_on conducting, r_off blocking); the conduction pattern is found by
// fixed-point iteration each step, then the step is taken backward-Euler
// on the inductor and capacitor states.
struct RectifierLoad {
    double dc_resistance = 10.0;      // ohm
    double dc_capacitance = 5000e-6;  // F
    double ac_inductance = 1e-3;      // H per phase
    double ac_resistance = 0.05;      // ohm per phase
    double diode_r_on = 1e-3;         // ohm
    double diode_r_off = 1e6;         // ohm
    double v_dc = 0.0;                // V across the dc capacitor
    ThreePhase i_phase = ThreePhase::Zero();
    // diode conduction flags: [0..2] upper (phase -> +rail), [3..5] lower (-rail -> phase)
    std::array<bool, 6> conducting{};
    // steps on which the conduction pattern failed to settle in 10 iterations
    std::uint64_t fixed_point_misses = 0;
};

/// Advance one step and return the phase currents drawn from the bus.
ThreePhase rectifierStep(RectifierLoad& r, const ThreePhase& v_bus, double dt);

} // namespace gridsim

#endif
