#ifndef GRIDSIM_HYDRO_HPP
#define GRIDSIM_HYDRO_HPP

#include <cstdint>

namespace gridsim {

// Micro-hydro generator reduced to the swing equation with an ideal AVR
// holding 1 pu terminal voltage. Electromagnetics are out of scope; the
// regulated quantities (speed, voltage) are the modeled behavior.
struct HydroGenerator {
    double rated_power = 50e3;  // W
    double mech_power = 50e3;   // W, constant shaft input
    double speed_pu = 1.0;
    double inertia_h = 1.0;     // s
    double terminal_voltage_pu = 1.0;
};

/// Advance rotor speed: dspeed/dt = (mech - p_elec - p_dump) / (2 H S_rated).
/// Throws SimulationError via the engine when speed collapses to <= 0.
void generatorStep(HydroGenerator& g, double p_elec, double p_dump, double dt);

// Discrete-resistance dump-load dispatcher. Speed error outside the deadband
// re-targets the number of active steps proportionally (round half up).
struct ElcState {
    int n_steps = 8;
    double step_power = 10e3;   // W per step
    std::uint32_t active_mask = 0;
    double deadband = 5e-4;     // pu speed
    double gain = 1000.0;       // steps per pu error
};

/// Re-dispatch the dump steps from the measured speed.
void elcDispatch(ElcState& e, double speed_pu);

/// Currently dissipated dump power.
double elcDumpPower(const ElcState& e);

int elcActiveSteps(const ElcState& e);

} // namespace gridsim

#endif
