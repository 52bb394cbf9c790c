#ifndef GRIDSIM_LINEAR_LOAD_HPP
#define GRIDSIM_LINEAR_LOAD_HPP

#include "gridsim/errors.hpp"
#include "gridsim/types.hpp"

namespace gridsim {

// Balanced series R-L consumer load, one branch per phase.
struct LinearLoad {
    double resistance = 1.0;   // ohm per phase, > 0
    double inductance = 0.0;   // H per phase, >= 0
    ThreePhase i_phase = ThreePhase::Zero();
};

/// Advance the branch currents one step (backward Euler on L) and return the
/// current drawn from the bus. L = 0 degenerates to i = v/R.
inline ThreePhase linearLoadStep(LinearLoad& l, const ThreePhase& v_bus, double dt) {
    if (!(l.resistance > 0.0) || l.inductance < 0.0)
        throw ConfigError("LinearLoad: require R > 0, L >= 0");
    if (l.inductance == 0.0) {
        l.i_phase = v_bus / l.resistance;
    } else {
        // L di/dt = v - R i
        const double a = dt / l.inductance;
        l.i_phase = (l.i_phase + a * v_bus) / (1.0 + a * l.resistance);
    }
    return l.i_phase;
}

/// Size a balanced R-L branch from three-phase power, displacement power
/// factor and line-line rms voltage.
inline void sizeLinearLoad(LinearLoad& l, double p_watts, double pf, double v_ll_rms,
                           double frequency_hz) {
    if (!(p_watts > 0.0) || !(pf > 0.0 && pf <= 1.0))
        throw ConfigError("sizeLinearLoad: require P > 0 and 0 < pf <= 1");
    const double s = p_watts / pf;
    const double z = v_ll_rms * v_ll_rms / s;  // per-phase |Z|
    l.resistance = z * pf;
    const double x = z * std::sqrt(1.0 - pf * pf);
    l.inductance = x / (2.0 * kPi * frequency_hz);
}

} // namespace gridsim

#endif
