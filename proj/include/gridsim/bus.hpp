#ifndef GRIDSIM_BUS_HPP
#define GRIDSIM_BUS_HPP

#include <cmath>

#include "gridsim/types.hpp"

namespace gridsim {

enum class BusKind { Stiff, Thevenin };

// AC bus behind the point of common coupling. Stiff: ideal balanced sinusoid
// at the configured amplitude. Thevenin: the same EMF minus a series R-L
// drop of the previous-step source current.
struct BusModel {
    BusKind kind = BusKind::Stiff;
    double v_ll_rms = 400.0;   // line-line rms of the EMF
    double frequency = 50.0;   // Hz
    double series_r = 0.0;     // ohm, thevenin only
    double series_l = 0.0;     // H, thevenin only
    ThreePhase i_prev = ThreePhase::Zero();  // source current, one step old
};

/// Balanced EMF, cosine reference on phase a.
inline ThreePhase busEmf(const BusModel& bus, double t) {
    const double peak = phasePeakFromLineRms(bus.v_ll_rms);
    const double wt = 2.0 * kPi * bus.frequency * t;
    return ThreePhase(peak * std::cos(wt),
                      peak * std::cos(wt - 2.0 * kPi / 3.0),
                      peak * std::cos(wt + 2.0 * kPi / 3.0));
}

/// Bus voltage at time t given the source current drawn one step earlier.
inline ThreePhase busVoltage(BusModel& bus, double t, const ThreePhase& i_source, double dt) {
    ThreePhase v = busEmf(bus, t);
    if (bus.kind == BusKind::Thevenin) {
        v -= bus.series_r * i_source + (bus.series_l / dt) * (i_source - bus.i_prev);
        bus.i_prev = i_source;
    }
    return v;
}

} // namespace gridsim

#endif
