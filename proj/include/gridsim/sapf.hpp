#ifndef GRIDSIM_SAPF_HPP
#define GRIDSIM_SAPF_HPP

#include <array>

#include "gridsim/filters.hpp"
#include "gridsim/types.hpp"

namespace gridsim {

/// Instantaneous real power p and imaginary power q in the stationary frame.
struct PqSample {
    double p = 0.0;  // W
    double q = 0.0;  // var, positive for lagging current
};

/// p = v_a*i_a + v_b*i_b, q = v_b*i_a - v_a*i_b (alpha/beta components).
PqSample computePq(const AlphaBeta& v, const AlphaBeta& i);

/// Invert the p-q map: the alpha/beta current that carries (p, q) at voltage
/// v. Exact right-inverse of computePq for |v|^2 at or above eps_v2.
/// Throws DegenerateVoltageError below the floor.
AlphaBeta referenceCurrents(const AlphaBeta& v, double p, double q, double eps_v2 = 1.0);

/// Bang-bang gate decision for one leg: drive the current down when the
/// tracking error exceeds +band, up below -band, hold otherwise.
inline int hysteresisGate(double i_actual, double i_ref, double band, int gate_prev) {
    const double err = i_actual - i_ref;
    if (err > band) return 0;
    if (err < -band) return 1;
    return gate_prev;
}

// Reference-current generator: Clarke both measurements, split p into its
// oscillatory part with a high-pass filter, regulate the dc link with a PI
// whose output offsets the compensated power, and map (p_comp, q) back to a
// phase-domain injection target. The injected current makes the source
// supply only the average real power.
class SapfController {
public:
    SapfController(double hp_cutoff_hz, double dc_kp, double dc_ki, double p_limit,
                   double v_dc_ref, double band, double dt)
        : m_hp(hp_cutoff_hz, FilterKind::HighPass, dt),
          m_dc_pi(dc_kp, dc_ki, -p_limit, p_limit, dt),
          m_v_dc_ref(v_dc_ref),
          m_band(band) {}

    /// Full chain; returns the current the filter must inject.
    ThreePhase reference(const ThreePhase& v_bus, const ThreePhase& i_load, double v_dc);

    double vDcRef() const { return m_v_dc_ref; }
    double band() const { return m_band; }

    /// Seed the p-filter state with the first measured p so engagement does
    /// not start from a full-amplitude filter transient.
    void primeFilter(double p) { m_hp.reset(p); m_primed = true; }
    bool primed() const { return m_primed; }

private:
    FirstOrderFilter m_hp;
    PiController m_dc_pi;
    double m_v_dc_ref;
    double m_band;
    bool m_primed = false;
};

// Two-level three-wire inverter behind a per-phase R-L coupling filter,
// supported by a dc-link capacitor. Leg voltages are (g_k - 1/2) v_dc;
// the common-mode term keeps the injected currents summing to zero.
struct SapfInverter {
    double v_dc = 0.0;        // V
    double c_dc = 4700e-6;    // F
    double l_filter = 2.5e-3; // H per phase
    double r_filter = 0.05;   // ohm per phase
    ThreePhase i_inj = ThreePhase::Zero();
    std::array<int, 3> gates{0, 0, 0};
};

/// Advance the coupling-filter currents and the dc link one step with the
/// given gates; returns the current injected into the bus.
ThreePhase inverterStep(SapfInverter& inv, const std::array<int, 3>& gates,
                        const ThreePhase& v_bus, double dt);

} // namespace gridsim

#endif
