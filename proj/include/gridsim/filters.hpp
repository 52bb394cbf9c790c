#ifndef GRIDSIM_FILTERS_HPP
#define GRIDSIM_FILTERS_HPP

#include <algorithm>
#include <cmath>

#include "gridsim/errors.hpp"
#include "gridsim/types.hpp"

namespace gridsim {

enum class FilterKind { LowPass, HighPass };

// First-order filter, backward-Euler discretization. The high-pass output is
// defined as the complement of the low-pass output on the same state, so
// hp(x) + lp(x) == x holds exactly per step.
class FirstOrderFilter {
public:
    FirstOrderFilter(double cutoff_hz, FilterKind kind, double dt)
        : m_kind(kind), m_dt(dt) {
        if (!(cutoff_hz > 0.0) || !(dt > 0.0) || cutoff_hz * dt >= 0.5)
            throw ConfigError("FirstOrderFilter: require cutoff_hz > 0 and cutoff_hz*dt < 0.5");
        const double tau = 1.0 / (2.0 * kPi * cutoff_hz);
        m_alpha = dt / (tau + dt);
    }

    double step(double input) {
        m_state += m_alpha * (input - m_state);
        return m_kind == FilterKind::LowPass ? m_state : input - m_state;
    }

    double state() const { return m_state; }
    void reset(double state = 0.0) { m_state = state; }
    double alpha() const { return m_alpha; }

private:
    FilterKind m_kind;
    double m_dt;
    double m_alpha;
    double m_state = 0.0;
};

// PI regulator with output clamping and conditional-integration anti-windup:
// the integrator freezes while the output is saturated in the error's
// direction. The output is computed from the pre-update integral.
class PiController {
public:
    PiController(double kp, double ki, double lo, double hi, double dt)
        : m_kp(kp), m_ki(ki), m_lo(lo), m_hi(hi), m_dt(dt) {
        if (!(lo <= hi)) throw ConfigError("PiController: require lo <= hi");
    }

    double step(double error) {
        const double raw = m_kp * error + m_integral;
        const double out = std::clamp(raw, m_lo, m_hi);
        const bool sat_hi = raw > m_hi && error > 0.0;
        const bool sat_lo = raw < m_lo && error < 0.0;
        if (!sat_hi && !sat_lo)
            m_integral += m_ki * error * m_dt;
        m_integral = std::clamp(m_integral, m_lo, m_hi);
        return out;
    }

    double integral() const { return m_integral; }
    void reset() { m_integral = 0.0; }

private:
    double m_kp, m_ki, m_lo, m_hi, m_dt;
    double m_integral = 0.0;
};

} // namespace gridsim

#endif
