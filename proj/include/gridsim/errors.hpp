#ifndef GRIDSIM_ERRORS_HPP
#define GRIDSIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridsim {

/// Bad or inconsistent configuration (scenario file, block parameters).
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical blow-up or invariant violation while stepping a simulation.
/// Carries the step index at which the run aborted. CLI exit code 3.
class SimulationError : public std::runtime_error {
public:
    /// Sentinel for throws from inside a component, before the engine has
    /// attached the step index.
    static constexpr std::size_t kNoStep = static_cast<std::size_t>(-1);

    explicit SimulationError(const std::string& what)
        : std::runtime_error(what), m_step(kNoStep) {}
    SimulationError(const std::string& what, std::size_t step)
        : std::runtime_error(what + " (at step " + std::to_string(step) + ")"), m_step(step) {}
    std::size_t step() const { return m_step; }

private:
    std::size_t m_step = 0;
};

/// Non-finite sample fed into a transform.
class InvalidSampleError : public std::runtime_error {
public:
    explicit InvalidSampleError(const std::string& what) : std::runtime_error(what) {}
};

/// PV model calibration failed to meet its boundary/MPP conditions.
class CalibrationError : public std::runtime_error {
public:
    explicit CalibrationError(const std::string& what) : std::runtime_error(what) {}
};

/// Bus voltage norm too small for the p-q current inversion.
class DegenerateVoltageError : public std::runtime_error {
public:
    explicit DegenerateVoltageError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested analysis window does not fit the available samples.
class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

/// THD or power factor requested on a signal without a usable fundamental.
class UndefinedMetricError : public std::runtime_error {
public:
    explicit UndefinedMetricError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gridsim

#endif
