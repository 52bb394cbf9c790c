#ifndef GRIDSIM_SPECTRUM_HPP
#define GRIDSIM_SPECTRUM_HPP

#include <array>
#include <vector>

namespace gridsim {

// Harmonic content of one channel over a synchronized window.
// magnitude[0] is the absolute dc level, magnitude[h] the peak amplitude of
// order h, so the window reconstructs as
//   x(t) = sum_h magnitude[h] * cos(h*w0*t + phase[h])
// with t measured from the window start.
struct HarmonicSpectrum {
    double fundamental_hz = 0.0;
    std::vector<double> magnitude;
    std::vector<double> phase;  // radians

    int maxOrder() const { return static_cast<int>(magnitude.size()) - 1; }
};

/// Rectangular-window DFT over exactly `cycles` fundamental periods taken
/// from the front of `samples`. A fractional cycle-to-sample ratio is
/// handled by linear resampling onto the rounded grid, so synchronized
/// inputs stay leakage-free to machine precision. Throws
/// InsufficientDataError when the window exceeds the data and ConfigError
/// on invalid parameters (cycles < 2, max_order past Nyquist, ...).
HarmonicSpectrum spectrum(const std::vector<double>& samples, double dt, double f0,
                          int cycles, int max_order = 50);

/// sqrt(sum_{h>=2} magnitude[h]^2) / magnitude[1]. Throws
/// UndefinedMetricError when the fundamental is zero or negligible next to
/// the rest of the spectrum.
double thd(const HarmonicSpectrum& s);

/// RMS of the reconstructed window: sqrt(dc^2 + sum_h magnitude[h]^2 / 2).
double rmsFromSpectrum(const HarmonicSpectrum& s);

/// cos(phase difference of the two fundamentals). Throws
/// UndefinedMetricError when either fundamental is negligible.
double displacementPowerFactor(const HarmonicSpectrum& v, const HarmonicSpectrum& i);

// Average power quantities of a three-phase measurement over one window.
struct PowerMetrics {
    double p = 0.0;            // W, mean instantaneous power
    double q = 0.0;            // var, sqrt(s^2 - p^2) signed like the mean p-q q
    double s = 0.0;            // VA, 3 * Vrms_phase * Irms_phase
    double power_factor = 0.0; // p / s
};

/// Time-domain power metrics over equal-length per-phase windows spanning an
/// integer number of cycles. Throws InsufficientDataError on empty or
/// mismatched windows and UndefinedMetricError when s is zero.
PowerMetrics powerMetrics(const std::array<std::vector<double>, 3>& v,
                          const std::array<std::vector<double>, 3>& i);

/// Mean instantaneous p and q (stationary-frame) over the same windows;
/// q > 0 means lagging current. Used for the reactive-compensation checks.
std::array<double, 2> meanPq(const std::array<std::vector<double>, 3>& v,
                             const std::array<std::vector<double>, 3>& i);

} // namespace gridsim

#endif
