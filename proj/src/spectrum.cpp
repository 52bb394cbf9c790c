#include "gridsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include "gridsim/errors.hpp"
#include "gridsim/transforms.hpp"
#include "gridsim/types.hpp"

namespace gridsim {

namespace {

// Fundamental below this fraction of the spectral peak makes ratio metrics
// meaningless.
constexpr double kFundamentalFloor = 1e-9;

double fundamentalOrThrow(const HarmonicSpectrum& s, const char* metric) {
    if (s.magnitude.size() < 2)
        throw UndefinedMetricError(std::string(metric) + ": spectrum has no fundamental bin");
    const double fund = s.magnitude[1];
    const double peak = *std::max_element(s.magnitude.begin(), s.magnitude.end());
    if (!(fund > 0.0) || fund < kFundamentalFloor * peak)
        throw UndefinedMetricError(std::string(metric) + ": fundamental magnitude is negligible");
    return fund;
}

} // namespace

HarmonicSpectrum spectrum(const std::vector<double>& samples, double dt, double f0,
                          int cycles, int max_order) {
    if (!(dt > 0.0) || !(f0 > 0.0))
        throw ConfigError("spectrum: require dt > 0 and f0 > 0");
    if (cycles < 2) throw ConfigError("spectrum: require cycles >= 2");
    if (max_order < 2) throw ConfigError("spectrum: require max_order >= 2");
    if (static_cast<double>(max_order) * f0 >= 0.5 / dt)
        throw ConfigError("spectrum: max_order * f0 reaches the Nyquist frequency");

    const double exact_len = static_cast<double>(cycles) / (f0 * dt);  // samples per window
    const auto n = static_cast<std::size_t>(std::llround(exact_len));
    if (n < 2 * static_cast<std::size_t>(max_order) * static_cast<std::size_t>(cycles) + 1)
        throw ConfigError("spectrum: window too short to resolve max_order harmonics");

    // Materialize the window, resampling linearly when cycles/f0 is not an
    // integer number of samples.
    std::vector<double> w(n);
    const bool on_grid = std::abs(exact_len - static_cast<double>(n)) < 1e-6;
    if (on_grid) {
        if (samples.size() < n)
            throw InsufficientDataError("spectrum: window of " + std::to_string(n) +
                                        " samples exceeds the " +
                                        std::to_string(samples.size()) + " available");
        std::copy(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(n), w.begin());
    } else {
        const double last_pos = exact_len * static_cast<double>(n - 1) / static_cast<double>(n);
        const auto need = static_cast<std::size_t>(std::floor(last_pos)) + 2;
        if (samples.size() < need)
            throw InsufficientDataError("spectrum: resampled window needs " +
                                        std::to_string(need) + " samples, have " +
                                        std::to_string(samples.size()));
        for (std::size_t j = 0; j < n; ++j) {
            const double pos = exact_len * static_cast<double>(j) / static_cast<double>(n);
            const auto i0 = static_cast<std::size_t>(std::floor(pos));
            const double frac = pos - static_cast<double>(i0);
            w[j] = samples[i0] * (1.0 - frac) + samples[i0 + 1] * frac;
        }
    }

    HarmonicSpectrum s;
    s.fundamental_hz = f0;
    s.magnitude.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    s.phase.assign(static_cast<std::size_t>(max_order) + 1, 0.0);

    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(n);
    s.magnitude[0] = std::abs(mean);
    s.phase[0] = mean < 0.0 ? kPi : 0.0;

    // Order h of f0 lands exactly on DFT bin h*cycles. The phase angle is
    // reduced with integer arithmetic so large bin*sample products stay exact.
    for (int h = 1; h <= max_order; ++h) {
        const auto k_bin = static_cast<std::size_t>(h) * static_cast<std::size_t>(cycles);
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t r = (k_bin * j) % n;
            const double th = -2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
            re += w[j] * std::cos(th);
            im += w[j] * std::sin(th);
        }
        re *= 2.0 / static_cast<double>(n);
        im *= 2.0 / static_cast<double>(n);
        s.magnitude[static_cast<std::size_t>(h)] = std::hypot(re, im);
        s.phase[static_cast<std::size_t>(h)] = std::atan2(im, re);
    }
    return s;
}

double thd(const HarmonicSpectrum& s) {
    const double fund = fundamentalOrThrow(s, "thd");
    double ss = 0.0;
    for (std::size_t h = 2; h < s.magnitude.size(); ++h) ss += s.magnitude[h] * s.magnitude[h];
    return std::sqrt(ss) / fund;
}

double rmsFromSpectrum(const HarmonicSpectrum& s) {
    if (s.magnitude.empty()) return 0.0;
    double acc = s.magnitude[0] * s.magnitude[0];
    for (std::size_t h = 1; h < s.magnitude.size(); ++h)
        acc += 0.5 * s.magnitude[h] * s.magnitude[h];
    return std::sqrt(acc);
}

double displacementPowerFactor(const HarmonicSpectrum& v, const HarmonicSpectrum& i) {
    fundamentalOrThrow(v, "displacementPowerFactor");
    fundamentalOrThrow(i, "displacementPowerFactor");
    return std::cos(v.phase[1] - i.phase[1]);
}

namespace {

std::size_t checkedWindowLength(const std::array<std::vector<double>, 3>& v,
                                const std::array<std::vector<double>, 3>& i) {
    const std::size_t n = v[0].size();
    if (n == 0) throw InsufficientDataError("power metrics: empty window");
    for (int k = 0; k < 3; ++k)
        if (v[static_cast<std::size_t>(k)].size() != n ||
            i[static_cast<std::size_t>(k)].size() != n)
            throw InsufficientDataError("power metrics: phase windows differ in length");
    return n;
}

} // namespace

PowerMetrics powerMetrics(const std::array<std::vector<double>, 3>& v,
                          const std::array<std::vector<double>, 3>& i) {
    const std::size_t n = checkedWindowLength(v, i);

    double p_acc = 0.0, v2_acc = 0.0, i2_acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
            p_acc += v[k][j] * i[k][j];
            v2_acc += v[k][j] * v[k][j];
            i2_acc += i[k][j] * i[k][j];
        }

    PowerMetrics m;
    m.p = p_acc / static_cast<double>(n);
    // per-phase rms of the balanced set = sqrt(mean over all three phases)
    const double v_rms = std::sqrt(v2_acc / (3.0 * static_cast<double>(n)));
    const double i_rms = std::sqrt(i2_acc / (3.0 * static_cast<double>(n)));
    m.s = 3.0 * v_rms * i_rms;
    if (!(m.s > 0.0)) throw UndefinedMetricError("powerMetrics: zero apparent power");
    const double q2 = std::max(0.0, m.s * m.s - m.p * m.p);
    const double q_sign = meanPq(v, i)[1] < 0.0 ? -1.0 : 1.0;
    m.q = q_sign * std::sqrt(q2);
    m.power_factor = m.p / m.s;
    return m;
}

std::array<double, 2> meanPq(const std::array<std::vector<double>, 3>& v,
                             const std::array<std::vector<double>, 3>& i) {
    const std::size_t n = checkedWindowLength(v, i);
    double p_acc = 0.0, q_acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const AlphaBetaZero vab = clarke(ThreePhase(v[0][j], v[1][j], v[2][j]));
        const AlphaBetaZero iab = clarke(ThreePhase(i[0][j], i[1][j], i[2][j]));
        p_acc += vab(0) * iab(0) + vab(1) * iab(1);
        q_acc += vab(1) * iab(0) - vab(0) * iab(1);
    }
    return {p_acc / static_cast<double>(n), q_acc / static_cast<double>(n)};
}

} // namespace gridsim
