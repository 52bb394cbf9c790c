#ifndef GRIDSIM_TYPES_HPP
#define GRIDSIM_TYPES_HPP

#include <Eigen/Core>
#include <cmath>

namespace gridsim {

/// Instantaneous a/b/c sample of a three-phase voltage or current.
using ThreePhase = Eigen::Vector3d;

/// Stationary-frame (alpha, beta) projection of a three-phase sample.
using AlphaBeta = Eigen::Vector2d;

/// Full Clarke image (alpha, beta, zero-sequence).
using AlphaBetaZero = Eigen::Vector3d;

/// Rotating-frame sample together with the reference angle used for the
/// rotation. theta is kept wrapped to [0, 2*pi).
struct Dq {
    double d = 0.0;
    double q = 0.0;
    double theta = 0.0;
};

inline constexpr double kPi = 3.14159265358979323846;

/// Wrap an angle to [0, 2*pi).
inline double wrapAngle(double theta) {
    double t = std::fmod(theta, 2.0 * kPi);
    return t < 0.0 ? t + 2.0 * kPi : t;
}

/// Peak phase-to-neutral voltage of a balanced system given line-line rms.
inline double phasePeakFromLineRms(double v_ll_rms) {
    return v_ll_rms * std::sqrt(2.0 / 3.0);
}

} // namespace gridsim

#endif
