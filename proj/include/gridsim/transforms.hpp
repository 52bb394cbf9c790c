#ifndef GRIDSIM_TRANSFORMS_HPP
#define GRIDSIM_TRANSFORMS_HPP

#include <Eigen/Core>
#include <cmath>

#include "gridsim/errors.hpp"
#include "gridsim/types.hpp"

namespace gridsim {

// Power-invariant Clarke transform. With this scaling the instantaneous
// power identity va*ia + vb*ib + vc*ic = valpha*ialpha + vbeta*ibeta + v0*i0
// holds without correction factors, so p-q quantities are watts/vars directly.
//
// The matrix is orthogonal; its transpose is the inverse.
inline const Eigen::Matrix3d& clarkeMatrix() {
    static const Eigen::Matrix3d k = [] {
        const double s23 = std::sqrt(2.0 / 3.0);
        Eigen::Matrix3d m;
        m << s23, -s23 / 2.0, -s23 / 2.0,
             0.0, s23 * std::sqrt(3.0) / 2.0, -s23 * std::sqrt(3.0) / 2.0,
             1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0);
        return m;
    }();
    return k;
}

template <typename Derived>
AlphaBetaZero clarke(const Eigen::MatrixBase<Derived>& abc) {
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
    AlphaBetaZero out = clarkeMatrix() * abc;
    if (!out.allFinite())
        throw InvalidSampleError("clarke: non-finite input sample");
    return out;
}

/// Inverse of clarke(); exact on the zero-sequence-free subspace.
template <typename Derived>
ThreePhase inverseClarke(const Eigen::MatrixBase<Derived>& abz) {
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
    ThreePhase out = clarkeMatrix().transpose() * abz;
    if (!out.allFinite())
        throw InvalidSampleError("inverseClarke: non-finite input sample");
    return out;
}

/// Zero-sequence-free inverse for (alpha, beta) pairs.
template <typename Derived>
ThreePhase inverseClarke(const Eigen::MatrixBase<Derived>& ab, double zero) {
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 2);
    return inverseClarke(AlphaBetaZero(ab(0), ab(1), zero));
}

inline ThreePhase inverseClarke(const AlphaBeta& ab) { return inverseClarke(ab, 0.0); }

/// Rotate a stationary-frame sample by -theta into the rotating frame.
template <typename Derived>
Dq park(const Eigen::MatrixBase<Derived>& ab, double theta) {
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 2);
    const double c = std::cos(theta), s = std::sin(theta);
    Dq out;
    out.d = c * ab(0) + s * ab(1);
    out.q = -s * ab(0) + c * ab(1);
    out.theta = wrapAngle(theta);
    if (!std::isfinite(out.d) || !std::isfinite(out.q))
        throw InvalidSampleError("park: non-finite input sample");
    return out;
}

/// Rotate a rotating-frame sample back by +theta.
inline AlphaBeta inversePark(const Dq& dq) {
    const double c = std::cos(dq.theta), s = std::sin(dq.theta);
    AlphaBeta out(c * dq.d - s * dq.q, s * dq.d + c * dq.q);
    if (!out.allFinite())
        throw InvalidSampleError("inversePark: non-finite input sample");
    return out;
}

} // namespace gridsim

#endif
