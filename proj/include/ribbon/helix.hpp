#pragma once

#include "ribbon/curve.hpp"

#include <Eigen/Dense>

#include <string_view>

namespace ribbon {

enum class Handedness { right, left, ring };

std::string_view to_string(Handedness h);

/// Below this |Phi| a helix is reported as a ring.
constexpr double kRingTolerance = 1e-12;

Handedness handedness_from_angle(double helix_angle, double tolerance = kRingTolerance);

struct HelixParams {
    double theta = 0.0;        ///< angle between helix axis and d_x (radians)
    double radius = 0.0;       ///< mm
    double pitch = 0.0;        ///< axial advance per turn, mm (signed as Phi)
    double helix_angle = 0.0;  ///< Phi (radians); sign encodes handedness
    Handedness handedness = Handedness::ring;
};

/// Both closed-form readings of a constant-curvature ribbon.
///
/// `published` evaluates the literature expressions term by term:
///   D     = 2 pi (k1 - k2) s c / (k1^2 c^2 + k2^2 s^2)
///   R     = 1 / (k1^2 cos(phi + theta) + k2^2 sin(phi + theta))
///   theta = atan((k1 - k2) c s / (k1^2 c + k2^2 s))
///   Phi   = atan((k1 - k2) s c / (k1 c^2 + k2 s^2))
/// with c = cos(phi), s = sin(phi). R and theta there are dimensionally
/// inconsistent; they are carried for reporting only.
///
/// `frame` comes from the screw motion of the director frame, whose angular
/// velocity is w = -k2 s r1 + k1 c r2 in body axes. With tau = w.d_x =
/// (k1 - k2) s c and kn = w.d_y = k1 c^2 + k2 s^2:
///   radius = |kn| / |w|^2,  pitch = 2 pi tau / |w|^2,
///   Phi = atan2(tau, |kn|), theta = pi/2 - |Phi|.
/// The two Phi agree whenever kn > 0; D is identical in both.
struct ClosedFormHelix {
    HelixParams published;
    HelixParams frame;
    /// Radius of normal curvature of the ribbon surface along the helix axis,
    /// 1 / |k1 cos^2(phi + theta) + k2 sin^2(phi + theta)|; infinite when the
    /// surface is straight along the axis.
    double axial_radius = 0.0;
    /// Arclength of one helical turn, 2 pi / |w|.
    double turn_length = 0.0;
};

/// Throws DomainError when both curvatures vanish (straight ribbon).
ClosedFormHelix helix_params_closed_form(double kappa1, double kappa2, double phi);

struct HelixFit {
    HelixParams params;
    Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
    Eigen::Vector3d axis_point = Eigen::Vector3d::Zero();
    double turns = 0.0;
    double residual = 0.0;  ///< RMS distance of the samples to the fitted helix (mm)
};

/// Fits a circular helix to the centerline points alone.
///
/// The axis is the direction along which the chord tangents have constant
/// projection (smallest principal axis of the centred tangent cloud);
/// radius comes from a circle fit in the normal plane and pitch from a
/// linear fit of height against unwrapped angle. Requires at least two
/// turns; throws DomainError on a straight curve.
HelixFit fit_helix(const FramedCurve& curve);

/// Same, restricted to samples with s in [s_begin, s_end].
HelixFit fit_helix(const FramedCurve& curve, double s_begin, double s_end);

}  // namespace ribbon
