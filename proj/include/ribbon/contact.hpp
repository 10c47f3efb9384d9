#pragma once

#include "ribbon/curve.hpp"
#include "ribbon/helix.hpp"
#include "ribbon/mesh.hpp"
#include "ribbon/model.hpp"

#include <vector>

namespace ribbon {

/// Raised when a curve is too short for a turn-to-turn comparison.
class InsufficientGeometry : public DomainError {
public:
    using DomainError::DomainError;
};

/// Closed-form contact test between adjacent turns of a constant-curvature
/// helical ribbon. Each turn contributes an axial half-extent
/// R sin(W / (2 R sin(theta))), R being the surface's radius of curvature
/// along the helix axis and theta the axis/d_x angle; the turns touch when
/// the two half-extents (plus an optional gap) reach the pitch |D|.
struct ContactEvaluation {
    bool contact = false;
    /// sin() argument beyond pi/2: the cross-section curls past the axis
    /// direction; reported as contact.
    bool wide_ribbon = false;
    double extent = 0.0;     ///< sum of the two axial half-extents, mm
    double pitch = 0.0;      ///< |D|, mm
    double clearance = 0.0;  ///< pitch - extent - gap; <= 0 on contact
    ClosedFormHelix helix;
};

ContactEvaluation evaluate_self_contact(double kappa1, double kappa2, double phi, double w1, double w2,
                                        double gap = 0.0);

bool self_contact(double kappa1, double kappa2, double phi, double w1, double w2);

/// Axial half-extent of one turn of width w.
double axial_half_extent(double width, double sin_theta, double axial_radius);

struct BruteForceContact {
    bool contact = false;
    bool intersecting = false;   ///< surfaces of different turns cross
    double min_distance = 0.0;   ///< smallest vertex-to-surface distance found (inf when none within reach)
    double tolerance = 0.0;
    double turns = 0.0;
};

struct BruteForceOptions {
    std::size_t n_t = 9;           ///< mesh columns across the width
    double rows_per_turn = 160.0;  ///< target mesh rows per helical turn
};

/// Geometric oracle on the meshed ribbon: contact when patches more than half
/// a local period apart in arclength come within the tolerance (the
/// thickness, or 1e-3 of the centerline curvature radius when thickness is 0)
/// or cross. Needs at least two turns of frame rotation.
BruteForceContact brute_force_contact(const FramedCurve& curve, const WidthProfile& width, double thickness,
                                      const BruteForceOptions& options = {});

/// Gap between each sampled cross-section and the next turn of the mesh.
struct TurnClearance {
    double s = 0.0;
    double clearance = 0.0;  ///< 0 when crossing; inf when nothing within the search radius
};

/// For every `stride`-th mesh row whose next turn lies on the mesh, the
/// distance from that row's ruling to the surface between half and one and
/// a half local periods further along. Local period is 2 pi / |frame
/// angular speed|.
std::vector<TurnClearance> interturn_clearance(const RibbonMesh& mesh, const FramedCurve& curve, double search_radius,
                                               std::size_t stride = 1);

/// Angular speed of the director frame at each curve sample (1/mm).
std::vector<double> frame_angular_speed(const FramedCurve& curve);

}  // namespace ribbon
