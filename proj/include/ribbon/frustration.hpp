#pragma once

#include "ribbon/contact.hpp"
#include "ribbon/curve.hpp"
#include "ribbon/equilibrium.hpp"
#include "ribbon/helix.hpp"
#include "ribbon/mesh.hpp"
#include "ribbon/model.hpp"

#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ribbon {

/// Raised when a landscape grid cannot resolve the forbidden-region boundary.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the boundary of the forbidden region cannot be traced.
class FrustrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Widths of the two adjacent turns whose overlap is tested.
struct TurnWidths {
    double w1 = 0.0;
    double w2 = 0.0;
};

struct ContactOptions {
    /// Extra axial clearance required between turns (the thickness H when
    /// modelling a physical sheet; 0 for the zero-thickness predicate).
    double gap = 0.0;
};

/// A curvature state is forbidden when its helix self-contacts and the
/// segment is long enough to complete a full turn.
bool is_forbidden(double kappa1, double kappa2, double phi, const TurnWidths& widths, double segment_length,
                  const ContactOptions& options = {});

struct LandscapeGrid {
    double kappa1_min = 0.0;
    double kappa1_max = 0.0;
    std::size_t n1 = 0;
    double kappa2_min = 0.0;
    double kappa2_max = 0.0;
    std::size_t n2 = 0;
};

struct LandscapeCell {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double energy = 0.0;  ///< Pi minimized over midplane strains (per unit area)
    bool forbidden = false;
};

/// Row-major over kappa1 (outer) and kappa2 (inner).
struct ForbiddenRegionMap {
    LandscapeGrid grid;
    std::vector<LandscapeCell> cells;

    const LandscapeCell& at(std::size_t i, std::size_t j) const { return cells[i * grid.n2 + j]; }
    std::size_t minimum_index() const;
};

/// Throws ResolutionError when either axis has fewer than 3 nodes or the
/// forbidden flag never changes across the grid.
ForbiddenRegionMap map_landscape(const SegmentSpec& segment, double phi, const TurnWidths& widths,
                                 const LandscapeGrid& grid, const ContactOptions& options = {});

/// CSV with header kappa1,kappa2,reduced_energy,forbidden.
void write_landscape_csv(std::ostream& os, const ForbiddenRegionMap& map);

enum class BoundaryKind {
    unconstrained,  ///< interior optimum, no active constraint
    contact,        ///< on the contact equality (tangency point)
    wide_ribbon,    ///< on the wide-ribbon cut of the contact predicate
    single_turn,    ///< on the one-full-turn limit of the segment
    ring_limit,     ///< the lobe's best state degenerates to a ring
};

std::string_view to_string(BoundaryKind k);

struct ConstrainedCandidate {
    bool valid = false;
    EquilibriumState state;
    double energy = std::numeric_limits<double>::infinity();  ///< per unit area
    Handedness handedness = Handedness::ring;
    BoundaryKind kind = BoundaryKind::ring_limit;
    double contact_residual = 0.0;    ///< clearance (mm) of the contact predicate at the state
    double tangency_residual = 0.0;   ///< |sin| of the angle between energy and constraint gradients
};

struct FrustratedSolution {
    bool frustrated = false;
    SolveReport unconstrained;
    ConstrainedCandidate right;
    ConstrainedCandidate left;
    Handedness global_pick = Handedness::ring;
    bool degenerate = false;        ///< both candidates tie in energy
    std::size_t local_minima = 0;   ///< boundary-local minima found over both lobes

    const ConstrainedCandidate& picked() const { return global_pick == Handedness::left ? left : right; }
    const ConstrainedCandidate& candidate(Handedness h) const { return h == Handedness::left ? left : right; }
};

/// Best admissible state in each handedness lobe of the (kappa1, kappa2)
/// plane. Right/left are labelled by the sign of the helix angle. When the
/// unconstrained optimum is admissible it is its own lobe's candidate and
/// `frustrated` is false.
FrustratedSolution constrained_equilibrium(const SegmentSpec& segment, double phi, const TurnWidths& widths,
                                           const ContactOptions& options = {});

struct SeashellOptions {
    double step = 0.0;              ///< integration step; 0 selects total_length / 20000
    bool thickness_contact = false; ///< require a clearance of H between turns
    std::size_t mesh_rows = 2000;   ///< centerline samples used for the mesh
    std::size_t mesh_columns = 9;
    int width_iterations = 4;       ///< fixed-point sweeps for the turn widths
};

struct SegmentOutcome {
    std::size_t index = 0;
    SolveReport unconstrained;
    FrustratedSolution frustration;
    EquilibriumState state;          ///< the state used in the assembled shell
    double energy_per_area = 0.0;
    double area = 0.0;
    double helix_angle = 0.0;
    Handedness handedness = Handedness::ring;
    BoundaryKind kind = BoundaryKind::unconstrained;
    bool frustrated = false;
    bool fallback = false;           ///< the chosen handedness was unavailable
    TurnWidths widths;
};

struct SeashellResult {
    std::vector<SegmentOutcome> segments;
    Handedness handedness = Handedness::ring;
    double total_energy = 0.0;
    double energy_right = 0.0;
    double energy_left = 0.0;
    double step = 0.0;
    FramedCurve curve;
    RibbonMesh mesh;
    FramedCurve mesh_curve;          ///< the resampled curve the mesh was built on
};

/// Per-segment constrained solves under one shared handedness, chosen to
/// minimize the summed segment energies, integrated into a single framed
/// centerline and meshed.
SeashellResult assemble_seashell(const RibbonSpec& spec, const SeashellOptions& options = {});

}  // namespace ribbon
