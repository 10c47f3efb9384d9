#pragma once

#include "ribbon/model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace ribbon {

/// Midplane strains and principal curvatures of a uniformly bent segment.
/// kappa1 acts along r1 = cos(phi) d_x - sin(phi) d_y, kappa2 along r2.
struct EquilibriumState {
    double eps_xx = 0.0;
    double eps_yy = 0.0;
    double eps_xy = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double phi = 0.0;

    Tensor2 midplane_strain() const { return {eps_xx, eps_yy, eps_xy}; }
    /// Curvature tensor in (d_x, d_y) axes.
    Tensor2 curvature() const;
    bool finite() const;
    /// Swaps the principal labels: (k1, k2, phi) -> (k2, k1, phi + pi/2).
    /// Describes the same deformed shape.
    EquilibriumState relabeled() const;
};

struct StrainSample {
    double gamma_xx = 0.0;
    double gamma_yy = 0.0;
    double gamma_xy = 0.0;
};

/// In-plane strain at height z, with `residual` the strain locked into the
/// flat bonded ribbon at that height (minus the local eigenstrain).
StrainSample strain_at(const EquilibriumState& state, double z, const Tensor2& residual);

/// Range-checked variant that takes the residual from the layer at z.
StrainSample strain_at(const EquilibriumState& state, const SegmentSpec& segment, double z);

/// Potential energy per unit midplane area, integrated exactly through the
/// thickness layer by layer.
double energy_per_area(const EquilibriumState& state, const SegmentSpec& segment);

/// Sum over segments of energy_per_area times the segment's (trapezoidal) area.
double total_energy(const std::vector<EquilibriumState>& states, const RibbonSpec& spec);

/// Exact area of the tapered strip between arclengths a and b.
double strip_area(const WidthProfile& width, double a, double b);

/// Laminate description of a stack: with q = (a, b) the generalized strains
/// a = (e_xx, e_yy, 2e_xy) and b = (k_xx, k_yy, 2k_xy),
///   Pi(q) = 1/2 q^T K q - q^T load + constant,
/// K = [[A, B], [B, D]].
struct Laminate {
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d B = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
    Eigen::Vector3d force = Eigen::Vector3d::Zero();
    Eigen::Vector3d moment = Eigen::Vector3d::Zero();
    double constant = 0.0;

    Eigen::Matrix<double, 6, 6> stiffness() const;
    Eigen::Matrix<double, 6, 1> load() const;
};

Laminate laminate(const SegmentSpec& segment);

/// Maps (kappa1, kappa2) to (k_xx, k_yy, 2k_xy) in ribbon axes.
Eigen::Matrix<double, 3, 2> principal_curvature_map(double phi);

}  // namespace ribbon
