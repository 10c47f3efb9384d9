#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace ribbon {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a problem description is structurally invalid.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Symmetric in-plane tensor. Shear is stored as the tensor component
/// (not the engineering shear); voigt() doubles it.
struct Tensor2 {
    double xx = 0.0;
    double yy = 0.0;
    double xy = 0.0;

    double trace() const { return xx + yy; }
    double det() const { return xx * yy - xy * xy; }

    /// (xx, yy, 2xy), the layout the stiffness matrices act on.
    Eigen::Vector3d voigt() const { return {xx, yy, 2.0 * xy}; }

    /// Double contraction a:b.
    double contract(const Tensor2& o) const { return xx * o.xx + yy * o.yy + 2.0 * xy * o.xy; }

    Tensor2 operator+(const Tensor2& o) const { return {xx + o.xx, yy + o.yy, xy + o.xy}; }
    Tensor2 operator-(const Tensor2& o) const { return {xx - o.xx, yy - o.yy, xy - o.xy}; }
    Tensor2 operator-() const { return {-xx, -yy, -xy}; }
    Tensor2 operator*(double a) const { return {a * xx, a * yy, a * xy}; }
    bool operator==(const Tensor2&) const = default;
};

/// w(s) = w0 - alpha * s
struct WidthProfile {
    double w0 = 1.0;
    double alpha = 0.0;

    double at(double s) const { return w0 - alpha * s; }
    bool operator==(const WidthProfile&) const = default;
};

struct LayerSpec {
    double thickness = 0.0;
    double youngs_modulus = 1.0;
    double poisson_ratio = 0.0;
    /// Stress-free strain of the layer in its own material axes.
    Tensor2 eigenstrain;
    /// Rotation of the material axes relative to d_x (radians, counter-clockwise).
    double material_angle = 0.0;

    /// Eigenstrain expressed in ribbon axes (d_x, d_y).
    Tensor2 eigenstrain_ribbon_axes() const;

    bool operator==(const LayerSpec&) const = default;
};

/// Effective surface stresses (force per length) on the top and bottom faces.
struct SurfaceStress {
    Tensor2 top;
    Tensor2 bottom;

    bool is_zero() const { return top == Tensor2{} && bottom == Tensor2{}; }
    bool operator==(const SurfaceStress&) const = default;
};

/// One piece of the ribbon with a uniform layer stack. Layers are ordered
/// bottom to top, spanning z in [-H/2, H/2].
struct SegmentSpec {
    double length = 0.0;
    std::vector<LayerSpec> layers;
    SurfaceStress surface_stress;

    double thickness() const;
    /// Interface positions z_0 = -H/2 < z_1 < ... < z_n = H/2.
    std::vector<double> interfaces() const;
    /// Index of the layer containing z (interfaces belong to the lower layer).
    std::size_t layer_at(double z) const;
    /// Throws SpecError on an empty or non-physical stack.
    void validate() const;

    bool operator==(const SegmentSpec&) const = default;
};

struct RibbonSpec {
    std::vector<SegmentSpec> segments;
    WidthProfile width;
    /// Mis-orientation of the principal curvature axes (r1, r2) against (d_x, d_y).
    double phi = 0.0;

    double total_length() const;
    /// Arclength at which segment i starts.
    double segment_start(std::size_t i) const;
    /// Throws SpecError on hard violations; returns advisory warnings for
    /// slenderness assumptions that hold only weakly.
    std::vector<std::string> validate() const;

    bool operator==(const RibbonSpec&) const = default;
};

/// Reduced (plane-stress) stiffness acting on (e_xx, e_yy, 2 e_xy).
struct PlaneStressStiffness {
    double q11 = 0.0;
    double q12 = 0.0;
    double q22 = 0.0;
    double q66 = 0.0;

    Eigen::Matrix3d matrix() const;
};

double width_at(const RibbonSpec& spec, double s);

PlaneStressStiffness reduced_stiffness(double youngs_modulus, double poisson_ratio);

/// Re-expresses a tensor given in axes rotated by `angle` from d_x in the
/// (d_x, d_y) frame: R(angle) * eps * R(angle)^T.
Tensor2 rotate_strain(const Tensor2& eps, double angle);

/// Reflection y -> -y of the whole problem: negates phi, material angles and
/// every shear component. Produces the opposite-handed twin of a ribbon.
RibbonSpec mirrored(const RibbonSpec& spec);
SegmentSpec mirrored(const SegmentSpec& segment);

constexpr double kPi = 3.14159265358979323846;
inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

}  // namespace ribbon
