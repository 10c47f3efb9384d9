#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace ribbon {

/// Piecewise-constant principal curvatures on [0, L]. Piece i covers
/// (breaks[i], breaks[i+1]]; piece 0 also owns s = 0 (left continuity).
class CurvatureProfile {
public:
    CurvatureProfile() = default;
    CurvatureProfile(std::vector<double> piece_lengths, std::vector<double> kappa1, std::vector<double> kappa2);

    static CurvatureProfile uniform(double length, double kappa1, double kappa2);

    std::size_t pieces() const { return kappa1_.size(); }
    double length() const { return breaks_.back(); }
    const std::vector<double>& breaks() const { return breaks_; }
    double kappa1(std::size_t piece) const { return kappa1_[piece]; }
    double kappa2(std::size_t piece) const { return kappa2_[piece]; }
    std::size_t piece_at(double s) const;

private:
    std::vector<double> breaks_{0.0};
    std::vector<double> kappa1_;
    std::vector<double> kappa2_;
};

struct FrameSample {
    double s = 0.0;
    Eigen::Vector3d P = Eigen::Vector3d::Zero();
    Eigen::Vector3d r1 = Eigen::Vector3d::UnitX();
    Eigen::Vector3d r2 = Eigen::Vector3d::UnitY();
    Eigen::Vector3d N = Eigen::Vector3d::UnitZ();
};

/// Sampled centerline with its orthonormal director triad.
struct FramedCurve {
    std::vector<FrameSample> samples;
    double phi = 0.0;

    /// Lengthwise director d_x = cos(phi) r1 + sin(phi) r2.
    Eigen::Vector3d d_x(std::size_t i) const;
    /// Widthwise director d_y = -sin(phi) r1 + cos(phi) r2.
    Eigen::Vector3d d_y(std::size_t i) const;
    double length() const { return samples.empty() ? 0.0 : samples.back().s; }
    /// Largest deviation from an orthonormal right-handed triad over all samples.
    double max_frame_defect() const;
};

/// Fixed-step RK4 integration of the centerline/frame equations,
///   P' = d_x,  N' = k1 cos(phi) r1 + k2 sin(phi) r2,
///   r1' = -k1 cos(phi) N,  r2' = -k2 sin(phi) N,
/// from P(0) = 0, N(0) = E_z, r1(0) = cos(phi) E_x - sin(phi) E_y,
/// r2(0) = sin(phi) E_x + cos(phi) E_y. Steps are shrunk so every piece
/// boundary is a sample, and the triad is projected back onto SO(3) after
/// each step.
FramedCurve integrate_centerline(const CurvatureProfile& profile, double phi, double step);

/// Evenly spaced (by index) subset of n samples, keeping both ends.
FramedCurve resample(const FramedCurve& curve, std::size_t n);

/// CSV with header s,px,py,pz,r1x,r1y,r1z,r2x,r2y,r2z,nx,ny,nz; 9 significant digits.
void write_centerline_csv(std::ostream& os, const FramedCurve& curve);

}  // namespace ribbon
