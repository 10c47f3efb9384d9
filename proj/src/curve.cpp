#include "ribbon/curve.hpp"

#include "ribbon/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace ribbon {

namespace {

using Frame = Eigen::Matrix<double, 3, 4>;  // columns P, r1, r2, N

Frame derivative(const Frame& y, double k1, double k2, double c, double s) {
    Frame d;
    const auto r1 = y.col(1);
    const auto r2 = y.col(2);
    const auto n = y.col(3);
    d.col(0) = c * r1 + s * r2;
    d.col(1) = -k1 * c * n;
    d.col(2) = -k2 * s * n;
    d.col(3) = k1 * c * r1 + k2 * s * r2;
    return d;
}

void project_to_rotation(Frame& y) {
    Eigen::Matrix3d m;
    m << y.col(1), y.col(2), y.col(3);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
    if (r.determinant() < 0.0) {
        Eigen::Matrix3d u = svd.matrixU();
        u.col(2) *= -1.0;
        r = u * svd.matrixV().transpose();
    }
    y.col(1) = r.col(0);
    y.col(2) = r.col(1);
    y.col(3) = r.col(2);
}

FrameSample to_sample(double s, const Frame& y) { return {s, y.col(0), y.col(1), y.col(2), y.col(3)}; }

}  // namespace

CurvatureProfile::CurvatureProfile(std::vector<double> piece_lengths, std::vector<double> kappa1,
                                   std::vector<double> kappa2)
    : kappa1_(std::move(kappa1)), kappa2_(std::move(kappa2)) {
    if (piece_lengths.empty() || piece_lengths.size() != kappa1_.size() || piece_lengths.size() != kappa2_.size())
        throw std::invalid_argument("curvature profile: mismatched piece counts");
    for (std::size_t i = 0; i < piece_lengths.size(); ++i) {
        if (!(piece_lengths[i] > 0.0)) throw std::invalid_argument("curvature profile: pieces must have positive length");
        if (!std::isfinite(kappa1_[i]) || !std::isfinite(kappa2_[i]))
            throw DomainError("curvature profile: non-finite curvature in piece " + std::to_string(i));
        breaks_.push_back(breaks_.back() + piece_lengths[i]);
    }
}

CurvatureProfile CurvatureProfile::uniform(double length, double kappa1, double kappa2) {
    return CurvatureProfile({length}, {kappa1}, {kappa2});
}

std::size_t CurvatureProfile::piece_at(double s) const {
    const auto it = std::lower_bound(breaks_.begin() + 1, breaks_.end(), s);
    if (it == breaks_.end()) return pieces() - 1;
    return static_cast<std::size_t>(it - breaks_.begin() - 1);
}

Eigen::Vector3d FramedCurve::d_x(std::size_t i) const {
    const auto& f = samples[i];
    return std::cos(phi) * f.r1 + std::sin(phi) * f.r2;
}

Eigen::Vector3d FramedCurve::d_y(std::size_t i) const {
    const auto& f = samples[i];
    return -std::sin(phi) * f.r1 + std::cos(phi) * f.r2;
}

double FramedCurve::max_frame_defect() const {
    double worst = 0.0;
    for (const auto& f : samples) {
        worst = std::max({worst, std::abs(f.r1.norm() - 1.0), std::abs(f.r2.norm() - 1.0), std::abs(f.N.norm() - 1.0),
                          std::abs(f.r1.dot(f.r2)), std::abs(f.r1.dot(f.N)), std::abs(f.r2.dot(f.N)),
                          (f.r1.cross(f.r2) - f.N).norm()});
    }
    return worst;
}

FramedCurve integrate_centerline(const CurvatureProfile& profile, double phi, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("integration step must be positive");
    if (profile.pieces() == 0) throw DomainError("empty curvature profile");
    const auto& breaks = profile.breaks();
    double shortest = breaks[1] - breaks[0];
    for (std::size_t i = 1; i < profile.pieces(); ++i) shortest = std::min(shortest, breaks[i + 1] - breaks[i]);
    if (step > shortest / 10.0 * (1.0 + 1e-12))
        throw DomainError("integration step " + std::to_string(step) + " exceeds a tenth of the shortest piece (" +
                          std::to_string(shortest) + ")");
    if (!std::isfinite(phi)) throw DomainError("phi must be finite");

    const double c = std::cos(phi);
    const double s = std::sin(phi);

    Frame y;
    y.col(0).setZero();
    y.col(1) = Eigen::Vector3d(c, -s, 0.0);
    y.col(2) = Eigen::Vector3d(s, c, 0.0);
    y.col(3) = Eigen::Vector3d::UnitZ();

    FramedCurve curve;
    curve.phi = phi;
    curve.samples.push_back(to_sample(0.0, y));

    for (std::size_t p = 0; p < profile.pieces(); ++p) {
        const double a = breaks[p];
        const double len = breaks[p + 1] - a;
        const auto n = static_cast<std::size_t>(std::ceil(len / step * (1.0 - 1e-12)));
        const double h = len / static_cast<double>(n);
        const double k1 = profile.kappa1(p);
        const double k2 = profile.kappa2(p);
        for (std::size_t i = 0; i < n; ++i) {
            const Frame d1 = derivative(y, k1, k2, c, s);
            const Frame d2 = derivative(y + 0.5 * h * d1, k1, k2, c, s);
            const Frame d3 = derivative(y + 0.5 * h * d2, k1, k2, c, s);
            const Frame d4 = derivative(y + h * d3, k1, k2, c, s);
            y += (h / 6.0) * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
            project_to_rotation(y);
            const double sn = i + 1 == n ? breaks[p + 1] : a + h * static_cast<double>(i + 1);
            curve.samples.push_back(to_sample(sn, y));
        }
    }
    return curve;
}

FramedCurve resample(const FramedCurve& curve, std::size_t n) {
    if (n < 2) throw std::invalid_argument("resample: need at least two samples");
    const std::size_t m = curve.samples.size();
    if (n >= m) return curve;
    FramedCurve out;
    out.phi = curve.phi;
    out.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(i) * static_cast<double>(m - 1) /
                                                               static_cast<double>(n - 1)));
        out.samples.push_back(curve.samples[idx]);
    }
    return out;
}

void write_centerline_csv(std::ostream& os, const FramedCurve& curve) {
    os << "s,px,py,pz,r1x,r1y,r1z,r2x,r2y,r2z,nx,ny,nz\n";
    char buf[32];
    auto put = [&](double v, bool last) {
        if (v == 0.0) v = 0.0;  // no "-0"
        std::snprintf(buf, sizeof buf, "%.9g", v);
        os << buf << (last ? '\n' : ',');
    };
    for (const auto& f : curve.samples) {
        put(f.s, false);
        for (int k = 0; k < 3; ++k) put(f.P[k], false);
        for (int k = 0; k < 3; ++k) put(f.r1[k], false);
        for (int k = 0; k < 3; ++k) put(f.r2[k], false);
        for (int k = 0; k < 3; ++k) put(f.N[k], k == 2);
    }
}

}  // namespace ribbon
