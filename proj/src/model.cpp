#include "ribbon/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ribbon {

Tensor2 LayerSpec::eigenstrain_ribbon_axes() const { return rotate_strain(eigenstrain, material_angle); }

double SegmentSpec::thickness() const {
    double h = 0.0;
    for (const auto& l : layers) h += l.thickness;
    return h;
}

std::vector<double> SegmentSpec::interfaces() const {
    std::vector<double> z;
    z.reserve(layers.size() + 1);
    const double h = thickness();
    double acc = -0.5 * h;
    z.push_back(acc);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        acc += layers[i].thickness;
        z.push_back(i + 1 == layers.size() ? 0.5 * h : acc);
    }
    return z;
}

std::size_t SegmentSpec::layer_at(double z) const {
    const auto zs = interfaces();
    for (std::size_t i = 0; i + 1 < zs.size(); ++i)
        if (z <= zs[i + 1]) return i;
    return layers.size() - 1;
}

void SegmentSpec::validate() const {
    if (!(length > 0.0) || !std::isfinite(length)) throw SpecError("segment length must be positive");
    if (layers.empty()) throw SpecError("segment has an empty layer stack");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        std::ostringstream where;
        where << "layer " << i << ": ";
        if (!(l.thickness > 0.0) || !std::isfinite(l.thickness))
            throw SpecError(where.str() + "thickness must be positive");
        if (!(l.youngs_modulus > 0.0) || !std::isfinite(l.youngs_modulus))
            throw SpecError(where.str() + "Young's modulus must be positive");
        if (!(l.poisson_ratio > -1.0 && l.poisson_ratio < 0.5))
            throw SpecError(where.str() + "Poisson ratio must lie in (-1, 0.5)");
        const auto& e = l.eigenstrain;
        if (!std::isfinite(e.xx) || !std::isfinite(e.yy) || !std::isfinite(e.xy) || !std::isfinite(l.material_angle))
            throw SpecError(where.str() + "non-finite eigenstrain or material angle");
    }
}

double RibbonSpec::total_length() const {
    double l = 0.0;
    for (const auto& s : segments) l += s.length;
    return l;
}

double RibbonSpec::segment_start(std::size_t i) const {
    double l = 0.0;
    for (std::size_t k = 0; k < i && k < segments.size(); ++k) l += segments[k].length;
    return l;
}

std::vector<std::string> RibbonSpec::validate() const {
    if (segments.empty()) throw SpecError("no segments");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        try {
            segments[i].validate();
        } catch (const SpecError& e) {
            throw SpecError("segment " + std::to_string(i) + ": " + e.what());
        }
    }
    if (!std::isfinite(phi)) throw SpecError("phi must be finite");
    if (!(width.w0 > 0.0)) throw SpecError("width at s=0 must be positive");
    const double len = total_length();
    const double w_end = width.at(len);
    if (!(w_end > 0.0)) throw SpecError("width must stay positive along the ribbon (alpha * L < w0)");

    std::vector<std::string> warnings;
    const double w_min = std::min(width.w0, w_end);
    double h_max = 0.0;
    for (const auto& s : segments) h_max = std::max(h_max, s.thickness());
    if (w_min < 5.0 * h_max) {
        std::ostringstream os;
        os << "thin-sheet assumption weak: min width " << w_min << " mm < 5 x thickness " << h_max << " mm";
        warnings.push_back(os.str());
    }
    if (len < 5.0 * std::max(width.w0, w_end)) {
        std::ostringstream os;
        os << "slender-ribbon assumption weak: length " << len << " mm < 5 x max width";
        warnings.push_back(os.str());
    }
    return warnings;
}

Eigen::Matrix3d PlaneStressStiffness::matrix() const {
    Eigen::Matrix3d q;
    q << q11, q12, 0.0, q12, q22, 0.0, 0.0, 0.0, q66;
    return q;
}

double width_at(const RibbonSpec& spec, double s) {
    const double len = spec.total_length();
    const double slack = 1e-12 * std::max(1.0, len);
    if (!(s >= -slack && s <= len + slack))
        throw DomainError("arclength " + std::to_string(s) + " outside [0, " + std::to_string(len) + "]");
    const double w = spec.width.at(s);
    if (!(w > 0.0)) throw DomainError("non-positive width at s=" + std::to_string(s));
    return w;
}

PlaneStressStiffness reduced_stiffness(double youngs_modulus, double poisson_ratio) {
    if (!(youngs_modulus > 0.0)) throw DomainError("Young's modulus must be positive");
    if (!(poisson_ratio > -1.0 && poisson_ratio < 0.5)) throw DomainError("Poisson ratio must lie in (-1, 0.5)");
    const double q11 = youngs_modulus / (1.0 - poisson_ratio * poisson_ratio);
    return {q11, poisson_ratio * q11, q11, youngs_modulus / (2.0 * (1.0 + poisson_ratio))};
}

Tensor2 rotate_strain(const Tensor2& eps, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * c * eps.xx - 2.0 * s * c * eps.xy + s * s * eps.yy,
            s * s * eps.xx + 2.0 * s * c * eps.xy + c * c * eps.yy,
            s * c * (eps.xx - eps.yy) + (c * c - s * s) * eps.xy};
}

SegmentSpec mirrored(const SegmentSpec& segment) {
    SegmentSpec m = segment;
    for (auto& l : m.layers) {
        l.material_angle = -l.material_angle;
        l.eigenstrain.xy = -l.eigenstrain.xy;
    }
    m.surface_stress.top.xy = -m.surface_stress.top.xy;
    m.surface_stress.bottom.xy = -m.surface_stress.bottom.xy;
    return m;
}

RibbonSpec mirrored(const RibbonSpec& spec) {
    RibbonSpec m = spec;
    m.phi = -spec.phi;
    for (auto& s : m.segments) s = mirrored(s);
    return m;
}

}  // namespace ribbon
