#include "ribbon/energy.hpp"

#include <cmath>

namespace ribbon {

namespace {

Eigen::Vector3d surface_voigt(const Tensor2& f) { return {f.xx, f.yy, f.xy}; }

}  // namespace

Tensor2 EquilibriumState::curvature() const {
    // r1 sits at angle -phi from d_x.
    return rotate_strain(Tensor2{kappa1, kappa2, 0.0}, -phi);
}

bool EquilibriumState::finite() const {
    return std::isfinite(eps_xx) && std::isfinite(eps_yy) && std::isfinite(eps_xy) && std::isfinite(kappa1) &&
           std::isfinite(kappa2) && std::isfinite(phi);
}

EquilibriumState EquilibriumState::relabeled() const {
    EquilibriumState r = *this;
    r.kappa1 = kappa2;
    r.kappa2 = kappa1;
    r.phi = phi + 0.5 * kPi;
    return r;
}

StrainSample strain_at(const EquilibriumState& state, double z, const Tensor2& residual) {
    const double c = std::cos(state.phi);
    const double s = std::sin(state.phi);
    const double k1 = state.kappa1;
    const double k2 = state.kappa2;
    return {state.eps_xx + z * (k1 * c * c + k2 * s * s) + residual.xx,
            state.eps_yy + z * (k1 * s * s + k2 * c * c) + residual.yy,
            state.eps_xy + z * (k2 - k1) * s * c + residual.xy};
}

StrainSample strain_at(const EquilibriumState& state, const SegmentSpec& segment, double z) {
    segment.validate();
    const double h = segment.thickness();
    if (!(z >= -0.5 * h && z <= 0.5 * h))
        throw DomainError("z=" + std::to_string(z) + " outside the thickness [-H/2, H/2]");
    const auto& layer = segment.layers[segment.layer_at(z)];
    return strain_at(state, z, -layer.eigenstrain_ribbon_axes());
}

double energy_per_area(const EquilibriumState& state, const SegmentSpec& segment) {
    if (segment.layers.empty()) throw SpecError("segment has an empty layer stack");
    const auto zs = segment.interfaces();
    const Tensor2 eps = state.midplane_strain();
    const Eigen::Vector3d v = state.curvature().voigt();

    double pi = 0.0;
    for (std::size_t k = 0; k < segment.layers.size(); ++k) {
        const auto& layer = segment.layers[k];
        const Eigen::Matrix3d q = reduced_stiffness(layer.youngs_modulus, layer.poisson_ratio).matrix();
        const Eigen::Vector3d u = (eps - layer.eigenstrain_ribbon_axes()).voigt();
        const double z0 = zs[k];
        const double z1 = zs[k + 1];
        const double d1 = z1 - z0;
        const double d2 = z1 * z1 - z0 * z0;
        const double d3 = z1 * z1 * z1 - z0 * z0 * z0;
        pi += 0.5 * (u.dot(q * u) * d1 + u.dot(q * v) * d2 + v.dot(q * v) * d3 / 3.0);
    }

    const auto& f = segment.surface_stress;
    if (!f.is_zero()) {
        const double h = segment.thickness();
        const auto bottom = strain_at(state, -0.5 * h, -segment.layers.front().eigenstrain_ribbon_axes());
        const auto top = strain_at(state, 0.5 * h, -segment.layers.back().eigenstrain_ribbon_axes());
        pi += f.bottom.contract({bottom.gamma_xx, bottom.gamma_yy, bottom.gamma_xy});
        pi += f.top.contract({top.gamma_xx, top.gamma_yy, top.gamma_xy});
    }
    return pi;
}

double strip_area(const WidthProfile& width, double a, double b) {
    return (b - a) * 0.5 * (width.at(a) + width.at(b));
}

double total_energy(const std::vector<EquilibriumState>& states, const RibbonSpec& spec) {
    if (states.size() != spec.segments.size())
        throw std::invalid_argument("total_energy: " + std::to_string(states.size()) + " states for " +
                                    std::to_string(spec.segments.size()) + " segments");
    double total = 0.0;
    double start = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double end = start + spec.segments[i].length;
        total += energy_per_area(states[i], spec.segments[i]) * strip_area(spec.width, start, end);
        start = end;
    }
    return total;
}

Eigen::Matrix<double, 6, 6> Laminate::stiffness() const {
    Eigen::Matrix<double, 6, 6> k;
    k << A, B, B, D;
    return k;
}

Eigen::Matrix<double, 6, 1> Laminate::load() const {
    Eigen::Matrix<double, 6, 1> l;
    l << force, moment;
    return l;
}

Laminate laminate(const SegmentSpec& segment) {
    segment.validate();
    Laminate lam;
    const auto zs = segment.interfaces();
    for (std::size_t k = 0; k < segment.layers.size(); ++k) {
        const auto& layer = segment.layers[k];
        const Eigen::Matrix3d q = reduced_stiffness(layer.youngs_modulus, layer.poisson_ratio).matrix();
        const Eigen::Vector3d eta = layer.eigenstrain_ribbon_axes().voigt();
        const double z0 = zs[k];
        const double z1 = zs[k + 1];
        const double d1 = z1 - z0;
        const double d2 = 0.5 * (z1 * z1 - z0 * z0);
        const double d3 = (z1 * z1 * z1 - z0 * z0 * z0) / 3.0;
        lam.A += q * d1;
        lam.B += q * d2;
        lam.D += q * d3;
        lam.force += q * eta * d1;
        lam.moment += q * eta * d2;
        lam.constant += 0.5 * eta.dot(q * eta) * d1;
    }

    const auto& f = segment.surface_stress;
    if (!f.is_zero()) {
        const double h = segment.thickness();
        const Eigen::Vector3d fb = surface_voigt(f.bottom);
        const Eigen::Vector3d ft = surface_voigt(f.top);
        lam.force -= fb + ft;
        lam.moment -= 0.5 * h * (ft - fb);
        lam.constant -= fb.dot(segment.layers.front().eigenstrain_ribbon_axes().voigt());
        lam.constant -= ft.dot(segment.layers.back().eigenstrain_ribbon_axes().voigt());
    }
    return lam;
}

Eigen::Matrix<double, 3, 2> principal_curvature_map(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Eigen::Matrix<double, 3, 2> p;
    p << c * c, s * s, s * s, c * c, -2.0 * s * c, 2.0 * s * c;
    return p;
}

}  // namespace ribbon
