#include "ribbon/helix.hpp"

#include "ribbon/energy.hpp"
#include "ribbon/model.hpp"

#include <cmath>
#include <limits>

namespace ribbon {

std::string_view to_string(Handedness h) {
    switch (h) {
        case Handedness::right: return "right";
        case Handedness::left: return "left";
        case Handedness::ring: return "ring";
    }
    return "ring";
}

Handedness handedness_from_angle(double helix_angle, double tolerance) {
    if (std::abs(helix_angle) < tolerance) return Handedness::ring;
    return helix_angle > 0.0 ? Handedness::right : Handedness::left;
}

ClosedFormHelix helix_params_closed_form(double kappa1, double kappa2, double phi) {
    if (!std::isfinite(kappa1) || !std::isfinite(kappa2) || !std::isfinite(phi))
        throw DomainError("helix parameters: non-finite input");
    if (kappa1 == 0.0 && kappa2 == 0.0) throw DomainError("helix parameters: both curvatures are zero (straight ribbon)");

    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double tau = (kappa1 - kappa2) * s * c;
    const double kn = kappa1 * c * c + kappa2 * s * s;
    const double w2 = kappa1 * kappa1 * c * c + kappa2 * kappa2 * s * s;
    if (!(w2 > 0.0)) throw DomainError("helix parameters: the centerline is straight (frame does not rotate)");

    ClosedFormHelix out;
    out.turn_length = 2.0 * kPi / std::sqrt(w2);

    auto& f = out.frame;
    f.helix_angle = std::atan2(tau, std::abs(kn));
    f.handedness = handedness_from_angle(f.helix_angle);
    f.pitch = 2.0 * kPi * tau / w2;
    f.radius = std::abs(kn) / w2;
    f.theta = 0.5 * kPi - std::abs(f.helix_angle);

    // Normal curvature along the axis direction (tau, kn)/|w| in ribbon axes.
    const Tensor2 k = EquilibriumState{0, 0, 0, kappa1, kappa2, phi}.curvature();
    const double kn_axis = (tau * tau * k.xx + 2.0 * tau * kn * k.xy + kn * kn * k.yy) / w2;
    out.axial_radius = kn_axis == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(kn_axis);

    auto& p = out.published;
    p.pitch = f.pitch;
    p.helix_angle = kn == 0.0 ? (tau == 0.0 ? 0.0 : std::copysign(0.5 * kPi, tau)) : std::atan(tau / kn);
    p.handedness = handedness_from_angle(p.helix_angle);
    const double theta_den = kappa1 * kappa1 * c + kappa2 * kappa2 * s;
    p.theta = theta_den == 0.0 ? std::copysign(0.5 * kPi, tau) : std::atan(tau / theta_den);
    p.radius = 1.0 / (kappa1 * kappa1 * std::cos(phi + p.theta) + kappa2 * kappa2 * std::sin(phi + p.theta));
    return out;
}

HelixFit fit_helix(const FramedCurve& curve) {
    return fit_helix(curve, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
}

HelixFit fit_helix(const FramedCurve& curve, double s_begin, double s_end) {
    std::vector<Eigen::Vector3d> pts;
    for (const auto& f : curve.samples)
        if (f.s >= s_begin && f.s <= s_end) pts.push_back(f.P);
    if (pts.size() < 8) throw DomainError("fit_helix: too few samples");

    const std::size_t n = pts.size();
    std::vector<Eigen::Vector3d> chords(n - 1);
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        chords[i] = (pts[i + 1] - pts[i]).normalized();
        mean += chords[i];
    }
    mean /= static_cast<double>(chords.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& t : chords) cov += (t - mean) * (t - mean).transpose();
    cov /= static_cast<double>(chords.size());

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    if (eig.eigenvalues()(2) < 1e-20) throw DomainError("fit_helix: the curve is straight");
    Eigen::Vector3d axis = eig.eigenvectors().col(0);
    if (mean.dot(axis) < 0.0) axis = -axis;

    const Eigen::Vector3d e1 = axis.unitOrthogonal();
    const Eigen::Vector3d e2 = axis.cross(e1);

    // Algebraic circle fit in the plane normal to the axis, then Gauss-Newton
    // on the geometric distance.
    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd b(n);
    std::vector<double> x(n), y(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = pts[i].dot(e1);
        y[i] = pts[i].dot(e2);
        h[i] = pts[i].dot(axis);
        a(i, 0) = x[i];
        a(i, 1) = y[i];
        a(i, 2) = 1.0;
        b(i) = -(x[i] * x[i] + y[i] * y[i]);
    }
    const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
    double cx = -0.5 * sol(0);
    double cy = -0.5 * sol(1);
    double r = std::sqrt(std::max(0.0, cx * cx + cy * cy - sol(2)));
    for (int it = 0; it < 10; ++it) {
        Eigen::MatrixXd jac(n, 3);
        Eigen::VectorXd res(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = x[i] - cx;
            const double dy = y[i] - cy;
            const double rho = std::hypot(dx, dy);
            res(i) = rho - r;
            jac(i, 0) = rho > 0.0 ? -dx / rho : 0.0;
            jac(i, 1) = rho > 0.0 ? -dy / rho : 0.0;
            jac(i, 2) = -1.0;
        }
        const Eigen::Vector3d step = jac.colPivHouseholderQr().solve(-res);
        cx += step(0);
        cy += step(1);
        r += step(2);
        if (step.norm() < 1e-15 * std::max(1.0, r)) break;
    }

    std::vector<double> psi(n);
    psi[0] = std::atan2(y[0] - cy, x[0] - cx);
    for (std::size_t i = 1; i < n; ++i) {
        const double raw = std::atan2(y[i] - cy, x[i] - cx);
        double d = raw - std::remainder(psi[i - 1], 2.0 * kPi);
        d = std::remainder(d, 2.0 * kPi);
        psi[i] = psi[i - 1] + d;
    }
    const double turns = std::abs(psi.back() - psi.front()) / (2.0 * kPi);
    if (turns < 2.0 - 1e-3) throw DomainError("fit_helix: fewer than two turns (" + std::to_string(turns) + ")");

    // h = h0 + rate * psi
    double mp = 0.0, mh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mp += psi[i];
        mh += h[i];
    }
    mp /= static_cast<double>(n);
    mh /= static_cast<double>(n);
    double spp = 0.0, sph = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        spp += (psi[i] - mp) * (psi[i] - mp);
        sph += (psi[i] - mp) * (h[i] - mh);
    }
    const double rate = sph / spp;
    const double h0 = mh - rate * mp;

    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = std::hypot(x[i] - cx, y[i] - cy) - r;
        const double dh = h[i] - (h0 + rate * psi[i]);
        sq += dr * dr + dh * dh;
    }

    HelixFit fit;
    fit.axis = axis;
    fit.axis_point = cx * e1 + cy * e2 + h0 * axis;
    fit.turns = turns;
    fit.residual = std::sqrt(sq / static_cast<double>(n));
    auto& p = fit.params;
    p.radius = r;
    p.helix_angle = std::atan2(rate, r);
    p.handedness = handedness_from_angle(p.helix_angle, 1e-9);
    p.pitch = p.handedness == Handedness::ring ? 0.0 : 2.0 * kPi * rate;
    if (p.handedness == Handedness::ring) p.helix_angle = 0.0;
    p.theta = 0.5 * kPi - std::abs(p.helix_angle);
    return fit;
}

}  // namespace ribbon
