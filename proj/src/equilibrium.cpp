#include "ribbon/equilibrium.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ribbon {

namespace {

using Vector5d = Eigen::Matrix<double, 5, 1>;
using Matrix5d = Eigen::Matrix<double, 5, 5>;

Eigen::Matrix<double, 6, 5> generalized_strain_map(double phi) {
    Eigen::Matrix<double, 6, 5> j = Eigen::Matrix<double, 6, 5>::Zero();
    j(0, 0) = 1.0;
    j(1, 1) = 1.0;
    j(2, 2) = 2.0;
    j.block<3, 2>(3, 3) = principal_curvature_map(phi);
    return j;
}

double stiffness_scale(const SegmentSpec& segment) {
    double q = 0.0;
    for (const auto& l : segment.layers) q = std::max(q, reduced_stiffness(l.youngs_modulus, l.poisson_ratio).q11);
    return q * segment.thickness();
}

constexpr double kMaxCondition = 1e14;

}  // namespace

Vector5d to_vector(const EquilibriumState& s) {
    Vector5d x;
    x << s.eps_xx, s.eps_yy, s.eps_xy, s.kappa1, s.kappa2;
    return x;
}

EquilibriumState to_state(const Vector5d& x, double phi) { return {x(0), x(1), x(2), x(3), x(4), phi}; }

StationarySystem stationary_system(const SegmentSpec& segment, double phi) {
    const Laminate lam = laminate(segment);
    const auto j = generalized_strain_map(phi);
    StationarySystem sys;
    sys.hessian = j.transpose() * lam.stiffness() * j;
    sys.hessian = 0.5 * (sys.hessian + sys.hessian.transpose()).eval();
    sys.rhs = j.transpose() * lam.load();
    sys.constant = lam.constant;
    return sys;
}

SolveReport solve_segment(const SegmentSpec& segment, double phi) {
    const StationarySystem sys = stationary_system(segment, phi);

    Eigen::SelfAdjointEigenSolver<Matrix5d> eig(sys.hessian, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (!(lo > 0.0) || cond > kMaxCondition)
        throw SolverError("stationarity system is singular or ill-conditioned (condition number " +
                              std::to_string(cond) + ")",
                          cond);

    SolveReport report;
    report.hessian_min_eigenvalue = lo;
    report.condition_number = cond;

    Eigen::LDLT<Matrix5d> ldlt(sys.hessian);
    Vector5d x = ldlt.solve(sys.rhs);
    // One sweep of iterative refinement.
    x += ldlt.solve(sys.rhs - sys.hessian * x);
    report.iterations = 1;

    // A stack with no through-thickness contrast drives no curvature.
    const Eigen::Matrix3d hee = sys.hessian.topLeftCorner<3, 3>();
    const Eigen::Matrix<double, 2, 3> hke = sys.hessian.bottomLeftCorner<2, 3>();
    const Eigen::Vector3d ge = sys.rhs.head<3>();
    const Eigen::Vector2d coupled = hke * hee.ldlt().solve(ge);
    const Eigen::Vector2d contrast = sys.rhs.tail<2>() - coupled;
    const double contrast_scale = sys.rhs.tail<2>().norm() + coupled.norm();
    if (contrast.norm() <= 1e-13 * contrast_scale || contrast_scale == 0.0) {
        report.trivially_flat = true;
        x.head<3>() = hee.ldlt().solve(ge);
        x(3) = 0.0;
        x(4) = 0.0;
    }

    report.state = to_state(x, phi);
    report.energy = sys.energy(x);
    report.residual_norm = sys.gradient(x).norm() / stiffness_scale(segment);
    if (!report.state.finite()) throw SolverError("non-finite equilibrium state", cond);
    return report;
}

std::vector<SolveReport> solve_ribbon(const RibbonSpec& spec) {
    spec.validate();
    std::vector<SolveReport> out;
    out.reserve(spec.segments.size());
    for (std::size_t i = 0; i < spec.segments.size(); ++i) {
        try {
            out.push_back(solve_segment(spec.segments[i], spec.phi));
        } catch (const SolverError& e) {
            throw SolverError("segment " + std::to_string(i) + ": " + e.what(), e.condition_number(), i);
        }
    }
    return out;
}

SolveReport solve_segment_free_phi(const SegmentSpec& segment, double phi_start) {
    auto energy_at = [&](double phi) { return solve_segment(segment, phi).energy; };
    const auto best = boost::math::tools::brent_find_minima(energy_at, phi_start - 0.25 * kPi,
                                                            phi_start + 0.25 * kPi, std::numeric_limits<double>::digits);
    // Brent cannot resolve a flat minimum better than sqrt(eps); keep the start
    // point when it is as good to rounding.
    const double e0 = energy_at(phi_start);
    const double tie = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(e0), std::abs(best.second));
    const double phi = e0 <= best.second + tie ? phi_start : best.first;
    return solve_segment(segment, phi);
}

ReducedEnergyModel::ReducedEnergyModel(const SegmentSpec& segment, double phi) : phi_(phi) {
    const StationarySystem sys = stationary_system(segment, phi);
    a_ = sys.hessian.topLeftCorner<3, 3>();
    b_ = sys.hessian.topRightCorner<3, 2>();
    ga_ = sys.rhs.head<3>();
    a_solver_.compute(a_);
    const Eigen::Matrix<double, 3, 2> ab = a_solver_.solve(b_);
    hessian_ = sys.hessian.bottomRightCorner<2, 2>() - b_.transpose() * ab;
    hessian_ = 0.5 * (hessian_ + hessian_.transpose()).eval();
    const Eigen::Vector3d aga = a_solver_.solve(ga_);
    gk_ = sys.rhs.tail<2>() - b_.transpose() * aga;
    constant_ = sys.constant - 0.5 * ga_.dot(aga);
}

ReducedEnergy ReducedEnergyModel::operator()(double kappa1, double kappa2) const {
    const Eigen::Vector2d k(kappa1, kappa2);
    ReducedEnergy r;
    r.energy = 0.5 * k.dot(hessian_ * k) - gk_.dot(k) + constant_;
    r.gradient = hessian_ * k - gk_;
    const Eigen::Vector3d e = a_solver_.solve(ga_ - b_ * k);
    r.state = {e(0), e(1), e(2), kappa1, kappa2, phi_};
    return r;
}

ReducedEnergy reduced_energy(const SegmentSpec& segment, double phi, double kappa1, double kappa2) {
    return ReducedEnergyModel(segment, phi)(kappa1, kappa2);
}

}  // namespace ribbon
