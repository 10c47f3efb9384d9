#pragma once

#include "ribbon/energy.hpp"
#include "ribbon/model.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ribbon {

/// Raised when the stationarity system cannot be solved reliably.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double condition_number, std::optional<std::size_t> segment = {})
        : std::runtime_error(what), condition_number_(condition_number), segment_(segment) {}

    double condition_number() const { return condition_number_; }
    std::optional<std::size_t> segment() const { return segment_; }

private:
    double condition_number_;
    std::optional<std::size_t> segment_;
};

struct SolveReport {
    EquilibriumState state;
    double energy = 0.0;                  ///< Pi at the solution (per unit area)
    double residual_norm = 0.0;           ///< |grad Pi| / (q11 H)
    double hessian_min_eigenvalue = 0.0;
    double condition_number = 0.0;
    int iterations = 0;                   ///< refinement sweeps of the direct solve
    bool trivially_flat = false;          ///< no through-thickness contrast; curvature is exactly zero
};

/// Energy as an explicit quadratic in x = (e_xx, e_yy, e_xy, kappa1, kappa2)
/// at fixed phi: Pi(x) = 1/2 x^T H x - g^T x + c.
struct StationarySystem {
    Eigen::Matrix<double, 5, 5> hessian;
    Eigen::Matrix<double, 5, 1> rhs;
    double constant = 0.0;

    double energy(const Eigen::Matrix<double, 5, 1>& x) const { return 0.5 * x.dot(hessian * x) - rhs.dot(x) + constant; }
    Eigen::Matrix<double, 5, 1> gradient(const Eigen::Matrix<double, 5, 1>& x) const { return hessian * x - rhs; }
};

StationarySystem stationary_system(const SegmentSpec& segment, double phi);

Eigen::Matrix<double, 5, 1> to_vector(const EquilibriumState& s);
EquilibriumState to_state(const Eigen::Matrix<double, 5, 1>& x, double phi);

/// Unconstrained minimizer of Pi for one segment at fixed phi.
SolveReport solve_segment(const SegmentSpec& segment, double phi);

/// Per-segment solves, in segment order.
std::vector<SolveReport> solve_ribbon(const RibbonSpec& spec);

/// Validation mode: also minimizes over phi, searching within +-pi/4 of phi_start.
SolveReport solve_segment_free_phi(const SegmentSpec& segment, double phi_start);

/// Pi minimized over the midplane strains at fixed principal curvatures.
struct ReducedEnergy {
    double energy = 0.0;
    Eigen::Vector2d gradient = Eigen::Vector2d::Zero();  ///< d/d(kappa1, kappa2)
    EquilibriumState state;                              ///< with the optimal midplane strains
};

/// Schur-complement form of the reduced energy, reusable across many
/// curvature evaluations for the same segment.
class ReducedEnergyModel {
public:
    ReducedEnergyModel(const SegmentSpec& segment, double phi);

    ReducedEnergy operator()(double kappa1, double kappa2) const;
    const Eigen::Matrix2d& hessian() const { return hessian_; }
    double phi() const { return phi_; }

private:
    double phi_;
    Eigen::Matrix3d a_;
    Eigen::Matrix<double, 3, 2> b_;
    Eigen::Vector3d ga_;
    Eigen::Matrix2d hessian_;
    Eigen::Vector2d gk_;
    double constant_;
    Eigen::LDLT<Eigen::Matrix3d> a_solver_;
};

ReducedEnergy reduced_energy(const SegmentSpec& segment, double phi, double kappa1, double kappa2);

}  // namespace ribbon
