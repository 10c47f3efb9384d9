#include "ribbon/equilibrium.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace ribbon;
using doctest::Approx;

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;

SegmentSpec random_bilayer(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> h(0.2, 0.8), e(0.5, 3.0), nu(-0.3, 0.45), eig(-0.05, 0.05), ang(-1.5, 1.5);
    return support::segment(30.0, {support::layer(h(rng), e(rng), nu(rng), {eig(rng), eig(rng), eig(rng)}, ang(rng)),
                                   support::layer(h(rng), e(rng), nu(rng), {eig(rng), eig(rng), eig(rng)}, ang(rng))});
}

// Nested grid refinement on energy_per_area alone; curvatures scaled by H/2
// so all five coordinates are strains.
Vec5 grid_minimize(const SegmentSpec& seg, double phi) {
    const double half_h = 0.5 * seg.thickness();
    auto energy = [&](const Vec5& y) {
        Vec5 x = y;
        x[3] /= half_h;
        x[4] /= half_h;
        return energy_per_area(to_state(x, phi), seg);
    };
    Vec5 centre = Vec5::Zero();
    double span = 0.2;
    const int n = 7;
    for (int it = 0; it < 90 && span > 1e-13; ++it) {
        Vec5 best = centre;
        double best_e = energy(centre);
        Vec5 y;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d)
                        for (int e = 0; e < n; ++e) {
                            const int idx[5] = {a, b, c, d, e};
                            for (int k = 0; k < 5; ++k) y[k] = centre[k] + span * (2.0 * idx[k] / (n - 1) - 1.0);
                            const double v = energy(y);
                            if (v < best_e) {
                                best_e = v;
                                best = y;
                            }
                        }
        // Keep the box when the optimum sits on its edge; shrink otherwise.
        const bool interior = ((best - centre).cwiseAbs().array() < 0.99 * span).all();
        centre = best;
        if (interior) span *= 0.6;
    }
    centre[3] /= half_h;
    centre[4] /= half_h;
    return centre;
}

double fd_gradient_norm(const SegmentSpec& seg, const EquilibriumState& st) {
    const Vec5 x = to_vector(st);
    Vec5 g;
    for (int k = 0; k < 5; ++k) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[k]));
        Vec5 p = x, m = x;
        p[k] += h;
        m[k] -= h;
        g[k] = (energy_per_area(to_state(p, st.phi), seg) - energy_per_area(to_state(m, st.phi), seg)) / (2 * h);
    }
    return g.norm();
}

}  // namespace

TEST_CASE("zero eigenstrain stays flat") {
    const auto seg = support::bimetal(1.0, 0.3, {});
    const auto r = solve_segment(seg, 0.4);
    CHECK(r.state.kappa1 == 0.0);
    CHECK(r.state.kappa2 == 0.0);
    CHECK(r.state.eps_xx == 0.0);
    CHECK(r.energy == 0.0);
    CHECK(r.trivially_flat);
}

TEST_CASE("single homogeneous layer relaxes without bending") {
    const auto seg = support::segment(10.0, {support::layer(0.6, 2.0, 0.2, {0.02, -0.01, 0.0}, 0.3)});
    const auto r = solve_segment(seg, 0.2);
    CHECK(r.trivially_flat);
    CHECK(r.state.kappa1 == 0.0);
    CHECK(r.state.kappa2 == 0.0);
    CHECK(std::abs(r.energy) < 1e-18);
}

TEST_CASE("bimetal closed form") {
    for (double eps : {0.01, -0.02, 0.3}) {
        for (double h : {1.0, 0.4}) {
            // Bottom wants to contract by eps relative to the top.
            const auto seg = support::bimetal(h, 0.0, {-eps, 0.0, 0.0});
            const auto r = solve_segment(seg, 0.0);
            CHECK(r.state.kappa1 == Approx(1.5 * eps / h).epsilon(1e-12));
            CHECK(r.hessian_min_eigenvalue > 0.0);
            CHECK(r.residual_norm < 1e-10);
        }
    }
    // Thickness scaling: H -> lambda H scales curvature by 1/lambda.
    const auto a = solve_segment(support::bimetal(1.0, 0.0, {-0.01, 0.0, 0.0}), 0.0);
    const auto b = solve_segment(support::bimetal(2.5, 0.0, {-0.01, 0.0, 0.0}), 0.0);
    CHECK(b.state.kappa1 * 2.5 == Approx(a.state.kappa1).epsilon(1e-12));
}

TEST_CASE("equal-biaxial mismatch gives a ring at any phi") {
    for (double phi : {0.0, 0.2, 0.7, 1.3}) {
        const auto r = solve_segment(support::bimetal(1.0, 0.49, {-0.3, -0.3, 0.0}), phi);
        CHECK(std::abs(r.state.kappa1 - r.state.kappa2) < 1e-10 * std::abs(r.state.kappa1));
    }
}

TEST_CASE("solver output is stationary and a minimum") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> p(-1.5, 1.5);
    for (int i = 0; i < 50; ++i) {
        const auto seg = support::random_stack(rng);
        const auto r = solve_segment(seg, p(rng));
        const auto sys = stationary_system(seg, r.state.phi);
        CHECK(fd_gradient_norm(seg, r.state) < 1e-8 * sys.hessian.cwiseAbs().maxCoeff());
        CHECK(r.hessian_min_eigenvalue > 0.0);
        CHECK(r.residual_norm < 1e-10);
    }
}

TEST_CASE("direct solve matches nested grid minimization") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> p(-1.5, 1.5);
    for (int i = 0; i < 20; ++i) {
        const auto seg = random_bilayer(rng);
        const double phi = p(rng);
        const Vec5 x = to_vector(solve_segment(seg, phi).state);
        const Vec5 g = grid_minimize(seg, phi);
        const double strain_scale = x.head<3>().cwiseAbs().maxCoeff();
        const double curv_scale = x.tail<2>().cwiseAbs().maxCoeff();
        for (int k = 0; k < 5; ++k) {
            const double scale = k < 3 ? strain_scale : curv_scale;
            INFO("stack " << i << " unknown " << k << ": solve " << x[k] << " grid " << g[k]);
            CHECK(std::abs(x[k] - g[k]) <= 1e-6 * std::max(std::abs(x[k]), 1e-2 * scale));
        }
    }
}

TEST_CASE("modulus scaling leaves the minimizer unchanged") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        auto seg = support::random_stack(rng);
        const auto a = solve_segment(seg, 0.3);
        for (auto& l : seg.layers) l.youngs_modulus *= 7.3;
        const auto b = solve_segment(seg, 0.3);
        const Vec5 d = to_vector(a.state) - to_vector(b.state);
        CHECK(d.cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, to_vector(a.state).cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("rotating eigenstrains together with phi leaves curvatures unchanged") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        auto seg = support::random_stack(rng);
        const double phi = u(rng), a = u(rng);
        const auto r0 = solve_segment(seg, phi);
        // Rotating the material by -a turns d_x by +a relative to the stack.
        for (auto& l : seg.layers) l.material_angle -= a;
        const auto r1 = solve_segment(seg, phi + a);
        CHECK(std::abs(r0.state.kappa1 - r1.state.kappa1) < 1e-10 * std::max(1.0, std::abs(r0.state.kappa1)));
        CHECK(std::abs(r0.state.kappa2 - r1.state.kappa2) < 1e-10 * std::max(1.0, std::abs(r0.state.kappa2)));
        CHECK(r0.energy == Approx(r1.energy).epsilon(1e-10));
    }
}

TEST_CASE("reference ribbon: ring at the crossover and a sign change across it") {
    const auto spec = support::reference_spec();
    const auto reports = solve_ribbon(spec);
    REQUIRE(reports.size() == 7);
    const auto& ring = reports[1].state;
    CHECK(std::abs(ring.kappa1 - ring.kappa2) < 1e-12 * std::abs(ring.kappa1));
    CHECK(reports[0].state.kappa1 < reports[0].state.kappa2);
    for (std::size_t i = 2; i < 7; ++i) CHECK(reports[i].state.kappa1 > reports[i].state.kappa2);
    // Bimetal scaling along each stretch axis: kappa = 1.5 p / H at equal moduli.
    CHECK(ring.kappa1 == Approx(1.5 * 0.3).epsilon(1e-10));
    CHECK(reports[6].state.kappa1 == Approx(1.5 * 0.9).epsilon(1e-10));
}

TEST_CASE("solve_ribbon composes per-segment solves") {
    RibbonSpec one;
    one.segments = {support::bimetal(1.0, 0.3, {-0.05, -0.02, 0.01})};
    one.width = {5.0, 0.0};
    one.phi = 0.3;
    const auto r = solve_ribbon(one);
    REQUIRE(r.size() == 1);
    CHECK(to_vector(r[0].state) == to_vector(solve_segment(one.segments[0], 0.3).state));

    RibbonSpec many = one;
    many.segments.assign(5, one.segments[0]);
    const auto m = solve_ribbon(many);
    for (const auto& rep : m) CHECK((to_vector(rep.state) - to_vector(m[0].state)).norm() <= 1e-12);
}

TEST_CASE("ill-conditioned stacks are rejected with the segment index") {
    RibbonSpec spec;
    auto good = support::bimetal(1.0, 0.3, {-0.05, 0.0, 0.0});
    // Sub-micron stack: bending and stretching stiffness differ by ~12 / H^2.
    auto bad = support::bimetal(2e-8, 0.3, {-0.05, 0.0, 0.0});
    spec.segments = {good, bad};
    spec.width = {5.0, 0.0};
    try {
        solve_ribbon(spec);
        FAIL("expected a solver error");
    } catch (const SolverError& e) {
        REQUIRE(e.segment().has_value());
        CHECK(*e.segment() == 1);
        CHECK(e.condition_number() > 1e14);
    }
}

TEST_CASE("free-phi mode keeps a stationary phi") {
    // Equal-biaxial mismatch: energy independent of phi, start point retained.
    const auto seg = support::bimetal(1.0, 0.3, {-0.1, -0.1, 0.0});
    const auto r = solve_segment_free_phi(seg, 0.21);
    CHECK(r.state.phi == 0.21);
    // Aligned uniaxial stack: phi = 0 is optimal and is reproduced.
    const auto u = support::bimetal(1.0, 0.3, {-0.1, -0.03, 0.0});
    const auto fixed = solve_segment(u, 0.0);
    const auto free = solve_segment_free_phi(u, 0.0);
    CHECK(free.energy <= fixed.energy);
    CHECK(free.energy == Approx(fixed.energy).epsilon(1e-12));
}

TEST_CASE("reduced energy equals the five-unknown energy minimized over strains") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> k(-0.5, 0.5), p(-1.5, 1.5);
    for (int i = 0; i < 30; ++i) {
        const auto seg = support::random_stack(rng);
        const double phi = p(rng);
        const ReducedEnergyModel model(seg, phi);
        const double k1 = k(rng), k2 = k(rng);
        const auto r = model(k1, k2);
        // Minimize over strains by solving the 3x3 block independently.
        const auto sys = stationary_system(seg, phi);
        Vec5 x = Vec5::Zero();
        x[3] = k1;
        x[4] = k2;
        const Eigen::Vector3d rhs = sys.rhs.head<3>() - sys.hessian.topRightCorner<3, 2>() * x.tail<2>();
        x.head<3>() = sys.hessian.topLeftCorner<3, 3>().fullPivLu().solve(rhs);
        const double full = energy_per_area(to_state(x, phi), seg);
        CHECK(std::abs(r.energy - full) < 1e-10 * std::max(1.0, std::abs(full)));
        CHECK(std::abs(energy_per_area(r.state, seg) - full) < 1e-10 * std::max(1.0, std::abs(full)));
        // Gradient by finite differences.
        const double h = 1e-6;
        const double g1 = (model(k1 + h, k2).energy - model(k1 - h, k2).energy) / (2 * h);
        const double g2 = (model(k1, k2 + h).energy - model(k1, k2 - h).energy) / (2 * h);
        CHECK(r.gradient[0] == Approx(g1).epsilon(1e-6).scale(1e-3));
        CHECK(r.gradient[1] == Approx(g2).epsilon(1e-6).scale(1e-3));
    }
}
