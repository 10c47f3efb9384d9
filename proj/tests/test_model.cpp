#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace ribbon;
using doctest::Approx;

TEST_CASE("width profile of the tapered reference strip") {
    RibbonSpec spec = support::reference_spec();
    CHECK(spec.total_length() == Approx(250.0));
    RibbonSpec strip;
    strip.segments = {support::bimetal(1.0, 0.3, {}, 360.0)};
    strip.width = {12.0, 10.0 / 360.0};
    CHECK(width_at(strip, 0.0) == 12.0);
    CHECK(width_at(strip, 360.0) == Approx(2.0).epsilon(1e-14));
    CHECK(width_at(strip, 180.0) == Approx(7.0).epsilon(1e-14));
    CHECK_THROWS_AS(width_at(strip, 360.5), DomainError);
    CHECK_THROWS_AS(width_at(strip, -1e-9), DomainError);

    strip.width = {5.0, 0.0};
    CHECK(width_at(strip, 123.4) == 5.0);
}

TEST_CASE("plane-stress stiffness") {
    auto q = reduced_stiffness(1.0, 0.0);
    CHECK(q.q11 == 1.0);
    CHECK(q.q22 == 1.0);
    CHECK(q.q12 == 0.0);
    CHECK(q.q66 == 0.5);

    auto q2 = reduced_stiffness(2.0, 0.0);
    CHECK(q2.q11 == 2.0 * q.q11);
    CHECK(q2.q66 == 2.0 * q.q66);

    // Oracle: invert the isotropic plane-stress compliance.
    const double e = 1.0, nu = 0.49;
    Eigen::Matrix3d s;
    s << 1.0 / e, -nu / e, 0.0, -nu / e, 1.0 / e, 0.0, 0.0, 0.0, 2.0 * (1.0 + nu) / e;
    const Eigen::Matrix3d c = s.inverse();
    const auto r = reduced_stiffness(e, nu);
    CHECK(r.q11 == Approx(1.0 / (1.0 - nu * nu)).epsilon(1e-14));
    CHECK((r.matrix() - c).norm() < 1e-12);
    CHECK(r.q11 == Approx(1.315962).epsilon(1e-6));

    CHECK_THROWS_AS(reduced_stiffness(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(reduced_stiffness(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(reduced_stiffness(0.0, 0.2), DomainError);
}

TEST_CASE("stiffness is positive definite over the admissible range") {
    for (double nu : {-0.9, -0.5, 0.0, 0.3, 0.49}) {
        const Eigen::Matrix3d m = reduced_stiffness(1.7, nu).matrix();
        CHECK((m - m.transpose()).norm() == 0.0);
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("strain rotation") {
    const Tensor2 a{0.3, -0.2, 0.0};
    CHECK(rotate_strain(a, 0.0) == a);

    const auto swap = rotate_strain({1.0, 0.0, 0.0}, kPi / 2);
    CHECK(swap.xx == Approx(0.0).epsilon(1e-15));
    CHECK(swap.yy == Approx(1.0));
    CHECK(std::abs(swap.xy) < 1e-15);

    const auto diag = rotate_strain({1.0, 0.0, 0.0}, kPi / 4);
    CHECK(diag.xx == Approx(0.5));
    CHECK(diag.yy == Approx(0.5));
    CHECK(diag.xy == Approx(0.5));
    CHECK(diag.trace() == Approx(1.0));
    CHECK(std::abs(diag.det()) < 1e-15);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Tensor2 t{u(rng), u(rng), u(rng)};
        const double ang = 4.0 * u(rng);
        const auto r = rotate_strain(t, ang);
        CHECK(r.trace() == Approx(t.trace()).epsilon(1e-12));
        CHECK(r.det() == Approx(t.det()).epsilon(1e-12).scale(1.0));
        const auto back = rotate_strain(r, -ang);
        CHECK(std::abs(back.xx - t.xx) < 1e-12);
        CHECK(std::abs(back.yy - t.yy) < 1e-12);
        CHECK(std::abs(back.xy - t.xy) < 1e-12);
    }
}

TEST_CASE("segment and ribbon validation") {
    SegmentSpec s = support::bimetal(1.0, 0.3, {0.01, 0.0, 0.0});
    CHECK(s.thickness() == 1.0);
    const auto z = s.interfaces();
    REQUIRE(z.size() == 3);
    CHECK(z.front() == -0.5);
    CHECK(z[1] == 0.0);
    CHECK(z.back() == 0.5);
    CHECK(s.layer_at(-0.25) == 0);
    CHECK(s.layer_at(0.0) == 0);
    CHECK(s.layer_at(0.25) == 1);

    SegmentSpec bad = s;
    bad.layers.clear();
    CHECK_THROWS_AS(bad.validate(), SpecError);
    bad = s;
    bad.layers[0].poisson_ratio = 0.5;
    CHECK_THROWS_AS(bad.validate(), SpecError);
    bad = s;
    bad.length = 0.0;
    CHECK_THROWS_AS(bad.validate(), SpecError);

    RibbonSpec r;
    r.width = {5.0, 0.0};
    CHECK_THROWS_WITH_AS(r.validate(), "no segments", SpecError);
    r.segments = {s, s};
    CHECK(r.total_length() == 100.0);
    CHECK(r.segment_start(1) == 50.0);
    CHECK(r.validate().empty());

    r.width = {5.0, 0.06};  // reaches zero before s = 100
    CHECK_THROWS_AS(r.validate(), SpecError);

    r.width = {0.9, 0.0};  // width only slightly above H: advisory only
    CHECK_FALSE(r.validate().empty());
}

TEST_CASE("mirroring negates angles and shear") {
    RibbonSpec r = support::reference_spec();
    r.segments[0].layers[0].eigenstrain.xy = 0.02;
    r.segments[0].surface_stress.top = {0.1, 0.2, 0.3};
    const auto m = mirrored(r);
    CHECK(m.phi == -r.phi);
    CHECK(m.segments[0].layers[0].material_angle == -r.segments[0].layers[0].material_angle);
    CHECK(m.segments[0].layers[0].eigenstrain.xy == -0.02);
    CHECK(m.segments[0].surface_stress.top.xy == -0.3);
    CHECK(mirrored(m) == r);
}
