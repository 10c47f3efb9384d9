#include "ribbon/contact.hpp"
#include "ribbon/equilibrium.hpp"
#include "support.hpp"

#include <boost/math/tools/roots.hpp>
#include <doctest.h>

using namespace ribbon;
using doctest::Approx;

namespace {

FramedCurve helix_curve(double k1, double k2, double phi, double turns) {
    const auto cf = helix_params_closed_form(k1, k2, phi);
    return integrate_centerline(CurvatureProfile::uniform(turns * cf.turn_length, k1, k2), phi, cf.turn_length / 1000);
}

// Width at which the contact equality holds for equal turn widths.
double touching_width(double k1, double k2, double phi) {
    auto f = [&](double w) {
        const auto ev = evaluate_self_contact(k1, k2, phi, w, w);
        return ev.wide_ribbon ? -1.0 : ev.clearance;
    };
    double hi = 1e-3;
    while (f(hi) > 0.0) hi *= 2.0;
    boost::uintmax_t it = 200;
    const auto r = boost::math::tools::bisect(f, 0.5 * hi, hi, boost::math::tools::eps_tolerance<double>(50), it);
    return 0.5 * (r.first + r.second);
}

}  // namespace

TEST_CASE("closed-form predicate limits") {
    CHECK(self_contact(0.2, 0.2, 0.7, 1e-6, 1e-6));
    CHECK(self_contact(0.2, 0.2, 0.7, 5.0, 5.0));
    CHECK_FALSE(self_contact(0.2, 0.0, kPi / 4, 1e-3, 1e-3));

    const auto ev = evaluate_self_contact(0.2, 0.0, kPi / 4, 1e-3, 1e-3);
    CHECK(ev.pitch == Approx(2 * kPi * 0.1 / 0.02));
    CHECK(ev.clearance > 0.0);
    CHECK_FALSE(ev.wide_ribbon);

    const auto wide = evaluate_self_contact(0.5, 0.1, 0.3, 100.0, 100.0);
    CHECK(wide.wide_ribbon);
    CHECK(wide.contact);

    CHECK_THROWS_AS(self_contact(0.2, 0.1, 0.3, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(self_contact(0.0, 0.0, 0.3, 1.0, 1.0), DomainError);
}

TEST_CASE("the axial extent reduces to half the projected width for flat cross-sections") {
    CHECK(axial_half_extent(2.0, 0.5, INFINITY) == 2.0);
    CHECK(axial_half_extent(2.0, 0.5, 1e9) == Approx(2.0).epsilon(1e-12));
    CHECK(axial_half_extent(2.0, 1.0, 4.0) == Approx(4.0 * std::sin(0.25)));
}

TEST_CASE("contact equality is monotone in the width") {
    const double k1 = 0.3, k2 = -0.1, phi = 0.6;
    const double w = touching_width(k1, k2, phi);
    CHECK(std::abs(evaluate_self_contact(k1, k2, phi, w, w).clearance) < 1e-9);
    CHECK(self_contact(k1, k2, phi, 1.01 * w, 1.01 * w));
    CHECK_FALSE(self_contact(k1, k2, phi, 0.99 * w, 0.99 * w));
    // Slender limit always separates turns when D > 0.
    CHECK_FALSE(self_contact(k1, k2, phi, 1e-6 * w, 1e-6 * w));
}

TEST_CASE("every reference segment self-contacts at its own width") {
    const auto spec = support::reference_spec();
    const auto rep = solve_ribbon(spec);
    for (std::size_t i = 0; i < rep.size(); ++i) {
        const double mid = spec.segment_start(i) + 0.5 * spec.segments[i].length;
        const double w = spec.width.at(mid);
        CHECK(self_contact(rep[i].state.kappa1, rep[i].state.kappa2, spec.phi, w, w));
    }
}

TEST_CASE("brute-force oracle on clear-cut helices") {
    const auto tight = helix_curve(0.4, 0.1, 0.5, 3.0);
    const auto pitch = std::abs(helix_params_closed_form(0.4, 0.1, 0.5).frame.pitch);
    const auto bf = brute_force_contact(tight, {2.0 * pitch, 0.0}, 0.0);
    CHECK(bf.contact);
    CHECK(bf.turns == Approx(3.0).epsilon(1e-6));
    CHECK(self_contact(0.4, 0.1, 0.5, 2.0 * pitch, 2.0 * pitch));

    const auto loose = brute_force_contact(tight, {0.1 * pitch, 0.0}, 0.0);
    CHECK_FALSE(loose.contact);
    CHECK(loose.min_distance > loose.tolerance);

    CHECK_THROWS_AS(brute_force_contact(helix_curve(0.4, 0.1, 0.5, 1.5), {0.1, 0.0}, 0.0), InsufficientGeometry);
}

TEST_CASE("touching configuration sits on the brute-force threshold") {
    const double k1 = 0.3, k2 = 0.25, phi = 0.5;
    const double w = touching_width(k1, k2, phi);
    REQUIRE(w < 0.6 * helix_params_closed_form(k1, k2, phi).frame.radius);
    const auto curve = helix_curve(k1, k2, phi, 2.5);
    CHECK(brute_force_contact(curve, {1.03 * w, 0.0}, 0.0).contact);
    CHECK_FALSE(brute_force_contact(curve, {0.97 * w, 0.0}, 0.0).contact);
    const auto below = brute_force_contact(curve, {0.9 * w, 0.0}, 0.0);
    CHECK(below.min_distance == Approx(0.1 * w).epsilon(0.1));
}

TEST_CASE("closed form agrees with the brute-force oracle on random slender helices") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> k(-0.5, 0.5), p(-1.4, 1.4), f(0.3, 1.7);
    int agree = 0, total = 0;
    while (total < 60) {
        const double k1 = k(rng), k2 = k(rng), phi = p(rng);
        if (std::abs(k1 - k2) < 0.05 || std::abs(std::sin(2 * phi)) < 0.2) continue;
        const auto cf = helix_params_closed_form(k1, k2, phi);
        if (!std::isfinite(cf.turn_length)) continue;
        const double w = f(rng) * touching_width(k1, k2, phi);
        if (w * std::max(std::abs(k1), std::abs(k2)) > 0.6 || w > 0.6 * cf.frame.radius) continue;
        const auto ev = evaluate_self_contact(k1, k2, phi, w, w);
        if (std::abs(ev.clearance) < 0.02 * ev.pitch) continue;
        ++total;
        const auto bf = brute_force_contact(helix_curve(k1, k2, phi, 2.5), {w, 0.0}, 0.0);
        agree += bf.contact == ev.contact ? 1 : 0;
    }
    CHECK(agree >= 58);
}

TEST_CASE("inter-turn clearance of a touching helix") {
    const double k1 = 0.3, k2 = 0.05, phi = 0.7;
    const auto curve = helix_curve(k1, k2, phi, 3.0);
    const double pitch = std::abs(helix_params_closed_form(k1, k2, phi).frame.pitch);
    const auto sparse = resample(curve, 600);
    const auto loose = generate_mesh(sparse, {0.3 * pitch, 0.0}, 5);
    const auto cl = interturn_clearance(loose, sparse, pitch, 10);
    REQUIRE_FALSE(cl.empty());
    for (const auto& c : cl) CHECK(c.clearance > 0.2 * pitch);
    const auto tight = generate_mesh(sparse, {1.5 * pitch, 0.0}, 5);
    for (const auto& c : interturn_clearance(tight, sparse, pitch, 10)) CHECK(c.clearance == 0.0);
}
