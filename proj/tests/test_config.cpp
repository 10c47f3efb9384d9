#include "ribbon/config.hpp"
#include "ribbon/summary.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdio>
#include <random>

using namespace ribbon;
using doctest::Approx;

namespace {

std::string random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> nseg(1, 5), nlay(1, 3);
    auto num = [&](double lo, double hi) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", 1 + static_cast<int>(u(rng) * 6), lo + (hi - lo) * u(rng));
        return std::string(buf);
    };
    std::string t = "[ribbon]\nphi_degrees = " + num(-80, 80) + "\nwidth_start_mm = " + num(5, 20) +
                    "\nwidth_end_mm = " + num(0.5, 5) + "\n";
    const int ns = nseg(rng);
    for (int i = 0; i < ns; ++i) {
        t += "\n[[segment]]\nlength_mm = " + num(5, 80) + "\n";
        if (u(rng) < 0.3)
            t += "surface_stress = { top = [" + num(-1, 1) + ", " + num(-1, 1) + ", 0.0], bottom = [0.0, " +
                 num(-1, 1) + ", " + num(-1, 1) + "] }\n";
        const int nl = nlay(rng) + (ns == 1 ? 1 : 0);
        for (int j = 0; j < nl; ++j) {
            t += "[[segment.layer]]\nthickness_mm = " + num(0.1, 1) + "\nyoungs_modulus = " + num(0.2, 5) +
                 "\npoisson_ratio = " + num(-0.5, 0.44) + "\nprestrain_xx = " + num(-0.5, 0.9) +
                 "\nprestrain_yy = " + num(-0.5, 0.9) + "\nmaterial_angle_degrees = " + num(-90, 90) + "\n";
        }
    }
    return t;
}

}  // namespace

TEST_CASE("reference config") {
    const auto spec = support::reference_spec();
    REQUIRE(spec.segments.size() == 7);
    CHECK(spec.phi == Approx(deg2rad(12.0)));
    CHECK(spec.total_length() == Approx(250.0));
    CHECK(spec.width.at(0.0) == Approx(12.0));
    CHECK(spec.width.at(250.0) == Approx(2.0));
    const double xx[] = {0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.9};
    for (std::size_t i = 0; i < 7; ++i) {
        const auto& seg = spec.segments[i];
        REQUIRE(seg.layers.size() == 2);
        CHECK(seg.layers[0].eigenstrain.xx == -xx[i]);
        CHECK(seg.layers[0].eigenstrain.yy == -0.3);
        CHECK(seg.layers[1].eigenstrain == Tensor2{});
        CHECK(seg.layers[0].material_angle == Approx(deg2rad(-12.0)));
        CHECK(seg.thickness() == Approx(1.0));
    }
}

TEST_CASE("defaults") {
    const auto spec = parse_config("[ribbon]\nwidth_start_mm = 3\n[[segment]]\nlength_mm = 10\n[[segment.layer]]\n"
                                   "prestrain_xx = 0.1\n[[segment.layer]]\n");
    CHECK(spec.phi == 0.0);
    CHECK(spec.width.alpha == 0.0);
    CHECK(spec.width.w0 == 3.0);
    const auto& l = spec.segments[0].layers[1];
    CHECK(l.thickness == 0.5);
    CHECK(l.youngs_modulus == 1.0);
    CHECK(l.poisson_ratio == 0.49);
    CHECK(spec.segments[0].layers[0].eigenstrain.xx == -0.1);
}

TEST_CASE("to_toml round trip is bit-exact") {
    const auto spec = support::reference_spec();
    const auto text = to_toml(spec);
    CHECK(parse_config(text) == spec);
    CHECK(to_toml(parse_config(text)) == text);

    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        const auto src = random_config(rng);
        CAPTURE(src);
        const auto s = parse_config(src);
        const auto echo = to_toml(s);
        CHECK(parse_config(echo) == s);
        CHECK(to_toml(parse_config(echo)) == echo);
    }
}

TEST_CASE("diagnostics carry the line and field") {
    auto error_of = [](const std::string& text) -> ConfigError {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e;
        }
        FAIL("no ConfigError");
        return ConfigError("", "");
    };

    const auto unknown = error_of("[ribbon]\nwidth_start_mm = 3\nwidht_end_mm = 1\n[[segment]]\nlength_mm = 1\n"
                                  "[[segment.layer]]\n");
    CHECK(unknown.field() == "ribbon.widht_end_mm");
    CHECK(unknown.line() == 3);
    CHECK(std::string(unknown.what()).find("line 3") != std::string::npos);

    const auto type = error_of("[ribbon]\nwidth_start_mm = 3\n[[segment]]\nlength_mm = \"long\"\n[[segment.layer]]\n");
    CHECK(type.field() == "segment[0].length_mm");
    CHECK(type.line() == 4);

    const auto syntax = error_of("[ribbon]\nwidth_start_mm = = 3\n");
    CHECK(syntax.line() == 2);

    const auto missing = error_of("[ribbon]\nphi_degrees = 3\n[[segment]]\nlength_mm = 1\n[[segment.layer]]\n");
    CHECK(missing.field() == "ribbon.width_start_mm");

    const auto none = error_of("[ribbon]\nwidth_start_mm = 3\n");
    CHECK(std::string(none.what()).find("no segments") != std::string::npos);

    const auto bad = error_of("[ribbon]\nwidth_start_mm = 3\n[[segment]]\nlength_mm = 1\n[[segment.layer]]\n"
                              "poisson_ratio = 0.7\n");
    CHECK(bad.field() == "segment[0]");
    CHECK(bad.line().has_value());

    CHECK_THROWS_AS(load_config("/nonexistent/ribbon.toml"), ConfigError);
    CHECK_THROWS_AS(parse_config("[ribbon]\nwidth_start_mm = 3\n[[segment]]\nlength_mm = 1\n"), ConfigError);
}

TEST_CASE("summary layout") {
    RibbonSpec spec;
    spec.phi = deg2rad(20.0);
    spec.width = {0.5, 0.0};
    spec.segments = {support::bimetal(1.0, 0.3, {-0.02, 0.0, 0.0}, 30.0),
                     support::bimetal(1.0, 0.3, {-0.04, 0.0, 0.0}, 30.0)};
    const auto res = assemble_seashell(spec);
    const auto j = run_summary(spec, res);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"tool", "version", "handedness", "total_energy", "energy_right",
                                           "energy_left", "step", "total_length", "segments", "config"});
    REQUIRE(j["segments"].size() == 2);
    std::vector<std::string> seg_keys;
    for (const auto& [k, v] : j["segments"][0].items()) seg_keys.push_back(k);
    CHECK(seg_keys == std::vector<std::string>{"index", "start_mm", "length_mm", "prestrain", "kappa1", "kappa2",
                                               "helix_angle_degrees", "handedness", "boundary", "frustrated",
                                               "fallback", "pitch_closed_form", "radius_closed_form", "pitch_fit",
                                               "radius_fit", "energy_unconstrained", "energy_constrained",
                                               "widths_mm"});
    CHECK(j["version"] == kVersion);
    CHECK(j["segments"][1]["start_mm"].get<double>() == 30.0);
    CHECK(parse_config(j["config"].get<std::string>()) == spec);
    CHECK(run_summary(spec, assemble_seashell(spec)).dump(2) == j.dump(2));
}
