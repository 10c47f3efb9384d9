#include "ribbon/summary.hpp"

#include "ribbon/config.hpp"

#include <cmath>

namespace ribbon {

namespace {

nlohmann::ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v == 0.0 ? 0.0 : v;
}

}  // namespace

nlohmann::ordered_json run_summary(const RibbonSpec& spec, const SeashellResult& result) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["tool"] = "ribbonshell";
    j["version"] = kVersion;
    j["handedness"] = std::string(to_string(result.handedness));
    j["total_energy"] = num(result.total_energy);
    j["energy_right"] = num(result.energy_right);
    j["energy_left"] = num(result.energy_left);
    j["step"] = num(result.step);
    j["total_length"] = num(spec.total_length());

    ordered_json segs = ordered_json::array();
    for (const auto& out : result.segments) {
        const auto& seg = spec.segments[out.index];
        const double a = spec.segment_start(out.index);
        ordered_json r;
        r["index"] = out.index;
        r["start_mm"] = num(a);
        r["length_mm"] = num(seg.length);
        ordered_json pre = ordered_json::array();
        for (const auto& l : seg.layers)
            pre.push_back({{"xx", num(-l.eigenstrain.xx)}, {"yy", num(-l.eigenstrain.yy)}, {"xy", num(-l.eigenstrain.xy)}});
        r["prestrain"] = pre;
        r["kappa1"] = num(out.state.kappa1);
        r["kappa2"] = num(out.state.kappa2);
        r["helix_angle_degrees"] = num(rad2deg(out.helix_angle));
        r["handedness"] = std::string(to_string(out.handedness));
        r["boundary"] = std::string(to_string(out.kind));
        r["frustrated"] = out.frustrated;
        r["fallback"] = out.fallback;

        r["pitch_closed_form"] = nullptr;
        r["radius_closed_form"] = nullptr;
        if (out.state.kappa1 != 0.0 || out.state.kappa2 != 0.0) {
            const auto cf = helix_params_closed_form(out.state.kappa1, out.state.kappa2, spec.phi);
            r["pitch_closed_form"] = num(cf.frame.pitch);
            r["radius_closed_form"] = num(cf.frame.radius);
        }
        r["pitch_fit"] = nullptr;
        r["radius_fit"] = nullptr;
        try {
            const auto fit = fit_helix(result.curve, a, a + seg.length);
            r["pitch_fit"] = num(fit.params.pitch);
            r["radius_fit"] = num(fit.params.radius);
        } catch (const DomainError&) {
        }
        r["energy_unconstrained"] = num(out.unconstrained.energy);
        r["energy_constrained"] = num(out.energy_per_area);
        r["widths_mm"] = {num(out.widths.w1), num(out.widths.w2)};
        segs.push_back(std::move(r));
    }
    j["segments"] = std::move(segs);
    j["config"] = to_toml(spec);
    return j;
}

}  // namespace ribbon
