#pragma once

#include "ribbon/frustration.hpp"
#include "ribbon/model.hpp"

#include <json.hpp>

#include <string>

namespace ribbon {

inline constexpr const char* kVersion = "0.3.0";

/// Machine-readable record of a simulate run. Key order is fixed:
///   tool, version, handedness, total_energy, energy_right, energy_left,
///   step, total_length, segments[...], config
/// and per segment:
///   index, start_mm, length_mm, prestrain[...], kappa1, kappa2,
///   helix_angle_degrees, handedness, boundary, frustrated, fallback,
///   pitch_closed_form, radius_closed_form, pitch_fit, radius_fit,
///   energy_unconstrained, energy_constrained, widths_mm
/// Fit values are null when the segment completes fewer than two turns.
nlohmann::ordered_json run_summary(const RibbonSpec& spec, const SeashellResult& result);

}  // namespace ribbon
