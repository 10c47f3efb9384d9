#pragma once

#include "ribbon/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace ribbon {

/// Malformed or inconsistent configuration, with the offending location.
class ConfigError : public SpecError {
public:
    ConfigError(const std::string& message, std::string field, std::optional<long> line = {});

    const std::string& field() const { return field_; }
    std::optional<long> line() const { return line_; }

private:
    std::string field_;
    std::optional<long> line_;
};

/// TOML schema (lengths mm, angles degrees):
///
///   [ribbon]            phi_degrees, width_start_mm, width_end_mm
///   [surface_stress]    optional; top = [xx, yy, xy], bottom = [xx, yy, xy]
///   [[segment]]         length_mm, optional [segment.surface_stress]
///   [[segment.layer]]   thickness_mm, youngs_modulus, poisson_ratio,
///                       prestrain_xx, prestrain_yy, prestrain_xy,
///                       material_angle_degrees
///
/// Layers are listed bottom to top. A pre-strain p is the stretch imposed on
/// the layer before bonding, i.e. an eigenstrain of -p in the material axes.
RibbonSpec parse_config(std::string_view text, const std::string& source = "<string>");
RibbonSpec load_config(const std::filesystem::path& path);

/// Serializes a spec in the same schema. Degree and width values are chosen
/// so that parse_config(to_toml(s)) == s bit for bit whenever s itself came
/// from a parsed config.
std::string to_toml(const RibbonSpec& spec);

}  // namespace ribbon
