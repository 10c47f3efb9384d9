#include "ribbon/config.hpp"

#include <toml.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ribbon {

ConfigError::ConfigError(const std::string& message, std::string field, std::optional<long> line)
    : SpecError((line ? "line " + std::to_string(*line) + ": " : std::string()) +
                (field.empty() ? std::string() : field + ": ") + message),
      field_(std::move(field)),
      line_(line) {}

namespace {

std::optional<long> line_of(const toml::node& n) {
    const auto& src = n.source();
    if (src.begin.line == 0) return std::nullopt;
    return static_cast<long>(src.begin.line);
}

void reject_unknown(const toml::table& t, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : t) {
        if (!allowed.count(std::string(k.str())))
            throw ConfigError("unknown key", where + "." + std::string(k.str()), line_of(v));
    }
}

double number(const toml::table& t, const std::string& where, const char* key, std::optional<double> fallback) {
    const toml::node* n = t.get(key);
    const std::string field = where + "." + key;
    if (!n) {
        if (fallback) return *fallback;
        throw ConfigError("missing required value", field, line_of(t));
    }
    if (!n->is_number()) throw ConfigError("expected a number", field, line_of(*n));
    const double v = n->value<double>().value();
    if (!std::isfinite(v)) throw ConfigError("value must be finite", field, line_of(*n));
    return v;
}

Tensor2 triple(const toml::table& t, const std::string& where, const char* key) {
    const toml::node* n = t.get(key);
    if (!n) return {};
    const std::string field = where + "." + key;
    const auto* arr = n->as_array();
    if (!arr || arr->size() != 3) throw ConfigError("expected an array [xx, yy, xy]", field, line_of(*n));
    double v[3];
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& e = *arr->get(i);
        if (!e.is_number()) throw ConfigError("expected a number", field, line_of(e));
        v[i] = e.value<double>().value();
    }
    return {v[0], v[1], v[2]};
}

SurfaceStress surface_stress(const toml::table& t, const std::string& where) {
    reject_unknown(t, where, {"top", "bottom"});
    return {triple(t, where, "top"), triple(t, where, "bottom")};
}

const toml::table& as_table(const toml::node& n, const std::string& field) {
    const auto* t = n.as_table();
    if (!t) throw ConfigError("expected a table", field, line_of(n));
    return *t;
}

/// Value near `guess` that the parser maps back exactly onto `target`.
template <class F>
double preimage(double guess, double target, F forward) {
    if (forward(guess) == target) return guess;
    double up = guess, down = guess;
    for (int k = 0; k < 64; ++k) {
        up = std::nextafter(up, INFINITY);
        down = std::nextafter(down, -INFINITY);
        if (forward(up) == target) return up;
        if (forward(down) == target) return down;
    }
    return guess;
}

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, r.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string fmt(const Tensor2& t) { return "[" + fmt(t.xx) + ", " + fmt(t.yy) + ", " + fmt(t.xy) + "]"; }

}  // namespace

RibbonSpec parse_config(std::string_view text, const std::string& source) {
    toml::table root;
    try {
        root = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        throw ConfigError(std::string(e.description()), "", static_cast<long>(e.source().begin.line));
    }
    reject_unknown(root, "", {"ribbon", "surface_stress", "segment"});

    RibbonSpec spec;
    const toml::node* rn = root.get("ribbon");
    if (!rn) throw ConfigError("missing [ribbon] table", "ribbon");
    const auto& ribbon = as_table(*rn, "ribbon");
    reject_unknown(ribbon, "ribbon", {"phi_degrees", "width_start_mm", "width_end_mm"});
    spec.phi = deg2rad(number(ribbon, "ribbon", "phi_degrees", 0.0));
    const double w_start = number(ribbon, "ribbon", "width_start_mm", std::nullopt);
    const double w_end = number(ribbon, "ribbon", "width_end_mm", w_start);

    SurfaceStress shared;
    if (const toml::node* sn = root.get("surface_stress"))
        shared = surface_stress(as_table(*sn, "surface_stress"), "surface_stress");

    if (const toml::node* segs = root.get("segment")) {
        const auto* arr = segs->as_array();
        if (!arr) throw ConfigError("expected [[segment]] entries", "segment", line_of(*segs));
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const std::string where = "segment[" + std::to_string(i) + "]";
            const auto& st = as_table(*arr->get(i), where);
            reject_unknown(st, where, {"length_mm", "layer", "surface_stress"});
            SegmentSpec seg;
            seg.length = number(st, where, "length_mm", std::nullopt);
            seg.surface_stress = shared;
            if (const toml::node* sn = st.get("surface_stress"))
                seg.surface_stress = surface_stress(as_table(*sn, where + ".surface_stress"), where + ".surface_stress");
            const toml::node* ln = st.get("layer");
            const auto* layers = ln ? ln->as_array() : nullptr;
            if (!layers || layers->empty()) throw ConfigError("needs at least one [[segment.layer]]", where, line_of(st));
            for (std::size_t j = 0; j < layers->size(); ++j) {
                const std::string lw = where + ".layer[" + std::to_string(j) + "]";
                const auto& lt = as_table(*layers->get(j), lw);
                reject_unknown(lt, lw,
                               {"thickness_mm", "youngs_modulus", "poisson_ratio", "prestrain_xx", "prestrain_yy",
                                "prestrain_xy", "material_angle_degrees"});
                LayerSpec layer;
                layer.thickness = number(lt, lw, "thickness_mm", 0.5);
                layer.youngs_modulus = number(lt, lw, "youngs_modulus", 1.0);
                layer.poisson_ratio = number(lt, lw, "poisson_ratio", 0.49);
                layer.eigenstrain = Tensor2{number(lt, lw, "prestrain_xx", 0.0), number(lt, lw, "prestrain_yy", 0.0),
                                            number(lt, lw, "prestrain_xy", 0.0)} * -1.0;
                layer.material_angle = deg2rad(number(lt, lw, "material_angle_degrees", 0.0));
                seg.layers.push_back(layer);
            }
            try {
                seg.validate();
            } catch (const SpecError& e) {
                throw ConfigError(e.what(), where, line_of(st));
            }
            spec.segments.push_back(std::move(seg));
        }
    }
    if (spec.segments.empty()) throw ConfigError("no segments", "segment");

    const double total = spec.total_length();
    spec.width = {w_start, (w_start - w_end) / total};
    try {
        spec.validate();
    } catch (const SpecError& e) {
        throw ConfigError(e.what(), "ribbon", line_of(ribbon));
    }
    return spec;
}

RibbonSpec load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string(), "");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string to_toml(const RibbonSpec& spec) {
    std::ostringstream os;
    const double total = spec.total_length();
    const double phi_deg = preimage(rad2deg(spec.phi), spec.phi, [](double d) { return deg2rad(d); });
    const double w_end = preimage(spec.width.at(total), spec.width.alpha,
                                  [&](double we) { return (spec.width.w0 - we) / total; });
    os << "[ribbon]\n";
    os << "phi_degrees = " << fmt(phi_deg) << "\n";
    os << "width_start_mm = " << fmt(spec.width.w0) << "\n";
    os << "width_end_mm = " << fmt(w_end) << "\n";
    for (const auto& seg : spec.segments) {
        os << "\n[[segment]]\n";
        os << "length_mm = " << fmt(seg.length) << "\n";
        if (!seg.surface_stress.is_zero()) {
            os << "surface_stress = { top = " << fmt(seg.surface_stress.top)
               << ", bottom = " << fmt(seg.surface_stress.bottom) << " }\n";
        }
        for (const auto& l : seg.layers) {
            const double ang = preimage(rad2deg(l.material_angle), l.material_angle, [](double d) { return deg2rad(d); });
            os << "\n[[segment.layer]]\n";
            os << "thickness_mm = " << fmt(l.thickness) << "\n";
            os << "youngs_modulus = " << fmt(l.youngs_modulus) << "\n";
            os << "poisson_ratio = " << fmt(l.poisson_ratio) << "\n";
            os << "prestrain_xx = " << fmt(-l.eigenstrain.xx) << "\n";
            os << "prestrain_yy = " << fmt(-l.eigenstrain.yy) << "\n";
            os << "prestrain_xy = " << fmt(-l.eigenstrain.xy) << "\n";
            os << "material_angle_degrees = " << fmt(ang) << "\n";
        }
    }
    return os.str();
}

}  // namespace ribbon
