#pragma once

#include "ribbon/config.hpp"
#include "ribbon/model.hpp"

#include <random>

namespace support {

using namespace ribbon;

inline LayerSpec layer(double h, double e, double nu, Tensor2 eig = {}, double angle = 0.0) {
    LayerSpec l;
    l.thickness = h;
    l.youngs_modulus = e;
    l.poisson_ratio = nu;
    l.eigenstrain = eig;
    l.material_angle = angle;
    return l;
}

inline SegmentSpec segment(double length, std::vector<LayerSpec> layers) {
    SegmentSpec s;
    s.length = length;
    s.layers = std::move(layers);
    return s;
}

/// Equal halves, equal modulus; bottom layer carries `bottom`, top is relaxed.
inline SegmentSpec bimetal(double h_total, double nu, Tensor2 bottom, double length = 50.0) {
    return segment(length, {layer(0.5 * h_total, 1.0, nu, bottom), layer(0.5 * h_total, 1.0, nu)});
}

/// Random stack of 2-4 layers with moderate contrast.
inline SegmentSpec random_stack(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n(2, 4);
    std::uniform_real_distribution<double> h(0.1, 0.6), e(0.5, 3.0), nu(-0.3, 0.45), eig(-0.05, 0.05),
        ang(-1.5, 1.5);
    std::vector<LayerSpec> layers;
    const int count = n(rng);
    for (int i = 0; i < count; ++i) layers.push_back(layer(h(rng), e(rng), nu(rng), {eig(rng), eig(rng), eig(rng)}, ang(rng)));
    return segment(40.0, layers);
}

inline RibbonSpec reference_spec() { return load_config(RIBBON_SOURCE_DIR "/configs/reference_seashell.toml"); }

}  // namespace support
