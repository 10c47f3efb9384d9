#pragma once

#include "ribbon/curve.hpp"
#include "ribbon/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <vector>

namespace ribbon {

/// Triangulated ruled surface (s, t) -> P(s) + t d_y(s), t in [-w(s)/2, w(s)/2].
/// Vertex (i, j) of row i (arclength rows[i]) and column j lives at i * n_t + j.
struct RibbonMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<double> rows;
    std::size_t n_t = 0;

    std::size_t n_s() const { return rows.size(); }
    double area() const;
    std::size_t edge_count() const;
    long euler_characteristic() const;
};

/// Each quad (i,j),(i+1,j),(i+1,j+1),(i,j+1) is split along (i,j)-(i+1,j+1).
RibbonMesh generate_mesh(const FramedCurve& curve, const WidthProfile& width, std::size_t n_t);

/// ASCII OBJ: `v x y z` lines then 1-based `f i j k` lines.
void write_obj(std::ostream& os, const RibbonMesh& mesh);

}  // namespace ribbon
