#include "ribbon/mesh.hpp"

#include <cstdio>
#include <ostream>
#include <set>
#include <utility>

namespace ribbon {

double RibbonMesh::area() const {
    double a = 0.0;
    for (const auto& f : faces)
        a += 0.5 * (vertices[f[1]] - vertices[f[0]]).cross(vertices[f[2]] - vertices[f[0]]).norm();
    return a;
}

std::size_t RibbonMesh::edge_count() const {
    std::set<std::pair<int, int>> edges;
    for (const auto& f : faces)
        for (int k = 0; k < 3; ++k) edges.emplace(std::min(f[k], f[(k + 1) % 3]), std::max(f[k], f[(k + 1) % 3]));
    return edges.size();
}

long RibbonMesh::euler_characteristic() const {
    return static_cast<long>(vertices.size()) - static_cast<long>(edge_count()) + static_cast<long>(faces.size());
}

RibbonMesh generate_mesh(const FramedCurve& curve, const WidthProfile& width, std::size_t n_t) {
    if (n_t < 2) throw std::invalid_argument("generate_mesh: need at least two vertices across the width");
    if (curve.samples.size() < 2) throw std::invalid_argument("generate_mesh: need at least two centerline samples");

    RibbonMesh mesh;
    mesh.n_t = n_t;
    const std::size_t n_s = curve.samples.size();
    mesh.vertices.reserve(n_s * n_t);
    mesh.rows.reserve(n_s);
    for (std::size_t i = 0; i < n_s; ++i) {
        const auto& f = curve.samples[i];
        const double w = width.at(f.s);
        if (!(w > 0.0)) throw DomainError("generate_mesh: non-positive width at s=" + std::to_string(f.s));
        const Eigen::Vector3d dy = curve.d_y(i);
        mesh.rows.push_back(f.s);
        for (std::size_t j = 0; j < n_t; ++j) {
            // Endpoints are set exactly to +-w/2.
            const double t = j + 1 == n_t ? 0.5 * w : -0.5 * w + w * static_cast<double>(j) / static_cast<double>(n_t - 1);
            mesh.vertices.push_back(f.P + t * dy);
        }
    }

    mesh.faces.reserve(2 * (n_s - 1) * (n_t - 1));
    const auto id = [n_t](std::size_t i, std::size_t j) { return static_cast<int>(i * n_t + j); };
    for (std::size_t i = 0; i + 1 < n_s; ++i) {
        for (std::size_t j = 0; j + 1 < n_t; ++j) {
            mesh.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            mesh.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    for (const auto& f : mesh.faces) {
        const double a = (mesh.vertices[f[1]] - mesh.vertices[f[0]]).cross(mesh.vertices[f[2]] - mesh.vertices[f[0]]).norm();
        if (!(a > 0.0)) throw DomainError("generate_mesh: degenerate triangle (coincident centerline samples?)");
    }
    return mesh;
}

void write_obj(std::ostream& os, const RibbonMesh& mesh) {
    char buf[96];
    auto clean = [](double v) { return v == 0.0 ? 0.0 : v; };
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", clean(v.x()), clean(v.y()), clean(v.z()));
        os << buf;
    }
    for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

}  // namespace ribbon
