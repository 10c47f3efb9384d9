#include "ribbon/contact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace ribbon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection 5.1.5).
Eigen::Vector3d closest_on_triangle(const Eigen::Vector3d& p, const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                    const Eigen::Vector3d& c) {
    const Eigen::Vector3d ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;
    const Eigen::Vector3d bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return b;
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;
    const Eigen::Vector3d cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return c;
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

// Moller-Trumbore restricted to the closed segment p0-p1.
bool segment_hits_triangle(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1, const Eigen::Vector3d& a,
                           const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    const Eigen::Vector3d dir = p1 - p0;
    const Eigen::Vector3d e1 = b - a, e2 = c - a;
    const Eigen::Vector3d h = dir.cross(e2);
    const double det = e1.dot(h);
    const double scale = e1.norm() * e2.norm() * dir.norm();
    if (std::abs(det) <= 1e-14 * scale) return false;
    const double inv = 1.0 / det;
    const Eigen::Vector3d sv = p0 - a;
    const double u = inv * sv.dot(h);
    if (u < 0.0 || u > 1.0) return false;
    const Eigen::Vector3d q = sv.cross(e1);
    const double v = inv * dir.dot(q);
    if (v < 0.0 || u + v > 1.0) return false;
    const double t = inv * e2.dot(q);
    return t >= 0.0 && t <= 1.0;
}

// Uniform hash grid over triangle bounding boxes.
class TriangleGrid {
public:
    TriangleGrid(const RibbonMesh& mesh, double cell) : mesh_(mesh), cell_(cell), stamp_(mesh.faces.size(), 0) {
        for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
            Eigen::Vector3d lo, hi;
            bounds(f, lo, hi);
            visit(lo, hi, [&](std::int64_t key) { cells_[key].push_back(static_cast<int>(f)); });
        }
    }

    template <class Fn>
    void query(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi, Fn&& fn) {
        ++epoch_;
        visit(lo, hi, [&](std::int64_t key) {
            const auto it = cells_.find(key);
            if (it == cells_.end()) return;
            for (int f : it->second) {
                if (stamp_[f] == epoch_) continue;
                stamp_[f] = epoch_;
                fn(f);
            }
        });
    }

    void bounds(std::size_t f, Eigen::Vector3d& lo, Eigen::Vector3d& hi) const {
        const auto& t = mesh_.faces[f];
        lo = mesh_.vertices[t[0]].cwiseMin(mesh_.vertices[t[1]]).cwiseMin(mesh_.vertices[t[2]]);
        hi = mesh_.vertices[t[0]].cwiseMax(mesh_.vertices[t[1]]).cwiseMax(mesh_.vertices[t[2]]);
    }

private:
    template <class Fn>
    void visit(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi, Fn&& fn) const {
        const auto a = index(lo);
        const auto b = index(hi);
        for (std::int64_t i = a[0]; i <= b[0]; ++i)
            for (std::int64_t j = a[1]; j <= b[1]; ++j)
                for (std::int64_t k = a[2]; k <= b[2]; ++k) fn(((i * 73856093) ^ (j * 19349663) ^ (k * 83492791)));
    }

    std::array<std::int64_t, 3> index(const Eigen::Vector3d& p) const {
        return {static_cast<std::int64_t>(std::floor(p.x() / cell_)), static_cast<std::int64_t>(std::floor(p.y() / cell_)),
                static_cast<std::int64_t>(std::floor(p.z() / cell_))};
    }

    const RibbonMesh& mesh_;
    double cell_;
    std::unordered_map<std::int64_t, std::vector<int>> cells_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

double max_triangle_extent(const RibbonMesh& mesh) {
    double e = 0.0;
    for (const auto& f : mesh.faces)
        for (int k = 0; k < 3; ++k) e = std::max(e, (mesh.vertices[f[k]] - mesh.vertices[f[(k + 1) % 3]]).norm());
    return e;
}

std::vector<double> face_arclength(const RibbonMesh& mesh) {
    std::vector<double> s(mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        double acc = 0.0;
        for (int v : mesh.faces[f]) acc += mesh.rows[static_cast<std::size_t>(v) / mesh.n_t];
        s[f] = acc / 3.0;
    }
    return s;
}

std::vector<double> periods_from_speed(const std::vector<double>& speed) {
    std::vector<double> t(speed.size());
    for (std::size_t i = 0; i < speed.size(); ++i) t[i] = speed[i] > 0.0 ? 2.0 * kPi / speed[i] : kInf;
    return t;
}

// Relative rotation angle between consecutive frames.
double frame_step_angle(const FrameSample& a, const FrameSample& b) {
    Eigen::Matrix3d fa, fb;
    fa << a.r1, a.r2, a.N;
    fb << b.r1, b.r2, b.N;
    const Eigen::Matrix3d rel = fa.transpose() * fb;
    const Eigen::Vector3d skew(rel(2, 1) - rel(1, 2), rel(0, 2) - rel(2, 0), rel(1, 0) - rel(0, 1));
    return std::atan2(0.5 * skew.norm(), 0.5 * (rel.trace() - 1.0));
}

}  // namespace

double axial_half_extent(double width, double sin_theta, double axial_radius) {
    const double x = width / (2.0 * sin_theta);
    if (!std::isfinite(axial_radius)) return x;
    return axial_radius * std::sin(x / axial_radius);
}

ContactEvaluation evaluate_self_contact(double kappa1, double kappa2, double phi, double w1, double w2, double gap) {
    if (!(w1 > 0.0) || !(w2 > 0.0)) throw DomainError("self_contact: widths must be positive");
    ContactEvaluation ev;
    ev.helix = helix_params_closed_form(kappa1, kappa2, phi);
    ev.pitch = std::abs(ev.helix.frame.pitch);
    const double sin_theta = std::cos(ev.helix.frame.helix_angle);
    const double r = ev.helix.axial_radius;
    const double arg_max = std::max(w1, w2) / (2.0 * sin_theta * r);
    if (!(sin_theta > 0.0) || arg_max > 0.5 * kPi) {
        ev.wide_ribbon = true;
        ev.contact = true;
        ev.extent = kInf;
        ev.clearance = -kInf;
        return ev;
    }
    ev.extent = axial_half_extent(w1, sin_theta, r) + axial_half_extent(w2, sin_theta, r);
    ev.clearance = ev.pitch - ev.extent - gap;
    ev.contact = ev.clearance <= 0.0;
    return ev;
}

bool self_contact(double kappa1, double kappa2, double phi, double w1, double w2) {
    return evaluate_self_contact(kappa1, kappa2, phi, w1, w2).contact;
}

std::vector<double> frame_angular_speed(const FramedCurve& curve) {
    const auto& smp = curve.samples;
    std::vector<double> speed(smp.size(), 0.0);
    for (std::size_t i = 0; i + 1 < smp.size(); ++i) {
        const double ds = smp[i + 1].s - smp[i].s;
        speed[i] = ds > 0.0 ? frame_step_angle(smp[i], smp[i + 1]) / ds : 0.0;
    }
    if (smp.size() > 1) speed.back() = speed[smp.size() - 2];
    return speed;
}

BruteForceContact brute_force_contact(const FramedCurve& curve, const WidthProfile& width, double thickness,
                                      const BruteForceOptions& options) {
    if (curve.samples.size() < 3) throw InsufficientGeometry("brute_force_contact: curve has too few samples");
    const auto speed = frame_angular_speed(curve);
    double rotation = 0.0;
    double max_speed = 0.0;
    for (std::size_t i = 0; i + 1 < curve.samples.size(); ++i) {
        rotation += speed[i] * (curve.samples[i + 1].s - curve.samples[i].s);
        max_speed = std::max(max_speed, speed[i]);
    }
    BruteForceContact out;
    out.turns = rotation / (2.0 * kPi);
    if (out.turns < 2.0 - 1e-9)
        throw InsufficientGeometry("brute_force_contact: curve spans " + std::to_string(out.turns) +
                                   " turns, need at least 2");

    const double min_period = 2.0 * kPi / max_speed;
    const auto rows = static_cast<std::size_t>(std::ceil(curve.length() / min_period * options.rows_per_turn)) + 1;
    const FramedCurve coarse = resample(curve, std::max<std::size_t>(rows, 3));
    const RibbonMesh mesh = generate_mesh(coarse, width, options.n_t);
    const auto period = periods_from_speed(frame_angular_speed(coarse));

    double mean_curvature = 0.0;
    for (std::size_t i = 0; i + 1 < coarse.samples.size(); ++i)
        mean_curvature += (coarse.d_x(i + 1) - coarse.d_x(i)).norm();
    mean_curvature /= coarse.length();
    out.tolerance = thickness > 0.0 ? thickness : 1e-3 / mean_curvature;

    const double cell = std::max(out.tolerance, max_triangle_extent(mesh));
    TriangleGrid grid(mesh, cell);
    const auto face_s = face_arclength(mesh);
    const std::size_t nt = mesh.n_t;
    auto excluded = [&](std::size_t row, std::size_t face) {
        const std::size_t frow = static_cast<std::size_t>(mesh.faces[face][0]) / nt;
        return std::abs(face_s[face] - mesh.rows[row]) < 0.5 * std::min(period[row], period[frow]);
    };

    // Crossing surfaces: some edge of one turn pierces a triangle of another.
    for (std::size_t f = 0; f < mesh.faces.size() && !out.intersecting; ++f) {
        const auto& tri = mesh.faces[f];
        const std::size_t row = static_cast<std::size_t>(tri[0]) / nt;
        Eigen::Vector3d lo, hi;
        grid.bounds(f, lo, hi);
        grid.query(lo, hi, [&](int g) {
            if (out.intersecting || excluded(row, static_cast<std::size_t>(g))) return;
            const auto& o = mesh.faces[g];
            for (int k = 0; k < 3; ++k) {
                if (segment_hits_triangle(mesh.vertices[tri[k]], mesh.vertices[tri[(k + 1) % 3]], mesh.vertices[o[0]],
                                          mesh.vertices[o[1]], mesh.vertices[o[2]])) {
                    out.intersecting = true;
                    return;
                }
            }
        });
    }

    out.min_distance = out.intersecting ? 0.0 : kInf;
    if (!out.intersecting) {
        const Eigen::Vector3d pad = Eigen::Vector3d::Constant(out.tolerance);
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
            const auto& p = mesh.vertices[v];
            const std::size_t row = v / nt;
            grid.query(p - pad, p + pad, [&](int g) {
                if (excluded(row, static_cast<std::size_t>(g))) return;
                const auto& o = mesh.faces[g];
                const double d = (p - closest_on_triangle(p, mesh.vertices[o[0]], mesh.vertices[o[1]], mesh.vertices[o[2]])).norm();
                out.min_distance = std::min(out.min_distance, d);
            });
        }
    }
    out.contact = out.intersecting || out.min_distance < out.tolerance;
    return out;
}

std::vector<TurnClearance> interturn_clearance(const RibbonMesh& mesh, const FramedCurve& curve, double search_radius,
                                               std::size_t stride) {
    if (mesh.rows.size() != curve.samples.size())
        throw std::invalid_argument("interturn_clearance: mesh rows must match the curve samples");
    if (stride == 0) stride = 1;
    const auto period = periods_from_speed(frame_angular_speed(curve));
    const double cell = std::max(search_radius, max_triangle_extent(mesh));
    TriangleGrid grid(mesh, cell);
    const auto face_s = face_arclength(mesh);
    const std::size_t nt = mesh.n_t;
    const double end = mesh.rows.back();
    const Eigen::Vector3d pad = Eigen::Vector3d::Constant(search_radius);

    std::vector<TurnClearance> out;
    for (std::size_t i = 0; i < mesh.rows.size(); i += stride) {
        const double s = mesh.rows[i];
        const double t = period[i];
        if (!std::isfinite(t) || s + t > end) continue;
        const double lo_s = s + 0.5 * t;
        const double hi_s = s + 1.5 * t;
        auto in_window = [&](int g) { return face_s[g] >= lo_s && face_s[g] <= hi_s; };

        TurnClearance tc{s, kInf};
        Eigen::Vector3d lo = mesh.vertices[i * nt];
        Eigen::Vector3d hi = lo;
        for (std::size_t j = 0; j < nt; ++j) {
            lo = lo.cwiseMin(mesh.vertices[i * nt + j]);
            hi = hi.cwiseMax(mesh.vertices[i * nt + j]);
        }
        grid.query(lo, hi, [&](int g) {
            if (tc.clearance == 0.0 || !in_window(g)) return;
            const auto& o = mesh.faces[g];
            for (std::size_t j = 0; j + 1 < nt; ++j) {
                if (segment_hits_triangle(mesh.vertices[i * nt + j], mesh.vertices[i * nt + j + 1], mesh.vertices[o[0]],
                                          mesh.vertices[o[1]], mesh.vertices[o[2]])) {
                    tc.clearance = 0.0;
                    return;
                }
            }
        });
        if (tc.clearance > 0.0) {
            for (std::size_t j = 0; j < nt; ++j) {
                const auto& p = mesh.vertices[i * nt + j];
                grid.query(p - pad, p + pad, [&](int g) {
                    if (!in_window(g)) return;
                    const auto& o = mesh.faces[g];
                    const double d =
                        (p - closest_on_triangle(p, mesh.vertices[o[0]], mesh.vertices[o[1]], mesh.vertices[o[2]])).norm();
                    tc.clearance = std::min(tc.clearance, d);
                });
            }
        }
        out.push_back(tc);
    }
    return out;
}

}  // namespace ribbon
