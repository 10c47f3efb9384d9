#include "ribbon/frustration.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace ribbon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kBoundarySamples = 720;

double turn_length(double kappa1, double kappa2, double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    const double w2 = kappa1 * kappa1 * c * c + kappa2 * kappa2 * s * s;
    return w2 > 0.0 ? 2.0 * kPi / std::sqrt(w2) : kInf;
}

/// Where the ray kappa = rho * (cos b, sin b) enters the forbidden region.
/// Along a ray the pitch and the axial radius both scale as 1/rho while the
/// axis angle is fixed, so rho * clearance = D^ - sum sin(rho x_i k^)/k^ - rho gap
/// decreases monotonically up to the wide-ribbon cut; the turn-count
/// condition is a lower threshold on rho. Hence the forbidden set on each
/// ray is [rho*, inf).
struct RayBoundary {
    double rho = kInf;
    BoundaryKind kind = BoundaryKind::contact;
};

RayBoundary boundary_along(double beta, double phi, const TurnWidths& widths, double length, double gap) {
    const double k1 = std::cos(beta), k2 = std::sin(beta);
    const double c = std::cos(phi), s = std::sin(phi);
    const double w2 = k1 * k1 * c * c + k2 * k2 * s * s;
    if (!(w2 > 1e-300)) return {};  // straight centerline: never closes a turn
    const double rho_turn = 2.0 * kPi / (length * std::sqrt(w2));

    double rho_contact = 0.0;
    BoundaryKind kind = BoundaryKind::contact;
    const double tau = (k1 - k2) * s * c;
    if (tau != 0.0) {
        const auto hp = helix_params_closed_form(k1, k2, phi);
        const double d_hat = std::abs(hp.frame.pitch);
        const double sin_theta = std::cos(hp.frame.helix_angle);
        if (sin_theta > 0.0) {
            const double ka = std::isfinite(hp.axial_radius) ? 1.0 / hp.axial_radius : 0.0;
            const double x1 = widths.w1 / (2.0 * sin_theta);
            const double x2 = widths.w2 / (2.0 * sin_theta);
            auto h = [&](double rho) {
                const double e1 = ka > 0.0 ? std::sin(rho * x1 * ka) / ka : rho * x1;
                const double e2 = ka > 0.0 ? std::sin(rho * x2 * ka) / ka : rho * x2;
                return d_hat - e1 - e2 - rho * gap;
            };
            if (ka > 0.0) {
                const double rho_wide = 0.5 * kPi / (std::max(x1, x2) * ka);
                if (h(rho_wide) > 0.0) {
                    rho_contact = rho_wide;
                    kind = BoundaryKind::wide_ribbon;
                } else {
                    boost::uintmax_t iters = 200;
                    const auto tol = boost::math::tools::eps_tolerance<double>(52);
                    const auto r = boost::math::tools::toms748_solve(h, 0.0, rho_wide, d_hat, h(rho_wide), tol, iters);
                    rho_contact = 0.5 * (r.first + r.second);
                }
            } else {
                rho_contact = d_hat / (x1 + x2 + gap);
            }
        } else {
            kind = BoundaryKind::wide_ribbon;
        }
    }
    if (rho_turn >= rho_contact) return {rho_turn, BoundaryKind::single_turn};
    return {rho_contact, kind};
}

double clearance_at(double k1, double k2, double phi, const TurnWidths& w, double gap) {
    const auto ev = evaluate_self_contact(k1, k2, phi, w.w1, w.w2, gap);
    return ev.clearance;
}

double tangency_sine(const ReducedEnergyModel& model, double k1, double k2, double phi, const TurnWidths& w,
                     double gap) {
    const Eigen::Vector2d ge = model(k1, k2).gradient;
    const double h = 1e-6 * std::hypot(k1, k2);
    const Eigen::Vector2d gc((clearance_at(k1 + h, k2, phi, w, gap) - clearance_at(k1 - h, k2, phi, w, gap)) / (2.0 * h),
                             (clearance_at(k1, k2 + h, phi, w, gap) - clearance_at(k1, k2 - h, phi, w, gap)) / (2.0 * h));
    const double denom = ge.norm() * gc.norm();
    if (!(denom > 0.0) || !std::isfinite(denom)) return kInf;
    return (ge.x() * gc.y() - ge.y() * gc.x()) / denom;
}

struct LobeSearch {
    ConstrainedCandidate best;
    std::size_t minima = 0;
};

ConstrainedCandidate make_candidate(const ReducedEnergyModel& model, double k1, double k2, double phi,
                                    const TurnWidths& widths, double gap, BoundaryKind kind) {
    ConstrainedCandidate c;
    const auto re = model(k1, k2);
    c.valid = std::isfinite(re.energy);
    c.state = re.state;
    c.energy = re.energy;
    c.kind = kind;
    if (k1 == 0.0 && k2 == 0.0) {
        c.handedness = Handedness::ring;
        c.contact_residual = kInf;
        return c;
    }
    const auto ev = evaluate_self_contact(k1, k2, phi, widths.w1, widths.w2, gap);
    c.handedness = ev.helix.frame.handedness;
    c.contact_residual = ev.clearance;
    c.tangency_residual = kind == BoundaryKind::contact ? std::abs(tangency_sine(model, k1, k2, phi, widths, gap)) : 0.0;
    if (c.handedness == Handedness::ring) c.kind = BoundaryKind::ring_limit;
    return c;
}

/// Minimum of the reduced energy over the closure of one lobe of the
/// admissible region: the outer boundary curve plus the two ring rays that
/// fence the lobe, which stay admissible until a full ring closes.
LobeSearch search_lobe(const ReducedEnergyModel& model, double beta_lo, double phi, const TurnWidths& widths,
                       double length, double gap) {
    LobeSearch out;
    const double span = kPi;
    auto boundary_energy = [&](double beta) {
        const auto rb = boundary_along(beta, phi, widths, length, gap);
        if (!std::isfinite(rb.rho)) return kInf;
        return model(rb.rho * std::cos(beta), rb.rho * std::sin(beta)).energy;
    };

    std::vector<double> beta(kBoundarySamples), energy(kBoundarySamples);
    for (std::size_t j = 0; j < kBoundarySamples; ++j) {
        beta[j] = beta_lo + (static_cast<double>(j) + 0.5) * span / static_cast<double>(kBoundarySamples);
        energy[j] = boundary_energy(beta[j]);
    }

    auto consider = [&](const ConstrainedCandidate& c) {
        if (c.valid && c.energy < out.best.energy) out.best = c;
    };

    for (std::size_t j = 0; j < kBoundarySamples; ++j) {
        if (!std::isfinite(energy[j])) continue;
        const bool left_ok = j == 0 || energy[j] <= energy[j - 1];
        const bool right_ok = j + 1 == kBoundarySamples || energy[j] < energy[j + 1];
        if (!left_ok || !right_ok) continue;
        ++out.minima;

        const double a = j == 0 ? beta_lo + 1e-12 : beta[j - 1];
        const double b = j + 1 == kBoundarySamples ? beta_lo + span - 1e-12 : beta[j + 1];
        auto found = boost::math::tools::brent_find_minima(boundary_energy, a, b, std::numeric_limits<double>::digits);
        double beta_star = found.first;
        RayBoundary rb = boundary_along(beta_star, phi, widths, length, gap);

        if (rb.kind == BoundaryKind::contact) {
            // Polish to the exact tangency point.
            auto tangency = [&](double bt) {
                const auto r = boundary_along(bt, phi, widths, length, gap);
                return tangency_sine(model, r.rho * std::cos(bt), r.rho * std::sin(bt), phi, widths, gap);
            };
            double lo = a, hi = b, fa = tangency(a), fb = tangency(b);
            bool bracketed = std::isfinite(fa) && std::isfinite(fb) && fa * fb < 0.0;
            for (double d = 1e-9; !bracketed && d < 0.5 * (b - a); d *= 2.0) {
                lo = std::max(a, beta_star - d);
                hi = std::min(b, beta_star + d);
                fa = tangency(lo);
                fb = tangency(hi);
                bracketed = std::isfinite(fa) && std::isfinite(fb) && fa * fb < 0.0;
            }
            if (bracketed) {
                boost::uintmax_t iters = 200;
                const auto tol = boost::math::tools::eps_tolerance<double>(50);
                const auto r = boost::math::tools::toms748_solve(tangency, lo, hi, fa, fb, tol, iters);
                const double bt = 0.5 * (r.first + r.second);
                const auto rbt = boundary_along(bt, phi, widths, length, gap);
                if (rbt.kind == BoundaryKind::contact && boundary_energy(bt) <= found.second * (1.0 + 1e-9) + 1e-300) {
                    beta_star = bt;
                    rb = rbt;
                }
            }
        }
        consider(make_candidate(model, rb.rho * std::cos(beta_star), rb.rho * std::sin(beta_star), phi, widths, gap,
                                rb.kind));
    }

    // Ring rays at the two ends of the lobe.
    for (double bd : {beta_lo, beta_lo + span}) {
        const Eigen::Vector2d dir(std::cos(bd), std::sin(bd));
        const double rho_max = 2.0 * kPi / (length * std::hypot(dir.x() * std::cos(phi), dir.y() * std::sin(phi)));
        const auto& hess = model.hessian();
        const Eigen::Vector2d g = -model(0.0, 0.0).gradient;
        const double rho = std::clamp(g.dot(dir) / dir.dot(hess * dir), 0.0, rho_max);
        auto c = make_candidate(model, rho * dir.x(), rho * dir.y(), phi, widths, gap, BoundaryKind::ring_limit);
        c.kind = BoundaryKind::ring_limit;
        c.handedness = Handedness::ring;
        consider(c);
    }
    return out;
}

}  // namespace

std::string_view to_string(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::unconstrained: return "unconstrained";
        case BoundaryKind::contact: return "contact";
        case BoundaryKind::wide_ribbon: return "wide_ribbon";
        case BoundaryKind::single_turn: return "single_turn";
        case BoundaryKind::ring_limit: return "ring_limit";
    }
    return "ring_limit";
}

bool is_forbidden(double kappa1, double kappa2, double phi, const TurnWidths& widths, double segment_length,
                  const ContactOptions& options) {
    const double t = turn_length(kappa1, kappa2, phi);
    if (!(t < segment_length)) return false;
    return evaluate_self_contact(kappa1, kappa2, phi, widths.w1, widths.w2, options.gap).contact;
}

std::size_t ForbiddenRegionMap::minimum_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cells.size(); ++i)
        if (cells[i].energy < cells[best].energy) best = i;
    return best;
}

ForbiddenRegionMap map_landscape(const SegmentSpec& segment, double phi, const TurnWidths& widths,
                                 const LandscapeGrid& grid, const ContactOptions& options) {
    if (grid.n1 < 3 || grid.n2 < 3)
        throw ResolutionError("landscape grid " + std::to_string(grid.n1) + "x" + std::to_string(grid.n2) +
                              " is too coarse to resolve the forbidden-region boundary (need at least 3x3)");
    if (!(grid.kappa1_max > grid.kappa1_min) || !(grid.kappa2_max > grid.kappa2_min))
        throw ResolutionError("landscape grid bounds are empty");

    const ReducedEnergyModel model(segment, phi);
    ForbiddenRegionMap map;
    map.grid = grid;
    map.cells.reserve(grid.n1 * grid.n2);
    std::size_t forbidden = 0;
    for (std::size_t i = 0; i < grid.n1; ++i) {
        const double k1 = grid.kappa1_min + (grid.kappa1_max - grid.kappa1_min) * static_cast<double>(i) /
                                                static_cast<double>(grid.n1 - 1);
        for (std::size_t j = 0; j < grid.n2; ++j) {
            const double k2 = grid.kappa2_min + (grid.kappa2_max - grid.kappa2_min) * static_cast<double>(j) /
                                                    static_cast<double>(grid.n2 - 1);
            LandscapeCell cell{k1, k2, model(k1, k2).energy, false};
            cell.forbidden = is_forbidden(k1, k2, phi, widths, segment.length, options);
            forbidden += cell.forbidden ? 1 : 0;
            map.cells.push_back(cell);
        }
    }
    if (forbidden == 0 || forbidden == map.cells.size())
        throw ResolutionError("landscape grid does not straddle the forbidden-region boundary");
    return map;
}

void write_landscape_csv(std::ostream& os, const ForbiddenRegionMap& map) {
    os << "kappa1,kappa2,reduced_energy,forbidden\n";
    char buf[128];
    auto clean = [](double v) { return v == 0.0 ? 0.0 : v; };
    for (const auto& c : map.cells) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%d\n", clean(c.kappa1), clean(c.kappa2), clean(c.energy),
                      c.forbidden ? 1 : 0);
        os << buf;
    }
}

FrustratedSolution constrained_equilibrium(const SegmentSpec& segment, double phi, const TurnWidths& widths,
                                           const ContactOptions& options) {
    if (!(widths.w1 > 0.0) || !(widths.w2 > 0.0)) throw DomainError("constrained_equilibrium: widths must be positive");
    FrustratedSolution sol;
    sol.unconstrained = solve_segment(segment, phi);
    const ReducedEnergyModel model(segment, phi);
    const auto& u = sol.unconstrained.state;
    sol.frustrated = is_forbidden(u.kappa1, u.kappa2, phi, widths, segment.length, options);

    // Lobe A holds kappa1 > kappa2, lobe B kappa1 < kappa2; which of them is
    // right-handed follows the sign of sin(phi) cos(phi).
    const double sc = std::sin(phi) * std::cos(phi);
    const double beta_a = -0.75 * kPi;
    const double beta_b = 0.25 * kPi;
    const bool a_is_right = sc >= 0.0;

    std::size_t minima = 0;
    auto solve_lobe = [&](double beta_lo, bool contains_optimum) {
        if (contains_optimum && !sol.frustrated) {
            ConstrainedCandidate c;
            c.valid = true;
            c.state = u;
            c.energy = sol.unconstrained.energy;
            c.kind = BoundaryKind::unconstrained;
            if (u.kappa1 != 0.0 || u.kappa2 != 0.0) {
                const auto ev = evaluate_self_contact(u.kappa1, u.kappa2, phi, widths.w1, widths.w2, options.gap);
                c.handedness = ev.helix.frame.handedness;
                c.contact_residual = ev.clearance;
            }
            ++minima;
            return c;
        }
        auto lobe = search_lobe(model, beta_lo, phi, widths, segment.length, options.gap);
        minima += lobe.minima;
        return lobe.best;
    };

    const bool optimum_in_a = u.kappa1 > u.kappa2;
    const bool optimum_in_b = u.kappa1 < u.kappa2;
    ConstrainedCandidate ca = solve_lobe(beta_a, optimum_in_a);
    ConstrainedCandidate cb = solve_lobe(beta_b, optimum_in_b);
    if (!sol.frustrated && !optimum_in_a && !optimum_in_b) {
        // Admissible ring optimum: it bounds both lobes.
        ConstrainedCandidate c;
        c.valid = true;
        c.state = u;
        c.energy = sol.unconstrained.energy;
        c.kind = BoundaryKind::unconstrained;
        c.handedness = Handedness::ring;
        if (c.energy <= ca.energy) ca = c;
        if (c.energy <= cb.energy) cb = c;
    }
    sol.right = a_is_right ? ca : cb;
    sol.left = a_is_right ? cb : ca;
    sol.local_minima = minima;

    if (!sol.right.valid && !sol.left.valid)
        throw FrustrationError("constrained_equilibrium: no admissible boundary state found");
    const double scale = std::max({std::abs(sol.right.energy), std::abs(sol.left.energy), 1e-300});
    sol.degenerate = std::abs(sol.right.energy - sol.left.energy) <= 1e-9 * scale;
    sol.global_pick = sol.left.energy < sol.right.energy && !sol.degenerate ? Handedness::left : Handedness::right;
    return sol;
}

SeashellResult assemble_seashell(const RibbonSpec& spec, const SeashellOptions& options) {
    spec.validate();
    const double total = spec.total_length();
    const auto unconstrained = solve_ribbon(spec);

    auto run = [&](Handedness target) {
        std::vector<SegmentOutcome> outcomes;
        double energy = 0.0;
        for (std::size_t i = 0; i < spec.segments.size(); ++i) {
            const auto& seg = spec.segments[i];
            const double a = spec.segment_start(i);
            const double b = a + seg.length;
            const double mid = 0.5 * (a + b);
            ContactOptions copt;
            copt.gap = options.thickness_contact ? seg.thickness() : 0.0;

            SegmentOutcome out;
            out.index = i;
            out.unconstrained = unconstrained[i];
            double period = turn_length(unconstrained[i].state.kappa1, unconstrained[i].state.kappa2, spec.phi);
            for (int it = 0; it < std::max(1, options.width_iterations); ++it) {
                const double half = std::isfinite(period) ? 0.5 * period : 0.0;
                out.widths = {spec.width.at(std::clamp(mid - half, 0.0, total)),
                              spec.width.at(std::clamp(mid + half, 0.0, total))};
                out.frustration = constrained_equilibrium(seg, spec.phi, out.widths, copt);
                const auto& cand = out.frustration.candidate(target);
                const double next = turn_length(cand.state.kappa1, cand.state.kappa2, spec.phi);
                if (next == period) break;
                period = next;
            }
            const auto& cand = out.frustration.candidate(target);
            out.state = cand.state;
            out.energy_per_area = cand.energy;
            out.kind = cand.kind;
            out.handedness = cand.handedness;
            out.frustrated = out.frustration.frustrated;
            out.fallback = cand.handedness != target;
            out.area = strip_area(spec.width, a, b);
            if (cand.state.kappa1 != 0.0 || cand.state.kappa2 != 0.0)
                out.helix_angle = helix_params_closed_form(cand.state.kappa1, cand.state.kappa2, spec.phi).frame.helix_angle;
            energy += out.energy_per_area * out.area;
            outcomes.push_back(std::move(out));
        }
        return std::make_pair(std::move(outcomes), energy);
    };

    auto [right, e_right] = run(Handedness::right);
    auto [left, e_left] = run(Handedness::left);

    SeashellResult result;
    result.energy_right = e_right;
    result.energy_left = e_left;
    const bool pick_left = e_left < e_right;
    result.handedness = pick_left ? Handedness::left : Handedness::right;
    result.total_energy = pick_left ? e_left : e_right;
    result.segments = pick_left ? std::move(left) : std::move(right);

    std::vector<double> lengths, k1, k2;
    for (std::size_t i = 0; i < spec.segments.size(); ++i) {
        lengths.push_back(spec.segments[i].length);
        k1.push_back(result.segments[i].state.kappa1);
        k2.push_back(result.segments[i].state.kappa2);
    }
    result.step = options.step > 0.0 ? options.step : total / 20000.0;
    result.curve = integrate_centerline(CurvatureProfile(lengths, k1, k2), spec.phi, result.step);
    result.mesh_curve = resample(result.curve, options.mesh_rows);
    result.mesh = generate_mesh(result.mesh_curve, spec.width, options.mesh_columns);
    return result;
}

}  // namespace ribbon
