#include "ribbon/config.hpp"
#include "ribbon/frustration.hpp"
#include "ribbon/summary.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace ribbon;

namespace {

constexpr int kInputError = 2;
constexpr int kNumericalError = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw InputError("cannot write " + p.string());
    return os;
}

LandscapeGrid parse_grid(const std::string& text) {
    LandscapeGrid g;
    unsigned long n1 = 0, n2 = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lu,%lf:%lf:%lu%c", &g.kappa1_min, &g.kappa1_max, &n1, &g.kappa2_min,
                    &g.kappa2_max, &n2, &tail) != 6)
        throw InputError("--grid expects K1MIN:K1MAX:N,K2MIN:K2MAX:N");
    g.n1 = n1;
    g.n2 = n2;
    return g;
}

std::pair<std::size_t, std::size_t> parse_density(const std::string& text) {
    unsigned long ns = 0, nt = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lu,%lu%c", &ns, &nt, &tail) != 2 || ns < 2 || nt < 2)
        throw InputError("--mesh-density expects NS,NT with both at least 2");
    return {ns, nt};
}

int simulate(const std::string& config, const std::string& out, double step, bool thickness_contact,
             const std::string& density) {
    const RibbonSpec spec = load_config(config);
    SeashellOptions opt;
    opt.step = step;
    opt.thickness_contact = thickness_contact;
    if (!density.empty()) std::tie(opt.mesh_rows, opt.mesh_columns) = parse_density(density);

    fs::create_directories(out);
    const auto result = assemble_seashell(spec, opt);
    {
        auto os = open_out(fs::path(out) / "summary.json");
        os << run_summary(spec, result).dump(2) << '\n';
    }
    {
        auto os = open_out(fs::path(out) / "centerline.csv");
        write_centerline_csv(os, result.curve);
    }
    {
        auto os = open_out(fs::path(out) / "ribbon.obj");
        write_obj(os, result.mesh);
    }
    std::cout << "handedness " << to_string(result.handedness) << "  total energy " << result.total_energy << '\n';
    for (const auto& s : result.segments) {
        std::printf("segment %zu: k1=%.6g k2=%.6g Phi=%.4f deg %s%s\n", s.index, s.state.kappa1, s.state.kappa2,
                    rad2deg(s.helix_angle), std::string(to_string(s.handedness)).c_str(),
                    s.frustrated ? " (frustrated)" : "");
    }
    return 0;
}

void print_params(const char* label, const HelixParams& p) {
    std::printf("%-12s Phi=%+.9f deg  theta=%.9f deg  R=%.9g mm  D=%+.9g mm  %s\n", label, rad2deg(p.helix_angle),
                rad2deg(p.theta), p.radius, p.pitch, std::string(to_string(p.handedness)).c_str());
}

int helix_params(double k1, double k2, double phi_deg) {
    if (k1 == 0.0 && k2 == 0.0) throw InputError("both curvatures are zero: the ribbon is straight");
    const double phi = deg2rad(phi_deg);
    ClosedFormHelix cf;
    try {
        cf = helix_params_closed_form(k1, k2, phi);
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    print_params("published", cf.published);
    print_params("closed-form", cf.frame);

    const double length = 4.0 * cf.turn_length;
    const auto curve = integrate_centerline(CurvatureProfile::uniform(length, k1, k2), phi, cf.turn_length / 2000.0);
    const auto fit = fit_helix(curve);
    print_params("fit", fit.params);
    std::printf("discrepancy  dPhi=%.3e deg  dR=%.3e mm  dD=%.3e mm\n",
                rad2deg(fit.params.helix_angle - cf.frame.helix_angle), fit.params.radius - cf.frame.radius,
                fit.params.pitch - cf.frame.pitch);
    if (cf.frame.handedness == Handedness::ring) std::printf("ring-degenerate: zero pitch\n");
    return 0;
}

int sweep(const std::string& config, const std::string& out, const std::string& grid_text, long segment,
          bool thickness_contact) {
    const RibbonSpec spec = load_config(config);
    const LandscapeGrid grid = parse_grid(grid_text);
    const std::size_t idx = segment < 0 ? spec.segments.size() - 1 : static_cast<std::size_t>(segment);
    if (idx >= spec.segments.size()) throw InputError("--segment out of range");
    const auto& seg = spec.segments[idx];

    const double mid = spec.segment_start(idx) + 0.5 * seg.length;
    double half = 0.0;
    const auto u = solve_segment(seg, spec.phi);
    if (u.state.kappa1 != 0.0 || u.state.kappa2 != 0.0) {
        const auto cf = helix_params_closed_form(u.state.kappa1, u.state.kappa2, spec.phi);
        if (std::isfinite(cf.turn_length)) half = 0.5 * cf.turn_length;
    }
    const double total = spec.total_length();
    const TurnWidths widths{spec.width.at(std::clamp(mid - half, 0.0, total)),
                            spec.width.at(std::clamp(mid + half, 0.0, total))};
    ContactOptions copt;
    copt.gap = thickness_contact ? seg.thickness() : 0.0;

    const auto map = map_landscape(seg, spec.phi, widths, grid, copt);
    fs::create_directories(out);
    auto os = open_out(fs::path(out) / "landscape.csv");
    write_landscape_csv(os, map);
    const auto& best = map.cells[map.minimum_index()];
    std::printf("minimum cell k1=%.6g k2=%.6g energy=%.9g %s\n", best.kappa1, best.kappa2, best.energy,
                best.forbidden ? "forbidden" : "admissible");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium shapes of pre-strained multilayer ribbons"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config, out = ".", grid, density;
    double step = 0.0;
    bool thickness_contact = false;
    double k1 = 0.0, k2 = 0.0, phi = 0.0;
    long segment = -1;

    auto* sim = app.add_subcommand("simulate", "Solve, assemble and export the ribbon shape");
    sim->add_option("--config", config, "TOML configuration")->required();
    sim->add_option("--out", out, "output directory");
    sim->add_option("--step", step, "integration step in mm (default: length/20000)")->check(CLI::NonNegativeNumber);
    sim->add_flag("--thickness-contact", thickness_contact, "require a clearance of H between turns");
    sim->add_option("--mesh-density", density, "mesh rows and columns NS,NT");

    auto* hp = app.add_subcommand("helix-params", "Closed-form and fitted helix parameters");
    hp->add_option("--k1", k1, "first principal curvature, 1/mm")->required();
    hp->add_option("--k2", k2, "second principal curvature, 1/mm")->required();
    hp->add_option("--phi", phi, "mis-orientation angle, degrees")->required();

    auto* sw = app.add_subcommand("sweep", "Reduced-energy landscape with the forbidden region");
    sw->add_option("--config", config, "TOML configuration")->required();
    sw->add_option("--out", out, "output directory");
    sw->add_option("--grid", grid, "K1MIN:K1MAX:N,K2MIN:K2MAX:N")->required();
    sw->add_option("--segment", segment, "segment index (default: last)");
    sw->add_flag("--thickness-contact", thickness_contact, "require a clearance of H between turns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*sim) return simulate(config, out, step, thickness_contact, density);
        if (*hp) return helix_params(k1, k2, phi);
        if (*sw) return sweep(config, out, grid, segment, thickness_contact);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const SolverError& e) {
        std::cerr << "solver failure";
        if (e.segment()) std::cerr << " in segment " << *e.segment();
        std::cerr << ": " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }
    return 0;
}
