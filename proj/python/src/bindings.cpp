#include "ribbon/config.hpp"
#include "ribbon/contact.hpp"
#include "ribbon/equilibrium.hpp"
#include "ribbon/frustration.hpp"
#include "ribbon/summary.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace ribbon;

namespace {

Eigen::MatrixX3d positions(const FramedCurve& c) {
    Eigen::MatrixX3d out(static_cast<Eigen::Index>(c.samples.size()), 3);
    for (std::size_t i = 0; i < c.samples.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = c.samples[i].P.transpose();
    return out;
}

Eigen::VectorXd arclength(const FramedCurve& c) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(c.samples.size()));
    for (std::size_t i = 0; i < c.samples.size(); ++i) out[static_cast<Eigen::Index>(i)] = c.samples[i].s;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pre-strained multilayer ribbon mechanics";
    m.attr("__version__") = kVersion;

    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);

    py::enum_<Handedness>(m, "Handedness")
        .value("right", Handedness::right)
        .value("left", Handedness::left)
        .value("ring", Handedness::ring);

    py::enum_<BoundaryKind>(m, "BoundaryKind")
        .value("unconstrained", BoundaryKind::unconstrained)
        .value("contact", BoundaryKind::contact)
        .value("wide_ribbon", BoundaryKind::wide_ribbon)
        .value("single_turn", BoundaryKind::single_turn)
        .value("ring_limit", BoundaryKind::ring_limit);

    py::class_<Tensor2>(m, "Tensor2")
        .def(py::init<double, double, double>(), py::arg("xx") = 0.0, py::arg("yy") = 0.0, py::arg("xy") = 0.0)
        .def_readwrite("xx", &Tensor2::xx)
        .def_readwrite("yy", &Tensor2::yy)
        .def_readwrite("xy", &Tensor2::xy)
        .def("__eq__", [](const Tensor2& a, const Tensor2& b) { return a == b; })
        .def("__repr__", [](const Tensor2& t) {
            std::ostringstream os;
            os << "Tensor2(" << t.xx << ", " << t.yy << ", " << t.xy << ")";
            return os.str();
        });

    py::class_<LayerSpec>(m, "LayerSpec")
        .def(py::init([](double h, double e, double nu, Tensor2 eig, double angle) {
                 LayerSpec l;
                 l.thickness = h;
                 l.youngs_modulus = e;
                 l.poisson_ratio = nu;
                 l.eigenstrain = eig;
                 l.material_angle = angle;
                 return l;
             }),
             py::arg("thickness"), py::arg("youngs_modulus") = 1.0, py::arg("poisson_ratio") = 0.0,
             py::arg("eigenstrain") = Tensor2{}, py::arg("material_angle") = 0.0)
        .def_readwrite("thickness", &LayerSpec::thickness)
        .def_readwrite("youngs_modulus", &LayerSpec::youngs_modulus)
        .def_readwrite("poisson_ratio", &LayerSpec::poisson_ratio)
        .def_readwrite("eigenstrain", &LayerSpec::eigenstrain)
        .def_readwrite("material_angle", &LayerSpec::material_angle);

    py::class_<SegmentSpec>(m, "SegmentSpec")
        .def(py::init([](double length, std::vector<LayerSpec> layers) {
                 SegmentSpec s;
                 s.length = length;
                 s.layers = std::move(layers);
                 return s;
             }),
             py::arg("length"), py::arg("layers"))
        .def_readwrite("length", &SegmentSpec::length)
        .def_readwrite("layers", &SegmentSpec::layers)
        .def_property_readonly("thickness", &SegmentSpec::thickness)
        .def("validate", &SegmentSpec::validate);

    py::class_<RibbonSpec>(m, "RibbonSpec")
        .def(py::init([](std::vector<SegmentSpec> segments, double phi, double width_start, double width_end) {
                 RibbonSpec r;
                 r.segments = std::move(segments);
                 r.phi = phi;
                 double total = 0.0;
                 for (const auto& s : r.segments) total += s.length;
                 r.width = {width_start, total > 0.0 ? (width_start - width_end) / total : 0.0};
                 r.validate();
                 return r;
             }),
             py::arg("segments"), py::arg("phi"), py::arg("width_start"), py::arg("width_end"))
        .def_readwrite("segments", &RibbonSpec::segments)
        .def_readwrite("phi", &RibbonSpec::phi)
        .def_property_readonly("total_length", &RibbonSpec::total_length)
        .def("width_at", [](const RibbonSpec& r, double s) { return r.width.at(s); })
        .def("segment_start", &RibbonSpec::segment_start)
        .def("validate", &RibbonSpec::validate)
        .def("to_toml", [](const RibbonSpec& r) { return to_toml(r); })
        .def("mirrored", [](const RibbonSpec& r) { return mirrored(r); })
        .def("__eq__", [](const RibbonSpec& a, const RibbonSpec& b) { return a == b; });

    m.def("parse_config", &parse_config, py::arg("text"), py::arg("source") = "<string>");
    m.def("load_config", &load_config, py::arg("path"));

    py::class_<EquilibriumState>(m, "EquilibriumState")
        .def_readonly("eps_xx", &EquilibriumState::eps_xx)
        .def_readonly("eps_yy", &EquilibriumState::eps_yy)
        .def_readonly("eps_xy", &EquilibriumState::eps_xy)
        .def_readonly("kappa1", &EquilibriumState::kappa1)
        .def_readonly("kappa2", &EquilibriumState::kappa2)
        .def_readonly("phi", &EquilibriumState::phi);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("state", &SolveReport::state)
        .def_readonly("energy", &SolveReport::energy)
        .def_readonly("residual_norm", &SolveReport::residual_norm)
        .def_readonly("hessian_min_eigenvalue", &SolveReport::hessian_min_eigenvalue)
        .def_readonly("condition_number", &SolveReport::condition_number);

    m.def("solve_segment", &solve_segment, py::arg("segment"), py::arg("phi"));
    m.def("solve_ribbon", &solve_ribbon, py::arg("spec"));
    m.def("energy_per_area", &energy_per_area, py::arg("state"), py::arg("segment"));

    py::class_<HelixParams>(m, "HelixParams")
        .def_readonly("theta", &HelixParams::theta)
        .def_readonly("radius", &HelixParams::radius)
        .def_readonly("pitch", &HelixParams::pitch)
        .def_readonly("helix_angle", &HelixParams::helix_angle)
        .def_readonly("handedness", &HelixParams::handedness);

    py::class_<ClosedFormHelix>(m, "ClosedFormHelix")
        .def_readonly("published", &ClosedFormHelix::published)
        .def_readonly("frame", &ClosedFormHelix::frame)
        .def_readonly("axial_radius", &ClosedFormHelix::axial_radius)
        .def_readonly("turn_length", &ClosedFormHelix::turn_length);

    m.def("helix_params_closed_form", &helix_params_closed_form, py::arg("kappa1"), py::arg("kappa2"), py::arg("phi"));
    m.def("self_contact", &self_contact, py::arg("kappa1"), py::arg("kappa2"), py::arg("phi"), py::arg("w1"),
          py::arg("w2"));
    m.def("contact_clearance",
          [](double k1, double k2, double phi, double w1, double w2, double gap) {
              return evaluate_self_contact(k1, k2, phi, w1, w2, gap).clearance;
          },
          py::arg("kappa1"), py::arg("kappa2"), py::arg("phi"), py::arg("w1"), py::arg("w2"), py::arg("gap") = 0.0);

    m.def("helix_centerline",
          [](double k1, double k2, double phi, double length, double step) {
              const auto c = integrate_centerline(CurvatureProfile::uniform(length, k1, k2), phi, step);
              return py::make_tuple(arclength(c), positions(c));
          },
          py::arg("kappa1"), py::arg("kappa2"), py::arg("phi"), py::arg("length"), py::arg("step"));

    m.def("map_landscape",
          [](const SegmentSpec& seg, double phi, double w1, double w2, std::tuple<double, double, std::size_t> a1,
             std::tuple<double, double, std::size_t> a2) {
              const LandscapeGrid g{std::get<0>(a1), std::get<1>(a1), std::get<2>(a1),
                                    std::get<0>(a2), std::get<1>(a2), std::get<2>(a2)};
              const auto map = map_landscape(seg, phi, {w1, w2}, g);
              Eigen::MatrixXd energy(g.n1, g.n2);
              Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> forbidden(g.n1, g.n2);
              for (std::size_t i = 0; i < g.n1; ++i)
                  for (std::size_t j = 0; j < g.n2; ++j) {
                      energy(i, j) = map.at(i, j).energy;
                      forbidden(i, j) = map.at(i, j).forbidden;
                  }
              return py::make_tuple(energy, forbidden);
          },
          py::arg("segment"), py::arg("phi"), py::arg("w1"), py::arg("w2"), py::arg("kappa1_axis"),
          py::arg("kappa2_axis"));

    py::class_<ConstrainedCandidate>(m, "ConstrainedCandidate")
        .def_readonly("valid", &ConstrainedCandidate::valid)
        .def_readonly("state", &ConstrainedCandidate::state)
        .def_readonly("energy", &ConstrainedCandidate::energy)
        .def_readonly("handedness", &ConstrainedCandidate::handedness)
        .def_readonly("kind", &ConstrainedCandidate::kind)
        .def_readonly("contact_residual", &ConstrainedCandidate::contact_residual)
        .def_readonly("tangency_residual", &ConstrainedCandidate::tangency_residual);

    py::class_<FrustratedSolution>(m, "FrustratedSolution")
        .def_readonly("frustrated", &FrustratedSolution::frustrated)
        .def_readonly("unconstrained", &FrustratedSolution::unconstrained)
        .def_readonly("right", &FrustratedSolution::right)
        .def_readonly("left", &FrustratedSolution::left)
        .def_readonly("global_pick", &FrustratedSolution::global_pick)
        .def_readonly("degenerate", &FrustratedSolution::degenerate);

    m.def("constrained_equilibrium",
          [](const SegmentSpec& seg, double phi, double w1, double w2, double gap) {
              ContactOptions o;
              o.gap = gap;
              return constrained_equilibrium(seg, phi, {w1, w2}, o);
          },
          py::arg("segment"), py::arg("phi"), py::arg("w1"), py::arg("w2"), py::arg("gap") = 0.0);

    py::class_<SeashellResult>(m, "SeashellResult")
        .def_readonly("handedness", &SeashellResult::handedness)
        .def_readonly("total_energy", &SeashellResult::total_energy)
        .def_readonly("energy_right", &SeashellResult::energy_right)
        .def_readonly("energy_left", &SeashellResult::energy_left)
        .def_readonly("step", &SeashellResult::step)
        .def_property_readonly("segment_states",
                               [](const SeashellResult& r) {
                                   std::vector<EquilibriumState> out;
                                   for (const auto& s : r.segments) out.push_back(s.state);
                                   return out;
                               })
        .def_property_readonly("frustrated",
                               [](const SeashellResult& r) {
                                   std::vector<bool> out;
                                   for (const auto& s : r.segments) out.push_back(s.frustrated);
                                   return out;
                               })
        .def_property_readonly("arclength", [](const SeashellResult& r) { return arclength(r.curve); })
        .def_property_readonly("centerline", [](const SeashellResult& r) { return positions(r.curve); })
        .def_property_readonly("mesh_vertices",
                               [](const SeashellResult& r) {
                                   Eigen::MatrixX3d v(static_cast<Eigen::Index>(r.mesh.vertices.size()), 3);
                                   for (std::size_t i = 0; i < r.mesh.vertices.size(); ++i)
                                       v.row(static_cast<Eigen::Index>(i)) = r.mesh.vertices[i].transpose();
                                   return v;
                               })
        .def_property_readonly("mesh_faces", [](const SeashellResult& r) {
            Eigen::Matrix<int, Eigen::Dynamic, 3> f(static_cast<Eigen::Index>(r.mesh.faces.size()), 3);
            for (std::size_t i = 0; i < r.mesh.faces.size(); ++i)
                for (int k = 0; k < 3; ++k) f(static_cast<Eigen::Index>(i), k) = r.mesh.faces[i][k];
            return f;
        });

    m.def("assemble_seashell",
          [](const RibbonSpec& spec, double step, bool thickness_contact, std::size_t rows, std::size_t columns) {
              SeashellOptions o;
              o.step = step;
              o.thickness_contact = thickness_contact;
              o.mesh_rows = rows;
              o.mesh_columns = columns;
              return assemble_seashell(spec, o);
          },
          py::arg("spec"), py::arg("step") = 0.0, py::arg("thickness_contact") = false, py::arg("mesh_rows") = 2000,
          py::arg("mesh_columns") = 9);

    m.def("run_summary", [](const RibbonSpec& spec, const SeashellResult& r) { return run_summary(spec, r).dump(2); },
          py::arg("spec"), py::arg("result"));
}
