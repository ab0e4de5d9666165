#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ifelab/study.hpp"

namespace py = pybind11;
using namespace ifelab;

namespace {

CellType parse_mesh(const std::string& s) {
    if (s == "tri") return CellType::Triangular;
    if (s == "rect") return CellType::Rectangular;
    throw std::invalid_argument("mesh must be 'tri' or 'rect'");
}

Family parse_family(const std::string& s) {
    if (s == "cr") return Family::CR;
    if (s == "rq1") return Family::RQ1;
    throw std::invalid_argument("family must be 'cr' or 'rq1'");
}

PartitionMode parse_partition(const std::string& s) {
    if (s == "curve") return PartitionMode::Curve;
    if (s == "line") return PartitionMode::Line;
    throw std::invalid_argument("partition must be 'curve' or 'line'");
}

FluxMode parse_flux(const std::string& s) {
    if (s == "curve-mid") return FluxMode::CurveMidpoint;
    if (s == "line-mid") return FluxMode::LineMidpoint;
    throw std::invalid_argument("flux must be 'curve-mid' or 'line-mid'");
}

StudyMode parse_mode(const std::string& s) {
    if (s == "interp") return StudyMode::Interp;
    if (s == "solve") return StudyMode::Solve;
    if (s == "both") return StudyMode::Both;
    throw std::invalid_argument("mode must be 'interp', 'solve' or 'both'");
}

py::list report_rows(const StudyReport& rep) {
    py::list rows;
    for (const StudyRow& r : rep.rows) {
        py::dict d;
        d["h"] = r.h;
        d["l2_error"] = r.l2_error;
        d["h1_error"] = r.h1_error;
        d["l2_rate"] = r.l2_rate ? py::object(py::float_(*r.l2_rate)) : py::none();
        d["h1_rate"] = r.h1_rate ? py::object(py::float_(*r.h1_rate)) : py::none();
        rows.append(d);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_ifelab, m) {
    m.doc() = "Nonconforming immersed finite element studies";

    m.def(
        "run_study",
        [](const std::string& mesh, const std::string& family,
           const std::string& partition, const std::string& flux, double beta_minus,
           double beta_plus, int levels, int n0, const std::string& mode, double r0,
           const std::string& out) {
            StudyConfig cfg;
            cfg.mesh = parse_mesh(mesh);
            cfg.family = parse_family(family);
            cfg.partition = parse_partition(partition);
            cfg.flux = parse_flux(flux);
            cfg.beta_minus = beta_minus;
            cfg.beta_plus = beta_plus;
            cfg.levels = levels;
            cfg.n0 = n0;
            cfg.mode = parse_mode(mode);
            cfg.r0 = r0;
            cfg.out = out;
            return report_rows(run_study(cfg));
        },
        py::arg("mesh") = "rect", py::arg("family") = "rq1",
        py::arg("partition") = "curve", py::arg("flux") = "curve-mid",
        py::arg("beta_minus") = 1.0, py::arg("beta_plus") = 1.0, py::arg("levels") = 1,
        py::arg("n0") = 40, py::arg("mode") = "interp", py::arg("r0") = M_PI / 6.28,
        py::arg("out") = "",
        "Run a convergence study; returns one dict per refinement level.");

    m.def(
        "classify_counts",
        [](int n, const std::string& mesh, double r0) {
            Mesh m_ = build_mesh(Rect{-1, -1, 2, 2}, n, parse_mesh(mesh));
            CircleInterface circle({0, 0}, r0);
            Classification cls = classify_elements(m_, circle);
            py::dict d;
            d["elements"] = m_.elements.size();
            d["edges"] = m_.edges.size();
            d["interface_elements"] = cls.interface_element_count();
            d["h"] = m_.h;
            return d;
        },
        py::arg("n"), py::arg("mesh") = "rect", py::arg("r0") = M_PI / 6.28,
        "Mesh and interface-element counts for the circle benchmark.");

    m.def(
        "jump_residual",
        [](double beta_minus, double beta_plus, double r0) {
            CircleInterface circle({0, 0}, r0);
            ExactSolution u = radial_benchmark(beta_minus, beta_plus, r0);
            return jump_condition_residual(u, circle, 100);
        },
        py::arg("beta_minus") = 1.0, py::arg("beta_plus") = 10000.0,
        py::arg("r0") = M_PI / 6.28,
        "Max sampled residual of the benchmark solution's jump conditions.");

    py::register_exception<HypothesisViolation>(m, "HypothesisViolation");
    py::register_exception<NoConvergence>(m, "NoConvergence");
}
