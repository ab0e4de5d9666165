#include "ifelab/study.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace ifelab {

ExactSolution radial_benchmark(double beta_minus, double beta_plus, double r0,
                               double alpha) {
    ExactSolution u;
    u.alpha = alpha;
    u.r0 = r0;
    u.beta_minus = beta_minus;
    u.beta_plus = beta_plus;
    const double shift = (1.0 / beta_minus - 1.0 / beta_plus) * std::pow(r0, alpha);

    auto radial = [alpha](const Vec2& X) { return std::pow(X.norm(), alpha); };
    auto radial_grad = [alpha](const Vec2& X) {
        double r = X.norm();
        return std::pow(r, alpha - 2.0) * alpha * X;
    };
    u.u_minus = [=](const Vec2& X) { return radial(X) / beta_minus; };
    u.u_plus = [=](const Vec2& X) { return radial(X) / beta_plus + shift; };
    u.grad_minus = [=](const Vec2& X) { return radial_grad(X) / beta_minus; };
    u.grad_plus = [=](const Vec2& X) { return radial_grad(X) / beta_plus; };
    u.f = [alpha](const Vec2& X) {
        return -alpha * alpha * std::pow(X.norm(), alpha - 2.0);
    };
    u.g = u.u_plus;
    return u;
}

ExactSolution linear_solution(double a, double bx, double cy, double beta) {
    ExactSolution u;
    u.beta_minus = u.beta_plus = beta;
    auto lin = [=](const Vec2& X) { return a + bx * X.x + cy * X.y; };
    auto grad = [=](const Vec2&) { return Vec2{bx, cy}; };
    u.u_minus = u.u_plus = lin;
    u.grad_minus = u.grad_plus = grad;
    u.f = [](const Vec2&) { return 0.0; };
    u.g = lin;
    return u;
}

double jump_condition_residual(const ExactSolution& u, const InterfaceCurve& curve,
                               int samples) {
    double per = curve.period() > 0.0 ? curve.period() : 1.0;
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Vec2 X = curve.point(per * k / samples);
        Vec2 n = curve.normal_at(X);
        double jump_u = u.u_plus(X) - u.u_minus(X);
        double jump_flux =
            u.beta_plus * u.grad_plus(X).dot(n) - u.beta_minus * u.grad_minus(X).dot(n);
        worst = std::max(worst, std::max(std::abs(jump_u), std::abs(jump_flux)));
    }
    return worst;
}

Eigen::VectorXd interpolate(const Mesh& mesh, const Classification& cls,
                            const InterfaceCurve& curve, const ExactSolution& u,
                            const AssemblyConfig&) {
    Eigen::VectorXd dofs(mesh.edges.size());
    for (size_t e = 0; e < mesh.edges.size(); ++e) {
        const MeshEdge& edge = mesh.edges[e];
        Vec2 a = mesh.vertices[edge.v0], b = mesh.vertices[edge.v1];
        auto branch_at = [&](double t0, double t1) {
            Vec2 mid = a + 0.5 * (t0 + t1) * (b - a);
            bool minus = curve.level_set(mid) < 0.0;
            return adaptive_gauss_1d(
                [&](double t) { return u.value(a + t * (b - a), minus); }, t0, t1);
        };
        if (cls.edge[e] != ElemClass::Interface) {
            dofs[int(e)] = branch_at(0.0, 1.0);
        } else {
            Vec2 s = edge_root(curve, a, b);
            double ts = (b - a).dot(s - a) / (b - a).dot(b - a);
            dofs[int(e)] = branch_at(0.0, ts) + branch_at(ts, 1.0);
        }
    }
    return dofs;
}

ErrorPair error_norms(const Eigen::VectorXd& dofs, const ExactSolution& u,
                      const Mesh& mesh, const Classification& cls,
                      const InterfaceCurve& curve, const AssemblyConfig& cfg) {
    double l2 = 0.0, h1 = 0.0;

    auto accumulate = [&](const Region& region, const Poly2& p, const Frame& fr,
                          bool minus_side) {
        l2 += integrate_function_region(region, [&](const Vec2& X) {
            double d = u.value(X, minus_side) - p.eval(fr.to_local(X));
            return d * d;
        });
        h1 += integrate_function_region(region, [&](const Vec2& X) {
            Vec2 d = u.gradient(X, minus_side) - p.grad(fr.to_local(X)) / fr.scale;
            return d.dot(d);
        });
    };

    for (int t = 0; t < int(mesh.elements.size()); ++t) {
        const MeshElement& el = mesh.elements[t];
        Family fam = el.n == 3 ? Family::CR : Family::RQ1;
        ShapeSet shapes = standard_shapes(mesh, t, fam);

        if (cls.element[t] != ElemClass::Interface) {
            Poly2 local(fam == Family::RQ1 ? 2 : 1);
            for (int i = 0; i < el.n; ++i) local.axpy(dofs[el.e[i]], shapes.shape[i]);
            accumulate(element_region(mesh, t), local, shapes.frame,
                       cls.element[t] == ElemClass::Minus);
        } else {
            CutInfo cut = compute_cut(mesh, t, curve, cfg.partition, cfg.flux);
            IfeShapeSet ife =
                ife_shape_functions(mesh, cut, shapes, cfg.beta_minus, cfg.beta_plus, curve);
            std::vector<double> local_dofs(el.n);
            for (int i = 0; i < el.n; ++i) local_dofs[i] = dofs[el.e[i]];
            PiecewiseShape combined = combine_ife(ife, local_dofs);
            // The true solution lives on the curve subregions.
            auto [rm, rp] = split_element(mesh, cut, PartitionMode::Curve, curve);
            accumulate(rm, combined.minus, ife.frame, true);
            accumulate(rp, combined.plus, ife.frame, false);
        }
    }
    return {std::sqrt(l2), std::sqrt(h1)};
}

namespace {

std::string with_suffix(const std::string& path, const std::string& suffix) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos) return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}

}  // namespace

StudyReport run_study_mode(const StudyConfig& cfg, StudyMode mode,
                           const std::string& out_path) {
    if (cfg.curve != "circle")
        throw std::invalid_argument("run_study: unsupported curve '" + cfg.curve + "'");
    if (mode == StudyMode::Both)
        throw std::invalid_argument("run_study_mode: pass Interp or Solve");

    CircleInterface curve({0.0, 0.0}, cfg.r0);
    ExactSolution exact = radial_benchmark(cfg.beta_minus, cfg.beta_plus, cfg.r0);
    Rect domain{-1.0, -1.0, 2.0, 2.0};

    StudyReport report;
    report.config = cfg;
    for (int level = 0; level < cfg.levels; ++level) {
        int n = cfg.n0 << level;
        Mesh mesh = build_mesh(domain, n, cfg.mesh);
        Classification cls = classify_elements(mesh, curve);
        AssemblyConfig acfg = cfg.assembly();

        Eigen::VectorXd dofs;
        if (mode == StudyMode::Interp) {
            dofs = interpolate(mesh, cls, curve, exact, acfg);
        } else {
            SparseSystem sys = assemble(mesh, cls, curve, acfg, exact.f, exact.g);
            dofs = solve(sys).dofs;
        }
        ErrorPair err = error_norms(dofs, exact, mesh, cls, curve, acfg);

        StudyRow row;
        row.h = 2.0 / n;
        row.l2_error = err.l2;
        row.h1_error = err.h1semi;
        if (!report.rows.empty()) {
            row.l2_rate = std::log2(report.rows.back().l2_error / err.l2);
            row.h1_rate = std::log2(report.rows.back().h1_error / err.h1semi);
        }
        report.rows.push_back(row);
    }
    if (!out_path.empty()) write_csv(report, out_path);
    return report;
}

StudyReport run_study(const StudyConfig& cfg) {
    if (cfg.mode == StudyMode::Both) {
        run_study_mode(cfg, StudyMode::Interp,
                       cfg.out.empty() ? cfg.out : with_suffix(cfg.out, "_interp"));
        return run_study_mode(cfg, StudyMode::Solve,
                              cfg.out.empty() ? cfg.out : with_suffix(cfg.out, "_solve"));
    }
    return run_study_mode(cfg, cfg.mode, cfg.out);
}

void write_csv(const StudyReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << "h,l2_error,l2_rate,h1_error,h1_rate\n";
    for (const StudyRow& r : report.rows) {
        out << fmt(r.h) << ',' << fmt(r.l2_error) << ','
            << (r.l2_rate ? fmt(*r.l2_rate) : "") << ',' << fmt(r.h1_error) << ','
            << (r.h1_rate ? fmt(*r.h1_rate) : "") << '\n';
    }
}

}  // namespace ifelab
