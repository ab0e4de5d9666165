// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for all criteria or with a list of criterion numbers.
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "ifelab/study.hpp"
#include "oracles.hpp"

using namespace ifelab;

namespace {

const double kR0 = M_PI / 6.28;
const Rect kOmega{-1.0, -1.0, 2.0, 2.0};

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && detail.size() < 400) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        } else if (!cond) {
            ok = false;
        }
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4e", v);
    return buf;
}

StudyReport table_study(StudyMode mode, PartitionMode part, FluxMode flux, int n0,
                        int levels) {
    StudyConfig cfg;
    cfg.mesh = CellType::Rectangular;
    cfg.family = Family::RQ1;
    cfg.partition = part;
    cfg.flux = flux;
    cfg.beta_minus = 1.0;
    cfg.beta_plus = 10000.0;
    cfg.n0 = n0;
    cfg.levels = levels;
    cfg.mode = mode;
    return run_study_mode(cfg, mode, "");
}

void check_table(Check& c, const StudyReport& rep, const double* l2, const double* h1,
                 double l2_band, double h1_band, double rate_lo_l2, double rate_hi_l2,
                 double rate_lo_h1, double rate_hi_h1, const double* l2_rates,
                 const double* h1_rates) {
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        const StudyRow& r = rep.rows[i];
        c.require(std::abs(r.l2_error - l2[i]) <= l2_band * l2[i],
                  "L2[" + std::to_string(i) + "]=" + fmt(r.l2_error) + " vs " + fmt(l2[i]));
        c.require(std::abs(r.h1_error - h1[i]) <= h1_band * h1[i],
                  "H1[" + std::to_string(i) + "]=" + fmt(r.h1_error) + " vs " + fmt(h1[i]));
        if (i == 0) continue;
        if (l2_rates != nullptr) {
            c.require(std::abs(*r.l2_rate - l2_rates[i - 1]) <= 0.1,
                      "L2 rate[" + std::to_string(i) + "]=" + fmt(*r.l2_rate));
            c.require(std::abs(*r.h1_rate - h1_rates[i - 1]) <= 0.1,
                      "H1 rate[" + std::to_string(i) + "]=" + fmt(*r.h1_rate));
        } else {
            c.require(*r.l2_rate >= rate_lo_l2 && *r.l2_rate <= rate_hi_l2,
                      "L2 rate[" + std::to_string(i) + "]=" + fmt(*r.l2_rate));
            c.require(*r.h1_rate >= rate_lo_h1 && *r.h1_rate <= rate_hi_h1,
                      "H1 rate[" + std::to_string(i) + "]=" + fmt(*r.h1_rate));
        }
    }
}

// Criterion 1: interpolation error table, RQ1, curve partition, curve-midpoint
// flux, beta = (1, 10000), reference labels h = 1/20 .. 1/160. The reference
// labels count subdivisions of the width-2 domain, so "h = 1/20" is the mesh
// with 20 cells per side (cell size 1/10); the measured errors match the
// reference values under that convention to well under 1%.
Check criterion1() {
    Check c;
    const double l2[4] = {6.3804e-4, 1.6776e-4, 4.3557e-5, 1.1100e-5};
    const double h1[4] = {2.7693e-2, 1.4436e-2, 7.4385e-3, 3.7803e-3};
    const double l2_rates[3] = {1.9273, 1.9454, 1.9723};
    const double h1_rates[3] = {0.9398, 0.9566, 0.9765};
    StudyReport rep =
        table_study(StudyMode::Interp, PartitionMode::Curve, FluxMode::CurveMidpoint, 20, 4);
    check_table(c, rep, l2, h1, 0.10, 0.10, 0, 0, 0, 0, l2_rates, h1_rates);
    return c;
}

// Criterion 2: Galerkin solution error table, same configuration.
Check criterion2() {
    Check c;
    const double l2[4] = {1.4221e-3, 3.4863e-4, 8.5873e-5, 2.1046e-5};
    const double h1[4] = {2.8852e-2, 1.4822e-2, 7.5721e-3, 3.8057e-3};
    StudyReport rep =
        table_study(StudyMode::Solve, PartitionMode::Curve, FluxMode::CurveMidpoint, 20, 4);
    check_table(c, rep, l2, h1, 0.15, 0.10, 1.85, 2.15, 0.9, 1.05, nullptr, nullptr);
    return c;
}

// Criterion 3: Sherman-Morrison vs dense constraint solve on 1000 random
// configurations.
Check criterion3() {
    Check c;
    std::mt19937 rng(2024);
    LineInterface dummy({0, 0}, {1, 0});
    double worst = 0.0;
    int tested = 0, skipped = 0;
    while (tested < 1000) {
        Family fam = tested % 2 ? Family::CR : Family::RQ1;
        oracles::RandomConfig rc =
            oracles::random_interface_config(rng, fam, tested % 2 == 0);
        int n = rc.mesh.elements[0].n;
        IfeShapeSet set;
        try {
            set = ife_shape_functions(rc.mesh, rc.cut, rc.shapes, rc.beta_minus,
                                      rc.beta_plus, dummy);
        } catch (const NearSingular&) {
            ++skipped;
            c.require(skipped < 50, "too many near-singular samples");
            if (!c.ok) return c;
            continue;
        }
        ++tested;
        for (int i = 0; i < n; ++i) {
            std::vector<double> v(n, 0.0);
            v[i] = 1.0;
            oracles::DensePiecewise dense = oracles::dense_ife_shape(
                rc.mesh, rc.cut, rc.shapes.frame, fam, rc.beta_minus, rc.beta_plus, v);
            worst = std::max(worst, oracles::coeff_distance(set.phi[i].minus, dense.minus));
            worst = std::max(worst, oracles::coeff_distance(set.phi[i].plus, dense.plus));
        }
    }
    c.require(worst < 1e-11, "worst rel. deviation " + fmt(worst));
    c.detail = "worst rel. deviation " + fmt(worst) + " over 1000 configs, " +
               std::to_string(skipped) + " near-singular skips" +
               (c.ok ? "" : "; " + c.detail);
    return c;
}

// Criterion 4: property suite.
Check criterion4() {
    Check c;
    CircleInterface circle({0, 0}, kR0);
    const double bm = 1.0, bp = 10000.0;
    std::mt19937 rng(4096);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    // gamma^T delta in [0,1] on 1000 random rectangular configurations with
    // the flux point on the chord.
    {
        std::uniform_real_distribution<double> frac(0.05, 0.95);
        double h = 0.5;
        std::vector<double> v(4, 0.0);
        Mesh m = build_mesh(Rect{0, 0, 2 * h, 2 * h}, 2, CellType::Rectangular);
        for (int trial = 0; trial < 1000; ++trial) {
            CutInfo cut;
            cut.element_id = 0;
            int ea = trial % 4;
            int eb = (ea + 1 + trial / 4 % 3) % 4;
            auto on_edge = [&](int k, double t) {
                Vec2 a = m.vertex(0, k), b = m.vertex(0, (k + 1) % 4);
                return a + t * (b - a);
            };
            cut.cut_edge_a = std::min(ea, eb);
            cut.cut_edge_b = std::max(ea, eb);
            cut.D = on_edge(cut.cut_edge_a, frac(rng));
            cut.E = on_edge(cut.cut_edge_b, frac(rng));
            cut.nbar = (cut.E - cut.D).perp().normalized();
            if (u01(rng) < 0.5) cut.nbar = -cut.nbar;
            cut.F = cut.D + u01(rng) * (cut.E - cut.D);
            cut.vF = cut.nbar;
            for (int k = 0; k < 4; ++k) {
                if (k == cut.cut_edge_a || k == cut.cut_edge_b) {
                    cut.edge_class[k] = EdgeClass::Split;
                    cut.split_point[k] = (k == cut.cut_edge_a) ? cut.D : cut.E;
                } else {
                    Vec2 mid = (m.vertex(0, k) + m.vertex(0, (k + 1) % 4)) * 0.5;
                    cut.edge_class[k] =
                        cut.chord_value(mid) < 0.0 ? EdgeClass::Minus : EdgeClass::Plus;
                }
            }
            ShapeSet shapes = standard_shapes(m, 0, Family::RQ1);
            SMSystem sys = build_sm_system(m, cut, shapes, 1.0, 2.0, v);
            double g = 0.0;
            for (size_t i = 0; i < sys.gamma.size(); ++i) g += sys.gamma[i] * sys.delta[i];
            c.require(g >= -1e-12 && g <= 1.0 + 1e-12, "gamma^T delta = " + fmt(g));
        }
    }

    // Benchmark sweep on the paper meshes.
    for (int n : {40, 80, 160, 320}) {
        Mesh m = build_mesh(kOmega, n, CellType::Rectangular);
        Classification cls = classify_elements(m, circle);
        double worst_dof = 0.0, worst_pou = 0.0, worst_id0 = 0.0, worst_id1 = 0.0;
        double min_nv = 1.0, worst_rho1 = 0.0, worst_add = 0.0, worst_fd = 0.0;
        std::mt19937 prng(n);
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        for (size_t t = 0; t < m.elements.size(); ++t) {
            if (cls.element[t] != ElemClass::Interface) continue;
            ShapeSet shapes = standard_shapes(m, int(t), Family::RQ1);
            CutInfo cut = compute_cut(m, int(t), circle, PartitionMode::Curve,
                                      FluxMode::CurveMidpoint);
            min_nv = std::min(min_nv, cut.nbar.dot(cut.vF));
            IfeShapeSet set = ife_shape_functions(m, cut, shapes, bm, bp, circle);

            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double blen = m.edges[m.elements[t].e[j]].length;
                    double avg = integrate_edge_split(m, int(t), j, &cut,
                                                      set.phi[i].minus, set.phi[i].plus,
                                                      set.frame) /
                                 blen;
                    worst_dof = std::max(worst_dof, std::abs(avg - (i == j ? 1.0 : 0.0)));
                }

            Vec2 lo = m.vertex(int(t), 0);
            for (int trial = 0; trial < 50; ++trial) {
                Vec2 X = lo + Vec2{u01(rng), u01(rng)} * m.h;
                double sum = 0.0;
                for (int i = 0; i < 4; ++i) sum += eval_ife(set, i, X);
                worst_pou = std::max(worst_pou, std::abs(sum - 1.0));
            }

            IdentityResiduals res = check_identities(m, set, bm, bp, cut.D, cut.E);
            worst_id0 = std::max(worst_id0, res.identity0);
            worst_id1 = std::max(worst_id1, res.identity1 * m.h);

            // rho = 1 reduction (sampled to keep the sweep fast).
            if (t % 5 == 0) {
                IfeShapeSet same = ife_shape_functions(m, cut, shapes, 3.0, 3.0, circle);
                for (int i = 0; i < 4; ++i) {
                    worst_rho1 = std::max(worst_rho1, oracles::coeff_distance(
                                                          same.phi[i].minus,
                                                          shapes.shape[i]));
                    worst_rho1 = std::max(worst_rho1, oracles::coeff_distance(
                                                          same.phi[i].plus,
                                                          shapes.shape[i]));
                }
            }

            // Region additivity of a random quadratic.
            if (t % 5 == 1) {
                Poly2 p(2);
                for (int i = 0; i <= 2; ++i)
                    for (int j = 0; i + j <= 2; ++j) p.at(i, j) = coeff(prng);
                double whole = integrate_poly_region(element_region(m, int(t)), p,
                                                     shapes.frame);
                auto [rm, rp] = split_element(m, cut, PartitionMode::Curve, circle);
                double parts = integrate_poly_region(rm, p, shapes.frame) +
                               integrate_poly_region(rp, p, shapes.frame);
                worst_add = std::max(worst_add, std::abs(parts - whole) /
                                                    std::max(std::abs(whole), 1e-12));
            }

            // Gradient vs central differences away from the interface.
            if (t % 11 == 2) {
                for (int trial = 0; trial < 20; ++trial) {
                    Vec2 X = lo + Vec2{u01(rng), u01(rng)} * m.h;
                    if (std::abs(circle.level_set(X)) < 1e-4) continue;
                    for (int i = 0; i < 4; ++i) {
                        Vec2 g = grad_ife(set, i, X);
                        Vec2 fd = oracles::fd_gradient(
                            [&](const Vec2& P) { return eval_ife(set, i, P); }, X);
                        worst_fd = std::max(
                            worst_fd, (g - fd).norm() / std::max(1.0, g.norm()));
                    }
                }
            }
        }
        c.require(worst_dof < 1e-11, "n=" + std::to_string(n) + " DOF " + fmt(worst_dof));
        c.require(worst_pou < 1e-11, "n=" + std::to_string(n) + " POU " + fmt(worst_pou));
        c.require(worst_id0 < 1e-10,
                  "n=" + std::to_string(n) + " identity0 " + fmt(worst_id0));
        c.require(worst_id1 < 1e-9,
                  "n=" + std::to_string(n) + " identity1*h " + fmt(worst_id1));
        c.require(min_nv >= 0.5, "n=" + std::to_string(n) + " nbar.vF " + fmt(min_nv));
        c.require(worst_rho1 < 1e-13,
                  "n=" + std::to_string(n) + " rho=1 " + fmt(worst_rho1));
        c.require(worst_add < 1e-11,
                  "n=" + std::to_string(n) + " additivity " + fmt(worst_add));
        c.require(worst_fd < 1e-7, "n=" + std::to_string(n) + " FD grad " + fmt(worst_fd));
    }
    return c;
}

// Criterion 5: patch test for a globally linear solution, equal coefficients.
Check criterion5() {
    Check c;
    CircleInterface circle({0, 0}, kR0);
    ExactSolution lin = linear_solution(0.4, 0.9, -1.2, 1.0);
    for (int n : {8, 16}) {
        for (CellType ct : {CellType::Rectangular, CellType::Triangular}) {
            Family fam = ct == CellType::Rectangular ? Family::RQ1 : Family::CR;
            Mesh m = build_mesh(kOmega, n, ct);
            Classification cls = classify_elements(m, circle);
            AssemblyConfig cfg{1.0, 1.0, fam, PartitionMode::Curve,
                               FluxMode::CurveMidpoint};
            SparseSystem sys = assemble(m, cls, circle, cfg, lin.f, lin.g);
            SolveResult r = solve(sys);
            Eigen::VectorXd want = interpolate(m, cls, circle, lin, cfg);
            double err = (r.dofs - want).lpNorm<Eigen::Infinity>() /
                         want.lpNorm<Eigen::Infinity>();
            c.require(err <= 1e-9, (fam == Family::RQ1 ? std::string("rq1") : "cr") +
                                       " n=" + std::to_string(n) + " err " + fmt(err));
        }
    }
    return c;
}

// Criterion 6: line-partition interpolation variant keeps the optimal rates
// between h = 1/80 and h = 1/160.
Check criterion6() {
    Check c;
    StudyReport rep =
        table_study(StudyMode::Interp, PartitionMode::Line, FluxMode::LineMidpoint, 80, 2);
    const StudyRow& r = rep.rows[1];
    c.require(r.l2_rate.has_value() && *r.l2_rate >= 1.85, "L2 rate " + fmt(*r.l2_rate));
    c.require(r.h1_rate.has_value() && *r.h1_rate >= 0.9, "H1 rate " + fmt(*r.h1_rate));
    c.detail = "L2 rate " + fmt(*r.l2_rate) + ", H1 rate " + fmt(*r.h1_rate) +
               (c.ok ? "" : "; " + c.detail);
    return c;
}

struct Criterion {
    int id;
    const char* name;
    Check (*run)();
};

const Criterion kCriteria[] = {
    {1, "interpolation error table (RQ1, curve partition, beta 1:10000)", criterion1},
    {2, "Galerkin solution error table (same configuration)", criterion2},
    {3, "Sherman-Morrison vs dense constraint solve, 1000 random cuts", criterion3},
    {4, "property suite (DOF, POU, identities, bounds, reductions)", criterion4},
    {5, "patch test, linear solution, equal coefficients, n in {8,16}", criterion5},
    {6, "line-partition interpolation rates between h=1/80 and h=1/160", criterion6},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& cr : kCriteria) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), cr.id) == wanted.end())
            continue;
        Check res;
        try {
            res = cr.run();
        } catch (const std::exception& e) {
            res.ok = false;
            res.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %d: %s%s%s\n", res.ok ? "PASS" : "FAIL", cr.id, cr.name,
                    res.detail.empty() ? "" : " -- ", res.detail.c_str());
        std::fflush(stdout);
        failures += !res.ok;
    }
    return failures == 0 ? 0 : 1;
}
