#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ifelab/study.hpp"
#include "oracles.hpp"

using namespace ifelab;

namespace {
const double kR0 = M_PI / 6.28;
const Rect kOmega{-1.0, -1.0, 2.0, 2.0};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace

TEST_CASE("benchmark solution satisfies the jump conditions") {
    CircleInterface circle({0, 0}, kR0);
    ExactSolution u = radial_benchmark(1.0, 10000.0, kR0);
    CHECK(jump_condition_residual(u, circle, 100) < 1e-10);
    ExactSolution swapped = radial_benchmark(10000.0, 1.0, kR0);
    CHECK(jump_condition_residual(swapped, circle, 100) < 1e-10);
}

TEST_CASE("benchmark source matches -div(beta grad u)") {
    ExactSolution u = radial_benchmark(1.0, 10000.0, kR0);
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> ur(0.05, 0.95);
    std::uniform_real_distribution<double> ua(0.0, 2 * M_PI);
    const double step = 1e-5;
    for (int trial = 0; trial < 40; ++trial) {
        bool minus = trial % 2 == 0;
        double r = minus ? kR0 * ur(rng) : kR0 + (1.0 - kR0) * ur(rng) * 0.9;
        double a = ua(rng);
        Vec2 X{r * std::cos(a), r * std::sin(a)};
        double beta = minus ? u.beta_minus : u.beta_plus;
        auto val = [&](const Vec2& P) { return u.value(P, minus); };
        double lap = (val({X.x + step, X.y}) + val({X.x - step, X.y}) +
                      val({X.x, X.y + step}) + val({X.x, X.y - step}) - 4.0 * val(X)) /
                     (step * step);
        // Compare Laplacians: scaling the FD value by beta would amplify the
        // difference-quotient roundoff by the contrast.
        CHECK(std::abs(-lap - u.f(X) / beta) <
              1e-4 * std::max(1.0, std::abs(u.f(X) / beta)));
    }
}

TEST_CASE("interpolation of constants and linears") {
    CircleInterface circle({0, 0}, kR0);
    Mesh m = build_mesh(kOmega, 16, CellType::Rectangular);
    Classification cls = classify_elements(m, circle);
    AssemblyConfig cfg{1.0, 1.0, Family::RQ1, PartitionMode::Curve,
                       FluxMode::CurveMidpoint};

    ExactSolution one = linear_solution(1.0, 0.0, 0.0, 1.0);
    Eigen::VectorXd dofs = interpolate(m, cls, circle, one, cfg);
    for (int i = 0; i < dofs.size(); ++i)
        CHECK(dofs[i] == doctest::Approx(1.0).epsilon(1e-13));
    ErrorPair err = error_norms(dofs, one, m, cls, circle, cfg);
    CHECK(err.l2 < 1e-12);
    CHECK(err.h1semi < 1e-11);

    ExactSolution lin = linear_solution(0.2, -1.1, 0.6, 1.0);
    Eigen::VectorXd ldofs = interpolate(m, cls, circle, lin, cfg);
    ErrorPair lerr = error_norms(ldofs, lin, m, cls, circle, cfg);
    CHECK(lerr.l2 < 1e-10);
    CHECK(lerr.h1semi < 1e-10);
}

TEST_CASE("L2 norm of the benchmark solution against Monte Carlo") {
    CircleInterface circle({0, 0}, kR0);
    ExactSolution u = radial_benchmark(1.0, 10000.0, kR0);
    Mesh m = build_mesh(kOmega, 16, CellType::Rectangular);
    Classification cls = classify_elements(m, circle);
    AssemblyConfig cfg{1.0, 10000.0, Family::RQ1, PartitionMode::Curve,
                       FluxMode::CurveMidpoint};
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(m.edges.size());
    double norm = error_norms(zero, u, m, cls, circle, cfg).l2;

    std::mt19937 rng(73);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    double sum = 0.0;
    const int N = 1000000;
    for (int i = 0; i < N; ++i) {
        Vec2 X{ux(rng), ux(rng)};
        double v = u.value(X, circle.level_set(X) < 0.0);
        sum += v * v;
    }
    double mc = std::sqrt(sum / N * 4.0);  // |Omega| = 4
    CHECK(std::abs(norm - mc) < 1e-3 * mc * 3.0);
}

TEST_CASE("interpolation error decays at the expected rates") {
    StudyConfig cfg;
    cfg.beta_minus = 1.0;
    cfg.beta_plus = 10000.0;
    cfg.n0 = 40;
    cfg.levels = 2;
    cfg.mode = StudyMode::Interp;
    StudyReport rep = run_study(cfg);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].h == doctest::Approx(1.0 / 20.0));
    CHECK(rep.rows[1].h == doctest::Approx(1.0 / 40.0));
    CHECK(rep.rows[1].l2_error < rep.rows[0].l2_error);
    CHECK(rep.rows[1].h1_error < rep.rows[0].h1_error);
    REQUIRE(rep.rows[1].l2_rate.has_value());
    CHECK(*rep.rows[1].l2_rate > 1.7);
    CHECK(*rep.rows[1].h1_rate > 0.8);
}

TEST_CASE("CSV output format") {
    StudyConfig cfg;
    cfg.beta_minus = 1.0;
    cfg.beta_plus = 10.0;
    cfg.n0 = 8;
    cfg.levels = 2;
    cfg.mode = StudyMode::Interp;
    cfg.out = "study_test.csv";
    run_study(cfg);

    std::ifstream in(cfg.out);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "h,l2_error,l2_rate,h1_error,h1_rate");
    std::getline(in, line);
    auto row1 = split_csv_line(line);
    REQUIRE(row1.size() == 5);
    CHECK(row1[0] == "2.50000e-01");
    CHECK(row1[2] == "");  // no rate on the first row
    CHECK(row1[4] == "");
    CHECK(row1[1].find('e') != std::string::npos);
    std::getline(in, line);
    auto row2 = split_csv_line(line);
    REQUIRE(row2.size() == 5);
    CHECK(row2[0] == "1.25000e-01");
    CHECK(!row2[2].empty());
    CHECK(!row2[4].empty());
    std::remove(cfg.out.c_str());
}

TEST_CASE("mode both writes two files") {
    StudyConfig cfg;
    cfg.beta_minus = 1.0;
    cfg.beta_plus = 10.0;
    cfg.n0 = 8;
    cfg.levels = 1;
    cfg.mode = StudyMode::Both;
    cfg.out = "study_both.csv";
    run_study(cfg);
    CHECK(std::ifstream("study_both_interp.csv").good());
    CHECK(std::ifstream("study_both_solve.csv").good());
    std::remove("study_both_interp.csv");
    std::remove("study_both_solve.csv");
}

TEST_CASE("unsupported curve is rejected") {
    StudyConfig cfg;
    cfg.curve = "ellipse";
    CHECK_THROWS(run_study(cfg));
}

TEST_CASE("interpolation DOFs realize weak continuity") {
    CircleInterface circle({0, 0}, kR0);
    Mesh m = build_mesh(kOmega, 8, CellType::Rectangular);
    Classification cls = classify_elements(m, circle);
    ExactSolution u = radial_benchmark(1.0, 10.0, kR0);
    AssemblyConfig cfg{1.0, 10.0, Family::RQ1, PartitionMode::Curve,
                       FluxMode::CurveMidpoint};
    Eigen::VectorXd dofs = interpolate(m, cls, circle, u, cfg);

    // Each element's local IFE representation reproduces the shared DOFs.
    double worst = 0.0;
    for (size_t t = 0; t < m.elements.size(); ++t) {
        if (cls.element[t] != ElemClass::Interface) continue;
        ShapeSet shapes = standard_shapes(m, int(t), Family::RQ1);
        CutInfo cut =
            compute_cut(m, int(t), circle, PartitionMode::Curve, FluxMode::CurveMidpoint);
        IfeShapeSet set = ife_shape_functions(m, cut, shapes, 1.0, 10.0, circle);
        std::vector<double> local(4);
        for (int i = 0; i < 4; ++i) local[i] = dofs[m.elements[t].e[i]];
        PiecewiseShape c = combine_ife(set, local);
        for (int j = 0; j < 4; ++j) {
            double blen = m.edges[m.elements[t].e[j]].length;
            double avg = integrate_edge_split(m, int(t), j, &cut, c.minus, c.plus,
                                              set.frame) /
                         blen;
            worst = std::max(worst, std::abs(avg - local[j]));
        }
    }
    CHECK(worst < 1e-11);
}
