#pragma once

#include <optional>
#include <string>

#include "ifelab/system.hpp"

namespace ifelab {

using VectorField = std::function<Vec2(const Vec2&)>;

// Piecewise exact solution of the interface problem, with source and
// boundary data consistent with it.
struct ExactSolution {
    ScalarField u_minus, u_plus;
    VectorField grad_minus, grad_plus;
    ScalarField f;
    ScalarField g;  // boundary trace
    double alpha = 0.0;
    double r0 = 0.0;
    double beta_minus = 1.0, beta_plus = 1.0;

    double value(const Vec2& X, bool minus_side) const {
        return minus_side ? u_minus(X) : u_plus(X);
    }
    Vec2 gradient(const Vec2& X, bool minus_side) const {
        return minus_side ? grad_minus(X) : grad_plus(X);
    }
};

// u = r^alpha / beta on each side (plus a matching constant outside the
// circle of radius r0), the benchmark with f = -alpha^2 r^(alpha-2).
ExactSolution radial_benchmark(double beta_minus, double beta_plus, double r0,
                               double alpha = 5.0);

// Globally linear solution (equal coefficients), for patch tests.
ExactSolution linear_solution(double a, double bx, double cy, double beta);

// Max sampled residual of the two interface jump conditions.
double jump_condition_residual(const ExactSolution& u, const InterfaceCurve& curve,
                               int samples = 100);

// Edge-average interpolation DOFs; split edges integrate the matching branch
// on each sub-segment.
Eigen::VectorXd interpolate(const Mesh& mesh, const Classification& cls,
                            const InterfaceCurve& curve, const ExactSolution& u,
                            const AssemblyConfig& cfg);

struct ErrorPair {
    double l2 = 0.0;
    double h1semi = 0.0;
};

// L2 and H1-seminorm errors of the IFE function with the given DOFs. On
// interface elements each exact branch pairs with the IFE piece of the same
// side over the curve subregions, regardless of the partition mode used to
// build the space.
ErrorPair error_norms(const Eigen::VectorXd& dofs, const ExactSolution& u,
                      const Mesh& mesh, const Classification& cls,
                      const InterfaceCurve& curve, const AssemblyConfig& cfg);

enum class StudyMode { Interp, Solve, Both };

struct StudyConfig {
    CellType mesh = CellType::Rectangular;
    Family family = Family::RQ1;
    PartitionMode partition = PartitionMode::Curve;
    FluxMode flux = FluxMode::CurveMidpoint;
    double beta_minus = 1.0;
    double beta_plus = 1.0;
    int levels = 1;
    int n0 = 40;
    StudyMode mode = StudyMode::Interp;
    std::string out;
    std::string curve = "circle";
    double r0 = M_PI / 6.28;

    AssemblyConfig assembly() const {
        return {beta_minus, beta_plus, family, partition, flux};
    }
};

struct StudyRow {
    double h = 0.0;
    double l2_error = 0.0;
    std::optional<double> l2_rate;
    double h1_error = 0.0;
    std::optional<double> h1_rate;
};

struct StudyReport {
    std::vector<StudyRow> rows;
    StudyConfig config;
};

// One refinement sweep; writes CSV to `out_path` when nonempty.
StudyReport run_study_mode(const StudyConfig& cfg, StudyMode mode,
                           const std::string& out_path);

// Mode Both writes two files, inserting "_interp"/"_solve" before the
// extension of cfg.out; returns the last report.
StudyReport run_study(const StudyConfig& cfg);

void write_csv(const StudyReport& report, const std::string& path);

}  // namespace ifelab
