#pragma once

#include <Eigen/Sparse>
#include <functional>

#include "ifelab/ife.hpp"

namespace ifelab {

// Global DOF = one edge average per mesh edge; the shared DOF realizes the
// weak (edge-average) continuity of the global space.
struct DofMap {
    int dof_count = 0;
    int global_dof(const Mesh& mesh, int element, int local_edge) const {
        return mesh.elements[element].e[local_edge];
    }
};

struct SparseSystem {
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd rhs;
    std::vector<char> constrained;    // Dirichlet flags per DOF
    Eigen::VectorXd constrained_val;
};

using ScalarField = std::function<double(const Vec2&)>;

struct AssemblyConfig {
    double beta_minus = 1.0;
    double beta_plus = 1.0;
    Family family = Family::RQ1;
    PartitionMode partition = PartitionMode::Curve;
    FluxMode flux = FluxMode::CurveMidpoint;
};

SparseSystem assemble(const Mesh& mesh, const Classification& cls,
                      const InterfaceCurve& curve, const AssemblyConfig& cfg,
                      const ScalarField& source, const ScalarField& boundary);

struct SolveResult {
    Eigen::VectorXd dofs;
    int iterations = 0;
    double residual = 0.0;
};

// Diagonally preconditioned conjugate gradients, relative residual 1e-12,
// iteration cap 20 sqrt(DOF). Dirichlet values are returned in place.
SolveResult solve(const SparseSystem& sys);

}  // namespace ifelab
