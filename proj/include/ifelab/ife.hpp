#pragma once

#include <vector>

#include "ifelab/basis.hpp"
#include "ifelab/cut.hpp"
#include "ifelab/quad.hpp"

namespace ifelab {

// 2x2 jump matrices coupling the gradients of the two polynomial pieces.
struct Mat2 {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

    Vec2 apply(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    Vec2 apply_transpose(const Vec2& v) const {
        return {a11 * v.x + a21 * v.y, a12 * v.x + a22 * v.y};
    }
    static Mat2 identity() { return {1, 0, 0, 1}; }
    Mat2 minus_identity() const { return {a11 - 1, a12, a21, a22 - 1}; }
};

struct JumpMatrices {
    Mat2 M_minus, M_plus;        // gradient coupling across the curve normal
    Mat2 Mbar_minus, Mbar_plus;  // chord-normal variant with the flux vector
    double rho = 1.0;            // beta_minus / beta_plus
};

// Curve-normal matrix M^s evaluated with unit normal n and ratio beta^s/beta^s'.
Mat2 curve_matrix(const Vec2& n, double ratio);
// Chord variant Mbar^s(F) built from nbar and v(F), prefactor 1/(nbar.v(F)).
Mat2 chord_matrix(const Vec2& nbar, const Vec2& vF, double ratio);

JumpMatrices jump_matrices(const CutInfo& cut, double beta_minus, double beta_plus);

// Rank-one (Sherman-Morrison) system (I + k delta gamma^T) c = b over the
// covered edges of the side with fewer of them.
struct SMSystem {
    double k = 0.0;
    std::vector<int> small_edges;  // local edge indices carrying unknowns
    std::vector<double> gamma;     // grad psi_i(F) . v(F), over small_edges
    std::vector<double> delta;     // (1/|b_i|) int_{b_i cap T_small} L ds
    std::vector<double> b;
    std::vector<double> v_small;   // DOF values over small_edges
    bool small_is_minus = true;
    double gamma_dot_v_other = 0.0;  // sum over other-side edges of gamma_i v_i
};

SMSystem build_sm_system(const Mesh& mesh, const CutInfo& cut, const ShapeSet& shapes,
                         double beta_minus, double beta_plus,
                         const std::vector<double>& dof_values);

// Closed-form solve; returns the unknown coefficients and c0.
std::pair<std::vector<double>, double> solve_sm(const SMSystem& sys);

// One immersed shape function as a pair of frame-local polynomial pieces.
struct PiecewiseShape {
    Poly2 minus, plus;
    double c0 = 0.0;
};

// All immersed shape functions of one interface element plus the context
// needed to evaluate them.
struct IfeShapeSet {
    CutInfo cut;
    Frame frame;
    Family family = Family::CR;
    const InterfaceCurve* curve = nullptr;
    std::vector<PiecewiseShape> phi;  // phi[i] dual to edge i

    // Points exactly on the dividing set evaluate the plus piece.
    bool on_minus_side(const Vec2& X) const {
        if (cut.partition_mode == PartitionMode::Curve) return curve->level_set(X) < 0.0;
        return cut.chord_value(X) < 0.0;
    }
};

IfeShapeSet ife_shape_functions(const Mesh& mesh, const CutInfo& cut, const ShapeSet& shapes,
                                double beta_minus, double beta_plus,
                                const InterfaceCurve& curve);

// IFE function with the given DOF vector, per-side pieces combined.
PiecewiseShape combine_ife(const IfeShapeSet& set, const std::vector<double>& dofs);

double eval_ife(const IfeShapeSet& set, const PiecewiseShape& s, const Vec2& X);
Vec2 grad_ife(const IfeShapeSet& set, const PiecewiseShape& s, const Vec2& X);
inline double eval_ife(const IfeShapeSet& set, int i, const Vec2& X) {
    return eval_ife(set, set.phi[i], X);
}
inline Vec2 grad_ife(const IfeShapeSet& set, int i, const Vec2& X) {
    return grad_ife(set, set.phi[i], X);
}

// Max residual of the vector identities satisfied by the immersed shape
// functions, sampled on a grid per side; the two entries are the residuals
// of the zeroth-order identity and of its derivative form.
struct IdentityResiduals {
    double identity0 = 0.0;
    double identity1 = 0.0;
};
IdentityResiduals check_identities(const Mesh& mesh, const IfeShapeSet& set,
                                   double beta_minus, double beta_plus,
                                   const Vec2& Xbar_first, const Vec2& Xbar_second);

}  // namespace ifelab
