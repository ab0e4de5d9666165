#include "ifelab/basis.hpp"

#include <Eigen/Dense>

namespace ifelab {

namespace {

// 3-point Gauss-Legendre on [0,1], exact through degree 5; the restriction
// of any local-space polynomial to a straight segment has degree <= 2.
constexpr double kG3x[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
constexpr double kG3w[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

}  // namespace

std::vector<Poly2> poly_space(Family family) {
    std::vector<Poly2> b;
    b.push_back(Poly2::constant(1.0));
    b.push_back(Poly2::linear(0, 1, 0));
    b.push_back(Poly2::linear(0, 0, 1));
    if (family == Family::RQ1) {
        Poly2 q(2);
        q.at(2, 0) = 1.0;
        q.at(0, 2) = -1.0;
        b.push_back(q);
    }
    return b;
}

double edge_average(const Poly2& poly, const Frame& frame, const Vec2& a, const Vec2& b) {
    Vec2 la = frame.to_local(a), lb = frame.to_local(b);
    double avg = 0.0;
    for (int k = 0; k < 3; ++k)
        avg += kG3w[k] * poly.eval(la + kG3x[k] * (lb - la));
    return avg;
}

ShapeSet standard_shapes(const Mesh& mesh, int element_id, Family family) {
    const MeshElement& el = mesh.elements[element_id];
    if ((family == Family::CR) != (el.n == 3))
        throw std::invalid_argument("standard_shapes: family does not match cell type");

    ShapeSet s;
    s.element_id = element_id;
    s.family = family;
    s.frame.center = mesh.centroid(element_id);
    double diam = 0.0;
    for (int k = 0; k < el.n; ++k) diam = std::max(diam, mesh.edges[el.e[k]].length);
    s.frame.scale = diam;

    const std::vector<Poly2> mono = poly_space(family);
    const int m = int(mono.size());
    Eigen::MatrixXd V(m, m);
    for (int j = 0; j < m; ++j) {  // row j: DOF on edge j
        Vec2 a = mesh.vertex(element_id, j);
        Vec2 b = mesh.vertex(element_id, (j + 1) % el.n);
        for (int k = 0; k < m; ++k) V(j, k) = edge_average(mono[k], s.frame, a, b);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
    if (!lu.isInvertible())
        throw SingularBasis("standard_shapes: singular DOF/Vandermonde system");
    Eigen::MatrixXd C = lu.inverse();  // column i: coefficients of shape i

    s.shape.reserve(m);
    for (int i = 0; i < m; ++i) {
        Poly2 p(family == Family::RQ1 ? 2 : 1);
        for (int k = 0; k < m; ++k) p.axpy(C(k, i), mono[k]);
        s.shape.push_back(p);
    }
    return s;
}

double eval_shape(const ShapeSet& s, int i, const Vec2& X) {
    return s.shape[i].eval(s.frame.to_local(X));
}

Vec2 grad_shape(const ShapeSet& s, int i, const Vec2& X) {
    Vec2 g = s.shape[i].grad(s.frame.to_local(X));
    return g / s.frame.scale;
}

}  // namespace ifelab
