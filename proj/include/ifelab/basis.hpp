#pragma once

#include <vector>

#include "ifelab/mesh.hpp"
#include "ifelab/poly.hpp"

namespace ifelab {

// Monomial basis of the local polynomial space, in frame coordinates:
// CR spans {1,u,v}, rotated-Q1 spans {1,u,v,u^2-v^2}.
std::vector<Poly2> poly_space(Family family);

inline int space_dim(Family family) { return family == Family::CR ? 3 : 4; }

// Shape functions of one element with edge-average degrees of freedom.
struct ShapeSet {
    int element_id = -1;
    Family family = Family::CR;
    Frame frame;
    std::vector<Poly2> shape;  // shape[i] dual to edge i of the element
};

// Average of a frame-local polynomial over a straight physical segment.
double edge_average(const Poly2& poly, const Frame& frame, const Vec2& a, const Vec2& b);

ShapeSet standard_shapes(const Mesh& mesh, int element_id, Family family);

double eval_shape(const ShapeSet& s, int i, const Vec2& X);
Vec2 grad_shape(const ShapeSet& s, int i, const Vec2& X);

}  // namespace ifelab
