#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ifelab/basis.hpp"
#include "ifelab/cut.hpp"
#include "ifelab/curve.hpp"

namespace ifelab {

// One piece of a region boundary, traversed a -> b. Arc pieces follow the
// curve parametrization from t0 to t1 (t1 may be smaller than t0).
struct BoundaryPiece {
    bool is_arc = false;
    Vec2 a, b;
    const InterfaceCurve* curve = nullptr;
    double t0 = 0.0, t1 = 0.0;

    static BoundaryPiece segment(const Vec2& a, const Vec2& b) {
        BoundaryPiece p;
        p.a = a;
        p.b = b;
        return p;
    }
    static BoundaryPiece arc(const InterfaceCurve& c, double t0, double t1) {
        BoundaryPiece p;
        p.is_arc = true;
        p.curve = &c;
        p.t0 = t0;
        p.t1 = t1;
        p.a = c.point(t0);
        p.b = c.point(t1);
        return p;
    }
};

// Closed counterclockwise region bounded by segments and at most a few arcs.
struct Region {
    std::vector<BoundaryPiece> pieces;
    void validate() const;  // endpoint chaining, throws OpenBoundary
};

// Adaptive composite 7-point Gauss-Legendre on [a,b] to relative 1e-12.
double adaptive_gauss_1d(const std::function<double(double)>& f, double a, double b);

// Exact integral of a frame-local polynomial over the region via Green's
// theorem (boundary reduction of the x-antiderivative); arc pieces use
// adaptive 1D quadrature on the parametrization.
double integrate_poly_region(const Region& region, const Poly2& poly, const Frame& frame);

// Integral of a smooth non-polynomial integrand: the region is fanned into
// (curved) triangles from its boundary centroid and each triangle is mapped
// by a blended parametrization with a tensor Gauss rule of the given order.
// Curved triangles are refined once toward the arc.
double integrate_function_region(const Region& region,
                                 const std::function<double(const Vec2&)>& f,
                                 int order = 8);

double region_area(const Region& region);

Region element_region(const Mesh& mesh, int element_id);

// Subelements of an interface element: (minus, plus). Curve mode bounds them
// by the interface arc, line mode by the chord DE.
std::pair<Region, Region> split_element(const Mesh& mesh, const CutInfo& cut,
                                        PartitionMode mode, const InterfaceCurve& curve);

// Integral over an edge of a per-side pair of frame-local polynomials,
// splitting exactly at the cut point when the edge is cut.
double integrate_edge_split(const Mesh& mesh, int element_id, int local_edge,
                            const CutInfo* cut, const Poly2& minus_poly,
                            const Poly2& plus_poly, const Frame& frame);

}  // namespace ifelab
