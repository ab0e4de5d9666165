#include "ifelab/quad.hpp"

#include <algorithm>
#include <cmath>

namespace ifelab {

namespace {

constexpr double kG3x[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
constexpr double kG3w[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// 6-point Gauss-Legendre on [-1,1], exact through degree 11.
constexpr double kG6x[6] = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                            0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
constexpr double kG6w[6] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                            0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

// 7-point Gauss-Legendre on [-1,1].
constexpr double kG7x[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                            0.0,
                            0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr double kG7w[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                            0.4179591836734694,
                            0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

double gauss7(const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int k = 0; k < 7; ++k) s += kG7w[k] * f(mid + half * kG7x[k]);
    return s * half;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double whole, int depth) {
    double mid = 0.5 * (a + b);
    double left = gauss7(f, a, mid), right = gauss7(f, mid, b);
    double refined = left + right;
    if (depth >= 10 || std::abs(refined - whole) <= 1e-12 * (std::abs(refined) + 1e-300))
        return refined;
    return adaptive_rec(f, a, mid, left, depth + 1) +
           adaptive_rec(f, mid, b, right, depth + 1);
}

std::vector<std::pair<double, double>> gauss_rule_01(int order) {
    // Nodes/weights on [0,1]. Orders used: 8 for region tessellation.
    static const double x8[8] = {-0.9602898564975363, -0.7966664774136267,
                                 -0.5255324099163290, -0.1834346424956498,
                                 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
    static const double w8[8] = {0.1012285362903763, 0.2223810344533745,
                                 0.3137066458778873, 0.3626837833783620,
                                 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    std::vector<std::pair<double, double>> rule;
    if (order == 8) {
        for (int k = 0; k < 8; ++k) rule.emplace_back(0.5 * (1.0 + x8[k]), 0.5 * w8[k]);
    } else if (order == 7) {
        for (int k = 0; k < 7; ++k) rule.emplace_back(0.5 * (1.0 + kG7x[k]), 0.5 * kG7w[k]);
    } else {
        for (int k = 0; k < 6; ++k) rule.emplace_back(0.5 * (1.0 + kG6x[k]), 0.5 * kG6w[k]);
    }
    return rule;
}

Vec2 piece_point(const BoundaryPiece& p, double s) {
    if (!p.is_arc) return p.a + s * (p.b - p.a);
    return p.curve->point(p.t0 + s * (p.t1 - p.t0));
}

Vec2 piece_velocity(const BoundaryPiece& p, double s) {
    if (!p.is_arc) return p.b - p.a;
    return p.curve->velocity(p.t0 + s * (p.t1 - p.t0)) * (p.t1 - p.t0);
}

}  // namespace

void Region::validate() const {
    if (pieces.empty()) throw OpenBoundary("region has no boundary pieces");
    for (size_t i = 0; i < pieces.size(); ++i) {
        const Vec2& b = pieces[i].b;
        const Vec2& a = pieces[(i + 1) % pieces.size()].a;
        if ((b - a).norm() > 1e-12 * (1.0 + b.norm()))
            throw OpenBoundary("region boundary does not chain");
    }
}

double adaptive_gauss_1d(const std::function<double(double)>& f, double a, double b) {
    return adaptive_rec(f, a, b, gauss7(f, a, b), 0);
}

double integrate_poly_region(const Region& region, const Poly2& poly, const Frame& frame) {
    region.validate();
    const Poly2 P = poly.antiderivative_x();
    double total = 0.0;
    for (const BoundaryPiece& piece : region.pieces) {
        if (!piece.is_arc) {
            Vec2 la = frame.to_local(piece.a), lb = frame.to_local(piece.b);
            double dy = lb.y - la.y;
            if (dy == 0.0) continue;
            double s = 0.0;
            for (int k = 0; k < 6; ++k) {
                double q = 0.5 * (1.0 + kG6x[k]);
                s += 0.5 * kG6w[k] * P.eval(la + q * (lb - la));
            }
            total += s * dy;
        } else {
            const InterfaceCurve* c = piece.curve;
            auto f = [&](double t) {
                Vec2 loc = frame.to_local(c->point(t));
                return P.eval(loc) * (c->velocity(t).y / frame.scale);
            };
            total += adaptive_gauss_1d(f, piece.t0, piece.t1);
        }
    }
    return total * frame.scale * frame.scale;
}

double integrate_function_region(const Region& region,
                                 const std::function<double(const Vec2&)>& f, int order) {
    region.validate();
    Vec2 c{0, 0};
    for (const BoundaryPiece& p : region.pieces) c += p.a;
    c = c / double(region.pieces.size());

    auto rule = gauss_rule_01(order);
    double total = 0.0;
    for (const BoundaryPiece& piece : region.pieces) {
        // Curved triangles get one extra refinement toward the arc.
        int panels = piece.is_arc ? 2 : 1;
        for (int ps = 0; ps < panels; ++ps) {
            for (int pq = 0; pq < panels; ++pq) {
                for (const auto& [sq, sw] : rule) {
                    double s = (ps + sq) / panels;
                    Vec2 p = piece_point(piece, s);
                    Vec2 dp = piece_velocity(piece, s);
                    double base = dp.cross(c - p);  // CCW boundary, centroid to the left
                    for (const auto& [qq, qw] : rule) {
                        double q = (pq + qq) / panels;
                        Vec2 X = c + q * (p - c);
                        total += sw * qw / double(panels * panels) * f(X) * q * base;
                    }
                }
            }
        }
    }
    return total;
}

double region_area(const Region& region) {
    Frame unit;
    return integrate_poly_region(region, Poly2::constant(1.0), unit);
}

Region element_region(const Mesh& mesh, int element_id) {
    const MeshElement& el = mesh.elements[element_id];
    Region r;
    for (int k = 0; k < el.n; ++k)
        r.pieces.push_back(BoundaryPiece::segment(mesh.vertex(element_id, k),
                                                  mesh.vertex(element_id, (k + 1) % el.n)));
    return r;
}

std::pair<Region, Region> split_element(const Mesh& mesh, const CutInfo& cut,
                                        PartitionMode mode, const InterfaceCurve& curve) {
    const MeshElement& el = mesh.elements[cut.element_id];
    const int n = el.n;
    const int ka = cut.cut_edge_a, kb = cut.cut_edge_b;

    auto walk = [&](int edge_from, int edge_to, const Vec2& start, const Vec2& stop) {
        // Boundary path start -> vertices -> stop, CCW along the element.
        Region r;
        Vec2 prev = start;
        for (int k = edge_from; k != edge_to; k = (k + 1) % n) {
            Vec2 v = mesh.vertex(cut.element_id, (k + 1) % n);
            r.pieces.push_back(BoundaryPiece::segment(prev, v));
            prev = v;
        }
        r.pieces.push_back(BoundaryPiece::segment(prev, stop));
        return r;
    };

    Region a = walk(ka, kb, cut.D, cut.E);  // D ... E, divider closes E -> D
    Region b = walk(kb, ka, cut.E, cut.D);  // E ... D, divider closes D -> E
    if (mode == PartitionMode::Line) {
        a.pieces.push_back(BoundaryPiece::segment(cut.E, cut.D));
        b.pieces.push_back(BoundaryPiece::segment(cut.D, cut.E));
    } else {
        a.pieces.push_back(BoundaryPiece::arc(curve, cut.tE, cut.tD));
        b.pieces.push_back(BoundaryPiece::arc(curve, cut.tD, cut.tE));
    }

    // Side of region a from a vertex on its boundary path.
    Vec2 probe = mesh.vertex(cut.element_id, (ka + 1) % n);
    double side = (mode == PartitionMode::Line) ? cut.chord_value(probe)
                                                : curve.level_set(probe);
    if (side < 0.0) return {std::move(a), std::move(b)};
    return {std::move(b), std::move(a)};
}

double integrate_edge_split(const Mesh& mesh, int element_id, int local_edge,
                            const CutInfo* cut, const Poly2& minus_poly,
                            const Poly2& plus_poly, const Frame& frame) {
    const MeshElement& el = mesh.elements[element_id];
    Vec2 A = mesh.vertex(element_id, local_edge);
    Vec2 B = mesh.vertex(element_id, (local_edge + 1) % el.n);

    auto seg = [&](const Vec2& a, const Vec2& b, const Poly2& p) {
        double len = (b - a).norm();
        Vec2 la = frame.to_local(a), lb = frame.to_local(b);
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += kG3w[k] * p.eval(la + kG3x[k] * (lb - la));
        return s * len;
    };

    if (cut == nullptr) return seg(A, B, minus_poly);
    if (cut->edge_class[local_edge] == EdgeClass::Split) {
        const Vec2& S = cut->split_point[local_edge];
        const Poly2& pa = cut->chord_value(A) < 0.0 ? minus_poly : plus_poly;
        const Poly2& pb = cut->chord_value(B) < 0.0 ? minus_poly : plus_poly;
        return seg(A, S, pa) + seg(S, B, pb);
    }
    const Poly2& p =
        cut->edge_class[local_edge] == EdgeClass::Minus ? minus_poly : plus_poly;
    return seg(A, B, p);
}

}  // namespace ifelab
