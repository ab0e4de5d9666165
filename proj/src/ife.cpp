#include "ifelab/ife.hpp"

#include <algorithm>
#include <cmath>

namespace ifelab {

Mat2 curve_matrix(const Vec2& n, double ratio) {
    Mat2 m;
    m.a11 = n.y * n.y + ratio * n.x * n.x;
    m.a12 = (ratio - 1.0) * n.x * n.y;
    m.a21 = m.a12;
    m.a22 = n.x * n.x + ratio * n.y * n.y;
    return m;
}

Mat2 chord_matrix(const Vec2& nbar, const Vec2& vF, double ratio) {
    double pre = nbar.dot(vF);
    Mat2 m;
    m.a11 = (nbar.y * vF.y + ratio * nbar.x * vF.x) / pre;
    m.a12 = ((ratio - 1.0) * nbar.x * vF.y) / pre;
    m.a21 = ((ratio - 1.0) * nbar.y * vF.x) / pre;
    m.a22 = (nbar.x * vF.x + ratio * nbar.y * vF.y) / pre;
    return m;
}

JumpMatrices jump_matrices(const CutInfo& cut, double beta_minus, double beta_plus) {
    if (cut.nbar.dot(cut.vF) <= 0.0)
        throw DegenerateGeometry("jump_matrices: nbar . v(F) <= 0");
    JumpMatrices jm;
    jm.rho = beta_minus / beta_plus;
    jm.M_minus = curve_matrix(cut.vF, jm.rho);
    jm.M_plus = curve_matrix(cut.vF, 1.0 / jm.rho);
    jm.Mbar_minus = chord_matrix(cut.nbar, cut.vF, jm.rho);
    jm.Mbar_plus = chord_matrix(cut.nbar, cut.vF, 1.0 / jm.rho);
    return jm;
}

namespace {

// (1/|b_i|) * integral of L over the part of edge `k` on the given chord side.
double chord_average_on_side(const Mesh& mesh, const CutInfo& cut, int k, bool minus_side) {
    const MeshElement& el = mesh.elements[cut.element_id];
    Vec2 A = mesh.vertex(cut.element_id, k);
    Vec2 B = mesh.vertex(cut.element_id, (k + 1) % el.n);
    double blen = mesh.edges[el.e[k]].length;
    double want = minus_side ? -1.0 : 1.0;

    if (cut.edge_class[k] == EdgeClass::Split) {
        const Vec2& S = cut.split_point[k];
        Vec2 end = (cut.chord_value(A) * want > 0.0) ? A : B;
        Vec2 mid = (S + end) * 0.5;
        return (end - S).norm() * cut.chord_value(mid) / blen;
    }
    bool edge_minus = cut.edge_class[k] == EdgeClass::Minus;
    if (edge_minus != minus_side) return 0.0;
    return cut.chord_value((A + B) * 0.5);  // L is linear
}

Poly2 chord_poly(const CutInfo& cut, const Frame& frame) {
    return Poly2::linear(cut.nbar.dot(frame.center - cut.D),
                         frame.scale * cut.nbar.x, frame.scale * cut.nbar.y);
}

}  // namespace

SMSystem build_sm_system(const Mesh& mesh, const CutInfo& cut, const ShapeSet& shapes,
                         double beta_minus, double beta_plus,
                         const std::vector<double>& dof_values) {
    const MeshElement& el = mesh.elements[cut.element_id];
    const int n = el.n;

    int covered_minus = 0, covered_plus = 0;
    for (int k = 0; k < n; ++k) {
        if (cut.edge_class[k] != EdgeClass::Plus) ++covered_minus;
        if (cut.edge_class[k] != EdgeClass::Minus) ++covered_plus;
    }

    SMSystem sys;
    sys.small_is_minus = covered_minus <= covered_plus;
    double beta_small = sys.small_is_minus ? beta_minus : beta_plus;
    double beta_other = sys.small_is_minus ? beta_plus : beta_minus;
    double rho_eff = beta_small / beta_other;
    double nv = cut.nbar.dot(cut.vF);
    if (nv <= 0.0) throw DegenerateGeometry("build_sm_system: nbar . v(F) <= 0");
    sys.k = (1.0 / rho_eff - 1.0) / nv;

    EdgeClass other_class = sys.small_is_minus ? EdgeClass::Plus : EdgeClass::Minus;
    for (int k = 0; k < n; ++k) {
        if (cut.edge_class[k] == other_class) {
            sys.gamma_dot_v_other +=
                grad_shape(shapes, k, cut.F).dot(cut.vF) * dof_values[k];
        } else {
            sys.small_edges.push_back(k);
            sys.gamma.push_back(grad_shape(shapes, k, cut.F).dot(cut.vF));
            sys.delta.push_back(chord_average_on_side(mesh, cut, k, sys.small_is_minus));
        }
    }
    for (size_t i = 0; i < sys.small_edges.size(); ++i) {
        sys.v_small.push_back(dof_values[sys.small_edges[i]]);
        sys.b.push_back(sys.v_small[i] - sys.k * sys.delta[i] * sys.gamma_dot_v_other);
    }
    return sys;
}

std::pair<std::vector<double>, double> solve_sm(const SMSystem& sys) {
    double gtd = 0.0, gtv = 0.0;
    for (size_t i = 0; i < sys.gamma.size(); ++i) {
        gtd += sys.gamma[i] * sys.delta[i];
        gtv += sys.gamma[i] * sys.v_small[i];
    }
    double denom = 1.0 + sys.k * gtd;
    if (std::abs(denom) < 1e-10)
        throw NearSingular("solve_sm: 1 + k gamma^T delta nearly vanishes");

    // Equivalent to c = b - k (gamma^T b) delta / denom, but evaluating c0
    // first keeps the result accurate when k is large (extreme coefficient
    // contrast): the rank-one correction then never amplifies roundoff by k.
    double c0 = sys.k * (gtv + sys.gamma_dot_v_other) / denom;
    std::vector<double> c(sys.v_small.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = sys.v_small[i] - c0 * sys.delta[i];
    return {std::move(c), c0};
}

IfeShapeSet ife_shape_functions(const Mesh& mesh, const CutInfo& cut, const ShapeSet& shapes,
                                double beta_minus, double beta_plus,
                                const InterfaceCurve& curve) {
    const MeshElement& el = mesh.elements[cut.element_id];
    const int n = el.n;

    IfeShapeSet set;
    set.cut = cut;
    set.frame = shapes.frame;
    set.family = shapes.family;
    set.curve = &curve;

    const Poly2 L = chord_poly(cut, shapes.frame);
    std::vector<double> v(n, 0.0);
    for (int i = 0; i < n; ++i) {
        v.assign(n, 0.0);
        v[i] = 1.0;
        SMSystem sys = build_sm_system(mesh, cut, shapes, beta_minus, beta_plus, v);
        auto [c, c0] = solve_sm(sys);

        Poly2 other(set.family == Family::RQ1 ? 2 : 1);
        for (size_t j = 0; j < sys.small_edges.size(); ++j)
            other.axpy(c[j], shapes.shape[sys.small_edges[j]]);
        EdgeClass other_class = sys.small_is_minus ? EdgeClass::Plus : EdgeClass::Minus;
        for (int k = 0; k < n; ++k)
            if (cut.edge_class[k] == other_class) other.axpy(v[k], shapes.shape[k]);

        Poly2 small = other;
        small.axpy(c0, L);

        PiecewiseShape ps;
        ps.c0 = c0;
        if (sys.small_is_minus) {
            ps.minus = std::move(small);
            ps.plus = std::move(other);
        } else {
            ps.minus = std::move(other);
            ps.plus = std::move(small);
        }
        set.phi.push_back(std::move(ps));
    }
    return set;
}

PiecewiseShape combine_ife(const IfeShapeSet& set, const std::vector<double>& dofs) {
    PiecewiseShape out;
    out.minus = Poly2(set.family == Family::RQ1 ? 2 : 1);
    out.plus = out.minus;
    for (size_t i = 0; i < set.phi.size(); ++i) {
        out.minus.axpy(dofs[i], set.phi[i].minus);
        out.plus.axpy(dofs[i], set.phi[i].plus);
        out.c0 += dofs[i] * set.phi[i].c0;
    }
    return out;
}

double eval_ife(const IfeShapeSet& set, const PiecewiseShape& s, const Vec2& X) {
    const Poly2& p = set.on_minus_side(X) ? s.minus : s.plus;
    return p.eval(set.frame.to_local(X));
}

Vec2 grad_ife(const IfeShapeSet& set, const PiecewiseShape& s, const Vec2& X) {
    const Poly2& p = set.on_minus_side(X) ? s.minus : s.plus;
    return p.grad(set.frame.to_local(X)) / set.frame.scale;
}

namespace {

IdentityResiduals check_identities_at(const Mesh& mesh, const IfeShapeSet& set,
                                      double beta_minus, double beta_plus,
                                      const Vec2& Xbar) {
    const CutInfo& cut = set.cut;
    const MeshElement& el = mesh.elements[cut.element_id];
    const int n = el.n;

    IdentityResiduals res;
    for (int side = 0; side < 2; ++side) {
        const bool s_minus = (side == 0);
        double ratio = s_minus ? beta_minus / beta_plus : beta_plus / beta_minus;
        Mat2 A = chord_matrix(cut.nbar, cut.vF, ratio).minus_identity();
        EdgeClass opp = s_minus ? EdgeClass::Plus : EdgeClass::Minus;

        // Edge-wise constant couplings.
        std::vector<Vec2> couple(n, Vec2{0, 0});
        for (int k = 0; k < n; ++k) {
            if (cut.edge_class[k] == opp) {
                couple[k] = A.apply_transpose(mesh.edges[el.e[k]].midpoint - Xbar);
            } else if (cut.edge_class[k] == EdgeClass::Split) {
                Vec2 va = mesh.vertex(cut.element_id, k);
                Vec2 vb = mesh.vertex(cut.element_id, (k + 1) % n);
                const Vec2& S = cut.split_point[k];
                double want = s_minus ? 1.0 : -1.0;  // segment on the opposite side
                Vec2 end = (cut.chord_value(va) * want > 0.0) ? va : vb;
                double frac = (end - S).norm() / mesh.edges[el.e[k]].length;
                couple[k] = A.apply_transpose(((S + end) * 0.5 - Xbar) * frac);
            }
        }

        // Sample grid over the element bounding box clipped to this side,
        // plus the cut points and the flux point.
        std::vector<Vec2> samples;
        Vec2 lo = mesh.vertex(cut.element_id, 0), hi = lo;
        for (int k = 1; k < n; ++k) {
            Vec2 p = mesh.vertex(cut.element_id, k);
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
        }
        auto inside_element = [&](const Vec2& p) {
            for (int k = 0; k < n; ++k) {
                Vec2 a = mesh.vertex(cut.element_id, k);
                Vec2 b = mesh.vertex(cut.element_id, (k + 1) % n);
                if ((b - a).cross(p - a) < -1e-14) return false;
            }
            return true;
        };
        for (int ix = 0; ix < 5; ++ix)
            for (int iy = 0; iy < 5; ++iy) {
                Vec2 p{lo.x + (hi.x - lo.x) * ix / 4.0, lo.y + (hi.y - lo.y) * iy / 4.0};
                if (inside_element(p) && set.on_minus_side(p) == s_minus)
                    samples.push_back(p);
            }
        samples.push_back(cut.D);
        samples.push_back(cut.E);
        samples.push_back(cut.F);

        for (const Vec2& X : samples) {
            Vec2 loc = set.frame.to_local(X);
            Vec2 r0{0, 0};
            Vec2 r1x{0, 0}, r1y{0, 0};
            for (int k = 0; k < n; ++k) {
                const Poly2& piece = s_minus ? set.phi[k].minus : set.phi[k].plus;
                double val = piece.eval(loc);
                Vec2 g = piece.grad(loc) / set.frame.scale;
                Vec2 MX = mesh.edges[el.e[k]].midpoint - X;
                r0 += (MX + couple[k]) * val;
                r1x += (MX + couple[k]) * g.x;
                r1y += (MX + couple[k]) * g.y;
            }
            r1x.x -= 1.0;
            r1y.y -= 1.0;
            res.identity0 = std::max(res.identity0, r0.norm());
            res.identity1 = std::max(res.identity1, std::max(r1x.norm(), r1y.norm()));
        }
    }
    return res;
}

}  // namespace

IdentityResiduals check_identities(const Mesh& mesh, const IfeShapeSet& set,
                                   double beta_minus, double beta_plus,
                                   const Vec2& Xbar_first, const Vec2& Xbar_second) {
    IdentityResiduals a = check_identities_at(mesh, set, beta_minus, beta_plus, Xbar_first);
    IdentityResiduals b = check_identities_at(mesh, set, beta_minus, beta_plus, Xbar_second);
    return {std::max(a.identity0, b.identity0), std::max(a.identity1, b.identity1)};
}

}  // namespace ifelab
