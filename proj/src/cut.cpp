#include "ifelab/cut.hpp"

#include <algorithm>

namespace ifelab {

namespace {

// Sign changes of the level set along an edge, sampled densely enough for
// the H1 check (a curve satisfying H1-H3 on an admissible mesh crosses an
// edge at most once, so any sampled double crossing is a violation).
int count_crossings(const InterfaceCurve& curve, const Vec2& a, const Vec2& b) {
    constexpr int kSamples = 32;
    int crossings = 0;
    double prev = curve.level_set(a);
    for (int k = 1; k <= kSamples; ++k) {
        double t = double(k) / kSamples;
        double val = curve.level_set(a + t * (b - a));
        if ((prev < 0.0 && val > 0.0) || (prev > 0.0 && val < 0.0)) ++crossings;
        if (val != 0.0) prev = val;
    }
    return crossings;
}

}  // namespace

Vec2 edge_root(const InterfaceCurve& curve, const Vec2& a, const Vec2& b) {
    double fa = curve.level_set(a);
    double fb = curve.level_set(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa < 0.0) == (fb < 0.0))
        throw RootFindFailure("edge_root: no sign change bracketed on edge");

    // Bisection to a machine-level bracket, then one Newton polish.
    double lo = 0.0, hi = 1.0;
    double flo = fa;
    for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = curve.level_set(a + mid * (b - a));
        if (fm == 0.0) { lo = hi = mid; break; }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double t = 0.5 * (lo + hi);
    Vec2 dir = b - a;
    Vec2 p = a + t * dir;
    double dphi = curve.grad_level_set(p).dot(dir);
    if (dphi != 0.0) {
        t -= curve.level_set(p) / dphi;
        t = std::clamp(t, 0.0, 1.0);
        p = a + t * dir;
    }
    return p;
}

Classification classify_elements(const Mesh& mesh, const InterfaceCurve& curve) {
    Classification cls;
    cls.edge.resize(mesh.edges.size());
    cls.element.resize(mesh.elements.size());

    const double vertex_tol = 1e-12 * mesh.h;
    // Vertex values scaled against the local level-set gradient.
    for (const Vec2& v : mesh.vertices) {
        double g = std::max(curve.grad_level_set(v).norm(), 1.0);
        if (std::abs(curve.level_set(v)) < vertex_tol * g)
            throw HypothesisViolation("interface passes through a mesh vertex");
    }

    std::vector<int> edge_crossings(mesh.edges.size());
    for (size_t i = 0; i < mesh.edges.size(); ++i) {
        const MeshEdge& e = mesh.edges[i];
        int c = count_crossings(curve, mesh.vertices[e.v0], mesh.vertices[e.v1]);
        if (c > 1)
            throw HypothesisViolation("interface crosses one edge more than once (H1)");
        edge_crossings[i] = c;
        if (c == 1) {
            cls.edge[i] = ElemClass::Interface;
        } else {
            double s = curve.level_set(e.midpoint);
            cls.edge[i] = s < 0.0 ? ElemClass::Minus : ElemClass::Plus;
        }
    }

    for (size_t t = 0; t < mesh.elements.size(); ++t) {
        const MeshElement& el = mesh.elements[t];
        int cuts = 0;
        for (int k = 0; k < el.n; ++k) cuts += edge_crossings[el.e[k]];
        if (cuts == 0) {
            double s = curve.level_set(mesh.centroid(int(t)));
            // Sign must be uniform over the closure; spot-check the vertices.
            for (int k = 0; k < el.n; ++k) {
                double sv = curve.level_set(mesh.vertex(int(t), k));
                if ((sv < 0.0) != (s < 0.0))
                    throw HypothesisViolation(
                        "sign change over element closure without two edge cuts (H2)");
            }
            cls.element[t] = s < 0.0 ? ElemClass::Minus : ElemClass::Plus;
        } else if (cuts == 2) {
            cls.element[t] = ElemClass::Interface;
        } else {
            throw HypothesisViolation(
                "interface cuts an element boundary at an odd number of points (H2)");
        }
    }
    return cls;
}

CutInfo compute_cut(const Mesh& mesh, int element_id, const InterfaceCurve& curve,
                    PartitionMode partition_mode, FluxMode flux_mode) {
    const MeshElement& el = mesh.elements[element_id];
    CutInfo cut;
    cut.element_id = element_id;
    cut.partition_mode = partition_mode;
    cut.flux_mode = flux_mode;

    for (int k = 0; k < el.n; ++k) {
        Vec2 a = mesh.vertex(element_id, k);
        Vec2 b = mesh.vertex(element_id, (k + 1) % el.n);
        double fa = curve.level_set(a), fb = curve.level_set(b);
        if ((fa < 0.0) != (fb < 0.0)) {
            Vec2 p = edge_root(curve, a, b);
            if (cut.cut_edge_a < 0) {
                cut.cut_edge_a = k;
                cut.D = p;
            } else if (cut.cut_edge_b < 0) {
                cut.cut_edge_b = k;
                cut.E = p;
            } else {
                throw HypothesisViolation("more than two cut edges on one element");
            }
            cut.edge_class[k] = EdgeClass::Split;
            cut.split_point[k] = p;
        }
    }
    if (cut.cut_edge_b < 0)
        throw HypothesisViolation("interface element with fewer than two cut edges");

    for (int k = 0; k < el.n; ++k) {
        if (k == cut.cut_edge_a || k == cut.cut_edge_b) continue;
        Vec2 mid = (mesh.vertex(element_id, k) + mesh.vertex(element_id, (k + 1) % el.n)) * 0.5;
        cut.edge_class[k] =
            curve.level_set(mid) < 0.0 ? EdgeClass::Minus : EdgeClass::Plus;
    }

    // Chord normal oriented so the level set increases along it.
    Vec2 n = (cut.E - cut.D).perp().normalized();
    Vec2 mid = (cut.D + cut.E) * 0.5;
    if (n.dot(curve.grad_level_set(mid)) < 0.0) n = -n;
    cut.nbar = n;

    cut.tD = curve.param_of(cut.D);
    cut.tE = curve.param_near(curve.param_of(cut.E), cut.tD);

    if (flux_mode == FluxMode::CurveMidpoint) {
        cut.F = curve.point(0.5 * (cut.tD + cut.tE));
        cut.vF = curve.normal_at(cut.F);
    } else {
        cut.F = mid;
        cut.vF = n;
    }
    return cut;
}

}  // namespace ifelab
