#include "ifelab/system.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace ifelab {

namespace {

// Physical-gradient product of two frame-local polynomials, as a frame-local
// polynomial scaled so that integrate_poly_region returns the physical
// integral of grad(p) . grad(q).
Poly2 grad_product(const Poly2& p, const Poly2& q, const Frame& frame) {
    Poly2 g = p.dx() * q.dx() + p.dy() * q.dy();
    return g * (1.0 / (frame.scale * frame.scale));
}

Eigen::MatrixXd element_stiffness(const std::vector<Poly2>& shapes, const Frame& frame,
                                  const Region& region, double beta) {
    int m = int(shapes.size());
    Eigen::MatrixXd K(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double v = beta * integrate_poly_region(region, grad_product(shapes[i], shapes[j], frame), frame);
            K(i, j) = v;
            K(j, i) = v;
        }
    return K;
}

double edge_average_of(const ScalarField& g, const Mesh& mesh, int edge_id) {
    const MeshEdge& e = mesh.edges[edge_id];
    Vec2 a = mesh.vertices[e.v0], b = mesh.vertices[e.v1];
    double integral =
        adaptive_gauss_1d([&](double t) { return g(a + t * (b - a)); }, 0.0, 1.0);
    return integral;  // unit parameter interval, average over the edge
}

}  // namespace

SparseSystem assemble(const Mesh& mesh, const Classification& cls,
                      const InterfaceCurve& curve, const AssemblyConfig& cfg,
                      const ScalarField& source, const ScalarField& boundary) {
    const int ndof = int(mesh.edges.size());
    SparseSystem sys;
    sys.rhs = Eigen::VectorXd::Zero(ndof);
    sys.constrained.assign(ndof, 0);
    sys.constrained_val = Eigen::VectorXd::Zero(ndof);

    for (int e = 0; e < ndof; ++e) {
        if (!mesh.edges[e].boundary) continue;
        sys.constrained[e] = 1;
        sys.constrained_val[e] = edge_average_of(boundary, mesh, e);
    }

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(size_t(ndof) * 8);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ndof);

    // Cell congruence classes share one reference stiffness per coefficient.
    std::map<std::pair<int, long long>, Eigen::MatrixXd> stiffness_cache;

    auto scatter = [&](int elem, const Eigen::MatrixXd& K, const Eigen::VectorXd& F) {
        const MeshElement& el = mesh.elements[elem];
        for (int i = 0; i < el.n; ++i) {
            int gi = el.e[i];
            if (sys.constrained[gi]) continue;
            rhs[gi] += F[i];
            for (int j = 0; j < el.n; ++j) {
                int gj = el.e[j];
                if (sys.constrained[gj])
                    rhs[gi] -= K(i, j) * sys.constrained_val[gj];
                else
                    trips.emplace_back(gi, gj, K(i, j));
            }
        }
    };

    try {
        for (int t = 0; t < int(mesh.elements.size()); ++t) {
            const MeshElement& el = mesh.elements[t];
            Family fam = el.n == 3 ? Family::CR : Family::RQ1;
            if ((fam == Family::CR) != (cfg.family == Family::CR))
                throw AssemblyError("assemble: family does not match mesh cell type");
            ShapeSet shapes = standard_shapes(mesh, t, fam);

            if (cls.element[t] != ElemClass::Interface) {
                double beta =
                    cls.element[t] == ElemClass::Minus ? cfg.beta_minus : cfg.beta_plus;
                int parity = (mesh.cell_type == CellType::Triangular) ? (t & 1) : 0;
                auto key = std::make_pair(parity, llround(beta * 1e9));
                auto it = stiffness_cache.find(key);
                if (it == stiffness_cache.end()) {
                    it = stiffness_cache
                             .emplace(key, element_stiffness(shapes.shape, shapes.frame,
                                                             element_region(mesh, t), beta))
                             .first;
                }
                Eigen::VectorXd F(el.n);
                Region reg = element_region(mesh, t);
                for (int i = 0; i < el.n; ++i) {
                    const Poly2& p = shapes.shape[i];
                    const Frame& fr = shapes.frame;
                    F[i] = integrate_function_region(
                        reg, [&](const Vec2& X) { return source(X) * p.eval(fr.to_local(X)); });
                }
                scatter(t, it->second, F);
            } else {
                CutInfo cut = compute_cut(mesh, t, curve, cfg.partition, cfg.flux);
                IfeShapeSet ife = ife_shape_functions(mesh, cut, shapes, cfg.beta_minus,
                                                      cfg.beta_plus, curve);
                auto [rm, rp] = split_element(mesh, cut, cfg.partition, curve);

                Eigen::MatrixXd K(el.n, el.n);
                Eigen::VectorXd F(el.n);
                for (int i = 0; i < el.n; ++i) {
                    for (int j = i; j < el.n; ++j) {
                        double v = cfg.beta_minus *
                                       integrate_poly_region(
                                           rm, grad_product(ife.phi[i].minus, ife.phi[j].minus, ife.frame),
                                           ife.frame) +
                                   cfg.beta_plus *
                                       integrate_poly_region(
                                           rp, grad_product(ife.phi[i].plus, ife.phi[j].plus, ife.frame),
                                           ife.frame);
                        K(i, j) = v;
                        K(j, i) = v;
                    }
                    const Frame& fr = ife.frame;
                    const Poly2& pm = ife.phi[i].minus;
                    const Poly2& pp = ife.phi[i].plus;
                    F[i] = integrate_function_region(
                               rm, [&](const Vec2& X) { return source(X) * pm.eval(fr.to_local(X)); }) +
                           integrate_function_region(
                               rp, [&](const Vec2& X) { return source(X) * pp.eval(fr.to_local(X)); });
                }
                scatter(t, K, F);
            }
        }
    } catch (const HypothesisViolation&) {
        throw;
    } catch (const std::runtime_error& err) {
        throw AssemblyError(std::string("assemble: ") + err.what());
    }

    for (int e = 0; e < ndof; ++e) {
        if (sys.constrained[e]) {
            trips.emplace_back(e, e, 1.0);
            rhs[e] = sys.constrained_val[e];
        }
    }

    sys.A.resize(ndof, ndof);
    sys.A.setFromTriplets(trips.begin(), trips.end());
    sys.rhs = rhs;
    return sys;
}

SolveResult solve(const SparseSystem& sys) {
    const int n = int(sys.rhs.size());
    const int max_iter = int(20.0 * std::sqrt(double(n))) + 1;

    Eigen::VectorXd dinv(n);
    for (int i = 0; i < n; ++i) {
        double d = sys.A.coeff(i, i);
        dinv[i] = d > 0.0 ? 1.0 / d : 1.0;
    }

    SolveResult out;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = sys.rhs;
    double bnorm = sys.rhs.norm();
    if (bnorm == 0.0) {
        out.dofs = x;
        return out;
    }
    Eigen::VectorXd z = dinv.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    int it = 0;
    for (; it < max_iter; ++it) {
        if (r.norm() <= 1e-12 * bnorm) break;
        Eigen::VectorXd Ap = sys.A * p;
        double alpha = rz / p.dot(Ap);
        x += alpha * p;
        r -= alpha * Ap;
        z = dinv.cwiseProduct(r);
        double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    out.iterations = it;
    out.residual = r.norm() / bnorm;
    if (out.residual > 1e-12)
        throw NoConvergence("solve: PCG did not reach tolerance, residual " +
                            std::to_string(out.residual));
    out.dofs = x;
    return out;
}

}  // namespace ifelab
