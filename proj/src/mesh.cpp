#include "ifelab/mesh.hpp"

#include <map>
#include <utility>

namespace ifelab {

namespace {

int get_edge(std::map<std::pair<int, int>, int>& lookup, std::vector<MeshEdge>& edges,
             const std::vector<Vec2>& verts, int a, int b) {
    auto key = std::minmax(a, b);
    auto it = lookup.find(key);
    if (it != lookup.end()) {
        edges[it->second].boundary = false;  // seen twice -> interior
        return it->second;
    }
    MeshEdge e;
    e.v0 = a;
    e.v1 = b;
    e.boundary = true;  // flipped on second visit
    e.length = (verts[b] - verts[a]).norm();
    e.midpoint = (verts[a] + verts[b]) * 0.5;
    edges.push_back(e);
    int id = int(edges.size()) - 1;
    lookup.emplace(key, id);
    return id;
}

}  // namespace

Mesh build_mesh(const Rect& domain, int n_per_side, CellType cell_type) {
    if (n_per_side < 2) throw std::invalid_argument("build_mesh: n_per_side must be >= 2");
    if (domain.degenerate()) throw std::invalid_argument("build_mesh: degenerate domain");

    Mesh m;
    m.domain = domain;
    m.n_per_side = n_per_side;
    m.cell_type = cell_type;

    const int n = n_per_side;
    const double dx = domain.width / n;
    const double dy = domain.height / n;

    m.vertices.reserve((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            m.vertices.push_back({domain.x0 + i * dx, domain.y0 + j * dy});

    auto vid = [n](int i, int j) { return j * (n + 1) + i; };

    std::map<std::pair<int, int>, int> lookup;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            int ll = vid(i, j), lr = vid(i + 1, j);
            int ur = vid(i + 1, j + 1), ul = vid(i, j + 1);
            if (cell_type == CellType::Rectangular) {
                MeshElement el;
                el.n = 4;
                el.v = {ll, lr, ur, ul};
                for (int k = 0; k < 4; ++k)
                    el.e[k] = get_edge(lookup, m.edges, m.vertices, el.v[k], el.v[(k + 1) % 4]);
                m.elements.push_back(el);
            } else {
                // lower-left -> upper-right diagonal
                MeshElement lo, up;
                lo.n = up.n = 3;
                lo.v = {ll, lr, ur, -1};
                up.v = {ll, ur, ul, -1};
                for (int k = 0; k < 3; ++k)
                    lo.e[k] = get_edge(lookup, m.edges, m.vertices, lo.v[k], lo.v[(k + 1) % 3]);
                for (int k = 0; k < 3; ++k)
                    up.e[k] = get_edge(lookup, m.edges, m.vertices, up.v[k], up.v[(k + 1) % 3]);
                m.elements.push_back(lo);
                m.elements.push_back(up);
            }
        }
    }

    m.h = 0.0;
    for (const auto& e : m.edges) m.h = std::max(m.h, e.length);
    return m;
}

}  // namespace ifelab
