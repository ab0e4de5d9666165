#pragma once

#include <vector>

#include "ifelab/core.hpp"

namespace ifelab {

struct MeshEdge {
    int v0 = -1, v1 = -1;
    bool boundary = false;
    double length = 0.0;
    Vec2 midpoint;
};

struct MeshElement {
    std::array<int, 4> v{{-1, -1, -1, -1}};  // vertex ids, CCW
    std::array<int, 4> e{{-1, -1, -1, -1}};  // edge ids, e[k] joins v[k], v[k+1]
    int n = 0;                               // 3 or 4
};

// Interface-independent Cartesian mesh. Triangular meshes split each grid
// cell along its lower-left to upper-right diagonal.
struct Mesh {
    Rect domain;
    int n_per_side = 0;
    CellType cell_type = CellType::Rectangular;
    std::vector<Vec2> vertices;
    std::vector<MeshEdge> edges;
    std::vector<MeshElement> elements;
    double h = 0.0;  // max edge length

    Vec2 vertex(int elem, int k) const { return vertices[elements[elem].v[k]]; }
    Vec2 centroid(int elem) const {
        const MeshElement& el = elements[elem];
        Vec2 c{0, 0};
        for (int k = 0; k < el.n; ++k) c += vertices[el.v[k]];
        return c / double(el.n);
    }
};

Mesh build_mesh(const Rect& domain, int n_per_side, CellType cell_type);

}  // namespace ifelab
