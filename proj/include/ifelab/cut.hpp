#pragma once

#include <vector>

#include "ifelab/curve.hpp"
#include "ifelab/mesh.hpp"

namespace ifelab {

enum class ElemClass { Minus, Plus, Interface };
enum class EdgeClass { Minus, Plus, Split };

struct Classification {
    std::vector<ElemClass> element;
    std::vector<ElemClass> edge;  // Interface == split by the curve

    int interface_element_count() const {
        int c = 0;
        for (auto e : element) c += (e == ElemClass::Interface);
        return c;
    }
};

// Per interface element cut geometry. D sits on the first cut edge in CCW
// order, E on the second. nbar is the unit normal of the chord DE oriented
// from the minus side to the plus side; F and vF realize the flux point.
struct CutInfo {
    int element_id = -1;
    Vec2 D, E;
    double tD = 0.0, tE = 0.0;  // curve parameters, tE adjusted near tD
    Vec2 nbar;
    Vec2 F;
    Vec2 vF;
    PartitionMode partition_mode = PartitionMode::Curve;
    FluxMode flux_mode = FluxMode::CurveMidpoint;
    std::array<EdgeClass, 4> edge_class{};
    std::array<Vec2, 4> split_point{};  // valid where edge_class == Split
    int cut_edge_a = -1, cut_edge_b = -1;  // local edge indices

    double chord_value(const Vec2& X) const { return nbar.dot(X - D); }
};

Classification classify_elements(const Mesh& mesh, const InterfaceCurve& curve);

CutInfo compute_cut(const Mesh& mesh, int element_id, const InterfaceCurve& curve,
                    PartitionMode partition_mode, FluxMode flux_mode);

// Root of level_set along segment [a,b]; endpoints must bracket a sign change.
Vec2 edge_root(const InterfaceCurve& curve, const Vec2& a, const Vec2& b);

}  // namespace ifelab
