#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "singcurve/resolution.hpp"

namespace singcurve {

// Classes of the edge joining a point to its successor:
//  - Curved: the successor sits transversally to every component, off the axes.
//  - StraightPerp: the successor continues tangent to the newest component.
//  - StraightExt: the successor stays on a component pasted earlier.
enum class EdgeKind { Curved, StraightPerp, StraightExt };

std::string edge_kind_name(EdgeKind k);

struct EnriquesDiagram {
    struct Vertex {
        int id = 0;
        int parent = -1;
        int level = 0;
        EdgeKind inbound = EdgeKind::Curved;  // class of the edge from the parent
        std::map<int, long> branch_weight;    // branch id -> multiplicity there

        long weight() const;
        bool operator==(const Vertex& o) const {
            return id == o.id && parent == o.parent && level == o.level &&
                   inbound == o.inbound && branch_weight == o.branch_weight;
        }
    };

    std::vector<Vertex> vertices;  // index == id, parents before children

    const Vertex& vertex(int id) const;
    std::vector<int> children(int id) const;
    std::vector<int> chain(int branch) const;

    bool operator==(const EnriquesDiagram& o) const { return vertices == o.vertices; }
    bool operator!=(const EnriquesDiagram& o) const { return !(*this == o); }
};

EnriquesDiagram build_diagram(const Cluster& c);

// The vertices one branch passes through, renumbered as a diagram of its own.
EnriquesDiagram subdiagram(const EnriquesDiagram& d, int branch);

// Shape certificate: two diagrams receive equal codes exactly when some
// edge-class preserving rooted-tree isomorphism matches them.
std::string canonical_code(const EnriquesDiagram& d);

// Explicit vertex matching (id in a -> id in b) when the shapes agree,
// rechecked edge by edge before being returned.
std::optional<std::map<int, int>> isomorphic(const EnriquesDiagram& a,
                                             const EnriquesDiagram& b);

// Graphviz rendering; vertex labels carry the weights, edge styles the class.
std::string to_dot(const EnriquesDiagram& d);

}  // namespace singcurve
