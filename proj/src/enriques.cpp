#include "singcurve/enriques.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "singcurve/errors.hpp"

namespace singcurve {

std::string edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::Curved:
            return "curved";
        case EdgeKind::StraightPerp:
            return "straight";
        case EdgeKind::StraightExt:
        default:
            return "straight-extension";
    }
}

long EnriquesDiagram::Vertex::weight() const {
    long sum = 0;
    for (const auto& [b, w] : branch_weight) sum += w;
    return sum;
}

const EnriquesDiagram::Vertex& EnriquesDiagram::vertex(int id) const {
    if (id < 0 || id >= static_cast<int>(vertices.size())) {
        throw InternalError("vertex id out of range: " + std::to_string(id));
    }
    return vertices[static_cast<size_t>(id)];
}

std::vector<int> EnriquesDiagram::children(int id) const {
    std::vector<int> out;
    for (const auto& v : vertices) {
        if (v.parent == id) out.push_back(v.id);
    }
    return out;
}

std::vector<int> EnriquesDiagram::chain(int branch) const {
    std::vector<int> out;
    for (const auto& v : vertices) {
        if (v.branch_weight.count(branch)) out.push_back(v.id);
    }
    if (out.empty()) {
        throw UnknownBranch("branch " + std::to_string(branch) + " is not in the diagram");
    }
    return out;
}

EnriquesDiagram build_diagram(const Cluster& cl) {
    EnriquesDiagram d;
    for (const auto& p : cl.points) {
        EnriquesDiagram::Vertex v;
        v.id = p.id;
        v.parent = p.parent;
        v.level = p.level;
        for (int b : p.branches) v.branch_weight[b] = cl.branch_multiplicity(p.id, b);
        if (p.parent >= 0) {
            // The edge class is read off the tangency of the branch transforms
            // at the parent; every branch continuing into this point must agree.
            std::optional<EdgeKind> kind;
            for (int b : p.branches) {
                TangencyKind t = cl.tangency_at(p.parent, b);
                EdgeKind k = t == TangencyKind::None          ? EdgeKind::Curved
                             : t == TangencyKind::LastPasted  ? EdgeKind::StraightPerp
                                                              : EdgeKind::StraightExt;
                if (!kind) {
                    kind = k;
                } else if (*kind != k) {
                    throw InconsistentTangency("branches through point " +
                                               std::to_string(p.id) +
                                               " disagree on the edge class");
                }
            }
            v.inbound = *kind;
        }
        d.vertices.push_back(std::move(v));
    }
    return d;
}

EnriquesDiagram subdiagram(const EnriquesDiagram& d, int branch) {
    EnriquesDiagram out;
    std::map<int, int> remap;
    for (const auto& v : d.vertices) {
        auto it = v.branch_weight.find(branch);
        if (it == v.branch_weight.end()) continue;
        EnriquesDiagram::Vertex nv;
        nv.id = static_cast<int>(out.vertices.size());
        // every ancestor of a branch vertex carries the branch as well
        nv.parent = v.parent < 0 ? -1 : remap.at(v.parent);
        nv.level = v.level;
        nv.inbound = v.inbound;
        nv.branch_weight[branch] = it->second;
        remap[v.id] = nv.id;
        out.vertices.push_back(std::move(nv));
    }
    if (out.vertices.empty()) {
        throw UnknownBranch("branch " + std::to_string(branch) + " is not in the diagram");
    }
    return out;
}

namespace {

char kind_tag(EdgeKind k) {
    switch (k) {
        case EdgeKind::Curved:
            return 'c';
        case EdgeKind::StraightPerp:
            return 'p';
        case EdgeKind::StraightExt:
        default:
            return 'e';
    }
}

std::string code_below(const EnriquesDiagram& d, const std::vector<std::vector<int>>& kids,
                       int id) {
    std::vector<std::string> parts;
    for (int c : kids[static_cast<size_t>(id)]) parts.push_back(code_below(d, kids, c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    out += d.vertex(id).parent < 0 ? 'r' : kind_tag(d.vertex(id).inbound);
    for (const auto& p : parts) out += p;
    out += ')';
    return out;
}

std::vector<std::vector<int>> child_table(const EnriquesDiagram& d) {
    std::vector<std::vector<int>> kids(d.vertices.size());
    for (const auto& v : d.vertices) {
        if (v.parent >= 0) kids[static_cast<size_t>(v.parent)].push_back(v.id);
    }
    return kids;
}

}  // namespace

std::string canonical_code(const EnriquesDiagram& d) {
    if (d.vertices.empty()) throw InternalError("empty diagram");
    return code_below(d, child_table(d), 0);
}

std::optional<std::map<int, int>> isomorphic(const EnriquesDiagram& a,
                                             const EnriquesDiagram& b) {
    if (a.vertices.empty() || b.vertices.empty()) throw InternalError("empty diagram");
    if (a.vertices.size() != b.vertices.size()) return std::nullopt;
    auto kids_a = child_table(a);
    auto kids_b = child_table(b);

    std::map<int, int> match;
    std::function<bool(int, int)> pair_up = [&](int ia, int ib) -> bool {
        if (a.vertex(ia).parent >= 0 &&
            a.vertex(ia).inbound != b.vertex(ib).inbound) {
            return false;
        }
        match[ia] = ib;
        auto ca = kids_a[static_cast<size_t>(ia)];
        auto cb = kids_b[static_cast<size_t>(ib)];
        if (ca.size() != cb.size()) return false;
        auto by_code = [&](const EnriquesDiagram& d,
                           const std::vector<std::vector<int>>& kids,
                           std::vector<int>& ids) {
            std::sort(ids.begin(), ids.end(), [&](int x, int y) {
                std::string cx = code_below(d, kids, x);
                std::string cy = code_below(d, kids, y);
                if (cx != cy) return cx < cy;
                return x < y;
            });
        };
        by_code(a, kids_a, ca);
        by_code(b, kids_b, cb);
        for (size_t i = 0; i < ca.size(); ++i) {
            if (code_below(a, kids_a, ca[i]) != code_below(b, kids_b, cb[i])) return false;
            if (!pair_up(ca[i], cb[i])) return false;
        }
        return true;
    };
    if (code_below(a, kids_a, 0) != code_below(b, kids_b, 0)) return std::nullopt;
    if (!pair_up(0, 0)) return std::nullopt;

    // independent re-check of the produced mapping
    if (match.size() != a.vertices.size()) throw InternalError("incomplete matching");
    std::map<int, int> seen;
    for (const auto& [ia, ib] : match) {
        if (!seen.emplace(ib, ia).second) throw InternalError("matching is not injective");
        const auto& va = a.vertex(ia);
        const auto& vb = b.vertex(ib);
        if ((va.parent < 0) != (vb.parent < 0)) throw InternalError("matching breaks roots");
        if (va.parent >= 0) {
            if (match.at(va.parent) != vb.parent) throw InternalError("matching breaks edges");
            if (va.inbound != vb.inbound) throw InternalError("matching breaks edge classes");
        }
    }
    return match;
}

std::string to_dot(const EnriquesDiagram& d) {
    std::ostringstream os;
    os << "graph diagram {\n";
    os << "  node [shape=circle];\n";
    for (const auto& v : d.vertices) {
        os << "  v" << v.id << " [label=\"" << v.weight() << "\"];\n";
    }
    for (const auto& v : d.vertices) {
        if (v.parent < 0) continue;
        const char* style = v.inbound == EdgeKind::Curved        ? "solid"
                            : v.inbound == EdgeKind::StraightPerp ? "bold"
                                                                  : "dashed";
        os << "  v" << v.parent << " -- v" << v.id << " [style=" << style
           << ", class=\"" << edge_kind_name(v.inbound) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace singcurve
