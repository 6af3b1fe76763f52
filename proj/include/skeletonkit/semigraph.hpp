#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skeletonkit/error.hpp"

namespace skeletonkit {

/// One end of an edge, attached to a vertex.
struct Branch {
    std::string id;
    std::string vertex;
};

/// An edge with 1 (open) or 2 (closed) branches. For closed edges the
/// branch order is meaningful: branches[0] is the tail side, branches[1]
/// the head side wherever an orientation is needed (covers, cochains,
/// graph-of-groups letters). Loops carry both branches at one vertex.
struct SGEdge {
    std::string id;
    std::vector<Branch> branches;

    bool is_open() const { return branches.size() == 1; }
    bool is_closed() const { return branches.size() == 2; }
    bool is_loop() const {
        return is_closed() && branches[0].vertex == branches[1].vertex;
    }
};

struct SemiGraphReport {
    bool ok = true;
    std::string code;     // "dangling-branch" | "shared-branch" | "bad-branch-count" | ...
    std::string message;
};

/// Finite semi-graph: vertices, edges with one or two branches each,
/// attachment of every branch to a vertex. Construction canonicalizes
/// vertex and edge order by id; duplicate ids throw.
class SemiGraph {
public:
    SemiGraph() = default;
    SemiGraph(std::vector<std::string> vertices, std::vector<SGEdge> edges);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<SGEdge>& edges() const { return edges_; }

    bool has_vertex(const std::string& id) const { return vindex_.count(id) != 0; }
    std::size_t vertex_index(const std::string& id) const;
    std::size_t edge_index(const std::string& id) const;
    const SGEdge& edge(const std::string& id) const { return edges_[edge_index(id)]; }

    /// Number of branches attached at v; a loop counts twice, an open
    /// edge once. This is the topological valence.
    int branch_count(const std::string& v) const;

    /// Indices of edges with at least one branch at v (each edge once).
    std::vector<std::size_t> incident_edges(const std::string& v) const;

    std::size_t open_edge_count() const;

    bool empty() const { return vertices_.empty() && edges_.empty(); }

private:
    std::vector<std::string> vertices_;
    std::vector<SGEdge> edges_;
    std::map<std::string, std::size_t> vindex_;
    std::map<std::string, std::size_t> eindex_;
};

/// OK or the first violated semi-graph axiom: every branch attaches to a
/// known vertex, branch ids are globally disjoint, edges carry 1 or 2
/// branches.
SemiGraphReport validate(const SemiGraph& g);

/// The maximal true graph inside g: all open edges removed, vertices kept.
SemiGraph truncate(const SemiGraph& g);

/// Connected components of the vertex set, using closed edges only.
/// Returns a component id per vertex, components numbered from 0 in
/// order of smallest member.
std::vector<int> closed_components(const SemiGraph& g);

int component_count(const SemiGraph& g);

/// Connectivity of the vertex set. Open edges have a single endpoint and
/// never join vertices, so this is connectivity via closed edges. An
/// empty graph counts as connected.
bool is_connected(const SemiGraph& g);

/// First Betti number of the truncated graph:
/// #closed edges - #vertices + #components. Open edges are ignored.
int betti(const SemiGraph& g);

} // namespace skeletonkit
