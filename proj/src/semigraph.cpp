#include "skeletonkit/semigraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace skeletonkit {

SemiGraph::SemiGraph(std::vector<std::string> vertices, std::vector<SGEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end());
    std::sort(edges_.begin(), edges_.end(),
              [](const SGEdge& a, const SGEdge& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vindex_.emplace(vertices_[i], i).second)
            throw domain_error("duplicate-vertex", "duplicate vertex id '" + vertices_[i] + "'");
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!eindex_.emplace(edges_[i].id, i).second)
            throw domain_error("duplicate-edge", "duplicate edge id '" + edges_[i].id + "'");
    }
}

std::size_t SemiGraph::vertex_index(const std::string& id) const {
    auto it = vindex_.find(id);
    if (it == vindex_.end())
        throw domain_error("unknown-vertex", "vertex '" + id + "' not in graph");
    return it->second;
}

std::size_t SemiGraph::edge_index(const std::string& id) const {
    auto it = eindex_.find(id);
    if (it == eindex_.end())
        throw domain_error("unknown-edge", "edge '" + id + "' not in graph");
    return it->second;
}

int SemiGraph::branch_count(const std::string& v) const {
    int n = 0;
    for (const auto& e : edges_)
        for (const auto& b : e.branches)
            if (b.vertex == v) ++n;
    return n;
}

std::vector<std::size_t> SemiGraph::incident_edges(const std::string& v) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        for (const auto& b : edges_[i].branches)
            if (b.vertex == v) { out.push_back(i); break; }
    return out;
}

std::size_t SemiGraph::open_edge_count() const {
    std::size_t n = 0;
    for (const auto& e : edges_)
        if (e.is_open()) ++n;
    return n;
}

SemiGraphReport validate(const SemiGraph& g) {
    std::set<std::string> branch_ids;
    for (const auto& e : g.edges()) {
        if (e.branches.empty() || e.branches.size() > 2)
            return {false, "bad-branch-count",
                    "edge '" + e.id + "' must carry 1 or 2 branches"};
        for (const auto& b : e.branches) {
            if (!branch_ids.insert(b.id).second)
                return {false, "shared-branch",
                        "branch id '" + b.id + "' appears on more than one edge"};
            if (!g.has_vertex(b.vertex))
                return {false, "dangling-branch",
                        "branch '" + b.id + "' of edge '" + e.id +
                        "' attaches to unknown vertex '" + b.vertex + "'"};
        }
    }
    return {};
}

SemiGraph truncate(const SemiGraph& g) {
    std::vector<SGEdge> closed;
    for (const auto& e : g.edges())
        if (e.is_closed()) closed.push_back(e);
    return SemiGraph(g.vertices(), std::move(closed));
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

std::vector<int> closed_components(const SemiGraph& g) {
    UnionFind uf(g.vertices().size());
    for (const auto& e : g.edges())
        if (e.is_closed())
            uf.unite(static_cast<int>(g.vertex_index(e.branches[0].vertex)),
                     static_cast<int>(g.vertex_index(e.branches[1].vertex)));
    std::vector<int> comp(g.vertices().size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < comp.size(); ++i) {
        int root = uf.find(static_cast<int>(i));
        if (comp[root] == -1) comp[root] = next++;
        comp[i] = comp[root];
    }
    return comp;
}

int component_count(const SemiGraph& g) {
    auto comp = closed_components(g);
    int m = 0;
    for (int c : comp) m = std::max(m, c + 1);
    return m;
}

bool is_connected(const SemiGraph& g) {
    return component_count(g) <= 1;
}

int betti(const SemiGraph& g) {
    int closed = 0;
    for (const auto& e : g.edges())
        if (e.is_closed()) ++closed;
    return closed - static_cast<int>(g.vertices().size()) + component_count(g);
}

} // namespace skeletonkit
