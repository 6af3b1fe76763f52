#include "skeletonkit/harmonic.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>

namespace skeletonkit {

namespace {

long long mod_norm(long long v, long long ell) {
    v %= ell;
    return v < 0 ? v + ell : v;
}

void require_modulus(long long ell) {
    if (ell < 2) throw domain_error("bad-modulus", "modulus must be >= 2");
}

// Diagonalize an integer matrix by row and column operations, tracking
// column operations in `coltrack` so that solutions pull back. Returns the
// number of nonzero diagonal entries; A is destroyed.
std::size_t diagonalize(std::vector<std::vector<long long>>& A,
                        std::vector<std::vector<long long>>& coltrack) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : coltrack.size();
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry in the remaining block
        std::size_t pi = t, pj = t;
        long long best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                long long v = std::llabs(A[i][j]);
                if (v != 0 && (best == 0 || v < best)) { best = v; pi = i; pj = j; }
            }
        if (best == 0) break;
        std::swap(A[t], A[pi]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(A[i][t], A[i][pj]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(coltrack[i][t], coltrack[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (A[i][t] == 0) continue;
                long long q = A[i][t] / A[t][t];
                for (std::size_t j = t; j < cols; ++j) A[i][j] -= q * A[t][j];
                if (A[i][t] != 0) { std::swap(A[t], A[i]); clean = false; }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (A[t][j] == 0) continue;
                long long q = A[t][j] / A[t][t];
                for (std::size_t i = 0; i < rows; ++i) A[i][j] -= q * A[i][t];
                for (std::size_t i = 0; i < cols; ++i) coltrack[i][j] -= q * coltrack[i][t];
                if (A[t][j] != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(A[i][t], A[i][j]);
                    for (std::size_t i = 0; i < cols; ++i) std::swap(coltrack[i][t], coltrack[i][j]);
                    clean = false;
                }
            }
        }
        ++t;
    }
    return t;
}

} // namespace

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long long HarmonicCochain::value_on(const SemiGraph& g, const OrientedEdge& oe) const {
    const SGEdge& e = g.edge(oe.edge);
    auto it = values.find(oe.edge);
    long long v = it == values.end() ? 0 : it->second;
    const Branch& head = e.branches.back();
    if (oe.head_branch == head.id) return v;
    for (const auto& b : e.branches)
        if (b.id == oe.head_branch) return mod_norm(-v, modulus);
    throw domain_error("unknown-branch",
                       "branch '" + oe.head_branch + "' is not on edge '" + oe.edge + "'");
}

CochainReport check_harmonic(const SemiGraph& g, const HarmonicCochain& c) {
    if (c.modulus < 2) return {false, "bad-value", "modulus must be >= 2"};
    for (const auto& [eid, v] : c.values) {
        g.edge(eid);
        if (v < 0 || v >= c.modulus)
            return {false, "bad-value", "value on '" + eid + "' outside [0, modulus)"};
    }
    for (const auto& v : g.vertices()) {
        long long sum = 0;
        for (std::size_t ei : g.incident_edges(v)) {
            const SGEdge& e = g.edges()[ei];
            auto it = c.values.find(e.id);
            long long val = it == c.values.end() ? 0 : it->second;
            if (e.is_open()) {
                sum += val;  // oriented toward its vertex
            } else if (!e.is_loop()) {
                if (e.branches[1].vertex == v) sum += val;
                if (e.branches[0].vertex == v) sum -= val;
            }
            // loops contribute both orientations: net zero
        }
        if (mod_norm(sum, c.modulus) != 0)
            return {false, "divergence", "nonzero divergence at vertex '" + v + "'"};
    }
    return {};
}

HarmBasis harm_basis(const SemiGraph& g, long long ell) {
    require_modulus(ell);
    if (!is_connected(g))
        throw domain_error("disconnected", "harm_basis requires a connected semi-graph");

    const auto& edges = g.edges();
    const std::size_t n = edges.size();
    const std::size_t rows = g.vertices().size();

    // Divergence matrix: one column per edge (value on the canonical
    // orientation), one row per vertex. Loops give zero columns.
    std::vector<std::vector<long long>> A(rows, std::vector<long long>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        const SGEdge& e = edges[j];
        if (e.is_open()) {
            A[g.vertex_index(e.branches[0].vertex)][j] += 1;
        } else if (!e.is_loop()) {
            A[g.vertex_index(e.branches[1].vertex)][j] += 1;
            A[g.vertex_index(e.branches[0].vertex)][j] -= 1;
        }
    }

    std::vector<std::vector<long long>> coltrack(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) coltrack[i][i] = 1;
    const std::size_t r = diagonalize(A, coltrack);

    HarmBasis out;
    for (std::size_t i = 0; i < n; ++i) {
        long long scale = 1;
        if (i < r) {
            long long d = std::llabs(A[i][i]);
            long long gcd = std::gcd(d % ell, ell);
            if (gcd <= 1) continue;  // kernel coordinate is trivial mod ell
            scale = ell / gcd;
        }
        HarmonicCochain c;
        c.modulus = ell;
        bool nonzero = false;
        for (std::size_t k = 0; k < n; ++k) {
            long long v = mod_norm(coltrack[k][i] * scale, ell);
            if (v != 0) { c.values[edges[k].id] = v; nonzero = true; }
        }
        if (nonzero) out.generators.push_back(std::move(c));
    }
    if (is_prime(ell)) out.rank = static_cast<int>(out.generators.size());
    return out;
}

namespace {

// Vertex path from `from` to `to` over closed edges; each step is
// (edge index, true when the canonical head points at the step target).
std::vector<std::pair<std::size_t, bool>>
bfs_path(const SemiGraph& g, const std::string& from, const std::string& to) {
    if (from == to) return {};
    std::map<std::string, std::pair<std::size_t, bool>> via;  // vertex -> (edge, forward)
    std::map<std::string, std::string> prev;
    std::deque<std::string> queue{from};
    std::set<std::string> seen{from};
    while (!queue.empty()) {
        std::string v = queue.front();
        queue.pop_front();
        for (std::size_t ei : g.incident_edges(v)) {
            const SGEdge& e = g.edges()[ei];
            if (!e.is_closed() || e.is_loop()) continue;
            for (int dir = 0; dir < 2; ++dir) {
                if (e.branches[dir].vertex != v) continue;
                const std::string& w = e.branches[1 - dir].vertex;
                if (seen.count(w)) continue;
                seen.insert(w);
                via[w] = {ei, dir == 0};  // forward = toward branches[1]
                prev[w] = v;
                if (w == to) {
                    std::vector<std::pair<std::size_t, bool>> path;
                    std::string cur = to;
                    while (cur != from) {
                        path.push_back(via[cur]);
                        cur = prev[cur];
                    }
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                queue.push_back(w);
            }
        }
    }
    throw domain_error("disconnected", "no path between '" + from + "' and '" + to + "'");
}

// Adds `a` to the cochain along the path, oriented toward the path target.
void route(const SemiGraph& g, HarmonicCochain& c,
           const std::vector<std::pair<std::size_t, bool>>& path, long long a) {
    for (const auto& [ei, forward] : path) {
        const std::string& id = g.edges()[ei].id;
        long long cur = c.values.count(id) ? c.values[id] : 0;
        c.values[id] = mod_norm(cur + (forward ? a : -a), c.modulus);
    }
}

} // namespace

HarmonicCochain prescribed_cochain(const SemiGraph& g, long long ell,
                                   const std::string& e, const std::string& e2,
                                   const std::string& e3,
                                   long long a, long long a2) {
    require_modulus(ell);
    if (!is_connected(g))
        throw domain_error("disconnected", "prescribed_cochain requires a connected semi-graph");
    if (g.open_edge_count() < 3)
        throw domain_error("too-few-open-edges", "need at least 3 open edges");
    if (e == e2 || e == e3 || e2 == e3)
        throw domain_error("edges-not-distinct", "the three open edges must be distinct");
    for (const auto* id : {&e, &e2, &e3})
        if (!g.edge(*id).is_open())
            throw domain_error("not-open", "edge '" + *id + "' is not open");

    const std::string x = g.edge(e).branches[0].vertex;
    const std::string x2 = g.edge(e2).branches[0].vertex;
    const std::string y = g.edge(e3).branches[0].vertex;

    HarmonicCochain c;
    c.modulus = ell;
    c.values[e] = mod_norm(a, ell);
    c.values[e2] = mod_norm(a2, ell);
    c.values[e3] = mod_norm(-(a + a2), ell);
    route(g, c, bfs_path(g, x, y), mod_norm(a, ell));
    route(g, c, bfs_path(g, x2, y), mod_norm(a2, ell));

    for (auto it = c.values.begin(); it != c.values.end();)
        it = it->second == 0 ? c.values.erase(it) : std::next(it);
    return c;
}

std::vector<std::string> spanning_tree_edges(const SemiGraph& g) {
    std::vector<std::string> tree;
    std::set<std::string> seen;
    for (const auto& root : g.vertices()) {
        if (seen.count(root)) continue;
        seen.insert(root);
        std::deque<std::string> queue{root};
        while (!queue.empty()) {
            std::string v = queue.front();
            queue.pop_front();
            for (std::size_t ei : g.incident_edges(v)) {
                const SGEdge& e = g.edges()[ei];
                if (!e.is_closed() || e.is_loop()) continue;
                for (const auto& b : e.branches) {
                    if (b.vertex == v || seen.count(b.vertex)) continue;
                    seen.insert(b.vertex);
                    tree.push_back(e.id);
                    queue.push_back(b.vertex);
                }
            }
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

DecorationFreeCover cover_from_class(const SemiGraph& g, long long ell,
                                     const std::map<std::string, long long>& classes) {
    require_modulus(ell);
    if (!is_connected(g))
        throw domain_error("disconnected", "cover_from_class requires a connected semi-graph");

    auto tree = spanning_tree_edges(g);
    std::set<std::string> tree_set(tree.begin(), tree.end());
    for (const auto& [eid, _] : classes) {
        const SGEdge& e = g.edge(eid);
        if (e.is_open())
            throw domain_error("class-on-open-edge", "class given on open edge '" + eid + "'");
        if (tree_set.count(eid))
            throw domain_error("class-on-tree-edge",
                               "edge '" + eid + "' lies on the spanning tree");
    }

    auto lift_v = [](const std::string& v, long long i) { return v + "#" + std::to_string(i); };

    std::vector<std::string> vertices;
    for (const auto& v : g.vertices())
        for (long long i = 0; i < ell; ++i) vertices.push_back(lift_v(v, i));

    DecorationFreeCover cover;
    std::vector<SGEdge> edges;
    for (const auto& e : g.edges()) {
        long long sigma = 0;
        if (auto it = classes.find(e.id); it != classes.end()) sigma = mod_norm(it->second, ell);
        for (long long i = 0; i < ell; ++i) {
            SGEdge lifted;
            lifted.id = e.id + "#" + std::to_string(i);
            if (e.is_open()) {
                lifted.branches = {{e.branches[0].id + "#" + std::to_string(i),
                                    lift_v(e.branches[0].vertex, i)}};
            } else {
                long long j = mod_norm(i + sigma, ell);
                lifted.branches = {{e.branches[0].id + "#" + std::to_string(i),
                                    lift_v(e.branches[0].vertex, i)},
                                   {e.branches[1].id + "#" + std::to_string(i),
                                    lift_v(e.branches[1].vertex, j)}};
            }
            cover.edge_map[lifted.id] = e.id;
            edges.push_back(std::move(lifted));
        }
    }
    for (const auto& v : g.vertices())
        for (long long i = 0; i < ell; ++i) cover.vertex_map[lift_v(v, i)] = v;

    cover.base = g;
    cover.total = SemiGraph(std::move(vertices), std::move(edges));
    cover.degree = ell;

    auto rep = validate(cover.total);
    if (!rep.ok) throw domain_error("bad-cover", "constructed cover is invalid: " + rep.message);
    return cover;
}

int h1_rank(const SemiGraph& g, const std::map<std::string, int>& genus, long long ell) {
    if (!is_prime(ell))
        throw domain_error("not-prime", "h1_rank requires a prime modulus");
    if (!is_connected(g))
        throw domain_error("disconnected", "h1_rank requires a connected skeleton");
    int total = betti(g);
    for (const auto& v : g.vertices()) {
        auto it = genus.find(v);
        if (it == genus.end())
            throw domain_error("missing-genus", "no genus for vertex '" + v + "'");
        total += 2 * it->second;
    }
    auto basis = harm_basis(g, ell);
    return total + *basis.rank;
}

} // namespace skeletonkit
