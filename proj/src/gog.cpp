#include "skeletonkit/gog.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "skeletonkit/harmonic.hpp"  // spanning_tree_edges, betti

namespace skeletonkit {

GraphOfGroups::GraphOfGroups(SemiGraph graph,
                             std::map<std::string, FiniteGroup> vertex_groups,
                             std::map<std::string, FiniteGroup> edge_groups,
                             std::map<std::string, GroupEmbedding> branch_embeddings,
                             bool require_connected)
    : graph_(std::move(graph)), vgroups_(std::move(vertex_groups)),
      egroups_(std::move(edge_groups)), bembed_(std::move(branch_embeddings)) {
    auto rep = validate(graph_);
    if (!rep.ok) throw domain_error("invalid-semigraph", rep.message);
    if (require_connected && !is_connected(graph_))
        throw domain_error("disconnected", "graph of groups must be connected");
    for (const auto& v : graph_.vertices())
        if (!vgroups_.count(v))
            throw domain_error("missing-group", "no vertex group for '" + v + "'");
    for (const auto& e : graph_.edges()) {
        if (!egroups_.count(e.id))
            throw domain_error("missing-group", "no edge group for '" + e.id + "'");
        for (const auto& b : e.branches) {
            auto it = bembed_.find(b.id);
            if (it == bembed_.end())
                throw domain_error("missing-embedding", "no embedding for branch '" + b.id + "'");
            // The GroupEmbedding constructor already enforced injectivity
            // and the homomorphism law; re-check the endpoint sizes here.
            if (static_cast<int>(it->second.images().size()) != egroups_.at(e.id).order())
                throw domain_error("bad-embedding",
                                   "embedding on '" + b.id + "' does not match the edge group");
            for (int img : it->second.images())
                if (img >= vgroups_.at(b.vertex).order())
                    throw domain_error("bad-embedding",
                                       "embedding on '" + b.id + "' leaves the vertex group");
        }
    }
    auto tree = spanning_tree_edges(graph_);
    tree_ = std::set<std::string>(tree.begin(), tree.end());
}

const FiniteGroup& GraphOfGroups::vertex_group(const std::string& v) const {
    auto it = vgroups_.find(v);
    if (it == vgroups_.end()) throw domain_error("unknown-vertex", "no vertex '" + v + "'");
    return it->second;
}

const FiniteGroup& GraphOfGroups::edge_group(const std::string& e) const {
    auto it = egroups_.find(e);
    if (it == egroups_.end()) throw domain_error("unknown-edge", "no edge '" + e + "'");
    return it->second;
}

const GroupEmbedding& GraphOfGroups::embedding(const std::string& branch_id) const {
    auto it = bembed_.find(branch_id);
    if (it == bembed_.end())
        throw domain_error("unknown-branch", "no embedding for branch '" + branch_id + "'");
    return it->second;
}

std::vector<int> GraphOfGroups::branch_subgroup(const std::string& e, int branch) const {
    const SGEdge& edge = graph_.edge(e);
    auto imgs = embedding(edge.branches.at(branch).id).images();
    std::sort(imgs.begin(), imgs.end());
    return imgs;
}

MochizukiScreen screen_mochizuki(const SemiGraph& g,
                                 const std::map<std::string, SymbolicVertexData>& data) {
    if (!is_connected(g))
        throw domain_error("disconnected", "screen_mochizuki requires a connected semi-graph");
    MochizukiScreen out;
    for (const auto& v : g.vertices()) {
        auto it = data.find(v);
        if (it == data.end())
            throw domain_error("missing-data", "no symbolic data for vertex '" + v + "'");
        const auto& [genus, n] = it->second;
        if (genus < 0 || n < 0)
            throw domain_error("bad-data", "negative genus or valence at '" + v + "'");
        if (2 * genus + n > 2) continue;

        MochizukiFailure f;
        f.vertex = v;
        const int val = g.branch_count(v);
        const bool boundary = n > val;  // missing branches present
        if (genus == 0 && !boundary && val <= 1) {
            f.mechanism = "not-injective-type";
            f.detail = "disc-like star: the branch map factors through a trivial group";
        } else if (genus == 0 && !boundary) {
            f.mechanism = "not-totally-detached";
            f.detail = "open-interval star: the branch map is an isomorphism";
        } else if (genus == 0) {
            f.mechanism = "not-totally-detached";
            f.detail = "compact-annulus boundary pattern: 2g + n = " + std::to_string(2 * genus + n);
        } else {
            f.mechanism = "not-verticially-slim";
            f.detail = "vertex group of a genus-1 compact component has a center";
        }
        out.failures.push_back(std::move(f));
        out.pass = false;
    }
    return out;
}

namespace {

bool is_permutation(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<bool> hit(n, false);
    for (int v : p) {
        if (v < 0 || v >= n || hit[v]) return false;
        hit[v] = true;
    }
    return true;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];  // a after b
    return c;
}

std::vector<int> invert(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

std::vector<int> identity_perm(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

} // namespace

ActionReport validate_action(const GraphOfGroups& gog, const PermutationAction& act) {
    if (act.fiber < 1) return {false, "bad-fiber", "fiber must be nonempty"};
    for (const auto& v : gog.graph().vertices()) {
        auto it = act.vertex_perms.find(v);
        if (it == act.vertex_perms.end())
            return {false, "missing-perms", "no permutations for vertex '" + v + "'"};
        const auto& perms = it->second;
        const FiniteGroup& G = gog.vertex_group(v);
        if (static_cast<int>(perms.size()) != G.order())
            return {false, "size-mismatch",
                    "permutation count at '" + v + "' does not match the group order"};
        for (const auto& p : perms)
            if (!is_permutation(p, act.fiber))
                return {false, "bad-permutation", "invalid permutation at vertex '" + v + "'"};
        if (perms[0] != identity_perm(act.fiber))
            return {false, "bad-permutation", "identity must act trivially at '" + v + "'"};
        for (int a = 0; a < G.order(); ++a)
            for (int b = 0; b < G.order(); ++b)
                if (perms[G.mul(a, b)] != compose(perms[a], perms[b]))
                    return {false, "not-a-homomorphism",
                            "action at '" + v + "' violates the multiplication table"};
    }
    for (const auto& [eid, p] : act.letter_perms) {
        const SGEdge& e = gog.graph().edge(eid);
        if (e.is_open())
            return {false, "letter-on-open-edge", "open edge '" + eid + "' carries no letter"};
        if (gog.is_tree_edge(eid))
            return {false, "letter-on-tree-edge", "tree edge '" + eid + "' carries no letter"};
        if (!is_permutation(p, act.fiber))
            return {false, "bad-permutation", "invalid letter permutation on '" + eid + "'"};
    }
    for (const auto& e : gog.graph().edges()) {
        if (!e.is_closed()) continue;
        std::vector<int> t = identity_perm(act.fiber);
        if (!gog.is_tree_edge(e.id)) {
            auto it = act.letter_perms.find(e.id);
            if (it == act.letter_perms.end())
                return {false, "missing-letter", "no letter permutation for edge '" + e.id + "'"};
            t = it->second;
        }
        const auto& alpha = gog.embedding(e.branches[0].id);
        const auto& omega = gog.embedding(e.branches[1].id);
        const auto& tail_perms = act.vertex_perms.at(e.branches[0].vertex);
        const auto& head_perms = act.vertex_perms.at(e.branches[1].vertex);
        const auto tinv = invert(t);
        for (int a = 0; a < gog.edge_group(e.id).order(); ++a) {
            auto lhs = compose(t, compose(tail_perms[alpha.apply(a)], tinv));
            if (lhs != head_perms[omega.apply(a)])
                return {false, "britton-violation",
                        "edge '" + e.id + "': t a t^-1 != omega(a) for edge-group element " +
                            std::to_string(a)};
        }
    }
    return {};
}

namespace {

// Orbits of a permutation set on {0..n-1}; orbit ids ordered by least point.
std::vector<int> orbits_of(const std::vector<const std::vector<int>*>& gens, int n,
                           int* count_out) {
    std::vector<int> orbit(n, -1);
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (orbit[s] >= 0) continue;
        orbit[s] = count;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (const auto* g : gens) {
                int y = (*g)[x];
                if (orbit[y] < 0) { orbit[y] = count; queue.push_back(y); }
            }
        }
        ++count;
    }
    if (count_out) *count_out = count;
    return orbit;
}

// Subgroup of `parent` on the given sorted element subset, as a fresh
// FiniteGroup with elements reindexed by position. elements[0] must be 0.
FiniteGroup subgroup_as_group(const FiniteGroup& parent, const std::vector<int>& elements) {
    std::map<int, int> pos;
    for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> table(elements.size(), std::vector<int>(elements.size()));
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j) {
            int prod = parent.mul(elements[i], elements[j]);
            auto it = pos.find(prod);
            if (it == pos.end())
                throw domain_error("not-a-subgroup", "element set is not closed");
            table[i][j] = it->second;
        }
    return FiniteGroup(std::move(table));
}

// Schreier transversal: for each fiber point, a group element carrying the
// orbit basepoint to it. base[x] = u with perm(u)(basepoint) = x.
std::map<int, int> orbit_transversal(const FiniteGroup& G,
                                     const std::vector<std::vector<int>>& perms,
                                     int basepoint) {
    std::map<int, int> carry{{basepoint, G.identity()}};
    std::deque<int> queue{basepoint};
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int g = 0; g < G.order(); ++g) {
            int y = perms[g][x];
            if (!carry.count(y)) {
                carry[y] = G.mul(g, carry[x]);
                queue.push_back(y);
            }
        }
    }
    return carry;
}

} // namespace

GogCover cover_from_action(const GraphOfGroups& gog, const PermutationAction& act) {
    auto rep = validate_action(gog, act);
    if (!rep.ok) throw domain_error("invalid-action", rep.message);
    const int n = act.fiber;

    // Vertex orbits with stabilizer groups and transversals.
    struct VertexFiber {
        std::vector<int> orbit_of_point;
        std::vector<int> basepoint;                       // per orbit
        std::vector<std::vector<int>> stab_elements;      // per orbit, sorted
        std::vector<FiniteGroup> stab_group;              // per orbit
        std::vector<std::map<int, int>> transversal;      // per orbit: point -> carrier
    };
    std::map<std::string, VertexFiber> fibers;

    for (const auto& v : gog.graph().vertices()) {
        const FiniteGroup& G = gog.vertex_group(v);
        const auto& perms = act.vertex_perms.at(v);
        std::vector<const std::vector<int>*> gens;
        for (const auto& p : perms) gens.push_back(&p);
        VertexFiber f;
        int orbit_count = 0;
        f.orbit_of_point = orbits_of(gens, n, &orbit_count);
        f.basepoint.assign(orbit_count, -1);
        for (int x = 0; x < n; ++x)
            if (f.basepoint[f.orbit_of_point[x]] < 0) f.basepoint[f.orbit_of_point[x]] = x;
        for (int o = 0; o < orbit_count; ++o) {
            int x0 = f.basepoint[o];
            std::vector<int> stab;
            for (int g = 0; g < G.order(); ++g)
                if (perms[g][x0] == x0) stab.push_back(g);
            f.stab_group.push_back(subgroup_as_group(G, stab));
            f.stab_elements.push_back(std::move(stab));
            f.transversal.push_back(orbit_transversal(G, perms, x0));
        }
        fibers[v] = std::move(f);
    }

    auto cover_vertex_id = [&](const std::string& v, int orbit) {
        return v + "#" + std::to_string(orbit);
    };

    std::vector<std::string> vertices;
    std::map<std::string, FiniteGroup> vgroups;
    std::map<std::string, std::string> vertex_map;
    for (const auto& [v, f] : fibers) {
        for (std::size_t o = 0; o < f.basepoint.size(); ++o) {
            std::string id = cover_vertex_id(v, static_cast<int>(o));
            vertices.push_back(id);
            vgroups.emplace(id, f.stab_group[o]);
            vertex_map[id] = v;
        }
    }

    // Embeds `edge_elt` (in the edge group) into the stabilizer of the
    // cover vertex containing `point`, conjugating by the transversal.
    auto make_embedding = [&](const std::string& v, int point,
                              const FiniteGroup& edge_stab_group,
                              const std::vector<int>& edge_stab_elements,
                              const GroupEmbedding& branch_embed,
                              int* orbit_out) -> GroupEmbedding {
        const FiniteGroup& G = gog.vertex_group(v);
        const VertexFiber& f = fibers.at(v);
        int orbit = f.orbit_of_point[point];
        *orbit_out = orbit;
        int u = f.transversal[orbit].at(point);  // perm(u)(basepoint) = point
        int uinv = G.inv(u);
        const std::vector<int>& stab = f.stab_elements[orbit];
        std::vector<int> images;
        for (int a : edge_stab_elements) {
            int conj = G.mul(G.mul(uinv, branch_embed.apply(a)), u);
            auto it = std::lower_bound(stab.begin(), stab.end(), conj);
            if (it == stab.end() || *it != conj)
                throw domain_error("internal", "conjugated element missed the stabilizer");
            images.push_back(static_cast<int>(it - stab.begin()));
        }
        return GroupEmbedding(edge_stab_group, f.stab_group[orbit], std::move(images));
    };

    std::vector<SGEdge> edges;
    std::map<std::string, FiniteGroup> egroups;
    std::map<std::string, GroupEmbedding> bembed;
    std::map<std::string, std::string> edge_map;

    for (const auto& e : gog.graph().edges()) {
        const FiniteGroup& E = gog.edge_group(e.id);
        const std::string& v0 = e.branches[0].vertex;
        const auto& alpha = gog.embedding(e.branches[0].id);
        const auto& tail_perms = act.vertex_perms.at(v0);

        // Orbits of the edge-group image at the tail branch.
        std::vector<std::vector<int>> eperms;
        for (int a = 0; a < E.order(); ++a) eperms.push_back(tail_perms[alpha.apply(a)]);
        std::vector<const std::vector<int>*> gens;
        for (const auto& p : eperms) gens.push_back(&p);
        int orbit_count = 0;
        auto orbit = orbits_of(gens, n, &orbit_count);
        std::vector<int> basepoint(orbit_count, -1);
        for (int x = 0; x < n; ++x)
            if (basepoint[orbit[x]] < 0) basepoint[orbit[x]] = x;

        std::vector<int> letter = identity_perm(n);
        if (e.is_closed() && !gog.is_tree_edge(e.id))
            letter = act.letter_perms.at(e.id);

        for (int o = 0; o < orbit_count; ++o) {
            const int x = basepoint[o];
            std::vector<int> estab;
            for (int a = 0; a < E.order(); ++a)
                if (eperms[a][x] == x) estab.push_back(a);
            FiniteGroup estab_group = subgroup_as_group(E, estab);

            SGEdge lifted;
            lifted.id = e.id + "#" + std::to_string(o);
            edge_map[lifted.id] = e.id;
            egroups.emplace(lifted.id, estab_group);

            int tail_orbit = 0;
            std::string tail_branch = lifted.id + ".t";
            bembed.emplace(tail_branch,
                           make_embedding(v0, x, estab_group, estab, alpha, &tail_orbit));
            lifted.branches.push_back({tail_branch, cover_vertex_id(v0, tail_orbit)});

            if (e.is_closed()) {
                const std::string& v1 = e.branches[1].vertex;
                const auto& omega = gog.embedding(e.branches[1].id);
                int head_point = letter[x];
                int head_orbit = 0;
                std::string head_branch = lifted.id + ".h";
                bembed.emplace(head_branch,
                               make_embedding(v1, head_point, estab_group, estab, omega,
                                              &head_orbit));
                lifted.branches.push_back({head_branch, cover_vertex_id(v1, head_orbit)});
            }
            edges.push_back(std::move(lifted));
        }

        // Orbit sizes over each cell partition the fiber.
        long long total = 0;
        for (int o = 0; o < orbit_count; ++o)
            total += std::count(orbit.begin(), orbit.end(), o);
        if (total != n)
            throw domain_error("internal", "edge orbits do not partition the fiber");
    }

    GogCover out{GraphOfGroups(SemiGraph(std::move(vertices), std::move(edges)),
                               std::move(vgroups), std::move(egroups), std::move(bembed),
                               /*require_connected=*/false),
                 std::move(vertex_map), std::move(edge_map)};
    return out;
}

bool is_transitive(const GraphOfGroups& gog, const PermutationAction& act) {
    // The cover is connected iff the full generator set acts transitively.
    std::vector<const std::vector<int>*> gens;
    for (const auto& v : gog.graph().vertices())
        for (const auto& p : act.vertex_perms.at(v)) gens.push_back(&p);
    for (const auto& [eid, p] : act.letter_perms) {
        (void)eid;
        gens.push_back(&p);
    }
    // Tree edges identify fibers without moving points, so vertex and
    // letter permutations generate the whole monodromy.
    int count = 0;
    orbits_of(gens, act.fiber, &count);
    return count <= 1;
}

TowerReport tempered_tower(const GraphOfGroups& gog,
                           const std::vector<PermutationAction>& actions) {
    TowerReport out;
    for (const auto& act : actions) {
        auto rep = validate_action(gog, act);
        if (!rep.ok) throw domain_error("invalid-action", rep.message);
        if (!is_transitive(gog, act))
            throw domain_error("not-transitive", "tower levels must be connected covers");
        GogCover cover = cover_from_action(gog, act);
        TowerLevel level;
        level.degree = act.fiber;
        level.cover_betti = betti(cover.cover.graph());
        level.cover_vertices = static_cast<int>(cover.cover.graph().vertices().size());
        for (const auto& e : cover.cover.graph().edges())
            if (e.is_closed()) ++level.cover_edges;
        out.levels.push_back(level);
    }
    for (std::size_t i = 0; i + 1 < out.levels.size(); ++i)
        out.monotone.push_back(out.levels[i + 1].degree % out.levels[i].degree == 0 &&
                               out.levels[i + 1].cover_betti >= out.levels[i].cover_betti);
    return out;
}

} // namespace skeletonkit
