#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "skeletonkit/group.hpp"
#include "skeletonkit/semigraph.hpp"

namespace skeletonkit {

/// Finite graph of finite groups over a semi-graph: one group per vertex
/// and edge, and an injective embedding of each edge group into the
/// vertex group at every branch. A spanning tree of the truncated graph
/// and the branch order of every closed edge (tail = branches[0]) are
/// fixed at construction, so letters and normal forms are deterministic.
/// Open edges carry groups for bookkeeping but generate no letter.
class GraphOfGroups {
public:
    GraphOfGroups(SemiGraph graph,
                  std::map<std::string, FiniteGroup> vertex_groups,
                  std::map<std::string, FiniteGroup> edge_groups,
                  std::map<std::string, GroupEmbedding> branch_embeddings,
                  bool require_connected = true);

    const SemiGraph& graph() const { return graph_; }
    const FiniteGroup& vertex_group(const std::string& v) const;
    const FiniteGroup& edge_group(const std::string& e) const;
    /// Embedding of the edge group into the vertex group at this branch.
    const GroupEmbedding& embedding(const std::string& branch_id) const;
    bool is_tree_edge(const std::string& e) const { return tree_.count(e) != 0; }
    const std::set<std::string>& spanning_tree() const { return tree_; }

    /// Image of the edge group in the vertex group at a branch, sorted.
    std::vector<int> branch_subgroup(const std::string& e, int branch) const;

private:
    SemiGraph graph_;
    std::map<std::string, FiniteGroup> vgroups_;
    std::map<std::string, FiniteGroup> egroups_;
    std::map<std::string, GroupEmbedding> bembed_;
    std::set<std::string> tree_;
};

/// Per-vertex (genus, generalized valence) pair for the hyperbolic-surface
/// screen.
struct SymbolicVertexData {
    int genus = 0;
    int valence = 0;
};

struct MochizukiFailure {
    std::string vertex;
    std::string mechanism;  // "not-injective-type" | "not-totally-detached" | "not-verticially-slim"
    std::string detail;
};

struct MochizukiScreen {
    bool pass = true;
    std::vector<MochizukiFailure> failures;
};

/// Sufficient condition for the reconstruction hypotheses: every vertex
/// group is the prime-to-p quotient of a hyperbolic surface group, i.e.
/// 2g + n > 2 at every vertex. Failures name the obstruction mechanism:
/// a disc-like star blocks injectivity of the branch maps, an annulus- or
/// compact-annulus-like star blocks total detachment, and the remaining
/// low-complexity vertices have non-slim groups.
MochizukiScreen screen_mochizuki(const SemiGraph& g,
                                 const std::map<std::string, SymbolicVertexData>& data);

/// Action of the fundamental group on a finite fiber: a permutation for
/// each vertex-group element and one for the letter of each non-tree
/// closed edge. Tree-edge letters act as the identity.
struct PermutationAction {
    int fiber = 1;
    std::map<std::string, std::vector<std::vector<int>>> vertex_perms;
    std::map<std::string, std::vector<int>> letter_perms;
};

struct ActionReport {
    bool ok = true;
    std::string code;
    std::string message;
};

/// Size checks, homomorphism per vertex group, and the Britton relation
/// t * alpha(a) * t^-1 = omega(a) on every closed edge (t = identity on
/// tree edges). Reports the first violation.
ActionReport validate_action(const GraphOfGroups& gog, const PermutationAction& act);

bool is_transitive(const GraphOfGroups& gog, const PermutationAction& act);

struct GogCover {
    GraphOfGroups cover;
    std::map<std::string, std::string> vertex_map;  // cover -> base
    std::map<std::string, std::string> edge_map;    // cover -> base
};

/// Finite cover induced by an action: vertices over v are the orbits of
/// the vertex group on the fiber, edges over e the orbits of the edge
/// group image at the tail branch, carried across the letter for the head
/// attachment. Cover groups are point stabilizers, embeddings are induced
/// by conjugated restriction. The cover is connected iff the action is
/// transitive.
GogCover cover_from_action(const GraphOfGroups& gog, const PermutationAction& act);

struct TowerLevel {
    long long degree = 1;    // fiber size
    int cover_betti = 0;     // rank of the free discrete kernel
    int cover_vertices = 0;
    int cover_edges = 0;     // closed edges
};

struct TowerReport {
    std::vector<TowerLevel> levels;
    /// levels[i] vs levels[i+1]: degree divides and betti does not drop.
    std::vector<bool> monotone;
};

/// Finite-level bookkeeping for a tower of connected covers: per level
/// the cover graph, its Betti number (the rank of the discrete free group
/// in the extension) and the degree. Every action must validate and be
/// transitive.
TowerReport tempered_tower(const GraphOfGroups& gog,
                           const std::vector<PermutationAction>& actions);

} // namespace skeletonkit
