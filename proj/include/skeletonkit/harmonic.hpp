#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skeletonkit/semigraph.hpp"

namespace skeletonkit {

/// An edge together with a chosen head branch. Closed edges have two
/// orientations, open edges exactly one (toward the attached vertex).
struct OrientedEdge {
    std::string edge;
    std::string head_branch;
};

/// Antisymmetric Z/ell-valued function on oriented edges with zero
/// divergence at every vertex. Values are stored on the canonical
/// orientation (head = last branch); the reverse is minus the value.
/// A loop contributes both orientations to its vertex, hence net zero.
struct HarmonicCochain {
    long long modulus = 0;
    std::map<std::string, long long> values;  // edge id -> value in [0, modulus)

    long long value_on(const SemiGraph& g, const OrientedEdge& oe) const;
};

struct CochainReport {
    bool ok = true;
    std::string code;     // "antisymmetry" unused by construction; "divergence" | "bad-value"
    std::string message;
};

/// Divergence check at every vertex (antisymmetry holds by representation).
CochainReport check_harmonic(const SemiGraph& g, const HarmonicCochain& c);

struct HarmBasis {
    std::vector<HarmonicCochain> generators;
    /// Dimension over Z/ell; present only for prime ell.
    std::optional<int> rank;
};

/// Generating set of Harm(g, Z/ell) via Smith-style elimination of the
/// divergence system over the integers; for prime ell the generators are
/// a basis and rank is its size. Requires g connected.
HarmBasis harm_basis(const SemiGraph& g, long long ell);

/// A harmonic cochain prescribed on three distinct open edges:
/// c(e) = a, c(e2) = a2, c(e3) = -(a+a2), zero on every other open edge.
/// Built by routing two vertex paths toward e3's vertex.
HarmonicCochain prescribed_cochain(const SemiGraph& g, long long ell,
                                   const std::string& e, const std::string& e2,
                                   const std::string& e3,
                                   long long a, long long a2);

/// Degree-ell topological cover determined by a Z/ell class on the
/// closed edges outside a spanning tree.
struct DecorationFreeCover {
    SemiGraph base;
    SemiGraph total;
    std::map<std::string, std::string> vertex_map;  // total -> base
    std::map<std::string, std::string> edge_map;    // total -> base
    long long degree = 0;
};

/// Realizes a class in H^1 of the underlying graph as a degree-ell cover:
/// the total space has vertex set V x Z/ell, a closed edge with class s
/// joins (v,i) to (w,i+s), spanning-tree edges use s = 0, and open edges
/// lift once per vertex lift. Keys of `classes` must be closed non-tree
/// edges; the spanning tree is the BFS tree over id-sorted data.
DecorationFreeCover cover_from_class(const SemiGraph& g, long long ell,
                                     const std::map<std::string, long long>& classes);

/// The spanning tree cover_from_class uses, as a set of edge ids.
std::vector<std::string> spanning_tree_edges(const SemiGraph& g);

/// Rank identity for the first tame cohomology of a curve with skeleton g:
/// betti(g) + sum over vertices of 2*genus + rank Harm(g, Z/ell).
/// `genus` maps every vertex of g; ell must be prime.
int h1_rank(const SemiGraph& g, const std::map<std::string, int>& genus, long long ell);

bool is_prime(long long n);

} // namespace skeletonkit
