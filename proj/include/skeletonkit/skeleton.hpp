#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skeletonkit/rational.hpp"
#include "skeletonkit/semigraph.hpp"

namespace skeletonkit {

/// Positive rational edge length, or +inf (infinite-modulus annulus).
struct Length {
    bool infinite = false;
    Rational value;  // meaningful when finite

    static Length inf() { return {true, Rational()}; }
    static Length fin(const Rational& r) { return {false, r}; }

    friend bool operator==(const Length& a, const Length& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
    std::string str() const { return infinite ? "inf" : value.str(); }
    static Length parse(const std::string& s);
};

enum class CuspType { CoronalFinite, PuncturedDisc, Other };

std::string to_string(CuspType t);
CuspType cusp_type_from_string(const std::string& s);

/// Vertex decorations: genus, point type (2 or 3), count of residual
/// points missed by the branches (positive exactly on the analytic
/// boundary), plus a truncation marker for ball boundaries so valence
/// assertions can skip vertices whose star was cut off.
struct DecoratedVertex {
    int genus = 0;
    int point_type = 2;
    int missing_branches = 0;   // n-tilde
    bool on_boundary = false;
    bool incomplete = false;    // artifact truncation, not part of the geometry
};

struct SkeletonEdgeDecor {
    Length length = Length::fin(Rational(1));
    CuspType cusp = CuspType::Other;  // meaningful for open edges only
};

/// Decorated, metrized skeleton. The empty skeleton (projective line) is
/// a distinguished sentinel with no graph at all.
class Skeleton {
public:
    Skeleton() = default;

    /// Validating constructor; enforces the decoration invariants and
    /// connectivity of the underlying semi-graph.
    Skeleton(SemiGraph graph,
             std::map<std::string, DecoratedVertex> vdecor,
             std::map<std::string, SkeletonEdgeDecor> edecor,
             long long residue_char,
             bool mixed_characteristic);

    static Skeleton empty(long long residue_char, bool mixed_characteristic);

    bool is_empty() const { return empty_; }
    const SemiGraph& graph() const { return graph_; }
    const DecoratedVertex& vertex(const std::string& id) const;
    const SkeletonEdgeDecor& edge(const std::string& id) const;
    long long residue_char() const { return p_; }
    bool mixed_characteristic() const { return mixed_; }

    const std::map<std::string, DecoratedVertex>& vertex_decor() const { return vdecor_; }
    const std::map<std::string, SkeletonEdgeDecor>& edge_decor() const { return edecor_; }

private:
    bool empty_ = true;
    SemiGraph graph_;
    std::map<std::string, DecoratedVertex> vdecor_;
    std::map<std::string, SkeletonEdgeDecor> edecor_;
    long long p_ = 2;
    bool mixed_ = true;
};

/// Branch valence in the skeleton plus the missing-branch count.
int generalized_valence(const Skeleton& sk, const std::string& v);

/// Valence >= 3, or on the analytic boundary, or positive genus.
bool is_node(const Skeleton& sk, const std::string& v);

/// 2g + n > 2 with n the generalized valence. Only defined on nodes.
bool is_hyperbolic_node(const Skeleton& sk, const std::string& v);

std::set<std::string> node_set(const Skeleton& sk);

/// A triangulation vertex set: subset of the skeleton's vertices
/// containing every node.
void require_valid_triangulation(const Skeleton& sk, const std::set<std::string>& S);

/// Whether S minus {s} is still a triangulation: s off the boundary, of
/// genus zero, and the component of s in the skeleton cut along the other
/// triangulation points is an open interval or a semi-open interval whose
/// closed end is s.
bool is_superfluous(const Skeleton& sk, const std::set<std::string>& S, const std::string& s);

/// Removes superfluous points until none remain. The fixed point is
/// independent of removal order, and equals the node set whenever the
/// node set is nonempty.
std::set<std::string> minimize_triangulation(const Skeleton& sk, std::set<std::string> S);

enum class CompactClass { HasMinimal, TateCircle, ProjectiveLine };

struct CompactClassification {
    CompactClass kind;
    std::set<std::string> minimal;  // the node set when kind == HasMinimal
};

/// The compact trichotomy: non-empty node set (smallest triangulation),
/// circle skeleton with no node (Tate curve), or empty skeleton
/// (projective line). Requires a compact input: no open edges, all
/// lengths finite.
CompactClassification classify_compact(const Skeleton& sk);

enum class AnabelianCertificate { RelCompact, AllCuspsCoronalFinite, FiniteGraphMixedCusps, None };

std::string to_string(AnabelianCertificate c);

struct CurveClassification {
    bool hyperbolic = false;
    bool rel_compact_edges = false;
    AnabelianCertificate certificate = AnabelianCertificate::None;
};

/// Hyperbolicity (nonempty node set, every node hyperbolic) and the
/// strongest applicable anabelian certificate, in order: relatively
/// compact edges; all cusps coronal-finite over a mixed-characteristic
/// field; finite skeleton with coronal-finite or punctured-disc cusps
/// over a mixed-characteristic field. None is not a negative verdict.
CurveClassification classify_curve(const Skeleton& sk);

/// Where a marked point retracts to.
struct Marking {
    enum class Kind { AtVertex, OnEdge, SharedNew } kind;
    std::string target;          // vertex id | edge id | fresh vertex name
    Rational offset;             // OnEdge: distance from the tail branch, in (0, length)
    std::string attach_vertex;   // SharedNew on a nonempty skeleton: connection point
    Length connector = Length::fin(Rational(1));  // SharedNew: connecting edge length

    static Marking at_vertex(std::string v) {
        return {Kind::AtVertex, std::move(v), Rational(), "", Length::fin(Rational(1))};
    }
    static Marking on_edge(std::string e, Rational off) {
        return {Kind::OnEdge, std::move(e), off, "", Length::fin(Rational(1))};
    }
    static Marking shared_new(std::string name, std::string attach = "",
                              Length connector = Length::fin(Rational(1))) {
        return {Kind::SharedNew, std::move(name), Rational(), std::move(attach), connector};
    }
};

/// Skeleton of the curve minus the marked rigid points: each marking adds
/// an infinite punctured-disc cusp at its retraction point. Edge-interior
/// markings split the edge; markings retracting into one disc share a new
/// vertex. An empty skeleton becomes the convex hull of its markings.
Skeleton mark_points(const Skeleton& sk, const std::vector<Marking>& markings);

/// h1 rank identity evaluated on a decorated skeleton; ell must be a
/// prime different from the residue characteristic.
int h1_rank(const Skeleton& sk, long long ell);

} // namespace skeletonkit
