#include "skeletonkit/skeleton.hpp"

#include <algorithm>
#include <deque>

namespace skeletonkit {

Length Length::parse(const std::string& s) {
    if (s == "inf") return Length::inf();
    return Length::fin(Rational::parse(s));
}

std::string to_string(CuspType t) {
    switch (t) {
        case CuspType::CoronalFinite: return "coronal_finite";
        case CuspType::PuncturedDisc: return "punctured_disc";
        case CuspType::Other: return "other";
    }
    return "other";
}

CuspType cusp_type_from_string(const std::string& s) {
    if (s == "coronal_finite") return CuspType::CoronalFinite;
    if (s == "punctured_disc") return CuspType::PuncturedDisc;
    if (s == "other") return CuspType::Other;
    throw domain_error("bad-cusp-type", "unknown cusp type '" + s + "'");
}

std::string to_string(AnabelianCertificate c) {
    switch (c) {
        case AnabelianCertificate::RelCompact: return "RelCompact";
        case AnabelianCertificate::AllCuspsCoronalFinite: return "AllCuspsCoronalFinite";
        case AnabelianCertificate::FiniteGraphMixedCusps: return "FiniteGraphMixedCusps";
        case AnabelianCertificate::None: return "None";
    }
    return "None";
}

Skeleton::Skeleton(SemiGraph graph,
                   std::map<std::string, DecoratedVertex> vdecor,
                   std::map<std::string, SkeletonEdgeDecor> edecor,
                   long long residue_char,
                   bool mixed_characteristic)
    : empty_(false), graph_(std::move(graph)), vdecor_(std::move(vdecor)),
      edecor_(std::move(edecor)), p_(residue_char), mixed_(mixed_characteristic) {
    if (graph_.vertices().empty())
        throw domain_error("empty-skeleton", "use Skeleton::empty() for the empty skeleton");
    if (p_ < 2)
        throw domain_error("bad-residue-char", "residue characteristic exponent must be >= 2");
    auto rep = validate(graph_);
    if (!rep.ok) throw domain_error("invalid-semigraph", rep.message);
    if (!is_connected(graph_))
        throw domain_error("disconnected", "skeleton must be connected");

    for (const auto& v : graph_.vertices()) {
        auto it = vdecor_.find(v);
        if (it == vdecor_.end())
            throw domain_error("missing-decor", "no decoration for vertex '" + v + "'");
        const DecoratedVertex& d = it->second;
        if (d.genus < 0 || d.missing_branches < 0)
            throw domain_error("bad-decor", "negative genus or missing-branch count at '" + v + "'");
        if (d.point_type != 2 && d.point_type != 3)
            throw domain_error("bad-decor", "point type must be 2 or 3 at '" + v + "'");
        if (d.on_boundary != (d.missing_branches > 0))
            throw domain_error("bad-decor",
                               "on_boundary must hold exactly when missing_branches > 0 ('" + v + "')");
        if (d.point_type == 3) {
            if (d.genus != 0)
                throw domain_error("bad-decor", "type-3 vertex '" + v + "' must have genus 0");
            if (graph_.branch_count(v) + d.missing_branches > 2)
                throw domain_error("bad-decor",
                                   "type-3 vertex '" + v + "' admits at most two branches");
        }
    }
    if (vdecor_.size() != graph_.vertices().size())
        throw domain_error("bad-decor", "decoration for unknown vertex");

    for (const auto& e : graph_.edges()) {
        auto it = edecor_.find(e.id);
        if (it == edecor_.end())
            throw domain_error("missing-decor", "no decoration for edge '" + e.id + "'");
        const SkeletonEdgeDecor& d = it->second;
        if (!d.length.infinite && !(d.length.value > Rational(0)))
            throw domain_error("bad-decor", "edge '" + e.id + "' must have positive length");
        if (e.is_open()) {
            if (d.cusp == CuspType::PuncturedDisc && !d.length.infinite)
                throw domain_error("bad-decor",
                                   "punctured-disc cusp '" + e.id + "' must have infinite length");
            if (d.cusp == CuspType::CoronalFinite && d.length.infinite)
                throw domain_error("bad-decor",
                                   "coronal-finite cusp '" + e.id + "' must have finite length");
        }
    }
    if (edecor_.size() != graph_.edges().size())
        throw domain_error("bad-decor", "decoration for unknown edge");
}

Skeleton Skeleton::empty(long long residue_char, bool mixed_characteristic) {
    Skeleton sk;
    sk.empty_ = true;
    sk.p_ = residue_char;
    sk.mixed_ = mixed_characteristic;
    return sk;
}

const DecoratedVertex& Skeleton::vertex(const std::string& id) const {
    auto it = vdecor_.find(id);
    if (it == vdecor_.end())
        throw domain_error("unknown-vertex", "vertex '" + id + "' not in skeleton");
    return it->second;
}

const SkeletonEdgeDecor& Skeleton::edge(const std::string& id) const {
    auto it = edecor_.find(id);
    if (it == edecor_.end())
        throw domain_error("unknown-edge", "edge '" + id + "' not in skeleton");
    return it->second;
}

int generalized_valence(const Skeleton& sk, const std::string& v) {
    return sk.graph().branch_count(v) + sk.vertex(v).missing_branches;
}

bool is_node(const Skeleton& sk, const std::string& v) {
    const DecoratedVertex& d = sk.vertex(v);
    return sk.graph().branch_count(v) >= 3 || d.on_boundary || d.genus > 0;
}

bool is_hyperbolic_node(const Skeleton& sk, const std::string& v) {
    if (!is_node(sk, v))
        throw domain_error("not-a-node", "vertex '" + v + "' is not a node");
    return 2 * sk.vertex(v).genus + generalized_valence(sk, v) > 2;
}

std::set<std::string> node_set(const Skeleton& sk) {
    std::set<std::string> out;
    if (sk.is_empty()) return out;
    for (const auto& v : sk.graph().vertices())
        if (is_node(sk, v)) out.insert(v);
    return out;
}

void require_valid_triangulation(const Skeleton& sk, const std::set<std::string>& S) {
    for (const auto& v : S) sk.vertex(v);
    for (const auto& v : node_set(sk))
        if (!S.count(v))
            throw domain_error("invalid-triangulation",
                               "triangulation must contain node '" + v + "'");
}

bool is_superfluous(const Skeleton& sk, const std::set<std::string>& S, const std::string& s) {
    if (!S.count(s))
        throw domain_error("not-in-triangulation", "vertex '" + s + "' is not in S");
    require_valid_triangulation(sk, S);

    const DecoratedVertex& d = sk.vertex(s);
    if (d.on_boundary || d.genus > 0) return false;

    // Component of s in the skeleton cut along S \ {s}. Cutting removes
    // the other triangulation points; edges toward them remain as open
    // directions, so only edges between kept vertices glue the component.
    const SemiGraph& g = sk.graph();
    std::set<std::string> comp{s};
    std::deque<std::string> queue{s};
    while (!queue.empty()) {
        std::string v = queue.front();
        queue.pop_front();
        for (std::size_t ei : g.incident_edges(v)) {
            const SGEdge& e = g.edges()[ei];
            if (!e.is_closed()) continue;
            for (const auto& b : e.branches) {
                const std::string& w = b.vertex;
                if (w == v || comp.count(w)) continue;
                if (S.count(w) && w != s) continue;  // cut point
                comp.insert(w);
                queue.push_back(w);
            }
        }
    }

    // An interval has no interior branch point, no cycle, and no closed
    // end; a semi-open interval may close up exactly at s.
    int internal_edges = 0;
    for (const auto& e : g.edges()) {
        if (e.is_closed() && comp.count(e.branches[0].vertex) && comp.count(e.branches[1].vertex))
            ++internal_edges;
    }
    if (internal_edges != static_cast<int>(comp.size()) - 1) return false;  // cycle
    for (const auto& v : comp) {
        int b = g.branch_count(v);
        if (b > 2) return false;
        if (v == s) {
            if (b < 1) return false;  // a point is not an interval
        } else if (b != 2) {
            return false;  // closed end away from s
        }
    }
    return true;
}

std::set<std::string> minimize_triangulation(const Skeleton& sk, std::set<std::string> S) {
    require_valid_triangulation(sk, S);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& s : S) {
            if (is_superfluous(sk, S, s)) {
                S.erase(s);
                changed = true;
                break;
            }
        }
    }
    return S;
}

CompactClassification classify_compact(const Skeleton& sk) {
    if (sk.is_empty()) return {CompactClass::ProjectiveLine, {}};
    for (const auto& e : sk.graph().edges()) {
        if (e.is_open())
            throw domain_error("not-compact", "compact skeleton cannot have open edges");
        if (sk.edge(e.id).length.infinite)
            throw domain_error("not-compact", "compact skeleton cannot have infinite lengths");
    }
    auto nodes = node_set(sk);
    if (!nodes.empty()) return {CompactClass::HasMinimal, nodes};
    // No node and nonempty: the skeleton must be a circle.
    for (const auto& v : sk.graph().vertices())
        if (sk.graph().branch_count(v) != 2)
            throw domain_error("invalid-compact-skeleton",
                               "node-free compact skeleton must be a circle");
    return {CompactClass::TateCircle, {}};
}

CurveClassification classify_curve(const Skeleton& sk) {
    CurveClassification out;
    if (sk.is_empty()) {
        out.rel_compact_edges = true;
        return out;
    }
    auto nodes = node_set(sk);
    out.hyperbolic = !nodes.empty() &&
        std::all_of(nodes.begin(), nodes.end(),
                    [&](const std::string& v) { return is_hyperbolic_node(sk, v); });
    out.rel_compact_edges = sk.graph().open_edge_count() == 0;
    if (!out.hyperbolic) return out;

    if (out.rel_compact_edges) {
        out.certificate = AnabelianCertificate::RelCompact;
        return out;
    }
    bool all_coronal = true, all_coronal_or_disc = true;
    for (const auto& e : sk.graph().edges()) {
        if (!e.is_open()) continue;
        CuspType t = sk.edge(e.id).cusp;
        if (t != CuspType::CoronalFinite) all_coronal = false;
        if (t != CuspType::CoronalFinite && t != CuspType::PuncturedDisc)
            all_coronal_or_disc = false;
    }
    if (sk.mixed_characteristic() && all_coronal)
        out.certificate = AnabelianCertificate::AllCuspsCoronalFinite;
    else if (sk.mixed_characteristic() && all_coronal_or_disc)
        out.certificate = AnabelianCertificate::FiniteGraphMixedCusps;  // graph is finite by construction
    return out;
}

Skeleton mark_points(const Skeleton& sk, const std::vector<Marking>& markings) {
    std::vector<std::string> vertices;
    std::vector<SGEdge> edges;
    std::map<std::string, DecoratedVertex> vdecor;
    std::map<std::string, SkeletonEdgeDecor> edecor;
    if (!sk.is_empty()) {
        vertices = sk.graph().vertices();
        edges = sk.graph().edges();
        vdecor = sk.vertex_decor();
        edecor = sk.edge_decor();
    } else {
        for (const auto& m : markings)
            if (m.kind != Marking::Kind::SharedNew || !m.attach_vertex.empty())
                throw domain_error("bad-marking",
                                   "markings on the empty skeleton must share a new vertex");
    }

    auto ensure_vertex = [&](const std::string& id) {
        if (std::find(vertices.begin(), vertices.end(), id) == vertices.end()) {
            vertices.push_back(id);
            vdecor[id] = DecoratedVertex{};
        }
    };

    int k = 0;
    for (const auto& m : markings) {
        std::string attach_at;
        switch (m.kind) {
            case Marking::Kind::AtVertex: {
                sk.vertex(m.target);
                attach_at = m.target;
                break;
            }
            case Marking::Kind::OnEdge: {
                auto it = std::find_if(edges.begin(), edges.end(),
                                       [&](const SGEdge& e) { return e.id == m.target; });
                if (it == edges.end())
                    throw domain_error("unknown-edge", "edge '" + m.target + "' not in skeleton");
                SGEdge e = *it;
                SkeletonEdgeDecor d = edecor.at(e.id);
                if (!(m.offset > Rational(0)) ||
                    (!d.length.infinite && !(m.offset < d.length.value)))
                    throw domain_error("bad-offset",
                                       "offset must lie strictly inside edge '" + e.id + "'");
                std::string nv = "m" + std::to_string(k);
                ensure_vertex(nv);
                edges.erase(it);
                edecor.erase(e.id);

                SGEdge near;  // tail side, toward the split point
                near.id = e.id + ".a";
                near.branches = {{e.branches[0].id, e.branches[0].vertex},
                                 {e.id + ".a.h", nv}};
                edecor[near.id] = {Length::fin(m.offset), CuspType::Other};
                edges.push_back(near);

                SGEdge far;
                far.id = e.id + ".b";
                if (e.is_closed()) {
                    far.branches = {{e.id + ".b.t", nv},
                                    {e.branches[1].id, e.branches[1].vertex}};
                    Length rest = d.length.infinite ? Length::inf()
                                                    : Length::fin(d.length.value - m.offset);
                    edecor[far.id] = {rest, CuspType::Other};
                } else {
                    far.branches = {{e.id + ".b.t", nv}};
                    Length rest = d.length.infinite ? Length::inf()
                                                    : Length::fin(d.length.value - m.offset);
                    edecor[far.id] = {rest, d.cusp};
                }
                edges.push_back(far);
                attach_at = nv;
                break;
            }
            case Marking::Kind::SharedNew: {
                bool existed =
                    std::find(vertices.begin(), vertices.end(), m.target) != vertices.end();
                ensure_vertex(m.target);
                if (!existed && !m.attach_vertex.empty()) {
                    sk.vertex(m.attach_vertex);
                    SGEdge conn;
                    conn.id = "conn:" + m.target;
                    conn.branches = {{conn.id + ".t", m.attach_vertex},
                                     {conn.id + ".h", m.target}};
                    edges.push_back(conn);
                    edecor[conn.id] = {m.connector, CuspType::Other};
                }
                attach_at = m.target;
                break;
            }
        }
        SGEdge cusp;
        cusp.id = "cusp" + std::to_string(k);
        cusp.branches = {{cusp.id + ".b", attach_at}};
        edges.push_back(cusp);
        edecor[cusp.id] = {Length::inf(), CuspType::PuncturedDisc};
        ++k;
    }

    return Skeleton(SemiGraph(std::move(vertices), std::move(edges)),
                    std::move(vdecor), std::move(edecor),
                    sk.residue_char(), sk.mixed_characteristic());
}

int h1_rank(const Skeleton& sk, long long ell) {
    if (ell == sk.residue_char())
        throw domain_error("bad-modulus", "ell must differ from the residue characteristic");
    if (sk.is_empty()) {
        if (!is_prime(ell)) throw domain_error("not-prime", "h1_rank requires a prime modulus");
        return 0;
    }
    std::map<std::string, int> genus;
    for (const auto& [v, d] : sk.vertex_decor()) genus[v] = d.genus;
    return h1_rank(sk.graph(), genus, ell);
}

} // namespace skeletonkit
