#include "skeletonkit/drinfeld.hpp"

#include <deque>

#include "skeletonkit/harmonic.hpp"  // is_prime

namespace skeletonkit {

long long LocalFieldParams::q() const {
    long long out = 1;
    for (int i = 0; i < f; ++i) {
        if (out > (1LL << 40)) throw domain_error("q-overflow", "residue field too large");
        out *= p;
    }
    return out;
}

LocalFieldParams make_local_field(long long p, int f, int e) {
    if (!is_prime(p)) throw domain_error("not-prime", "p must be prime");
    if (f < 1) throw domain_error("bad-inertia", "inertia degree must be >= 1");
    if (e < 1) throw domain_error("bad-ramification", "ramification index must be >= 1");
    return LocalFieldParams{p, f, e};
}

std::string BTVertex::id() const {
    std::string out = "n" + std::to_string(level);
    for (const auto& [m, d] : digits)
        out += "_" + std::to_string(m) + ":" + std::to_string(d);
    return out;
}

BTVertex BTVertex::parent() const {
    BTVertex p;
    p.level = level - 1;
    for (const auto& [m, d] : digits)
        if (m < level - 1) p.digits.emplace(m, d);
    return p;
}

std::vector<BTVertex> BTVertex::children(long long q) const {
    std::vector<BTVertex> out;
    for (long long d = 0; d < q; ++d) {
        BTVertex c;
        c.level = level + 1;
        c.digits = digits;
        if (d != 0) c.digits[level] = static_cast<int>(d);
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

// BFS over the tree; the standard vertex (level 0, no digits) is the root.
std::vector<std::pair<BTVertex, int>> ball_vertices_with_depth(long long q, int radius) {
    std::vector<std::pair<BTVertex, int>> out;
    std::deque<std::pair<BTVertex, int>> frontier;
    std::map<std::string, bool> seen;
    BTVertex root;
    out.push_back({root, 0});
    seen[root.id()] = true;
    frontier.push_back({root, 0});
    while (!frontier.empty()) {
        auto [v, d] = frontier.front();
        frontier.pop_front();
        if (d >= radius) continue;
        std::vector<BTVertex> next = v.children(q);
        next.push_back(v.parent());
        for (auto& w : next) {
            std::string id = w.id();
            if (seen.count(id)) continue;
            seen[id] = true;
            out.push_back({w, d + 1});
            frontier.push_back({std::move(w), d + 1});
        }
    }
    return out;
}

} // namespace

std::map<std::string, BTVertex> bt_ball_vertices(const LocalFieldParams& params, int radius) {
    if (radius < 0) throw domain_error("bad-radius", "radius must be >= 0");
    std::map<std::string, BTVertex> out;
    for (auto& [v, d] : ball_vertices_with_depth(params.q(), radius)) {
        (void)d;
        out.emplace(v.id(), v);
    }
    return out;
}

Skeleton bt_ball(const LocalFieldParams& params, int radius) {
    if (radius < 0) throw domain_error("bad-radius", "radius must be >= 0");
    const long long q = params.q();
    auto verts = ball_vertices_with_depth(q, radius);

    std::vector<std::string> vertices;
    std::map<std::string, DecoratedVertex> vdecor;
    vertices.reserve(verts.size());
    for (const auto& [v, depth] : verts) {
        std::string id = v.id();
        DecoratedVertex d;
        d.incomplete = (depth == radius && radius > 0) || (radius == 0);
        vdecor.emplace(id, d);
        vertices.push_back(std::move(id));
    }

    // Edge from each non-root vertex to its parent.
    std::vector<SGEdge> edges;
    std::map<std::string, SkeletonEdgeDecor> edecor;
    const SkeletonEdgeDecor decor{Length::fin(params.edge_length()), CuspType::Other};
    edges.reserve(verts.size());
    std::size_t k = 0;
    for (const auto& [v, depth] : verts) {
        (void)depth;
        if (v.level == 0 && v.digits.empty()) continue;  // root
        BTVertex up = v.parent();
        std::string vid = v.id();
        std::string uid = up.id();
        if (!vdecor.count(uid)) {
            // The root is the deepest common ancestor only for its own
            // subtree; vertices below level 0 hang from their parent at
            // one level up, which is in the ball whenever v is not on the
            // boundary sphere. A missing parent means v was reached from
            // a child, so connect v to that child instead -- already done
            // when the child was processed.
            continue;
        }
        SGEdge e;
        e.id = "e" + std::to_string(k++);
        e.branches = {{e.id + ".t", uid}, {e.id + ".h", vid}};
        edecor.emplace(e.id, decor);
        edges.push_back(std::move(e));
    }

    return Skeleton(SemiGraph(std::move(vertices), std::move(edges)), std::move(vdecor),
                    std::move(edecor), params.p, true);
}

RecoveredInvariants recover_invariants(const Skeleton& sk) {
    if (sk.is_empty()) throw domain_error("empty-skeleton", "no tree to read invariants from");
    long long valence = -1;
    for (const auto& v : sk.graph().vertices()) {
        if (sk.vertex(v).incomplete) continue;
        long long b = sk.graph().branch_count(v);
        if (valence < 0) valence = b;
        else if (valence != b)
            throw domain_error("non-uniform-valence",
                               "interior vertices do not share one valence");
    }
    if (valence < 3)
        throw domain_error("no-interior", "need interior vertices of valence >= 3");
    const long long q = valence - 1;
    for (long long p = 2; p <= q; ++p) {
        if (!is_prime(p) || q % p != 0) continue;
        long long rest = q;
        int f = 0;
        while (rest % p == 0) { rest /= p; ++f; }
        if (rest != 1)
            throw domain_error("not-prime-power",
                               "valence - 1 = " + std::to_string(q) + " is not a prime power");
        return {q, p, f};
    }
    throw domain_error("not-prime-power", "valence - 1 must be at least 2");
}

std::shared_ptr<const CenterSpace>
digit_center_space(const std::vector<BTVertex>& vertices, const LocalFieldParams& params) {
    // Distinct digits at the first differing exponent differ by a unit,
    // so |a - a'| is the norm of the uniformizer power at that exponent.
    std::vector<std::string> ids;
    std::map<std::string, const BTVertex*> by_id;
    for (const auto& v : vertices) {
        std::string id = v.id();
        if (by_id.emplace(id, &v).second) ids.push_back(std::move(id));
    }
    const std::size_t n = ids.size();
    std::vector<std::vector<LogValue>> table(n, std::vector<LogValue>(n));
    auto digit_at = [](const BTVertex& v, int m) {
        auto it = v.digits.find(m);
        return it == v.digits.end() ? 0 : it->second;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) { table[i][j] = LogValue::minus_inf(); continue; }
            const BTVertex& a = *by_id.at(ids[i]);
            const BTVertex& b = *by_id.at(ids[j]);
            std::set<int> exps;
            for (const auto& [m, d] : a.digits) { (void)d; exps.insert(m); }
            for (const auto& [m, d] : b.digits) { (void)d; exps.insert(m); }
            LogValue dist = LogValue::minus_inf();  // equal digit strings
            for (int m : exps) {
                if (digit_at(a, m) != digit_at(b, m)) {
                    dist = LogValue(Rational(-m) * Rational(params.f));
                    break;
                }
            }
            table[i][j] = dist;
        }
    }
    return std::make_shared<CenterSpace>(std::move(ids), std::move(table));
}

DiscPoint embed_vertex(const BTVertex& v, const LocalFieldParams& params,
                       std::shared_ptr<const CenterSpace> space) {
    if (params.e != 1)
        throw domain_error("ramified-field",
                           "the digit embedding is defined only for e = 1");
    return make_disc_point(std::move(space), v.id(),
                           LogValue(Rational(-v.level) * Rational(params.f)));
}

} // namespace skeletonkit
