#include "skeletonkit/bass_serre.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace skeletonkit {

WordAlgebra::WordAlgebra(std::shared_ptr<const GraphOfGroups> gog) : gog_(std::move(gog)) {
    if (!gog_) throw domain_error("no-gog", "word algebra requires a graph of groups");
    for (const auto& e : gog_->graph().edges()) {
        if (!e.is_closed()) continue;  // open edges generate no letter
        for (int dir = 0; dir < 2; ++dir) {
            const Branch& near = e.branches[dir];
            const FiniteGroup& G = gog_->vertex_group(near.vertex);
            const GroupEmbedding& emb = gog_->embedding(near.id);

            BranchData bd;
            bd.in_image.assign(G.order(), false);
            for (int img : emb.images()) bd.in_image[img] = true;

            std::vector<int> rep_of(G.order(), -1);
            for (int r = 0; r < G.order(); ++r) {
                if (rep_of[r] >= 0) continue;
                bd.reps.push_back(r);  // ascending scan: first unseen element leads its coset
                for (int img : emb.images()) rep_of[G.mul(r, img)] = r;
            }
            bd.decomp.assign(G.order(), {0, 0});
            for (int x = 0; x < G.order(); ++x) {
                int rho = rep_of[x];
                int h = G.mul(G.inv(rho), x);  // x = rho * h with h in the image
                bd.decomp[x] = {rho, emb.preimage(h)};
            }
            branch_data_.emplace(near.id, std::move(bd));
        }
    }
}

const WordAlgebra::BranchData& WordAlgebra::data(const Step& s) const {
    const SGEdge& e = gog_->graph().edge(s.edge);
    if (!e.is_closed())
        throw domain_error("open-edge-step", "open edges cannot be traversed");
    return branch_data_.at(e.branches[s.dir].id);
}

std::string WordAlgebra::near_vertex(const Step& s) const {
    return gog_->graph().edge(s.edge).branches[s.dir].vertex;
}

std::string WordAlgebra::far_vertex(const Step& s) const {
    return gog_->graph().edge(s.edge).branches[1 - s.dir].vertex;
}

const GroupEmbedding& WordAlgebra::near_embedding(const Step& s) const {
    return gog_->embedding(gog_->graph().edge(s.edge).branches[s.dir].id);
}

const std::vector<int>& WordAlgebra::coset_reps(const Step& s) const { return data(s).reps; }

std::pair<int, int> WordAlgebra::decompose(const Step& s, int r) const {
    return data(s).decomp.at(r);
}

std::string WordAlgebra::end_vertex(const PathWord& w) const {
    std::string v = w.start;
    for (const auto& syl : w.syllables) {
        if (near_vertex(syl.step) != v)
            throw domain_error("broken-word", "syllable does not continue the path");
        v = far_vertex(syl.step);
    }
    return v;
}

PathWord WordAlgebra::normalize(const PathWord& w) const {
    PathWord out;
    out.start = w.start;
    std::string at = w.start;
    int carry = 0;  // pending left factor living at `at`
    for (const auto& syl : w.syllables) {
        if (near_vertex(syl.step) != at)
            throw domain_error("broken-word", "syllable does not continue the path");
        const FiniteGroup& G = gog_->vertex_group(at);
        int r = G.mul(carry, syl.rep);
        bool cancelled = false;
        if (!out.syllables.empty()) {
            const Syllable& top = out.syllables.back();
            if (top.step == syl.step.reversed() && data(syl.step).in_image[r]) {
                // ... rho L r L^-1 = rho * near(a) with near(a) the push of
                // r = far(a) back across the previous step.
                const GroupEmbedding& far_emb = near_embedding(syl.step);
                const GroupEmbedding& near_emb = near_embedding(top.step);
                int a = far_emb.preimage(r);
                const std::string prev = near_vertex(top.step);
                const FiniteGroup& P = gog_->vertex_group(prev);
                carry = P.mul(top.rep, near_emb.apply(a));
                out.syllables.pop_back();
                at = prev;
                cancelled = true;
            }
        }
        if (!cancelled) {
            auto [rho, a] = decompose(syl.step, r);
            out.syllables.push_back({rho, syl.step});
            carry = near_embedding(syl.step.reversed()).apply(a);
            at = far_vertex(syl.step);
        }
    }
    out.tail = gog_->vertex_group(at).mul(carry, w.tail);
    return out;
}

PathWord WordAlgebra::inverse(const PathWord& w) const {
    PathWord raw;
    raw.start = end_vertex(w);
    const FiniteGroup& End = gog_->vertex_group(raw.start);
    int lead = End.inv(w.tail);
    for (std::size_t i = w.syllables.size(); i-- > 0;) {
        raw.syllables.push_back({lead, w.syllables[i].step.reversed()});
        const std::string v = near_vertex(w.syllables[i].step);
        lead = gog_->vertex_group(v).inv(w.syllables[i].rep);
    }
    raw.tail = lead;
    return normalize(raw);
}

PathWord WordAlgebra::concat(const PathWord& a, const PathWord& b) const {
    if (end_vertex(a) != b.start)
        throw domain_error("not-composable", "path words do not compose");
    PathWord raw;
    raw.start = a.start;
    raw.syllables = a.syllables;
    if (b.syllables.empty()) {
        raw.tail = gog_->vertex_group(b.start).mul(a.tail, b.tail);
    } else {
        Syllable first = b.syllables[0];
        first.rep = gog_->vertex_group(b.start).mul(a.tail, first.rep);
        raw.syllables.push_back(first);
        raw.syllables.insert(raw.syllables.end(), b.syllables.begin() + 1, b.syllables.end());
        raw.tail = b.tail;
    }
    return normalize(raw);
}

bool WordAlgebra::is_normal(const PathWord& w) const {
    std::string at = w.start;
    for (std::size_t i = 0; i < w.syllables.size(); ++i) {
        const Syllable& syl = w.syllables[i];
        if (near_vertex(syl.step) != at) return false;
        const auto& reps = coset_reps(syl.step);
        if (std::find(reps.begin(), reps.end(), syl.rep) == reps.end()) return false;
        if (i > 0 && w.syllables[i - 1].step == syl.step.reversed() && syl.rep == 0) return false;
        at = far_vertex(syl.step);
    }
    return true;
}

std::string WordAlgebra::key(const PathWord& w) {
    std::string k = w.start + "|";
    for (const auto& syl : w.syllables) {
        k += std::to_string(syl.rep) + "," + syl.step.edge + "," +
             std::to_string(syl.step.dir) + ";";
    }
    k += "|" + std::to_string(w.tail);
    return k;
}

long long expected_tree_degree(const GraphOfGroups& gog, const std::string& v) {
    long long deg = 0;
    for (const auto& e : gog.graph().edges()) {
        if (!e.is_closed()) continue;
        for (int dir = 0; dir < 2; ++dir) {
            if (e.branches[dir].vertex != v) continue;
            deg += gog.vertex_group(v).order() /
                   static_cast<long long>(gog.edge_group(e.id).order());
        }
    }
    return deg;
}

BassSerreBall bass_serre_ball(std::shared_ptr<const GraphOfGroups> gog, int radius,
                              const std::string& root) {
    if (radius < 0) throw domain_error("bad-radius", "radius must be >= 0");
    if (!gog) throw domain_error("no-gog", "ball requires a graph of groups");
    if (gog->graph().vertices().empty())
        throw domain_error("empty-gog", "graph of groups has no vertices");

    BassSerreBall ball;
    ball.gog = gog;
    ball.root_vertex = root.empty() ? gog->graph().vertices().front() : root;
    gog->vertex_group(ball.root_vertex);
    ball.radius = radius;

    WordAlgebra algebra(gog);

    PathWord root_word;
    root_word.start = ball.root_vertex;
    ball.vertices.push_back({root_word, ball.root_vertex, -1, 0});

    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int xi = frontier.front();
        frontier.pop_front();
        if (ball.vertices[xi].depth >= radius) continue;
        const BallVertex x = ball.vertices[xi];

        for (const auto& e : gog->graph().edges()) {
            if (!e.is_closed()) continue;
            for (int dir = 0; dir < 2; ++dir) {
                Step step{e.id, dir};
                if (e.branches[dir].vertex != x.base_vertex) continue;
                for (int rep : algebra.coset_reps(step)) {
                    if (!x.word.syllables.empty() &&
                        x.word.syllables.back().step == step.reversed() && rep == 0)
                        continue;  // backtrack toward the parent
                    PathWord w = x.word;
                    w.syllables.push_back({rep, step});
                    int ci = static_cast<int>(ball.vertices.size());
                    ball.vertices.push_back(
                        {w, algebra.far_vertex(step), xi, x.depth + 1});
                    ball.edges.push_back({xi, ci, step, rep});
                    frontier.push_back(ci);
                }
            }
        }
    }
    return ball;
}

namespace {

std::vector<int> incident_ball_edges(const BassSerreBall& ball, int x) {
    std::vector<int> out;
    for (std::size_t i = 0; i < ball.edges.size(); ++i)
        if (ball.edges[i].parent == x || ball.edges[i].child == x)
            out.push_back(static_cast<int>(i));
    return out;
}

// Loop at the root conjugating the model stabilizer: word * g * word^-1.
PathWord stabilizer_element(const WordAlgebra& algebra, const PathWord& word, int g) {
    PathWord with_tail = word;
    with_tail.tail = g;
    return algebra.concat(with_tail, algebra.inverse(word));
}

std::set<std::string> stabilizer_set(const WordAlgebra& algebra, const GraphOfGroups& gog,
                                     const BallVertex& x) {
    std::set<std::string> out;
    const FiniteGroup& G = gog.vertex_group(x.base_vertex);
    for (int g = 0; g < G.order(); ++g)
        out.insert(WordAlgebra::key(stabilizer_element(algebra, x.word, g)));
    return out;
}

bool same_class_impl(const WordAlgebra& algebra, const BassSerreBall& ball, int x, int y,
                     const std::set<std::string>* target_of_y) {
    const BallVertex& vx = ball.vertices.at(x);
    const BallVertex& vy = ball.vertices.at(y);
    if (vx.base_vertex != vy.base_vertex)
        return false;  // conjugator words do not compose
    // Candidate deck element carrying x to y, then the elementwise check
    // that it conjugates the stabilizer of x onto the stabilizer of y.
    PathWord h = algebra.concat(vy.word, algebra.inverse(vx.word));
    PathWord hinv = algebra.inverse(h);
    std::set<std::string> local;
    if (!target_of_y) {
        local = stabilizer_set(algebra, algebra.gog(), vy);
        target_of_y = &local;
    }
    const FiniteGroup& G = algebra.gog().vertex_group(vx.base_vertex);
    for (int g = 0; g < G.order(); ++g) {
        PathWord conj = algebra.concat(
            algebra.concat(h, stabilizer_element(algebra, vx.word, g)), hinv);
        if (!target_of_y->count(WordAlgebra::key(conj))) return false;
    }
    return true;
}

} // namespace

bool same_vertex_class(const BassSerreBall& ball, int x, int y) {
    const WordAlgebra algebra(ball.gog);
    return same_class_impl(algebra, ball, x, y, nullptr);
}

bool audit_normal_forms(const BassSerreBall& ball) {
    if (ball.edges.size() + 1 != ball.vertices.size()) return false;
    WordAlgebra algebra(ball.gog);
    std::set<std::string> keys;
    for (const auto& v : ball.vertices) {
        if (!algebra.is_normal(v.word)) return false;
        if (algebra.end_vertex(v.word) != v.base_vertex) return false;
        if (!keys.insert(WordAlgebra::key(v.word)).second) return false;
    }
    return true;
}

LabeledQuotient reconstruct_quotient(const BassSerreBall& ball) {
    if (ball.vertices.empty())
        throw domain_error("empty-ball", "cannot reconstruct from an empty ball");
    const GraphOfGroups& gog = *ball.gog;
    WordAlgebra algebra(ball.gog);

    // Group ball vertices into deck-orbit classes by stabilizer comparison.
    std::vector<int> class_of(ball.vertices.size(), -1);
    std::vector<int> class_reps;
    std::vector<std::set<std::string>> class_stab_set;
    for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
        for (std::size_t c = 0; c < class_reps.size(); ++c) {
            if (same_class_impl(algebra, ball, static_cast<int>(i), class_reps[c],
                                &class_stab_set[c])) {
                class_of[i] = static_cast<int>(c);
                break;
            }
        }
        if (class_of[i] < 0) {
            class_of[i] = static_cast<int>(class_reps.size());
            class_reps.push_back(static_cast<int>(i));
            class_stab_set.push_back(stabilizer_set(algebra, gog, ball.vertices[i]));
        }
    }

    // Interior = full star present, so the class structure around the
    // representative is trustworthy.
    auto is_interior = [&](int x) {
        return static_cast<long long>(incident_ball_edges(ball, x).size()) ==
               expected_tree_degree(gog, ball.vertices[x].base_vertex);
    };
    std::vector<int> interior_rep(class_reps.size(), -1);
    for (std::size_t i = 0; i < ball.vertices.size(); ++i)
        if (interior_rep[class_of[i]] < 0 && is_interior(static_cast<int>(i)))
            interior_rep[class_of[i]] = static_cast<int>(i);
    for (std::size_t c = 0; c < class_reps.size(); ++c)
        if (interior_rep[c] < 0)
            throw domain_error("radius-too-small",
                               "a stabilizer class has no vertex with a complete star");

    // Edge orbits: a deck transformation preserves the step label, so the
    // orbit of a tree edge is read off its base edge; one representative
    // pins the quotient attachment.
    std::map<std::string, const BallEdge*> edge_rep;
    for (const auto& be : ball.edges)
        if (!edge_rep.count(be.step.edge)) edge_rep[be.step.edge] = &be;

    // The star of an interior representative must expose every direction
    // its base vertex carries; otherwise the ball is too small to certify
    // the quotient's branch structure.
    for (std::size_t c = 0; c < class_reps.size(); ++c) {
        const int x = interior_rep[c];
        std::set<std::pair<std::string, int>> seen;
        for (int ei : incident_ball_edges(ball, x)) {
            const BallEdge& be = ball.edges[ei];
            Step s = be.parent == x ? be.step : be.step.reversed();
            seen.insert({s.edge, s.dir});
        }
        for (const auto& e : gog.graph().edges()) {
            if (!e.is_closed()) continue;
            for (int dir = 0; dir < 2; ++dir)
                if (e.branches[dir].vertex == ball.vertices[x].base_vertex &&
                    !seen.count({e.id, dir}))
                    throw domain_error("radius-too-small",
                                       "an interior star is missing a direction");
        }
    }

    LabeledQuotient out;
    std::map<int, std::string> class_name;
    for (std::size_t c = 0; c < class_reps.size(); ++c) {
        std::string name = "c" + std::to_string(c);
        class_name[static_cast<int>(c)] = name;
        out.vertex_label[name] =
            gog.vertex_group(ball.vertices[class_reps[c]].base_vertex).order();
        out.class_rep[name] = class_reps[c];
    }

    std::vector<SGEdge> qedges;
    int qi = 0;
    for (const auto& [base_edge, be] : edge_rep) {
        SGEdge qe;
        qe.id = "d" + std::to_string(qi++);
        const std::string near_class = class_name.at(class_of[be->parent]);
        const std::string far_class = class_name.at(class_of[be->child]);
        if (be->step.dir == 0)
            qe.branches = {{qe.id + ".t", near_class}, {qe.id + ".h", far_class}};
        else
            qe.branches = {{qe.id + ".t", far_class}, {qe.id + ".h", near_class}};
        out.edge_label[qe.id] = gog.edge_group(base_edge).order();
        qedges.push_back(std::move(qe));
    }

    std::vector<std::string> qvertices;
    for (const auto& [c, name] : class_name) {
        (void)c;
        qvertices.push_back(name);
    }
    out.graph = SemiGraph(std::move(qvertices), std::move(qedges));
    return out;
}

} // namespace skeletonkit
