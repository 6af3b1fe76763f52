#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "skeletonkit/gog.hpp"

namespace skeletonkit {

/// Directed traversal of a closed edge: dir 0 runs tail -> head
/// (branches[0] to branches[1]), dir 1 the reverse. The near branch of a
/// step is branches[dir].
struct Step {
    std::string edge;
    int dir = 0;

    Step reversed() const { return {edge, 1 - dir}; }
    friend bool operator==(const Step& a, const Step& b) {
        return a.edge == b.edge && a.dir == b.dir;
    }
};

/// One syllable of a path word: a vertex-group element at the step's near
/// vertex, then the traversal.
struct Syllable {
    int rep = 0;
    Step step;
};

/// Path word r1 L1 r2 L2 ... rk Lk t from `start`, with t in the vertex
/// group at the endpoint. In normal form every rep is the chosen coset
/// representative of the step's near subgroup and no backtrack
/// (reverse step with identity representative) occurs; normal forms are
/// unique, which is what makes Bass-Serre orbits syntactically decidable.
struct PathWord {
    std::string start;
    std::vector<Syllable> syllables;
    int tail = 0;
};

/// Word algebra over a fixed graph of groups: coset transversals per
/// branch, normalization, inversion and composition of path words.
class WordAlgebra {
public:
    explicit WordAlgebra(std::shared_ptr<const GraphOfGroups> gog);

    const GraphOfGroups& gog() const { return *gog_; }

    std::string near_vertex(const Step& s) const;
    std::string far_vertex(const Step& s) const;
    const GroupEmbedding& near_embedding(const Step& s) const;

    /// Transversal representatives of the near subgroup at this step; the
    /// identity coset is represented by the identity.
    const std::vector<int>& coset_reps(const Step& s) const;
    /// r = rep * near(a): the pair (rep, a).
    std::pair<int, int> decompose(const Step& s, int r) const;

    std::string end_vertex(const PathWord& w) const;

    /// Rewrites an arbitrary well-formed path word to its normal form.
    PathWord normalize(const PathWord& w) const;
    PathWord inverse(const PathWord& w) const;
    /// Concatenation; end_vertex(a) must equal b.start.
    PathWord concat(const PathWord& a, const PathWord& b) const;

    bool is_normal(const PathWord& w) const;
    static std::string key(const PathWord& w);

private:
    struct BranchData {
        std::vector<int> reps;                    // coset representatives, identity first
        std::vector<std::pair<int, int>> decomp;  // per vertex-group element: (rep, edge preimage)
        std::vector<bool> in_image;
    };
    const BranchData& data(const Step& s) const;

    std::shared_ptr<const GraphOfGroups> gog_;
    std::map<std::string, BranchData> branch_data_;  // keyed by branch id
};

/// Finite ball of the Bass-Serre tree. Vertex 0 is the root; every vertex
/// carries its normal-form word, which is both its label and its
/// stabilizer conjugator (the stabilizer is word * vertex_group * word^-1).
struct BallVertex {
    PathWord word;
    std::string base_vertex;
    int parent = -1;
    int depth = 0;
};

struct BallEdge {
    int parent = 0;
    int child = 0;
    Step step;  // as taken from the parent
    int rep = 0;
};

struct BassSerreBall {
    std::shared_ptr<const GraphOfGroups> gog;
    std::string root_vertex;
    int radius = 0;
    std::vector<BallVertex> vertices;
    std::vector<BallEdge> edges;
};

/// Ball of the given radius around the model vertex over `root` (the
/// smallest vertex id when omitted). Vertices are reduced words in BFS
/// order; the expected tree degree over v is the sum over incident
/// branches of the subgroup indices.
BassSerreBall bass_serre_ball(std::shared_ptr<const GraphOfGroups> gog, int radius,
                              const std::string& root = "");

/// Sum over incident branches b at v of [vertex group : branch subgroup].
long long expected_tree_degree(const GraphOfGroups& gog, const std::string& v);

/// True when the two ball vertices lie in one deck orbit, decided by
/// composing their conjugator words and verifying that conjugation carries
/// one stabilizer onto the other elementwise.
bool same_vertex_class(const BassSerreBall& ball, int x, int y);

/// All words distinct and in normal form; the tree property E = V - 1.
bool audit_normal_forms(const BassSerreBall& ball);

struct LabeledQuotient {
    SemiGraph graph;
    std::map<std::string, int> vertex_label;  // |vertex group|
    std::map<std::string, int> edge_label;    // |edge group|
    std::map<std::string, int> class_rep;     // quotient vertex -> ball vertex index
};

/// Quotient of the ball by the deck action: one vertex per stabilizer
/// conjugacy class, one edge per edge orbit (nontrivial stabilizer
/// intersections of adjacent classes), labels the group orders. Requires
/// every class to own a vertex whose full star lies in the ball; throws
/// "radius-too-small" otherwise.
LabeledQuotient reconstruct_quotient(const BassSerreBall& ball);

} // namespace skeletonkit
