#include "skeletonkit/group.hpp"

#include <algorithm>
#include <set>

namespace skeletonkit {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) : table_(std::move(table)) {
    const int n = static_cast<int>(table_.size());
    if (n == 0) throw domain_error("bad-group", "empty multiplication table");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw domain_error("bad-group", "multiplication table is not square");
        for (int v : row)
            if (v < 0 || v >= n)
                throw domain_error("bad-group", "table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (table_[0][a] != a || table_[a][0] != a)
            throw domain_error("bad-group", "element 0 is not an identity");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == 0 && table_[b][a] == 0) { inverse_[a] = b; break; }
        if (inverse_[a] < 0)
            throw domain_error("bad-group", "element " + std::to_string(a) + " has no inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw domain_error("bad-group", "multiplication is not associative");
}

std::vector<int> FiniteGroup::subgroup_closure(std::vector<int> gens) const {
    std::set<int> closure{0};
    for (int g : gens) closure.insert(check(g));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(closure.begin(), closure.end());
        for (int a : cur)
            for (int b : cur)
                if (closure.insert(mul(a, b)).second) grew = true;
    }
    return std::vector<int>(closure.begin(), closure.end());
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw domain_error("bad-group", "cyclic group order must be >= 1");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::dihedral(int n) {
    if (n < 1) throw domain_error("bad-group", "dihedral parameter must be >= 1");
    const int N = 2 * n;
    auto rot = [n](int e) { return e % n; };
    auto flip = [n](int e) { return e >= n; };
    std::vector<std::vector<int>> t(N, std::vector<int>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            int i = rot(a), j = rot(b);
            if (!flip(a) && !flip(b)) t[a][b] = (i + j) % n;
            else if (!flip(a) && flip(b)) t[a][b] = n + (j - i + n) % n;
            else if (flip(a) && !flip(b)) t[a][b] = n + (i + j) % n;
            else t[a][b] = (j - i + n) % n;
        }
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::symmetric3() {
    // Permutations of {0,1,2} indexed so that the identity is element 0.
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                             {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    auto index_of = [&](const int p[3]) {
        for (int i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
        return -1;
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int comp[3];
            for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];  // a after b
            t[a][b] = index_of(comp);
        }
    return FiniteGroup(std::move(t));
}

GroupEmbedding::GroupEmbedding(const FiniteGroup& from, const FiniteGroup& to,
                               std::vector<int> images)
    : images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != from.order())
        throw domain_error("bad-embedding", "image list size does not match group order");
    preimage_.assign(to.order(), -1);
    for (int a = 0; a < from.order(); ++a) {
        int img = images_[a];
        if (img < 0 || img >= to.order())
            throw domain_error("bad-embedding", "image out of range");
        if (preimage_[img] >= 0)
            throw domain_error("bad-embedding", "embedding is not injective");
        preimage_[img] = a;
    }
    if (images_[0] != 0)
        throw domain_error("bad-embedding", "embedding must send identity to identity");
    for (int a = 0; a < from.order(); ++a)
        for (int b = 0; b < from.order(); ++b)
            if (images_[from.mul(a, b)] != to.mul(images_[a], images_[b]))
                throw domain_error("bad-embedding", "map is not a homomorphism");
}

int GroupEmbedding::preimage(int b) const {
    if (b < 0 || b >= static_cast<int>(preimage_.size()) || preimage_[b] < 0)
        throw domain_error("not-in-image", "element is not in the embedding image");
    return preimage_[b];
}

GroupEmbedding GroupEmbedding::identity_into(const FiniteGroup& g) {
    std::vector<int> ids(g.order());
    for (int i = 0; i < g.order(); ++i) ids[i] = i;
    return GroupEmbedding(g, g, std::move(ids));
}

} // namespace skeletonkit
