#pragma once

#include <string>
#include <vector>

#include "skeletonkit/error.hpp"

namespace skeletonkit {

/// Finite group as a multiplication table over element ids 0..n-1.
/// Associativity, identity and inverses are validated on construction;
/// the identity is always element 0.
class FiniteGroup {
public:
    FiniteGroup() : table_{{0}}, inverse_{0} {}
    explicit FiniteGroup(std::vector<std::vector<int>> table);

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return 0; }
    int mul(int a, int b) const { return table_[check(a)][check(b)]; }
    int inv(int a) const { return inverse_[check(a)]; }
    int conj(int g, int a) const { return mul(mul(g, a), inv(g)); }  // g a g^-1

    const std::vector<std::vector<int>>& table() const { return table_; }

    /// Closure of the given elements under multiplication, sorted.
    std::vector<int> subgroup_closure(std::vector<int> gens) const;

    static FiniteGroup trivial() { return FiniteGroup(); }
    static FiniteGroup cyclic(int n);
    /// Dihedral group of order 2n: elements r^i (0..n-1), s r^i (n..2n-1).
    static FiniteGroup dihedral(int n);
    /// Symmetric group on 3 letters, order 6.
    static FiniteGroup symmetric3();

private:
    int check(int a) const {
        if (a < 0 || a >= order())
            throw domain_error("bad-element", "group element out of range");
        return a;
    }

    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
};

/// Injective homomorphism from `from` into `to`, stored as the image of
/// each element. Homomorphism property and injectivity are validated.
class GroupEmbedding {
public:
    GroupEmbedding() = default;
    GroupEmbedding(const FiniteGroup& from, const FiniteGroup& to, std::vector<int> images);

    int apply(int a) const { return images_[a]; }
    const std::vector<int>& images() const { return images_; }

    bool in_image(int b) const { return preimage_[b] >= 0; }
    /// Preimage of an image element; throws when b is not in the image.
    int preimage(int b) const;

    static GroupEmbedding identity_into(const FiniteGroup& g);

private:
    std::vector<int> images_;
    std::vector<int> preimage_;
};

} // namespace skeletonkit
