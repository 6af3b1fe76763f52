#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "skeletonkit/skeleton.hpp"
#include "skeletonkit/ultrametric.hpp"

namespace skeletonkit {

/// Local field invariants: residue characteristic p, inertia degree f,
/// ramification index e; residue field size q = p^f. Skeleton edges of
/// the associated tree carry length f/e in log_p units.
struct LocalFieldParams {
    long long p = 2;
    int f = 1;
    int e = 1;

    long long q() const;
    Rational edge_length() const { return Rational(f, e); }
};

LocalFieldParams make_local_field(long long p, int f, int e);

/// Vertex of the Bruhat-Tits tree of SL2 as a digit string: a level n and
/// finitely many nonzero residue digits at exponents below n. The parent
/// drops the digit at exponent n-1; the q children append one digit at
/// exponent n.
struct BTVertex {
    int level = 0;
    std::map<int, int> digits;  // exponent -> digit in 1..q-1 (zero digits dropped)

    std::string id() const;
    BTVertex parent() const;
    std::vector<BTVertex> children(long long q) const;
};

/// Ball of the given radius around the standard vertex, as a decorated
/// skeleton: genus-0 type-2 interior vertices, closed edges of length
/// f/e, (q+1)-regular away from the ball boundary. Boundary vertices are
/// flagged incomplete so valence assertions skip them.
Skeleton bt_ball(const LocalFieldParams& params, int radius);

/// The BTVertex behind each skeleton vertex id of a bt_ball.
std::map<std::string, BTVertex> bt_ball_vertices(const LocalFieldParams& params, int radius);

struct RecoveredInvariants {
    long long q = 0;
    long long p = 0;
    int f = 0;
};

/// Reads the residue field off a tree ball: every vertex with a complete
/// star must share one valence v >= 3, q = v - 1, and (p, f) is the
/// unique prime-power factorization of q.
RecoveredInvariants recover_invariants(const Skeleton& sk);

/// Digit-string center space for a set of tree vertices over an
/// unramified field: log-distance of two centers is -f times the first
/// differing digit exponent, -inf for equal digit strings.
std::shared_ptr<const CenterSpace>
digit_center_space(const std::vector<BTVertex>& vertices, const LocalFieldParams& params);

/// The disc point eta_{a, r} of a tree vertex: center = its digit string,
/// log-radius = -level * f. Requires e = 1; pairwise metric_d then equals
/// f times the tree distance.
DiscPoint embed_vertex(const BTVertex& v, const LocalFieldParams& params,
                       std::shared_ptr<const CenterSpace> space);

} // namespace skeletonkit
