#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "skeletonkit/rational.hpp"

namespace skeletonkit {

/// Finite set of centers with an exact log-distance oracle.
///
/// The table stores log_p|a - a'| for each pair; the diagonal is -inf
/// (|a - a| = 0) and the whole table must satisfy the ultrametric
/// inequality. Nothing about the centers themselves is kept beyond their
/// ids: every operation downstream consumes only pairwise distances.
class CenterSpace {
public:
    CenterSpace(std::vector<std::string> centers,
                std::vector<std::vector<LogValue>> logdist);

    const std::vector<std::string>& centers() const { return centers_; }
    std::size_t size() const { return centers_.size(); }

    bool has_center(const std::string& id) const { return index_.count(id) != 0; }
    std::size_t index_of(const std::string& id) const;

    const LogValue& logdist(const std::string& a, const std::string& b) const {
        return table_[index_of(a)][index_of(b)];
    }
    const LogValue& logdist(std::size_t i, std::size_t j) const { return table_[i][j]; }

private:
    std::vector<std::string> centers_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<LogValue>> table_;
};

struct CenterSpaceReport {
    bool ok = true;
    std::string code;     // "asymmetric" | "nonzero-diagonal" | "ultrametric-violation"
    std::string message;
    std::vector<std::string> witnesses;  // the offending center ids
};

/// OK, or the first violated axiom with its witnesses. Checks diagonal,
/// symmetry, then the ultrametric inequality over all ordered triples.
CenterSpaceReport validate_center_space(const CenterSpace& space);

/// A point eta_{a,r} of the Berkovich line over the given center space:
/// the disc of center `a` and log-radius `log_radius`. -inf log-radius is
/// a rigid (type-1) point, a rational log-radius a type-2 point.
struct DiscPoint {
    std::shared_ptr<const CenterSpace> space;
    std::string center;
    LogValue log_radius;
};

DiscPoint make_disc_point(std::shared_ptr<const CenterSpace> space,
                          std::string center, LogValue log_radius);

/// Two disc points coincide iff they have the same log-radius and each
/// center lies in the other's disc: logdist(a,a') <= log r.
bool point_eq(const DiscPoint& x, const DiscPoint& y);

/// Path metric on type-2 points. With m = logdist(a,a'), s = log r,
/// s' = log r':
///   (m - s) + (m - s')  when m >= max(s, s')   (discs are disjoint)
///   |s - s'|            otherwise              (one disc contains the other)
/// Rejects type-1 points; the metric is defined only away from them.
Rational metric_d(const DiscPoint& x, const DiscPoint& y);

} // namespace skeletonkit
