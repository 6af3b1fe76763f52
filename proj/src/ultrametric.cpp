#include "skeletonkit/ultrametric.hpp"

#include <set>

namespace skeletonkit {

CenterSpace::CenterSpace(std::vector<std::string> centers,
                         std::vector<std::vector<LogValue>> logdist)
    : centers_(std::move(centers)), table_(std::move(logdist)) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        if (!seen.insert(centers_[i]).second)
            throw domain_error("duplicate-center", "duplicate center id '" + centers_[i] + "'");
        index_[centers_[i]] = i;
    }
    if (table_.size() != centers_.size())
        throw domain_error("bad-table", "logdist table row count does not match center count");
    for (const auto& row : table_)
        if (row.size() != centers_.size())
            throw domain_error("bad-table", "logdist table is not square");
}

std::size_t CenterSpace::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw domain_error("unknown-center", "center '" + id + "' not in space");
    return it->second;
}

CenterSpaceReport validate_center_space(const CenterSpace& space) {
    const std::size_t n = space.size();
    const auto& ids = space.centers();
    for (std::size_t i = 0; i < n; ++i) {
        if (!space.logdist(i, i).is_minus_inf())
            return {false, "nonzero-diagonal",
                    "logdist(" + ids[i] + "," + ids[i] + ") must be -inf",
                    {ids[i]}};
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (space.logdist(i, j) != space.logdist(j, i))
                return {false, "asymmetric",
                        "logdist(" + ids[i] + "," + ids[j] + ") differs from its transpose",
                        {ids[i], ids[j]}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (space.logdist(i, k) > max(space.logdist(i, j), space.logdist(j, k)))
                    return {false, "ultrametric-violation",
                            "logdist(" + ids[i] + "," + ids[k] + ") exceeds max over " + ids[j],
                            {ids[i], ids[j], ids[k]}};
    return {};
}

DiscPoint make_disc_point(std::shared_ptr<const CenterSpace> space,
                          std::string center, LogValue log_radius) {
    if (!space) throw domain_error("no-space", "disc point requires a center space");
    space->index_of(center);
    return DiscPoint{std::move(space), std::move(center), log_radius};
}

namespace {

void require_same_space(const DiscPoint& x, const DiscPoint& y) {
    if (x.space.get() != y.space.get())
        throw domain_error("space-mismatch", "disc points live over different center spaces");
}

} // namespace

bool point_eq(const DiscPoint& x, const DiscPoint& y) {
    require_same_space(x, y);
    if (x.log_radius != y.log_radius) return false;
    return x.space->logdist(x.center, y.center) <= x.log_radius;
}

Rational metric_d(const DiscPoint& x, const DiscPoint& y) {
    require_same_space(x, y);
    if (x.log_radius.is_minus_inf() || y.log_radius.is_minus_inf())
        throw domain_error("type1-point", "metric_d is defined only on type-2 points");
    const Rational s = x.log_radius.finite();
    const Rational sp = y.log_radius.finite();
    const LogValue& m = x.space->logdist(x.center, y.center);
    const Rational big = s < sp ? sp : s;
    if (m >= LogValue(big)) {
        const Rational mf = m.finite();
        return (mf - s) + (mf - sp);
    }
    return (s - sp).abs();
}

} // namespace skeletonkit
