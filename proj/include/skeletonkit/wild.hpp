#pragma once

#include <utility>
#include <vector>

#include "skeletonkit/rational.hpp"
#include "skeletonkit/skeleton.hpp"

namespace skeletonkit {

// Everything here works in log_p scale with |p| = p^{-1}, so the
// recurring threshold 1/(p-1) stays an exact rational.

/// log_p of the distance between two distinct p-th roots of unity:
/// -1/(p-1). p must be prime.
Rational roots_of_unity_gap(long long p);

/// Image of eta_{z1,rho} under z -> z^p, in log coordinates t = log|z1|,
/// s = log rho (requires s < t). Returns (p*t, s') with
///   s' = s - 1 + (p-1)*t   when s <= t - 1/(p-1)
///   s' = p*s               otherwise.
/// Both branches agree at the threshold.
std::pair<Rational, Rational> pushforward_step(const Rational& t, const Rational& s, long long p);

/// Fiber cardinality of z -> z^{p^h} over eta_{z0,r} with T = log|z0|,
/// S = log r < T:
///   1    when S >= T - p/(p-1)
///   p^i  when T - i - p/(p-1) <= S < T - i - 1/(p-1),  1 <= i <= h-1
///   p^h  when S < T - h - 1/(p-1)
/// The regimes tile (-inf, T) exactly; h = 0 gives 1.
long long fiber_count(const Rational& T, const Rational& S, long long p, int h);

/// Independent brute-force count: peel one p-th root at a time. At each
/// level the p candidate preimage points share the radius given by the
/// preimage formula and have centers pairwise at log-distance
/// T/p - 1/(p-1); they coincide as disc points exactly when the radius
/// reaches that gap. Multiplies branch counts down h levels.
long long fiber_count_oracle(const Rational& T, const Rational& S, long long p, int h);

/// Splitting profile of a mu_{p^h}-cover over an annulus skeleton of
/// length L, as a step function of the distance delta from the y-end.
/// counts[i] applies on (breakpoints[i-1], breakpoints[i]] with the
/// convention breakpoints[-1] = 0 and a final open segment up to L.
struct TorsorLayout {
    Rational length;
    Rational eps;
    long long p = 0;
    int h = 0;
    std::vector<Rational> breakpoints;  // increasing, inside (0, L)
    std::vector<long long> counts;      // breakpoints.size() + 1 entries, 1 .. p^h
};

/// Layout of the cover that is non-split on the eps-neighbourhood of the
/// y-end and totally split past distance eps + h - 1: count at distance
/// delta equals fiber_count(0, eps - p/(p-1) - delta, p, h). Hypotheses:
/// L > h - 1 and 0 < eps < min(p/(p-1), L - (h-1)).
TorsorLayout split_annulus_layout(const Rational& L, const Rational& eps, long long p, int h);

/// Evaluate a layout at a point delta in (0, L).
long long layout_count_at(const TorsorLayout& layout, const Rational& delta);

/// Splitting of the degree-ell Kummer cover of an annulus of length L
/// classified by c in Z/ell: gcd(c, ell) components, each an annulus of
/// length L * gcd / ell covering with degree ell / gcd. c = 0 means ell
/// trivial components.
struct KummerCoverSummary {
    long long ell = 0;
    long long cls = 0;
    long long components = 0;
    long long component_degree = 0;
    Length component_length;
};

KummerCoverSummary kummer_cover(const Length& L, long long ell, long long c);

} // namespace skeletonkit
