#include "skeletonkit/wild.hpp"

#include <numeric>

#include "skeletonkit/harmonic.hpp"  // is_prime

namespace skeletonkit {

namespace {

void require_prime(long long p) {
    if (!is_prime(p)) throw domain_error("not-prime", "p must be prime");
}

void require_below(const Rational& S, const Rational& T) {
    if (!(S < T)) throw domain_error("radius-too-large", "S must be < T");
}

long long pow_ll(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (1LL << 60) / base)
            throw domain_error("count-overflow", "fiber count exceeds 64-bit range");
        r *= base;
    }
    return r;
}

} // namespace

Rational roots_of_unity_gap(long long p) {
    require_prime(p);
    return Rational(-1, p - 1);
}

std::pair<Rational, Rational> pushforward_step(const Rational& t, const Rational& s, long long p) {
    require_prime(p);
    require_below(s, t);
    const Rational threshold = t - Rational(1, p - 1);
    Rational image;
    if (s <= threshold)
        image = s - Rational(1) + Rational(p - 1) * t;
    else
        image = Rational(p) * s;
    return {Rational(p) * t, image};
}

long long fiber_count(const Rational& T, const Rational& S, long long p, int h) {
    require_prime(p);
    require_below(S, T);
    if (h < 0) throw domain_error("bad-height", "h must be >= 0");
    if (h == 0) return 1;
    const Rational inner = Rational(1, p - 1);       // 1/(p-1)
    const Rational outer = Rational(p, p - 1);       // p/(p-1)
    if (S >= T - outer) return 1;
    for (int i = 1; i <= h - 1; ++i)
        if (T - Rational(i) - outer <= S && S < T - Rational(i) - inner)
            return pow_ll(p, i);
    if (S < T - Rational(h) - inner) return pow_ll(p, h);
    throw domain_error("internal", "fiber_count regimes failed to tile");
}

long long fiber_count_oracle(const Rational& T, const Rational& S, long long p, int h) {
    require_prime(p);
    require_below(S, T);
    if (h < 0) throw domain_error("bad-height", "h must be >= 0");
    if (h == 0) return 1;

    // One p-th root: preimage radius from the proof's formula, preimage
    // centers xi * z0^{1/p} at pairwise log-distance T/p - 1/(p-1).
    const Rational gap = T / Rational(p) + roots_of_unity_gap(p);
    Rational lifted;
    if (S <= T - Rational(p, p - 1))
        lifted = S + Rational(1) - Rational(p - 1) * T / Rational(p);
    else
        lifted = S / Rational(p);
    const long long branches = (lifted >= gap) ? 1 : p;
    return branches * fiber_count_oracle(T / Rational(p), lifted, p, h - 1);
}

TorsorLayout split_annulus_layout(const Rational& L, const Rational& eps, long long p, int h) {
    require_prime(p);
    if (h < 0) throw domain_error("bad-height", "h must be >= 0");
    if (!(L > Rational(h - 1)))
        throw domain_error("length-too-small", "need L > h - 1");
    const Rational outer = Rational(p, p - 1);
    if (!(eps > Rational(0)))
        throw domain_error("eps-not-positive", "need eps > 0");
    if (!(eps < outer))
        throw domain_error("eps-too-large", "need eps < p/(p-1)");
    if (!(eps < L - Rational(h - 1)))
        throw domain_error("eps-too-large", "need eps < L - (h-1)");

    TorsorLayout layout;
    layout.length = L;
    layout.eps = eps;
    layout.p = p;
    layout.h = h;
    for (int i = 0; i < h; ++i) layout.breakpoints.push_back(eps + Rational(i));
    for (int i = 0; i <= h; ++i) layout.counts.push_back(pow_ll(p, i));
    return layout;
}

long long layout_count_at(const TorsorLayout& layout, const Rational& delta) {
    if (!(delta > Rational(0)) || !(delta < layout.length))
        throw domain_error("bad-position", "delta must lie in (0, L)");
    std::size_t i = 0;
    while (i < layout.breakpoints.size() && delta > layout.breakpoints[i]) ++i;
    return layout.counts[i];
}

KummerCoverSummary kummer_cover(const Length& L, long long ell, long long c) {
    if (ell < 2) throw domain_error("bad-modulus", "ell must be >= 2");
    if (c < 0 || c >= ell) throw domain_error("bad-class", "need 0 <= c < ell");
    if (!L.infinite && !(L.value > Rational(0)))
        throw domain_error("bad-length", "annulus length must be positive");

    KummerCoverSummary out;
    out.ell = ell;
    out.cls = c;
    out.components = c == 0 ? ell : std::gcd(c, ell);
    out.component_degree = ell / out.components;
    if (L.infinite)
        out.component_length = Length::inf();
    else
        out.component_length = Length::fin(L.value * Rational(out.components, 1) / Rational(ell, 1));
    return out;
}

} // namespace skeletonkit
