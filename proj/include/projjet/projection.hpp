#pragma once

#include <vector>

#include "projjet/two_jet.hpp"

namespace projjet {

/// Center of a central projection: homogeneous coordinates [a; b; c; d; e]
/// with e = 1 (finite point of R^4) or e = 0 (point at infinity).
template <class K>
struct ViewPoint {
    K a{0}, b{0}, c{0}, d{0};
    K e{1};

    static ViewPoint finite(K a, K b, K c, K d) {
        return {std::move(a), std::move(b), std::move(c), std::move(d), K(1)};
    }
    static ViewPoint at_infinity(K a, K b, K c, K d) {
        ViewPoint p{std::move(a), std::move(b), std::move(c), std::move(d), K(0)};
        if (p.is_zero_vector()) throw InputError("ViewPoint: zero homogeneous vector");
        return p;
    }

    bool is_zero_vector() const {
        return k_is_zero(a) && k_is_zero(b) && k_is_zero(c) && k_is_zero(d) && k_is_zero(e);
    }
    bool is_finite() const { return !k_is_zero(e); }
    bool is_origin() const {
        return is_finite() && k_is_zero(a) && k_is_zero(b) && k_is_zero(c) && k_is_zero(d);
    }
    /// The affine part lies in the xy-plane.
    bool on_tangent_plane() const { return k_is_zero(c) && k_is_zero(d); }

    std::array<K, 5> homogeneous() const { return {a, b, c, d, e}; }

    static ViewPoint from_homogeneous(const std::array<K, 5>& h) {
        if (!k_is_zero(h[4]))
            return finite(h[0] / h[4], h[1] / h[4], h[2] / h[4], h[3] / h[4]);
        return at_infinity(h[0], h[1], h[2], h[3]);
    }

    template <class K2, class F>
    ViewPoint<K2> map(F&& f) const {
        return {f(a), f(b), f(c), f(d), f(e)};
    }
};

/// Central projection of the Monge-form germ from p, as a germ (R^2,0) -> (R^3,0).
///
/// Finite p: among the affine forms x-a, y-b, z-c, w-d the first that is a
/// unit at the origin (in this order) becomes the denominator and the other
/// three ratios the components; with a != 0 this is the chart written in the
/// projection formula ((y-b)/(x-a), (f1-c)/(x-a), (f2-d)/(x-a)). The image of
/// the origin is translated back to the origin.
///
/// Infinite p: projection parallel to the direction (a, b, c, d); the first
/// nonzero coordinate is eliminated, e.g. (y - (b/a)x, f1 - (c/a)x,
/// f2 - (d/a)x) for a != 0.
template <class K>
JetMapN<K> project(const MongeJet<K>& f, const ViewPoint<K>& p, int k, int chart = -1) {
    if (p.is_zero_vector()) throw InputError("project: zero view point");
    if (p.is_origin()) throw InputError("project: view point is the germ's base point");
    MongeJet<K> fk = f.order() == k ? f : f.truncated(k);
    const int ord = fk.order();

    Jet2<K> x(ord), y(ord);
    x.set(1, 0, K(1));
    y.set(0, 1, K(1));
    const Jet2<K>& z = fk.f1();
    const Jet2<K>& w = fk.f2();

    std::array<Jet2<K>, 4> coord{x, y, z, w};
    std::array<K, 4> shift{p.a, p.b, p.c, p.d};

    if (p.is_finite()) {
        int den = chart;
        if (den < 0)
            for (int i = 0; i < 4 && den < 0; ++i)
                if (!k_is_zero(shift[i])) den = i;
        if (den < 0 || den > 3 || k_is_zero(shift[den]))
            throw InputError("project: no admissible chart at this view point");
        Jet2<K> denom = coord[den];
        denom.add_to(0, 0, -shift[den]);
        std::vector<Jet2<K>> comps;
        for (int i = 0; i < 4; ++i) {
            if (i == den) continue;
            Jet2<K> num = coord[i];
            num.add_to(0, 0, -shift[i]);
            Jet2<K> g = divide_by_unit(num, denom);
            g.add_to(0, 0, -g.at(0, 0)); // germ at the origin
            comps.push_back(std::move(g));
        }
        return JetMapN<K>(std::move(comps));
    }

    int lead = chart;
    if (lead < 0)
        for (int i = 0; i < 4 && lead < 0; ++i)
            if (!k_is_zero(shift[i])) lead = i;
    if (lead < 0 || lead > 3 || k_is_zero(shift[lead]))
        throw InputError("project: no admissible chart at this view point");
    std::vector<Jet2<K>> comps;
    for (int i = 0; i < 4; ++i) {
        if (i == lead) continue;
        comps.push_back(coord[i] - (shift[i] / shift[lead]) * coord[lead]);
    }
    return JetMapN<K>(std::move(comps));
}

/// Whether p lies on the tangent line through the origin with the given
/// direction (and on the tangent plane at all).
template <class K>
bool on_line_through_origin(const ViewPoint<K>& p, const Direction<K>& dir) {
    if (!p.on_tangent_plane()) return false;
    return k_is_zero(p.a * dir.u2 - p.b * dir.u1);
}

/// Whether p lies on an asymptotic line of the germ: on the tangent plane and
/// along a root direction of the degeneracy form (every tangent line for the
/// inflection family).
template <class K>
bool is_on_asymptotic_line(const MongeJet<K>& f, const ViewPoint<K>& p) {
    if (!p.on_tangent_plane()) return false;
    auto ad = asymptotic_directions(f);
    if (ad.all) return true;
    using P = promoted_t<K>;
    P a = P(p.a), b = P(p.b);
    for (const auto& dir : ad.directions)
        if (k_is_zero(a * dir.u2 - b * dir.u1)) return true;
    return false;
}

/// Deterministic sample of `count` distinct view points on the tangent line
/// with the given direction, the point at infinity included (last).
template <class K>
std::vector<ViewPoint<K>> sample_view_points(const Direction<K>& dir, int count,
                                             std::uint64_t seed = 0) {
    if (count < 1) throw InputError("sample_view_points: count < 1");
    std::vector<ViewPoint<K>> pts;
    Rng rng(seed);
    std::vector<K> used;
    for (int i = 0; i + 1 < count; ++i) {
        // seed 0 keeps the reference sequence 1, -2, 3, -4, ...; other seeds
        // scale it by a deterministic nonzero rational, rejecting collisions
        K t(0);
        for (;;) {
            t = K(i % 2 == 0 ? i + 1 : -(i + 1));
            if (seed != 0) t = t * scalar_traits<K>::from_rational(rng.nonzero_rational(5));
            bool fresh = true;
            for (const K& u : used)
                if (k_is_zero(u - t)) fresh = false;
            if (fresh) break;
        }
        used.push_back(t);
        pts.push_back(ViewPoint<K>::finite(t * dir.u1, t * dir.u2, K(0), K(0)));
    }
    pts.push_back(ViewPoint<K>::at_infinity(dir.u1, dir.u2, K(0), K(0)));
    return pts;
}

} // namespace projjet
