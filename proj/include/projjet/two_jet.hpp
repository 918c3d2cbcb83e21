#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "projjet/group.hpp"

namespace projjet {

/// Gibson's classification of 2-jets of Monge forms under GL(2) x GL(2).
enum class TwoJetClass {
    Hyperbolic,
    Elliptic,
    Parabolic,
    InflectionPlus,
    InflectionMinus,
    DegenerateInflectionRank1,
    DegenerateInflectionZero,
};

inline const char* to_string(TwoJetClass c) {
    switch (c) {
        case TwoJetClass::Hyperbolic: return "Hyperbolic";
        case TwoJetClass::Elliptic: return "Elliptic";
        case TwoJetClass::Parabolic: return "Parabolic";
        case TwoJetClass::InflectionPlus: return "InflectionPlus";
        case TwoJetClass::InflectionMinus: return "InflectionMinus";
        case TwoJetClass::DegenerateInflectionRank1: return "DegenerateInflectionRank1";
        case TwoJetClass::DegenerateInflectionZero: return "DegenerateInflectionZero";
    }
    return "?";
}

inline int codimension(TwoJetClass c) {
    switch (c) {
        case TwoJetClass::Hyperbolic:
        case TwoJetClass::Elliptic: return 0;
        case TwoJetClass::Parabolic: return 1;
        case TwoJetClass::InflectionPlus:
        case TwoJetClass::InflectionMinus: return 2;
        case TwoJetClass::DegenerateInflectionRank1: return 3;
        case TwoJetClass::DegenerateInflectionZero: return 4;
    }
    return -1;
}

/// Binary quadratic form c20 x^2 + c11 xy + c02 y^2.
template <class K>
struct QuadForm2 {
    K c20{0}, c11{0}, c02{0};

    bool is_zero() const { return k_is_zero(c20) && k_is_zero(c11) && k_is_zero(c02); }
    K eval(const K& u1, const K& u2) const { return c20 * u1 * u1 + c11 * u1 * u2 + c02 * u2 * u2; }
    /// Twice the polar bilinear form at (u, v).
    K polar2(const K& u1, const K& u2, const K& v1, const K& v2) const {
        return K(2) * c20 * u1 * v1 + c11 * (u1 * v2 + u2 * v1) + K(2) * c02 * u2 * v2;
    }
    K det4() const { return K(4) * c20 * c02 - c11 * c11; } // 4 det of the symmetric matrix

    /// Substitution Q(S u) for S = [[s00, s01], [s10, s11]].
    QuadForm2 substituted(const K& s00, const K& s01, const K& s10, const K& s11) const {
        QuadForm2 r;
        r.c20 = eval(s00, s10);
        r.c02 = eval(s01, s11);
        r.c11 = polar2(s00, s10, s01, s11);
        return r;
    }

    friend QuadForm2 operator+(const QuadForm2& a, const QuadForm2& b) {
        return {a.c20 + b.c20, a.c11 + b.c11, a.c02 + b.c02};
    }
    friend QuadForm2 operator*(const K& c, const QuadForm2& q) {
        return {c * q.c20, c * q.c11, c * q.c02};
    }
};

template <class K>
QuadForm2<K> quadratic_part(const Jet2<K>& f) {
    return {f.at(2, 0), f.at(1, 1), f.at(0, 2)};
}

/// The degeneracy form delta(u) = det[A1 u | A2 u] of the pencil of quadratic
/// parts; its roots are the asymptotic directions.
template <class K>
QuadForm2<K> delta_form(const MongeJet<K>& f) {
    if (f.order() < 2) throw InputError("delta_form: order < 2");
    QuadForm2<K> q1 = quadratic_part(f.f1()), q2 = quadratic_part(f.f2());
    QuadForm2<K> d;
    const K half = K(1) / K(2);
    d.c20 = (q1.c20 * q2.c11 - q1.c11 * q2.c20) * half;
    d.c11 = q1.c20 * q2.c02 - q1.c02 * q2.c20;
    d.c02 = (q1.c11 * q2.c02 - q1.c02 * q2.c11) * half;
    return d;
}

template <class K>
K delta_discriminant(const QuadForm2<K>& d) {
    return d.c11 * d.c11 - K(4) * d.c20 * d.c02;
}

template <class K>
TwoJetClass classify_2jet(const MongeJet<K>& f) {
    if (f.order() < 2) throw InputError("classify_2jet: order < 2");
    QuadForm2<K> d = delta_form(f);
    int ds = k_sgn(delta_discriminant(d));
    if (!d.is_zero()) {
        if (ds > 0) return TwoJetClass::Hyperbolic;
        if (ds < 0) return TwoJetClass::Elliptic;
        return TwoJetClass::Parabolic;
    }
    // delta == 0: the two quadratic parts are proportional (or zero)
    QuadForm2<K> q1 = quadratic_part(f.f1()), q2 = quadratic_part(f.f2());
    const QuadForm2<K>& q = q1.is_zero() ? q2 : q1;
    if (q.is_zero()) return TwoJetClass::DegenerateInflectionZero;
    int s = k_sgn(q.det4());
    if (s > 0) return TwoJetClass::InflectionPlus;
    if (s < 0) return TwoJetClass::InflectionMinus;
    return TwoJetClass::DegenerateInflectionRank1;
}

/// Projective tangent direction (u1 : u2), normalized so u2 = 1 when possible,
/// else u1 = 1.
template <class K>
struct Direction {
    K u1{0}, u2{0};

    static Direction make(K a, K b) {
        Direction d;
        if (!k_is_zero(b)) {
            d.u1 = a / b;
            d.u2 = K(1);
        } else {
            d.u1 = K(1);
            d.u2 = K(0);
        }
        return d;
    }
    bool infinite_slope() const { return k_is_zero(u2); }
    friend bool operator==(const Direction& x, const Direction& y) {
        return k_is_zero(x.u1 * y.u2 - x.u2 * y.u1);
    }
};

/// Scalar promotion for exact root extraction: rationals extend to a
/// quadratic field, everything else stays put.
template <class K>
struct promoted_scalar {
    using type = K;
};
template <>
struct promoted_scalar<Rational> {
    using type = Surd;
};
template <class K>
using promoted_t = typename promoted_scalar<K>::type;

template <class K>
std::optional<K> field_sqrt(const K& v);

template <>
inline std::optional<double> field_sqrt<double>(const double& v) {
    if (v < 0) return std::nullopt;
    return std::sqrt(v);
}
template <>
inline std::optional<Surd> field_sqrt<Surd>(const Surd& v) {
    if (v.sgn() < 0) return std::nullopt;
    if (!v.is_rational()) return v.exact_sqrt(); // nested extensions unsupported
    return Surd::sqrt_of(v.as_rational());
}

/// Asymptotic directions as roots of delta. `all` marks the inflection family
/// (delta identically zero). Directions carry exact root data over the
/// promoted scalar plus float evaluations.
template <class K>
struct AsymptoticDirections {
    using P = promoted_t<K>;
    bool all = false;
    QuadForm2<K> delta;
    K disc{0};
    std::vector<Direction<P>> directions;            // empty when `all`
    std::vector<std::pair<double, double>> as_float; // one per direction

    int count() const { return static_cast<int>(directions.size()); }
};

template <class K>
AsymptoticDirections<K> asymptotic_directions(const MongeJet<K>& f) {
    using P = promoted_t<K>;
    AsymptoticDirections<K> out;
    out.delta = delta_form(f);
    out.disc = delta_discriminant(out.delta);
    const QuadForm2<K>& d = out.delta;
    if (d.is_zero()) {
        out.all = true;
        return out;
    }
    int ds = k_sgn(out.disc);
    auto push = [&out](Direction<P> dir) {
        for (const auto& e : out.directions)
            if (e == dir) return;
        out.directions.push_back(dir);
    };
    if (ds >= 0) {
        P A = P(d.c20), B = P(d.c11), C = P(d.c02);
        if (!k_is_zero(A)) {
            auto sq = field_sqrt<P>(P(out.disc));
            if (!sq)
                throw InputError("asymptotic_directions: root not representable in this field");
            push(Direction<P>::make(-B - *sq, P(2) * A));
            push(Direction<P>::make(-B + *sq, P(2) * A));
        } else {
            push(Direction<P>::make(P(1), P(0))); // u2 = 0 root
            if (!k_is_zero(B)) push(Direction<P>::make(-C, B));
            else if (ds == 0 && k_is_zero(C))
                throw InternalCheckFailure("delta zero but not flagged all");
        }
    }
    // deterministic order: finite slopes ascending, infinite-slope direction last
    std::sort(out.directions.begin(), out.directions.end(),
              [](const Direction<P>& a, const Direction<P>& b) {
                  if (a.infinite_slope() != b.infinite_slope()) return b.infinite_slope();
                  if (a.infinite_slope()) return false;
                  return a.u1 < b.u1;
              });
    for (const auto& dir : out.directions)
        out.as_float.emplace_back(scalar_traits<P>::to_double(dir.u1),
                                  scalar_traits<P>::to_double(dir.u2));
    return out;
}

/// Result of bringing a 2-jet to its Gibson normal form: psi is the group
/// element with act_on_monge(psi, f) == normal (the full jet, transformed).
template <class K>
struct TwoJetNormalization {
    TwoJetClass cls;
    ProjectiveMapG5<K> psi;
    MongeJet<K> normal;
};

namespace detail {

template <class K>
struct Mat2 {
    K a{1}, b{0}, c{0}, d{1}; // [[a, b], [c, d]]
    static Mat2 ident() { return {}; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
    K det() const { return a * d - b * c; }
    Mat2 inverse() const {
        K dt = det();
        if (k_is_zero(dt)) throw SingularLinearPart("Mat2: singular");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
};

/// Accumulates a source substitution L and a slot mix M with the running pair
/// (P1, P2) = M * (original pair) o L.
template <class K>
struct PencilReducer {
    QuadForm2<K> p1, p2;
    Mat2<K> L = Mat2<K>::ident();
    Mat2<K> M = Mat2<K>::ident();

    PencilReducer(QuadForm2<K> q1, QuadForm2<K> q2) : p1(std::move(q1)), p2(std::move(q2)) {}

    void src(const Mat2<K>& S) {
        p1 = p1.substituted(S.a, S.b, S.c, S.d);
        p2 = p2.substituted(S.a, S.b, S.c, S.d);
        L = L * S;
    }
    void mix(const Mat2<K>& m) {
        QuadForm2<K> n1 = m.a * p1 + m.b * p2;
        QuadForm2<K> n2 = m.c * p1 + m.d * p2;
        p1 = n1;
        p2 = n2;
        M = m * M;
    }

    ProjectiveMapG5<K> to_group_element() const {
        Mat2<K> N = M.inverse();
        return ProjectiveMapG5<K>::linear({L.a, L.b, L.c, L.d}, {N.a, N.b, N.c, N.d});
    }
};

/// Kernel direction (lambda, mu) with lambda*A1u + mu*A2u = 0 for a root u of
/// delta; the corresponding pencil member vanishes on u.
template <class K>
std::pair<K, K> member_annihilating(const QuadForm2<K>& q1, const QuadForm2<K>& q2, const K& u1,
                                    const K& u2) {
    const K half = K(1) / K(2);
    K x1 = q1.c20 * u1 + q1.c11 * half * u2;
    K x2 = q1.c11 * half * u1 + q1.c02 * u2;
    K y1 = q2.c20 * u1 + q2.c11 * half * u2;
    K y2 = q2.c11 * half * u1 + q2.c02 * u2;
    if (!k_is_zero(x1) || !k_is_zero(y1)) return {y1, -x1};
    return {y2, -x2};
}

template <class K>
K sqrt_or_throw(const K& v, const char* what) {
    auto s = field_sqrt<K>(v);
    if (!s) throw InputError(std::string(what) + ": square root not representable");
    return *s;
}

template <class K>
void reduce_hyperbolic(PencilReducer<K>& red, const QuadForm2<K>& delta, const K& disc) {
    // root directions of delta become the coordinate axes
    std::vector<std::pair<K, K>> roots;
    if (!k_is_zero(delta.c20)) {
        K sq = sqrt_or_throw(disc, "hyperbolic normalization");
        K t1 = (-delta.c11 - sq) / (K(2) * delta.c20);
        K t2 = (-delta.c11 + sq) / (K(2) * delta.c20);
        if (t2 < t1) std::swap(t1, t2);
        roots = {{t1, K(1)}, {t2, K(1)}};
    } else {
        // delta.c11 != 0 here; putting the u2 = 0 root first makes the
        // already-normal pair (x^2, y^2) reduce via the identity
        roots = {{K(1), K(0)}, {-delta.c02, delta.c11}};
    }
    QuadForm2<K> q1 = red.p1, q2 = red.p2;
    auto [l1, m1] = member_annihilating(q1, q2, roots[0].first, roots[0].second);
    auto [l2, m2] = member_annihilating(q1, q2, roots[1].first, roots[1].second);
    Mat2<K> L{roots[0].first, roots[1].first, roots[0].second, roots[1].second};
    QuadForm2<K> S1 = l1 * q1 + m1 * q2;
    QuadForm2<K> S2 = l2 * q1 + m2 * q2;
    K c1 = S1.eval(roots[1].first, roots[1].second); // S1 o L = c1 yhat^2
    K c2 = S2.eval(roots[0].first, roots[0].second); // S2 o L = c2 xhat^2
    if (k_is_zero(c1) || k_is_zero(c2))
        throw InternalCheckFailure("hyperbolic normalization: degenerate pencil member");
    red.src(L);
    red.mix(Mat2<K>{l2 / c2, m2 / c2, l1 / c1, m1 / c1});
}

template <class K>
void reduce_elliptic(PencilReducer<K>& red) {
    // make the first member invertible
    if (k_is_zero(red.p1.det4())) {
        bool done = false;
        for (long t = 1; t <= 3 && !done; ++t)
            for (long sign : {1L, -1L}) {
                QuadForm2<K> cand = red.p1 + K(sign * t) * red.p2;
                if (!k_is_zero(cand.det4())) {
                    red.mix(Mat2<K>{K(1), K(sign * t), K(0), K(1)});
                    done = true;
                    break;
                }
            }
        if (!done) throw InternalCheckFailure("elliptic normalization: no invertible member");
    }
    // kill the trace of B = A1^{-1} A2, then scale so B^2 = -1/4
    const K half = K(1) / K(2);
    auto traceB = [&]() {
        // tr(A1^{-1} A2) = (a1_20 * a2_02 - a1_11 a2_11 / 2 + a1_02 a2_20) / det(A1)
        const QuadForm2<K>&a = red.p1, &b = red.p2;
        K det1 = a.det4() * K(1) / K(4);
        return (a.c20 * b.c02 - a.c11 * b.c11 * half + a.c02 * b.c20) / det1;
    };
    red.mix(Mat2<K>{K(1), K(0), -traceB() * half, K(1)});
    K det1 = red.p1.det4(), det2 = red.p2.det4();
    K d = det2 / det1; // det(B) > 0 in the elliptic case
    if (!(k_sgn(d) > 0)) throw InternalCheckFailure("elliptic normalization: det(B) <= 0");
    K s = sqrt_or_throw(d, "elliptic normalization");
    red.mix(Mat2<K>{K(1), K(0), K(0), K(1) / (K(2) * s)});
    // B tilde = A1^{-1} A2 with Btilde^2 = -I/4; basis (v, -2 Btilde v), v = e1
    const QuadForm2<K>&a = red.p1, &b = red.p2;
    K da = a.det4() * K(1) / K(4);
    // A1^{-1} = (1/det) [[c02, -c11/2], [-c11/2, c20]]
    K B00 = (a.c02 * b.c20 - a.c11 * half * b.c11 * half) / da;
    K B10 = (-a.c11 * half * b.c20 + a.c20 * b.c11 * half) / da;
    Mat2<K> L{K(1), K(-2) * B00, K(0), K(-2) * B10};
    if (k_is_zero(L.det())) throw InternalCheckFailure("elliptic normalization: singular basis");
    red.src(L);
    // now A1 = [[e, f], [f, -e]]; mix by M_ef^{-1}, M_ef = [[e, 2f], [-f/2, e]]
    K e = red.p1.c20, fc = red.p1.c11 * half;
    if (!k_is_zero(red.p1.c02 + e))
        throw InternalCheckFailure("elliptic normalization: trace-free shape lost");
    red.mix(Mat2<K>{e, K(2) * fc, -fc * half, e}.inverse());
}

template <class K>
void reduce_parabolic(PencilReducer<K>& red, const QuadForm2<K>& delta) {
    K u1, u2;
    if (!k_is_zero(delta.c20)) {
        u1 = -delta.c11 / (K(2) * delta.c20);
        u2 = K(1);
    } else {
        u1 = K(1);
        u2 = K(0);
    }
    K w1, w2;
    if (!k_is_zero(u2)) {
        w1 = K(1);
        w2 = K(0);
    } else {
        w1 = K(0);
        w2 = K(1);
    }
    QuadForm2<K> q1 = red.p1, q2 = red.p2;
    auto [l0, m0] = member_annihilating(q1, q2, u1, u2);
    K l1 = k_is_zero(m0) ? K(0) : K(1);
    K m1 = k_is_zero(m0) ? K(1) : K(0);
    QuadForm2<K> S0 = l0 * q1 + m0 * q2;
    QuadForm2<K> S1 = l1 * q1 + m1 * q2;
    K c = S0.eval(w1, w2);
    K alpha = S1.eval(w1, w2);
    K beta = S1.polar2(w1, w2, u1, u2);
    K gamma = S1.eval(u1, u2);
    if (k_is_zero(c) || k_is_zero(beta) || !k_is_zero(gamma))
        throw InternalCheckFailure("parabolic normalization: unexpected pencil shape");
    red.src(Mat2<K>{w1, u1, w2, u2});
    red.mix(Mat2<K>{l0 / c, m0 / c, l1 / beta - alpha * l0 / (beta * c),
                    m1 / beta - alpha * m0 / (beta * c)});
}

template <class K>
void reduce_inflection(PencilReducer<K>& red, TwoJetClass cls) {
    if (cls == TwoJetClass::DegenerateInflectionZero) return;
    if (red.p1.is_zero()) red.mix(Mat2<K>{K(0), K(1), K(1), K(0)});
    // remove the proportional second slot
    if (!red.p2.is_zero()) {
        K mu;
        if (!k_is_zero(red.p1.c20)) mu = red.p2.c20 / red.p1.c20;
        else if (!k_is_zero(red.p1.c11)) mu = red.p2.c11 / red.p1.c11;
        else mu = red.p2.c02 / red.p1.c02;
        red.mix(Mat2<K>{K(1), K(0), -mu, K(1)});
        if (!red.p2.is_zero())
            throw InternalCheckFailure("inflection normalization: slots not proportional");
    }
    QuadForm2<K>& q = red.p1;
    switch (cls) {
        case TwoJetClass::InflectionPlus: {
            if (k_sgn(q.c20) < 0) red.mix(Mat2<K>{K(-1), K(0), K(0), K(1)});
            K a = q.c20;
            red.src(Mat2<K>{K(1), -q.c11 / (K(2) * a), K(0), K(1)});
            red.mix(Mat2<K>{K(1) / a, K(0), K(0), K(1)});
            K ratio = q.c02; // now x^2 + ratio y^2, ratio > 0
            K s = sqrt_or_throw(K(1) / ratio, "inflection normalization");
            red.src(Mat2<K>{K(1), K(0), K(0), s});
            break;
        }
        case TwoJetClass::InflectionMinus: {
            if (k_is_zero(q.c20) && k_is_zero(q.c02)) {
                red.mix(Mat2<K>{K(1) / q.c11, K(0), K(0), K(1)});
                return;
            }
            if (k_is_zero(q.c20)) red.src(Mat2<K>{K(0), K(1), K(1), K(0)});
            if (k_sgn(q.c20) < 0) red.mix(Mat2<K>{K(-1), K(0), K(0), K(1)});
            K a = q.c20;
            red.src(Mat2<K>{K(1), -q.c11 / (K(2) * a), K(0), K(1)});
            red.mix(Mat2<K>{K(1) / a, K(0), K(0), K(1)});
            K ratio = -q.c02; // x^2 - ratio y^2, ratio > 0
            K s = sqrt_or_throw(K(1) / ratio, "inflection normalization");
            red.src(Mat2<K>{K(1), K(0), K(0), s});
            red.src(Mat2<K>{K(1), K(1), K(1), K(-1)});
            red.mix(Mat2<K>{K(1) / K(4), K(0), K(0), K(1)});
            break;
        }
        case TwoJetClass::DegenerateInflectionRank1: {
            if (k_is_zero(q.c20)) red.src(Mat2<K>{K(0), K(1), K(1), K(0)});
            K a = q.c20;
            red.src(Mat2<K>{K(1), -q.c11 / (K(2) * a), K(0), K(1)});
            red.mix(Mat2<K>{K(1) / a, K(0), K(0), K(1)});
            break;
        }
        default: break;
    }
}

template <class K>
QuadForm2<K> expected_q1(TwoJetClass cls) {
    switch (cls) {
        case TwoJetClass::Hyperbolic: return {K(1), K(0), K(0)};
        case TwoJetClass::Elliptic: return {K(1), K(0), K(-1)};
        case TwoJetClass::Parabolic: return {K(1), K(0), K(0)};
        case TwoJetClass::InflectionPlus: return {K(1), K(0), K(1)};
        case TwoJetClass::InflectionMinus: return {K(0), K(1), K(0)};
        case TwoJetClass::DegenerateInflectionRank1: return {K(1), K(0), K(0)};
        case TwoJetClass::DegenerateInflectionZero: return {K(0), K(0), K(0)};
    }
    return {};
}

template <class K>
QuadForm2<K> expected_q2(TwoJetClass cls) {
    switch (cls) {
        case TwoJetClass::Hyperbolic: return {K(0), K(0), K(1)};
        case TwoJetClass::Elliptic: return {K(0), K(1), K(0)};
        case TwoJetClass::Parabolic: return {K(0), K(1), K(0)};
        default: return {K(0), K(0), K(0)};
    }
}

} // namespace detail

/// Brings the 2-jet exactly to the Gibson normal form of its class via a
/// GL(2) x GL(2) pair embedded in G(5). A single real quadratic extension of
/// the coefficient field suffices; rational inputs therefore normalize over
/// Surd scalars.
template <class K>
TwoJetNormalization<K> normalize_2jet(const MongeJet<K>& f) {
    if (f.order() < 2) throw InputError("normalize_2jet: order < 2");
    TwoJetClass cls = classify_2jet(f);
    detail::PencilReducer<K> red(quadratic_part(f.f1()), quadratic_part(f.f2()));
    QuadForm2<K> delta = delta_form(f);
    K disc = delta_discriminant(delta);
    switch (cls) {
        case TwoJetClass::Hyperbolic: detail::reduce_hyperbolic(red, delta, disc); break;
        case TwoJetClass::Elliptic: detail::reduce_elliptic(red); break;
        case TwoJetClass::Parabolic: detail::reduce_parabolic(red, delta); break;
        default: detail::reduce_inflection(red, cls); break;
    }
    ProjectiveMapG5<K> psi = red.to_group_element();
    MongeJet<K> normal = act_on_monge(psi, f);
    QuadForm2<K> g1 = quadratic_part(normal.f1()), g2 = quadratic_part(normal.f2());
    QuadForm2<K> e1 = detail::expected_q1<K>(cls), e2 = detail::expected_q2<K>(cls);
    bool ok = k_is_zero(g1.c20 - e1.c20) && k_is_zero(g1.c11 - e1.c11) &&
              k_is_zero(g1.c02 - e1.c02) && k_is_zero(g2.c20 - e2.c20) &&
              k_is_zero(g2.c11 - e2.c11) && k_is_zero(g2.c02 - e2.c02);
    if (!ok) throw InternalCheckFailure("normalize_2jet: normal form not reached");
    return {cls, psi, normal};
}

inline TwoJetNormalization<Surd> normalize_2jet(const MongeJet<Rational>& f) {
    return normalize_2jet(f.map<Surd>([](const Rational& r) { return Surd(r); }));
}

} // namespace projjet
