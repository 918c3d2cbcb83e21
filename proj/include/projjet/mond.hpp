#pragma once

#include <utility>
#include <vector>

#include "projjet/jet2.hpp"

namespace projjet {

/// Mond's A^3-orbits of jets of germs (R^2,0) -> (R^3,0), plus Regular and a
/// catch-all Other for corank-2 / pencil-rank-0 jets outside the table.
enum class MondType { Regular, S0, S, B, H, P, R, T, U, Other };

inline const char* to_string(MondType t) {
    switch (t) {
        case MondType::Regular: return "Regular";
        case MondType::S0: return "S0";
        case MondType::S: return "S";
        case MondType::B: return "B";
        case MondType::H: return "H";
        case MondType::P: return "P";
        case MondType::R: return "R";
        case MondType::T: return "T";
        case MondType::U: return "U";
        case MondType::Other: return "Other";
    }
    return "?";
}

namespace detail {

/// Right change g o R for a linear planar R given entrywise.
template <class K>
void right_linear(std::vector<Jet2<K>>& g, const K& r11, const K& r12, const K& r21,
                  const K& r22) {
    const int ord = g.front().order();
    Jet2<K> s1(ord), s2(ord);
    s1.set(1, 0, r11);
    s1.set(0, 1, r12);
    s2.set(1, 0, r21);
    s2.set(0, 1, r22);
    JetMapN<K> R(std::move(s1), std::move(s2));
    for (auto& c : g) c = compose(c, R);
}

/// Right change y <- y + q(x, y) (slot x untouched).
template <class K>
void right_shear_y(std::vector<Jet2<K>>& g, const Jet2<K>& q) {
    const int ord = g.front().order();
    Jet2<K> s1(ord), s2 = q;
    s1.set(1, 0, K(1));
    s2.add_to(0, 1, K(1));
    JetMapN<K> R(std::move(s1), std::move(s2));
    for (auto& c : g) c = compose(c, R);
}

} // namespace detail

/// A^3-type recognition by prenormalization and coefficient tests. The jet is
/// truncated to order 3; the decision tree follows the orbit table for
/// corank-1 jets and the per-branch invariants (y^3 of the second slot in the
/// y^2-pencil branch; the xy^2 / y^3 / y^3-of-carrier triple in the xy branch).
template <class K>
MondType classify_A3(const JetMapN<K>& jet) {
    if (jet.size() != 3) throw InputError("classify_A3: needs 3 components");
    if (jet.order() < 3) throw InputError("classify_A3: order < 3");
    for (int i = 0; i < 3; ++i)
        if (!k_is_zero(jet[i].at(0, 0))) throw InputError("classify_A3: not a germ at the origin");

    std::vector<Jet2<K>> g{jet[0].truncated(3), jet[1].truncated(3), jet[2].truncated(3)};

    // differential rank
    std::array<std::array<K, 2>, 3> L;
    for (int i = 0; i < 3; ++i) L[i] = {g[i].at(1, 0), g[i].at(0, 1)};
    int rank = 0;
    for (int i = 0; i < 3 && rank < 2; ++i)
        for (int j = i + 1; j < 3 && rank < 2; ++j)
            if (!k_is_zero(L[i][0] * L[j][1] - L[i][1] * L[j][0])) rank = 2;
    if (rank == 2) return MondType::Regular;
    if (rank < 2) {
        bool any = false;
        for (int i = 0; i < 3; ++i)
            if (!k_is_zero(L[i][0]) || !k_is_zero(L[i][1])) any = true;
        rank = any ? 1 : 0;
    }
    if (rank == 0) return MondType::Other;

    // move a component with nonzero linear part first
    int lead = 0;
    while (k_is_zero(L[lead][0]) && k_is_zero(L[lead][1])) ++lead;
    std::swap(g[0], g[lead]);
    std::swap(L[0], L[lead]);

    // kill the proportional linear parts of the other two components
    for (int i = 1; i < 3; ++i) {
        K ci = k_is_zero(L[0][0]) ? L[i][1] / L[0][1] : L[i][0] / L[0][0];
        g[i] = g[i] - ci * g[0];
    }

    // right linear change making the lead linear part equal to x
    if (!k_is_zero(L[0][0]))
        detail::right_linear(g, K(1) / L[0][0], -L[0][1] / L[0][0], K(0), K(1));
    else
        detail::right_linear(g, K(0), K(1), K(1) / L[0][1], K(0));

    // absorb the higher terms of the lead into the source: g o (lead, y)^{-1}
    {
        const int ord = g.front().order();
        Jet2<K> yj(ord);
        yj.set(0, 1, K(1));
        JetMapN<K> sigma = invert_planar(JetMapN<K>(g[0], yj));
        for (auto& c : g) c = compose(c, sigma);
    }

    auto kill_pure_x = [&g]() {
        for (int i = 1; i < 3; ++i) {
            g[i].set(2, 0, K(0));
            g[i].set(3, 0, K(0));
        }
    };
    kill_pure_x(); // left change u_i - alpha u_0^2 - beta u_0^3 since g[0] = x

    // pencil of the (y^2, xy) parts of g[1], g[2]
    std::array<K, 2> v1{g[1].at(0, 2), g[1].at(1, 1)};
    std::array<K, 2> v2{g[2].at(0, 2), g[2].at(1, 1)};
    K pdet = v1[0] * v2[1] - v1[1] * v2[0];
    if (!k_is_zero(pdet)) return MondType::S0;
    bool z1 = k_is_zero(v1[0]) && k_is_zero(v1[1]);
    bool z2 = k_is_zero(v2[0]) && k_is_zero(v2[1]);
    if (z1 && z2) return MondType::Other;

    std::array<K, 2> v = z1 ? v2 : v1;
    if (!k_is_zero(v[0])) {
        // y^2 representative: slot 1 carries it, normalized to y^2 + c xy
        if (z1) std::swap(g[1], g[2]);
        g[1] = (K(1) / g[1].at(0, 2)) * g[1];
        // remove the proportional quadratic of the other slot
        g[2] = g[2] - g[2].at(0, 2) * g[1];
        if (!k_is_zero(g[2].at(1, 1)))
            throw InternalCheckFailure("classify_A3: pencil not rank 1");
        // complete the square: y <- y - (c/2) x
        K c = g[1].at(1, 1);
        detail::right_linear(g, K(1), K(0), -c / K(2), K(1));
        kill_pure_x();
        // S iff the y^3 coefficient of the third slot survives
        return k_is_zero(g[2].at(0, 3)) ? MondType::B : MondType::S;
    }

    // pencil spanned by xy: the third slot carries it
    if (z2) std::swap(g[1], g[2]);
    g[2] = (K(1) / g[2].at(1, 1)) * g[2];
    g[1] = g[1] - g[1].at(1, 1) * g[2];
    if (!k_is_zero(g[1].at(0, 2)) || !k_is_zero(g[1].at(1, 1)))
        throw InternalCheckFailure("classify_A3: pencil not rank 1");
    // y <- y + q kills the x^3, x^2 y, x y^2 terms of the carrier
    {
        const int ord = g.front().order();
        Jet2<K> q(ord);
        q.set(2, 0, -g[2].at(3, 0));
        q.set(1, 1, -g[2].at(2, 1));
        q.set(0, 2, -g[2].at(1, 2));
        detail::right_shear_y(g, q);
    }
    K c = g[2].at(0, 3);
    K s = g[1].at(1, 2);
    K t = g[1].at(0, 3);
    if (!k_is_zero(t)) return MondType::H;
    if (!k_is_zero(s)) return k_is_zero(c) ? MondType::R : MondType::P;
    return k_is_zero(c) ? MondType::U : MondType::T;
}

/// Random A^3 change of coordinates: tau o g o sigma with sigma a random
/// planar jet diffeomorphism and tau a random jet diffeomorphism of R^3
/// (random invertible linears composed with unit-linear higher parts).
template <class K>
JetMapN<K> a3_conjugate(const JetMapN<K>& g, std::uint64_t seed, long bound = 3) {
    if (g.size() != 3) throw InputError("a3_conjugate: needs 3 components");
    Rng rng(seed);
    const int ord = g.order();
    auto kr = [&rng, bound] { return scalar_traits<K>::from_rational(rng.rational(bound)); };

    // source: random invertible linear, then unit-linear higher terms
    K r11(0), r12(0), r21(0), r22(0);
    do {
        r11 = kr();
        r12 = kr();
        r21 = kr();
        r22 = kr();
    } while (k_is_zero(r11 * r22 - r12 * r21));
    Jet2<K> s1(ord), s2(ord);
    s1.set(1, 0, r11);
    s1.set(0, 1, r12);
    s2.set(1, 0, r21);
    s2.set(0, 1, r22);
    for (int d = 2; d <= std::min(3, ord); ++d)
        for (int i = 0; i <= d; ++i) {
            s1.add_to(i, d - i, kr());
            s2.add_to(i, d - i, kr());
        }
    JetMapN<K> sigma(std::move(s1), std::move(s2));

    std::vector<Jet2<K>> comp;
    for (int i = 0; i < 3; ++i) comp.push_back(compose(g[i], sigma));

    // target: random invertible 3x3 linear
    std::array<std::array<K, 3>, 3> T;
    for (;;) {
        for (auto& row : T)
            for (auto& e : row) e = kr();
        K det = T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) -
                T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
                T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
        if (!k_is_zero(det)) break;
    }
    std::vector<Jet2<K>> out;
    for (int i = 0; i < 3; ++i) {
        Jet2<K> acc(ord);
        for (int j = 0; j < 3; ++j) acc = acc + T[i][j] * comp[j];
        out.push_back(std::move(acc));
    }
    // target higher terms: u_i += sum c_alpha u^alpha over monomials of degree 2, 3
    std::vector<Jet2<K>> cur = out;
    for (int i = 0; i < 3; ++i)
        for (int e1 = 0; e1 <= 3; ++e1)
            for (int e2 = 0; e2 + e1 <= 3; ++e2)
                for (int e3 = 0; e3 + e2 + e1 <= 3; ++e3) {
                    int deg = e1 + e2 + e3;
                    if (deg < 2 || deg > 3) continue;
                    K cc = kr();
                    if (k_is_zero(cc)) continue;
                    Jet2<K> mono = Jet2<K>::constant(ord, cc);
                    for (int n = 0; n < e1; ++n) mono = mono * cur[0];
                    for (int n = 0; n < e2; ++n) mono = mono * cur[1];
                    for (int n = 0; n < e3; ++n) mono = mono * cur[2];
                    out[i] = out[i] + mono;
                }
    return JetMapN<K>(std::move(out));
}

/// True when the two jets are certified inequivalent (labels differ); false
/// is inconclusive.
template <class K>
bool a3_distinguish(const JetMapN<K>& g, const JetMapN<K>& h) {
    return classify_A3(g) != classify_A3(h);
}

} // namespace projjet
