#pragma once

#include <array>
#include <utility>

#include "projjet/monge.hpp"

namespace projjet {

/// Element of G(5), the 16-parameter subgroup of PGL(5) fixing the origin
/// and the xy-plane W, in the affine chart where p's constant term is 1:
///
///   Psi(x,y,z,w) = (q1, q2, q3, q4) / p,
///   q1, q2 linear in x,y,z,w;  q3, q4 linear in z,w;
///   p = 1 + p1 x + p2 y + p3 z + p4 w.
///
/// The (x,y) and (z,w) 2x2 blocks must be invertible, so the map is a local
/// diffeomorphism fixing the origin and preserving W as a set.
///
/// Acting on Monge jets is by substitution (pullback): g = act_on_monge(psi, f)
/// is the jet whose graph Psi carries onto the graph of f, i.e. the residual
/// equations F_i(x, y, g1, g2) = o(k) of the defining identity
/// F_i = q_{i+2}/p - f_i(q1/p, q2/p) hold. residual_check verifies exactly that.
template <class K>
class ProjectiveMapG5 {
public:
    // Coefficient rows over columns (x, y, z, w).
    std::array<K, 4> q1{K(0), K(0), K(0), K(0)};
    std::array<K, 4> q2{K(0), K(0), K(0), K(0)};
    std::array<K, 2> q3{K(0), K(0)}; // z, w only
    std::array<K, 2> q4{K(0), K(0)};
    std::array<K, 4> p{K(0), K(0), K(0), K(0)};

    static ProjectiveMapG5 identity() {
        ProjectiveMapG5 m;
        m.q1[0] = K(1);
        m.q2[1] = K(1);
        m.q3[0] = K(1);
        m.q4[1] = K(1);
        return m;
    }

    /// Pure-linear element: (x,y) block L, (z,w) block N (row-major 2x2).
    static ProjectiveMapG5 linear(const std::array<K, 4>& L, const std::array<K, 4>& N) {
        ProjectiveMapG5 m;
        m.q1[0] = L[0];
        m.q1[1] = L[1];
        m.q2[0] = L[2];
        m.q2[1] = L[3];
        m.q3[0] = N[0];
        m.q3[1] = N[1];
        m.q4[0] = N[2];
        m.q4[1] = N[3];
        return m;
    }

    /// The x <-> y, z <-> w exchange.
    static ProjectiveMapG5 swap_xy_zw() {
        return linear({K(0), K(1), K(1), K(0)}, {K(0), K(1), K(1), K(0)});
    }

    K det_xy() const { return q1[0] * q2[1] - q1[1] * q2[0]; }
    K det_zw() const { return q3[0] * q4[1] - q3[1] * q4[0]; }

    bool valid() const { return !k_is_zero(det_xy()) && !k_is_zero(det_zw()); }

    void require_valid() const {
        if (!valid())
            throw SingularLinearPart("ProjectiveMapG5: singular (x,y) or (z,w) block");
    }

    bool is_identity() const {
        ProjectiveMapG5 id = identity();
        for (int i = 0; i < 4; ++i)
            if (!k_is_zero(q1[i] - id.q1[i]) || !k_is_zero(q2[i] - id.q2[i]) ||
                !k_is_zero(p[i] - id.p[i]))
                return false;
        for (int i = 0; i < 2; ++i)
            if (!k_is_zero(q3[i] - id.q3[i]) || !k_is_zero(q4[i] - id.q4[i])) return false;
        return true;
    }

    /// 5x5 matrix over columns (x, y, z, w, t); rows q1, q2, q3, q4, p.
    std::array<std::array<K, 5>, 5> matrix() const {
        std::array<std::array<K, 5>, 5> m{};
        for (auto& row : m) row.fill(K(0));
        for (int j = 0; j < 4; ++j) {
            m[0][j] = q1[j];
            m[1][j] = q2[j];
            m[4][j] = p[j];
        }
        m[2][2] = q3[0];
        m[2][3] = q3[1];
        m[3][2] = q4[0];
        m[3][3] = q4[1];
        m[4][4] = K(1);
        return m;
    }

    static ProjectiveMapG5 from_matrix(const std::array<std::array<K, 5>, 5>& m) {
        // Renormalize so the p constant term is 1 (group products keep it 1
        // already; this guards hand-built matrices).
        const K& c = m[4][4];
        if (k_is_zero(c)) throw SingularLinearPart("ProjectiveMapG5: zero p constant");
        ProjectiveMapG5 r;
        for (int j = 0; j < 4; ++j) {
            r.q1[j] = m[0][j] / c;
            r.q2[j] = m[1][j] / c;
            r.p[j] = m[4][j] / c;
        }
        if (!k_is_zero(m[2][0]) || !k_is_zero(m[2][1]) || !k_is_zero(m[3][0]) || !k_is_zero(m[3][1]))
            throw InputError("ProjectiveMapG5: matrix does not preserve W");
        r.q3[0] = m[2][2] / c;
        r.q3[1] = m[2][3] / c;
        r.q4[0] = m[3][2] / c;
        r.q4[1] = m[3][3] / c;
        r.require_valid();
        return r;
    }

    ProjectiveMapG5 inverse() const {
        require_valid();
        // Block-triangular inverse of the linear 4x4 part, then the p row.
        const K dl = det_xy();
        std::array<K, 4> Li{q2[1] / dl, -q1[1] / dl, -q2[0] / dl, q1[0] / dl};
        const K dn = det_zw();
        std::array<K, 4> Ni{q4[1] / dn, -q3[1] / dn, -q4[0] / dn, q3[0] / dn};
        // C block: (q1,q2) x (z,w)
        std::array<K, 4> C{q1[2], q1[3], q2[2], q2[3]};
        // -L^{-1} C N^{-1}
        std::array<K, 4> LC{Li[0] * C[0] + Li[1] * C[2], Li[0] * C[1] + Li[1] * C[3],
                            Li[2] * C[0] + Li[3] * C[2], Li[2] * C[1] + Li[3] * C[3]};
        std::array<K, 4> Cp{-(LC[0] * Ni[0] + LC[1] * Ni[2]), -(LC[0] * Ni[1] + LC[1] * Ni[3]),
                            -(LC[2] * Ni[0] + LC[3] * Ni[2]), -(LC[2] * Ni[1] + LC[3] * Ni[3])};
        ProjectiveMapG5 r;
        r.q1 = {Li[0], Li[1], Cp[0], Cp[1]};
        r.q2 = {Li[2], Li[3], Cp[2], Cp[3]};
        r.q3 = {Ni[0], Ni[1]};
        r.q4 = {Ni[2], Ni[3]};
        // p row of the inverse: -p . Binv over (x,y,z,w)
        std::array<std::array<K, 4>, 4> Binv;
        Binv[0] = r.q1;
        Binv[1] = r.q2;
        Binv[2] = {K(0), K(0), Ni[0], Ni[1]};
        Binv[3] = {K(0), K(0), Ni[2], Ni[3]};
        for (int j = 0; j < 4; ++j) {
            K s(0);
            for (int i = 0; i < 4; ++i) s += p[i] * Binv[i][j];
            r.p[j] = -s;
        }
        return r;
    }

    /// Action on homogeneous point coordinates [x; y; z; w; t].
    std::array<K, 5> apply_point(const std::array<K, 5>& v) const {
        auto m = matrix();
        std::array<K, 5> r{K(0), K(0), K(0), K(0), K(0)};
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) r[i] += m[i][j] * v[j];
        return r;
    }

    template <class K2, class F>
    ProjectiveMapG5<K2> map(F&& f) const {
        ProjectiveMapG5<K2> r;
        for (int i = 0; i < 4; ++i) {
            r.q1[i] = f(q1[i]);
            r.q2[i] = f(q2[i]);
            r.p[i] = f(p[i]);
        }
        for (int i = 0; i < 2; ++i) {
            r.q3[i] = f(q3[i]);
            r.q4[i] = f(q4[i]);
        }
        return r;
    }
};

/// Element acting as "inner first, then outer":
/// act_on_monge(compose_maps(outer, inner), f) == act_on_monge(outer, act_on_monge(inner, f)).
/// With the substitution action this is the matrix product mat(inner) * mat(outer).
template <class K>
ProjectiveMapG5<K> compose_maps(const ProjectiveMapG5<K>& outer, const ProjectiveMapG5<K>& inner) {
    auto a = inner.matrix();
    auto b = outer.matrix();
    std::array<std::array<K, 5>, 5> m{};
    for (auto& row : m) row.fill(K(0));
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) {
            if (k_is_zero(a[i][k])) continue;
            for (int j = 0; j < 5; ++j) m[i][j] += a[i][k] * b[k][j];
        }
    return ProjectiveMapG5<K>::from_matrix(m);
}

template <class K>
ProjectiveMapG5<K> inverse_map(const ProjectiveMapG5<K>& a) {
    return a.inverse();
}

/// Substitutes (x, y, f1, f2) into a coefficient row.
template <class K, std::size_t N>
Jet2<K> row_jet(const std::array<K, N>& row, const MongeJet<K>& f, bool with_unit) {
    const int ord = f.order();
    Jet2<K> r(ord);
    if constexpr (N == 4) {
        r.set(1, 0, row[0]);
        r.set(0, 1, row[1]);
        r = r + row[2] * f.f1() + row[3] * f.f2();
    } else {
        r = row[0] * f.f1() + row[1] * f.f2();
    }
    if (with_unit) r.add_to(0, 0, K(1));
    return r;
}

/// The substitution action of G(5) on Monge jets: returns g such that psi
/// maps the graph of g onto the graph of f through the order (so the residual
/// identity F_i(x, y, g1, g2) = o(k) holds with F built from psi and f).
/// Computed constructively: push the graph of f through psi^{-1} in the chart,
/// re-invert the planar pair, and compose.
template <class K>
MongeJet<K> act_on_monge(const ProjectiveMapG5<K>& psi, const MongeJet<K>& f) {
    psi.require_valid();
    ProjectiveMapG5<K> inv = psi.inverse();
    Jet2<K> pj = row_jet(inv.p, f, true);
    Jet2<K> X = divide_by_unit(row_jet(inv.q1, f, false), pj);
    Jet2<K> Y = divide_by_unit(row_jet(inv.q2, f, false), pj);
    Jet2<K> Z = divide_by_unit(row_jet(inv.q3, f, false), pj);
    Jet2<K> W = divide_by_unit(row_jet(inv.q4, f, false), pj);
    JetMapN<K> t = invert_planar(JetMapN<K>(std::move(X), std::move(Y)));
    // MongeJet construction asserts the constant and linear parts vanish.
    return MongeJet<K>(compose(Z, t), compose(W, t));
}

template <class K>
MongeJet<K> act_on_monge(const ProjectiveMapG5<K>& psi, const MongeJet<K>& f, int k) {
    return act_on_monge(psi, f.truncated(k));
}

/// True iff F1(x,y,g1,g2) and F2(x,y,g1,g2) vanish through degree k, where
/// F_i = q_{i+2}/p - f_i(q1/p, q2/p).
template <class K>
bool residual_check(const ProjectiveMapG5<K>& psi, const MongeJet<K>& f, const MongeJet<K>& g,
                    int k) {
    MongeJet<K> fk = f.order() == k ? f : f.truncated(k);
    MongeJet<K> gk = g.order() == k ? g : g.truncated(k);
    Jet2<K> pj = row_jet(psi.p, gk, true);
    Jet2<K> X = divide_by_unit(row_jet(psi.q1, gk, false), pj);
    Jet2<K> Y = divide_by_unit(row_jet(psi.q2, gk, false), pj);
    Jet2<K> Z = divide_by_unit(row_jet(psi.q3, gk, false), pj);
    Jet2<K> W = divide_by_unit(row_jet(psi.q4, gk, false), pj);
    JetMapN<K> s(std::move(X), std::move(Y));
    Jet2<K> F1 = Z - compose(fk.f1(), s);
    Jet2<K> F2 = W - compose(fk.f2(), s);
    return F1.is_zero() && F2.is_zero();
}

/// Result of an action together with the witnessing group element:
/// residual_check(witness, source, result, order) holds.
template <class K>
struct TransformedMonge {
    MongeJet<K> result;
    ProjectiveMapG5<K> witness;
};

template <class K>
TransformedMonge<K> act_with_witness(const ProjectiveMapG5<K>& psi, const MongeJet<K>& f) {
    return {act_on_monge(psi, f), psi};
}

/// Deterministic random element: all 16 parameters drawn as rationals of
/// magnitude <= bound, rejecting singular blocks.
inline ProjectiveMapG5<Rational> random_element(std::uint64_t seed, long bound) {
    Rng rng(seed);
    for (;;) {
        ProjectiveMapG5<Rational> m;
        for (int i = 0; i < 4; ++i) {
            m.q1[i] = rng.rational(bound);
            m.q2[i] = rng.rational(bound);
            m.p[i] = rng.rational(bound);
        }
        for (int i = 0; i < 2; ++i) {
            m.q3[i] = rng.rational(bound);
            m.q4[i] = rng.rational(bound);
        }
        if (m.valid()) return m;
    }
}

/// Random element drawn from an existing stream.
inline ProjectiveMapG5<Rational> random_element(Rng& rng, long bound) {
    for (;;) {
        ProjectiveMapG5<Rational> m;
        for (int i = 0; i < 4; ++i) {
            m.q1[i] = rng.rational(bound);
            m.q2[i] = rng.rational(bound);
            m.p[i] = rng.rational(bound);
        }
        for (int i = 0; i < 2; ++i) {
            m.q3[i] = rng.rational(bound);
            m.q4[i] = rng.rational(bound);
        }
        if (m.valid()) return m;
    }
}

} // namespace projjet
