#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "projjet/projection.hpp"
#include "projjet/stratum.hpp"

namespace projjet {

namespace detail {

/// Exact Gaussian elimination; returns nullopt when the matrix is singular.
template <class K>
std::optional<std::vector<K>> solve_linear(std::vector<std::vector<K>> A, std::vector<K> b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && k_is_zero(A[piv][col])) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || k_is_zero(A[r][col])) continue;
            K factor = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<K> x(n, K(0));
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

/// Weights w_s with p'(0) = sum_s w_s p(s) for polynomials of degree <= D,
/// nodes s = 0..D.
template <class K>
std::vector<K> derivative_weights(int D) {
    std::vector<std::vector<K>> V(D + 1, std::vector<K>(D + 1, K(0)));
    for (int s = 0; s <= D; ++s) {
        K pw(1);
        for (int k = 0; k <= D; ++k) {
            V[s][k] = pw;
            pw *= K(s);
        }
    }
    // solve V^T w = e_1
    std::vector<std::vector<K>> Vt(D + 1, std::vector<K>(D + 1, K(0)));
    for (int i = 0; i <= D; ++i)
        for (int j = 0; j <= D; ++j) Vt[i][j] = V[j][i];
    std::vector<K> e(D + 1, K(0));
    e[1] = K(1);
    auto w = solve_linear(Vt, e);
    if (!w) throw InternalCheckFailure("derivative_weights: Vandermonde singular");
    return *w;
}

} // namespace detail

/// A coefficient equation: coefficient (i, j) of the given slot must equal `want`.
template <class K>
struct TargetCoeff {
    int slot; // 0 or 1
    int i, j;
    K want;
};

template <class K>
struct SolvedTransform {
    ProjectiveMapG5<K> psi;
    MongeJet<K> reduced;
    std::vector<K> params;
};

/// Solves for template parameters making the targeted coefficients of
/// act_on_monge(build(params), g) hit their required values. Responses are
/// polynomial in the parameters for the templates used here, so Newton with
/// exact directional derivatives (degree-bounded polynomial fit) terminates
/// with an exactly verified solution.
template <class K, class Builder>
std::optional<SolvedTransform<K>> solve_transform(const MongeJet<K>& g, Builder&& build,
                                                  const std::vector<TargetCoeff<K>>& targets,
                                                  std::vector<K> params, int max_iter = 30,
                                                  int fit_degree = 4) {
    const std::size_t n = params.size();
    if (targets.size() != n)
        throw InputError("solve_transform: targets and parameters must match");

    auto residual = [&](const std::vector<K>& t) -> std::optional<std::vector<K>> {
        ProjectiveMapG5<K> psi = build(t);
        if (!psi.valid()) return std::nullopt;
        MongeJet<K> h = act_on_monge(psi, g);
        std::vector<K> r;
        r.reserve(n);
        for (const auto& tc : targets) r.push_back(h.slot(tc.slot).at(tc.i, tc.j) - tc.want);
        return r;
    };

    const std::vector<K> w = detail::derivative_weights<K>(fit_degree);
    Rng nudge(0x5eedULL);

    for (int iter = 0; iter < max_iter; ++iter) {
        auto r0 = residual(params);
        if (!r0) {
            for (auto& t : params) t += scalar_traits<K>::from_rational(Rational(1, 7));
            continue;
        }
        bool done = true;
        for (const auto& v : *r0)
            if (!k_is_zero(v)) done = false;
        if (done) {
            ProjectiveMapG5<K> psi = build(params);
            return SolvedTransform<K>{psi, act_on_monge(psi, g), params};
        }
        // exact Jacobian column by column
        std::vector<std::vector<K>> J(n, std::vector<K>(n, K(0)));
        bool jac_ok = true;
        for (std::size_t col = 0; col < n && jac_ok; ++col) {
            std::vector<std::vector<K>> samples;
            samples.push_back(*r0);
            for (int s = 1; s <= fit_degree; ++s) {
                auto ts = params;
                ts[col] += K(s);
                auto rs = residual(ts);
                if (!rs) {
                    jac_ok = false;
                    break;
                }
                samples.push_back(std::move(*rs));
            }
            if (!jac_ok) break;
            for (std::size_t row = 0; row < n; ++row) {
                K d(0);
                for (int s = 0; s <= fit_degree; ++s) d += w[s] * samples[s][row];
                J[row][col] = d;
            }
        }
        std::optional<std::vector<K>> step;
        if (jac_ok) {
            std::vector<K> rhs;
            for (const auto& v : *r0) rhs.push_back(-v);
            step = detail::solve_linear(J, rhs);
        }
        if (!step) {
            // singular Jacobian at this point: deterministic nudge and retry
            for (auto& t : params)
                t += scalar_traits<K>::from_rational(Rational(nudge.uniform(1, 5), 11));
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) params[i] += (*step)[i];
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// The explicit reduction transforms. Each builder reads the coefficients of
// the current (already 2-jet-normalized) jet and returns the group element to
// feed act_on_monge; shapes are asserted by the pipeline after each step.
// ---------------------------------------------------------------------------

/// Elliptic cubic step: (x^2-y^2+cubics, xy+cubics) -> (x^2-y^2+y^2 phi1, xy).
template <class K>
ProjectiveMapG5<K> step_elliptic_cubic(const MongeJet<K>& g) {
    auto psi = ProjectiveMapG5<K>::identity();
    psi.q1[2] = g.b(0, 3);
    psi.q1[3] = -g.a(2, 1) + g.b(1, 2) - g.b(3, 0);
    psi.q2[2] = -g.b(3, 0);
    psi.q2[3] = -g.b(2, 1) + g.b(0, 3) + g.a(3, 0);
    psi.p[0] = g.a(3, 0) + K(2) * g.b(0, 3);
    psi.p[1] = K(2) * g.b(1, 2) - g.a(2, 1);
    return psi;
}

/// Elliptic quartic step: kills x^4 and x^3 y of the first slot.
template <class K>
ProjectiveMapG5<K> step_elliptic_quartic(const MongeJet<K>& g) {
    auto psi = ProjectiveMapG5<K>::identity();
    psi.p[2] = g.a(4, 0);
    psi.p[3] = g.a(3, 1);
    return psi;
}

/// Hyperbolic cubic step: (x^2+cubics, y^2+cubics) -> (x^2+a03 y^3, y^2+b30 x^3).
template <class K>
ProjectiveMapG5<K> step_hyperbolic_cubic(const MongeJet<K>& g) {
    const K half = K(1) / K(2);
    auto psi = ProjectiveMapG5<K>::identity();
    psi.q1[2] = half * (-g.a(3, 0) + g.b(1, 2));
    psi.q1[3] = -half * g.a(1, 2);
    psi.q2[2] = -half * g.b(2, 1);
    psi.q2[3] = half * (g.a(2, 1) - g.b(0, 3));
    psi.p[0] = g.b(1, 2);
    psi.p[1] = g.a(2, 1);
    return psi;
}

/// Hyperbolic quartic step: kills x^4 of the first slot and y^4 of the second.
template <class K>
ProjectiveMapG5<K> step_hyperbolic_quartic(const MongeJet<K>& g) {
    auto psi = ProjectiveMapG5<K>::identity();
    psi.p[2] = g.a(4, 0);
    psi.p[3] = g.b(0, 4);
    return psi;
}

/// Parabolic prenormalization: (x^2+cubics, xy+cubics) ->
/// (x^2 + a12 xy^2 + a03 y^3, xy + (b12 - a21/2) xy^2 + b03 y^3) + quartics.
template <class K>
ProjectiveMapG5<K> step_parabolic_prenormalize(const MongeJet<K>& g) {
    const K half = K(1) / K(2);
    auto psi = ProjectiveMapG5<K>::identity();
    psi.q1[2] = -half * g.a(3, 0);
    psi.q1[3] = -half * g.a(2, 1);
    psi.q2[2] = -g.b(3, 0);
    psi.q2[3] = -(g.b(2, 1) - half * g.a(3, 0));
    return psi;
}

/// Parabolic H-branch cubic step (a03 != 0):
/// (x^2 + a12 xy^2 + a03 y^3, xy + br xy^2 + b03 y^3) -> (x^2 + (a12+3b03) xy^2 + a03 y^3, xy).
template <class K>
ProjectiveMapG5<K> step_parabolic_h_cubic(const MongeJet<K>& g) {
    const K a12 = g.a(1, 2), a03 = g.a(0, 3), br = g.b(1, 2), b03 = g.b(0, 3);
    if (k_is_zero(a03)) throw HypothesisViolation("pi_h_a03", "parabolic H step needs a03 != 0");
    auto psi = ProjectiveMapG5<K>::identity();
    psi.q1[3] = -(-br * a03 + K(3) * a12 * b03 + K(3) * b03 * b03) / a03;
    psi.q2[0] = b03 / a03;
    psi.q2[2] = b03 * b03 * (a12 * b03 - a03 * br) / (a03 * a03 * a03);
    psi.q2[3] = -b03 * (K(2) * b03 * b03 + br * a03) / (a03 * a03);
    psi.q4[0] = b03 / a03;
    psi.p[0] = b03 * b03 * (a12 + b03) / (a03 * a03);
    psi.p[1] = -(-K(2) * br * a03 + K(4) * a12 * b03 + K(3) * b03 * b03) / a03;
    return psi;
}

/// Parabolic P-branch cubic step (a03 = 0, a12 != 0):
/// (x^2 + a12 xy^2, xy + br xy^2 + b03 y^3) -> (x^2 + xy^2, xy + gamma y^3),
/// gamma = b03/a12.
template <class K>
ProjectiveMapG5<K> step_parabolic_p_cubic(const MongeJet<K>& g) {
    const K a12 = g.a(1, 2), br = g.b(1, 2);
    if (k_is_zero(a12)) throw HypothesisViolation("pi_p_a12", "parabolic P step needs a12 != 0");
    auto psi = ProjectiveMapG5<K>::identity();
    psi.q1[0] = a12;
    psi.q1[3] = a12 * br;
    psi.q3[0] = a12 * a12;
    psi.q4[1] = a12;
    psi.p[1] = K(2) * br;
    return psi;
}

/// Inflection-plus cubic step (b30 - b12 != 0): first slot -> x^2+y^2+k1 x^2 y.
template <class K>
ProjectiveMapG5<K> step_inflection_plus_cubic(const MongeJet<K>& g) {
    const K den = g.b(3, 0) - g.b(1, 2);
    if (k_is_zero(den))
        throw HypothesisViolation("pi_i_plus_b30_b12",
                                  "inflection reduction needs b30 - b12 != 0");
    auto psi = ProjectiveMapG5<K>::identity();
    psi.q3[1] = g.a(3, 0) - g.a(1, 2);
    psi.q4[1] = den;
    psi.q4[0] = K(0);
    psi.p[0] = -(g.a(3, 0) * g.b(1, 2) - g.a(1, 2) * g.b(3, 0)) / den;
    psi.p[1] = -(g.a(3, 0) * g.b(0, 3) - g.a(1, 2) * g.b(0, 3) - g.a(0, 3) * g.b(3, 0) +
                 g.a(0, 3) * g.b(1, 2)) /
               den;
    return psi;
}

/// Inflection-plus quartic step: kills x^4 of the first slot.
template <class K>
ProjectiveMapG5<K> step_inflection_plus_quartic(const MongeJet<K>& g) {
    auto psi = ProjectiveMapG5<K>::identity();
    psi.p[2] = g.a(4, 0);
    return psi;
}

/// Inflection-minus cubic step (b03 != 0): first slot -> xy + k2 x^3.
/// The slot mix z + a03 w kills y^3, the denominator terms the mixed x^2 y
/// and x y^2 (the quoted version with a21 + a03 does not close; this one is
/// the Pi_I_plus analogue and is verified by shape and residual).
template <class K>
ProjectiveMapG5<K> step_inflection_minus_cubic(const MongeJet<K>& g) {
    const K b03 = g.b(0, 3);
    if (k_is_zero(b03))
        throw HypothesisViolation("pi_i_minus_b03", "inflection reduction needs b03 != 0");
    auto psi = ProjectiveMapG5<K>::identity();
    psi.q3[1] = g.a(0, 3);
    psi.q4[1] = b03;
    psi.q4[0] = K(0);
    psi.p[0] = (g.a(2, 1) * g.b(0, 3) - g.a(0, 3) * g.b(2, 1)) / b03;
    psi.p[1] = (g.a(1, 2) * g.b(0, 3) - g.a(0, 3) * g.b(1, 2)) / b03;
    return psi;
}

/// Inflection-minus quartic step: kills x^2 y^2 of the first slot.
template <class K>
ProjectiveMapG5<K> step_inflection_minus_quartic(const MongeJet<K>& g) {
    auto psi = ProjectiveMapG5<K>::identity();
    psi.p[2] = g.a(2, 2);
    return psi;
}

/// Parabolic H-branch quartic cleanup: kill x^4 of slot 1 and y^4 of slot 2
/// while freezing the rest of the 3-jet shape (the xy^2 coefficient moves; it
/// is the modulus, and the y^3 coefficient is invariant under the whole
/// template). Solved at runtime on an 8-parameter isotropy template.
template <class K>
SolvedTransform<K> solve_parabolic_h_quartic(const MongeJet<K>& g) {
    const K C = g.a(0, 3);
    auto build = [](const std::vector<K>& t) {
        // t = (m, r3, r4, u3, u4, p1, p2, p3); the shear m pairs q2 and q4 to
        // keep the 2-jet (x^2, xy)
        auto psi = ProjectiveMapG5<K>::identity();
        psi.q2[0] = t[0];
        psi.q4[0] = t[0];
        psi.q1[2] = t[1];
        psi.q1[3] = t[2];
        psi.q2[2] = t[3];
        psi.q2[3] = t[4];
        psi.p[0] = t[5];
        psi.p[1] = t[6];
        psi.p[2] = t[7];
        return psi;
    };
    std::vector<TargetCoeff<K>> targets{
        {0, 3, 0, K(0)}, {0, 2, 1, K(0)}, {0, 4, 0, K(0)}, {1, 3, 0, K(0)},
        {1, 2, 1, K(0)}, {1, 1, 2, K(0)}, {1, 0, 3, K(0)}, {1, 0, 4, K(0)},
    };
    auto sol = solve_transform(g, build, targets, std::vector<K>(8, K(0)));
    if (!sol || !k_is_zero(sol->reduced.a(0, 3) - C))
        throw HypothesisViolation("pi_h_quartic",
                                  "parabolic H quartic cleanup: no reachable solution");
    return *sol;
}

/// Parabolic P-branch quartic cleanup: kill the whole slot-1 quartic except
/// the y^4 modulus while holding the cubic (x^2 + xy^2, xy + gamma y^3) fixed
/// (the y^3 coefficients and the y^4 modulus are invariant under the whole
/// isotropy template). Requires Lambda != 0; Lambda = 0 is the stated
/// obstruction. Solved on the untied 9-parameter isotropy template, seeded
/// with the quoted q21 = -a13/Lambda; one of the shear-coupled equations is
/// dependent and is verified after the solve instead.
template <class K>
SolvedTransform<K> solve_parabolic_p_quartic(const MongeJet<K>& g) {
    const K gamma = g.b(0, 3);
    const K lambda = g.a(0, 4);
    const K Lambda = K(6) * gamma * gamma + K(4) * lambda - K(15) * gamma + K(5);
    if (k_is_zero(gamma))
        throw HypothesisViolation("pi_p_gamma", "parabolic P quartic cleanup needs gamma != 0");
    if (k_is_zero(Lambda))
        throw HypothesisViolation("lambda_obstruction",
                                  "Lambda = 6 gamma^2 + 4 lambda - 15 gamma + 5 vanishes: the "
                                  "order-4 terms cannot be removed");
    auto build = [](const std::vector<K>& t) {
        // t = (m, r3, r4, u3, u4, p1, p2, p3, p4)
        auto psi = ProjectiveMapG5<K>::identity();
        psi.q2[0] = t[0];
        psi.q4[0] = t[0];
        psi.q1[2] = t[1];
        psi.q1[3] = t[2];
        psi.q2[2] = t[3];
        psi.q2[3] = t[4];
        psi.p[0] = t[5];
        psi.p[1] = t[6];
        psi.p[2] = t[7];
        psi.p[3] = t[8];
        return psi;
    };
    std::vector<K> seed(9, K(0));
    seed[0] = -g.a(1, 3) / Lambda;
    auto verify = [&](const SolvedTransform<K>& sol) {
        const MongeJet<K>& r = sol.reduced;
        return r.f1().homogeneous_part(4) == lambda * Jet2<K>::from_terms(4, {{0, 4, K(1)}}) &&
               k_is_zero(r.a(1, 2) - K(1)) && k_is_zero(r.a(2, 1)) && k_is_zero(r.a(3, 0)) &&
               k_is_zero(r.a(0, 3)) && r.f2().homogeneous_part(3) ==
                                           gamma * Jet2<K>::from_terms(4, {{0, 3, K(1)}});
    };
    // the xy^2 unit of the first slot, both y^3 coefficients and the y^4
    // modulus are invariant under the template; the other nine coefficients
    // give a full-rank square system
    std::vector<TargetCoeff<K>> targets{
        {0, 3, 0, K(0)}, {0, 2, 1, K(0)}, {0, 4, 0, K(0)}, {0, 3, 1, K(0)}, {0, 2, 2, K(0)},
        {0, 1, 3, K(0)}, {1, 3, 0, K(0)}, {1, 2, 1, K(0)}, {1, 1, 2, K(0)},
    };
    auto sol = solve_transform(g, build, targets, seed);
    if (!sol || !verify(*sol))
        throw HypothesisViolation("pi_p_quartic",
                                  "parabolic P quartic cleanup: no reachable solution");
    return *sol;
}

// ---------------------------------------------------------------------------
// Normal-form reports
// ---------------------------------------------------------------------------

template <class K>
struct ModulusValue {
    std::optional<K> exact;
    double approx = 0.0;
};

template <class K>
struct NormalFormReport {
    StratumLabel stratum = StratumLabel::HigherCodim;
    int codim = -1;
    std::vector<MondType> expected_proj;
    bool swapped = false;

    MongeJet<K> exact_form;       // normal-form shape before the gauge scaling
    ProjectiveMapG5<K> transform; // act_on_monge(transform, input) == exact_form

    bool has_scaling = false;  // Pi_S and Pi_H scale the y^3 coefficient to 1
    bool scaling_exact = true; // the cube root stayed in the field
    double scale_y = 1.0;
    std::optional<K> scale_y_exact;
    std::optional<MongeJet<K>> final_exact; // when scaling_exact
    std::optional<ProjectiveMapG5<K>> transform_final;
    MongeJet<double> final_numeric; // the declared gauge, float rendition

    std::map<std::string, ModulusValue<K>> moduli;
    std::map<std::string, ModulusValue<K>> residuals;
    std::vector<std::string> notes;
};

namespace detail {

template <class K>
MongeJet<double> to_double_monge(const MongeJet<K>& f) {
    return f.template map<double>([](const K& c) { return scalar_traits<K>::to_double(c); });
}

/// Monomial scaling (x, y, z, w) -> (x, s y, z, t w) applied to a Monge jet.
template <class K>
MongeJet<K> scale_monge(const MongeJet<K>& f, const K& s, const K& t) {
    const int ord = f.order();
    Jet2<K> g1(ord), g2(ord);
    for (int d = 2; d <= ord; ++d)
        for (int i = 0; i <= d; ++i) {
            K sp(1);
            for (int n = 0; n < d - i; ++n) sp *= s;
            g1.set(i, d - i, f.f1().at(i, d - i) * sp);
            g2.set(i, d - i, f.f2().at(i, d - i) * sp / t);
        }
    return MongeJet<K>(std::move(g1), std::move(g2));
}

template <class K>
struct ReductionState {
    MongeJet<K> jet;
    ProjectiveMapG5<K> acc;
    const MongeJet<K>* input;

    void apply(const ProjectiveMapG5<K>& psi) {
        jet = act_on_monge(psi, jet);
        acc = compose_maps(psi, acc);
    }

    void require(bool cond, const char* what) const {
        if (!cond) throw InternalCheckFailure(std::string("reduce_normal_form: ") + what);
    }
};

/// Allowed monomial support per stratum (degrees 2..4), as (slot, i, j) triples
/// being *disallowed* is the complement; here we return the allowed set.
inline std::vector<std::tuple<int, int, int>> allowed_support(StratumLabel s) {
    auto all_quartics = [](int slot, std::vector<std::tuple<int, int, int>>& v) {
        for (int i = 0; i <= 4; ++i) v.emplace_back(slot, i, 4 - i);
    };
    std::vector<std::tuple<int, int, int>> v;
    switch (s) {
        case StratumLabel::Pi_E:
            v = {{0, 2, 0}, {0, 0, 2}, {0, 1, 2}, {0, 0, 3}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4},
                 {1, 1, 1}};
            all_quartics(1, v);
            break;
        case StratumLabel::Pi_S:
        case StratumLabel::Pi_B:
        case StratumLabel::Pi_2B:
            v = {{0, 2, 0}, {1, 0, 2}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4},
                 {1, 4, 0}, {1, 3, 1}, {1, 2, 2}, {1, 1, 3}};
            if (s != StratumLabel::Pi_2B) v.emplace_back(0, 0, 3);
            if (s == StratumLabel::Pi_S) v.emplace_back(1, 3, 0);
            break;
        case StratumLabel::Pi_H:
            v = {{0, 2, 0}, {0, 1, 2}, {0, 0, 3}, {1, 1, 1}, {0, 3, 1}, {0, 2, 2},
                 {0, 1, 3}, {0, 0, 4}, {1, 4, 0}, {1, 3, 1}, {1, 2, 2}, {1, 1, 3}};
            break;
        case StratumLabel::Pi_P:
            v = {{0, 2, 0}, {0, 1, 2}, {0, 0, 4}, {1, 1, 1}, {1, 0, 3}};
            all_quartics(1, v);
            break;
        case StratumLabel::Pi_I_plus:
            v = {{0, 2, 0}, {0, 0, 2}, {0, 2, 1}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4},
                 {1, 3, 0}, {1, 2, 1}, {1, 1, 2}, {1, 0, 3}};
            all_quartics(1, v);
            break;
        case StratumLabel::Pi_I_minus:
            v = {{0, 1, 1}, {0, 3, 0}, {0, 4, 0}, {0, 3, 1}, {0, 1, 3}, {0, 0, 4},
                 {1, 3, 0}, {1, 2, 1}, {1, 1, 2}, {1, 0, 3}};
            all_quartics(1, v);
            break;
        default: break;
    }
    return v;
}

template <class K>
bool support_within(const MongeJet<K>& f, StratumLabel s) {
    auto allowed = allowed_support(s);
    auto ok = [&](int slot, int i, int j) {
        for (const auto& [sl, ii, jj] : allowed)
            if (sl == slot && ii == i && jj == j) return true;
        return false;
    };
    for (int slot = 0; slot < 2; ++slot)
        for (int d = 2; d <= std::min(4, f.order()); ++d)
            for (int i = 0; i <= d; ++i)
                if (!k_is_zero(f.slot(slot).at(i, d - i)) && !ok(slot, i, d - i)) return false;
    return true;
}

} // namespace detail

/// Normal-form monomial support check for a reduced (pre-scaling) jet.
template <class K>
bool matches_normal_form_support(const MongeJet<K>& f, StratumLabel s) {
    return detail::support_within(f, s);
}

/// Reduces an order-4 Monge jet to its stratum's normal form through the
/// explicit transformation chain, accumulating one exact witness element.
template <class K>
NormalFormReport<K> reduce_normal_form_normalized(const StratumClassification<K>& cls,
                                                  const MongeJet<K>& input) {
    if (input.order() != 4) throw InputError("reduce_normal_form: order must be 4");
    if (cls.label == StratumLabel::HigherCodim)
        throw HypothesisViolation("higher_codim",
                                  "reduce_normal_form: jet lies outside the eight strata");

    detail::ReductionState<K> st{cls.normalized, cls.psi, &input};
    NormalFormReport<K> rep{};
    rep.stratum = cls.label;
    rep.codim = codimension(cls.label);
    rep.expected_proj = expected_projections(cls.label);
    rep.swapped = cls.swapped;

    auto coeff = [&st](int slot, int i, int j) { return st.jet.slot(slot).at(i, j); };
    K scale_pivot(1); // the coefficient the gauge scaling normalizes to 1
    std::optional<std::array<double, 3>> h_pre; // (a12, b03, a03) entering the H cubic step

    switch (cls.label) {
        case StratumLabel::Pi_E: {
            st.apply(step_elliptic_cubic(st.jet));
            st.require(k_is_zero(coeff(0, 3, 0)) && k_is_zero(coeff(0, 2, 1)) &&
                           st.jet.f2().homogeneous_part(3).is_zero(),
                       "elliptic cubic shape");
            st.apply(step_elliptic_quartic(st.jet));
            st.require(k_is_zero(coeff(0, 4, 0)) && k_is_zero(coeff(0, 3, 1)),
                       "elliptic quartic shape");
            break;
        }
        case StratumLabel::Pi_S:
        case StratumLabel::Pi_B:
        case StratumLabel::Pi_2B: {
            st.apply(step_hyperbolic_cubic(st.jet));
            st.require(k_is_zero(coeff(0, 3, 0)) && k_is_zero(coeff(0, 2, 1)) &&
                           k_is_zero(coeff(0, 1, 2)) && k_is_zero(coeff(1, 2, 1)) &&
                           k_is_zero(coeff(1, 1, 2)) && k_is_zero(coeff(1, 0, 3)),
                       "hyperbolic cubic shape");
            st.apply(step_hyperbolic_quartic(st.jet));
            st.require(k_is_zero(coeff(0, 4, 0)) && k_is_zero(coeff(1, 0, 4)),
                       "hyperbolic quartic shape");
            if (cls.label != StratumLabel::Pi_2B) scale_pivot = coeff(0, 0, 3);
            break;
        }
        case StratumLabel::Pi_H: {
            st.apply(step_parabolic_prenormalize(st.jet));
            st.require(k_is_zero(coeff(0, 3, 0)) && k_is_zero(coeff(0, 2, 1)) &&
                           k_is_zero(coeff(1, 3, 0)) && k_is_zero(coeff(1, 2, 1)),
                       "parabolic prenormal shape");
            h_pre = std::array<double, 3>{scalar_traits<K>::to_double(coeff(0, 1, 2)),
                                          scalar_traits<K>::to_double(coeff(1, 0, 3)),
                                          scalar_traits<K>::to_double(coeff(0, 0, 3))};
            st.apply(step_parabolic_h_cubic(st.jet));
            st.require(st.jet.f2().homogeneous_part(3).is_zero() && k_is_zero(coeff(0, 3, 0)) &&
                           k_is_zero(coeff(0, 2, 1)),
                       "parabolic H cubic shape");
            auto sol = solve_parabolic_h_quartic(st.jet);
            st.apply(sol.psi);
            st.require(k_is_zero(coeff(0, 4, 0)) && k_is_zero(coeff(1, 0, 4)) &&
                           st.jet.f2().homogeneous_part(3).is_zero(),
                       "parabolic H quartic shape");
            scale_pivot = coeff(0, 0, 3);
            break;
        }
        case StratumLabel::Pi_P: {
            st.apply(step_parabolic_prenormalize(st.jet));
            st.apply(step_parabolic_p_cubic(st.jet));
            st.require(k_is_zero(coeff(0, 3, 0)) && k_is_zero(coeff(0, 2, 1)) &&
                           k_is_zero(coeff(0, 0, 3)) && k_is_zero(coeff(1, 3, 0)) &&
                           k_is_zero(coeff(1, 2, 1)) && k_is_zero(coeff(1, 1, 2)) &&
                           k_is_zero(coeff(0, 1, 2) - K(1)),
                       "parabolic P cubic shape");
            K gamma = coeff(1, 0, 3);
            K lambda_pre = coeff(0, 0, 4);
            auto sol = solve_parabolic_p_quartic(st.jet);
            st.apply(sol.psi);
            st.require(st.jet.f1().homogeneous_part(4) ==
                           lambda_pre * Jet2<K>::from_terms(4, {{0, 4, K(1)}}),
                       "parabolic P quartic shape");
            st.require(k_is_zero(coeff(1, 0, 3) - gamma) && k_is_zero(coeff(0, 1, 2) - K(1)),
                       "parabolic P cubic preserved");
            rep.moduli["gamma"] = {gamma, scalar_traits<K>::to_double(gamma)};
            rep.moduli["lambda"] = {lambda_pre, scalar_traits<K>::to_double(lambda_pre)};
            K L = K(6) * gamma * gamma + K(4) * lambda_pre - K(15) * gamma + K(5);
            rep.moduli["Lambda"] = {L, scalar_traits<K>::to_double(L)};
            break;
        }
        case StratumLabel::Pi_I_plus: {
            st.apply(step_inflection_plus_cubic(st.jet));
            st.require(k_is_zero(coeff(0, 3, 0)) && k_is_zero(coeff(0, 1, 2)) &&
                           k_is_zero(coeff(0, 0, 3)),
                       "inflection plus cubic shape");
            K k1 = coeff(0, 2, 1);
            st.apply(step_inflection_plus_quartic(st.jet));
            st.require(k_is_zero(coeff(0, 4, 0)) && k_is_zero(coeff(0, 2, 1) - k1),
                       "inflection plus quartic shape");
            rep.moduli["k1"] = {k1, scalar_traits<K>::to_double(k1)};
            break;
        }
        case StratumLabel::Pi_I_minus: {
            if (!cls.reduction_hypothesis_ok) {
                throw HypothesisViolation(
                    "pi_i_minus_b03",
                    "Pi_I_minus label holds (b30 != 0) but the cubic reduction needs b03 != 0");
            }
            st.apply(step_inflection_minus_cubic(st.jet));
            st.require(k_is_zero(coeff(0, 2, 1)) && k_is_zero(coeff(0, 1, 2)) &&
                           k_is_zero(coeff(0, 0, 3)),
                       "inflection minus cubic shape");
            K k2 = coeff(0, 3, 0);
            st.apply(step_inflection_minus_quartic(st.jet));
            st.require(k_is_zero(coeff(0, 2, 2)) && k_is_zero(coeff(0, 3, 0) - k2),
                       "inflection minus quartic shape");
            rep.moduli["k2"] = {k2, scalar_traits<K>::to_double(k2)};
            break;
        }
        default: break;
    }

    st.require(matches_normal_form_support(st.jet, cls.label), "normal-form support contract");
    if (!residual_check(st.acc, input, st.jet, 4))
        throw InternalCheckFailure("reduce_normal_form: accumulated residual check failed");

    rep.exact_form = st.jet;
    rep.transform = st.acc;

    // Gauge scaling: y by the real cube root fixing the pivot to 1, then w.
    bool needs_scaling = (cls.label == StratumLabel::Pi_S || cls.label == StratumLabel::Pi_B ||
                          cls.label == StratumLabel::Pi_H) &&
                         !k_is_zero(scale_pivot - K(1));
    rep.has_scaling = cls.label == StratumLabel::Pi_S || cls.label == StratumLabel::Pi_B ||
                      cls.label == StratumLabel::Pi_H;

    double spiv = scalar_traits<K>::to_double(scale_pivot);
    double s_num = rep.has_scaling ? std::cbrt(1.0 / spiv) : 1.0;
    rep.scale_y = s_num;
    bool slot2_is_y2 = cls.label != StratumLabel::Pi_H;

    auto finish_exact = [&](const MongeJet<K>& final_jet, const ProjectiveMapG5<K>& tf) {
        rep.final_exact = final_jet;
        rep.transform_final = tf;
        rep.final_numeric = detail::to_double_monge(final_jet);
    };

    if (!needs_scaling) {
        rep.scaling_exact = true;
        rep.scale_y_exact = K(1);
        finish_exact(st.jet, st.acc);
    } else {
        auto croot = scalar_traits<K>::exact_cbrt(scale_pivot);
        if (croot) {
            K s = K(1) / *croot;
            K t = slot2_is_y2 ? s * s : s;
            rep.scaling_exact = true;
            rep.scale_y_exact = s;
            rep.scale_y = scalar_traits<K>::to_double(s);
            auto scale_el =
                ProjectiveMapG5<K>::linear({K(1), K(0), K(0), s}, {K(1), K(0), K(0), t});
            MongeJet<K> fin = detail::scale_monge(st.jet, s, t);
            ProjectiveMapG5<K> tf = compose_maps(scale_el, st.acc);
            if (!residual_check(tf, input, fin, 4))
                throw InternalCheckFailure("reduce_normal_form: scaled residual check failed");
            finish_exact(fin, tf);
        } else {
            rep.scaling_exact = false;
            double t = slot2_is_y2 ? s_num * s_num : s_num;
            rep.final_numeric =
                detail::scale_monge(detail::to_double_monge(st.jet), s_num, t);
        }
    }

    // moduli read in the final gauge
    const MongeJet<double>& fn = rep.final_numeric;
    auto exact_final = [&](int slot, int i, int j) -> std::optional<K> {
        if (rep.final_exact) return rep.final_exact->slot(slot).at(i, j);
        return std::nullopt;
    };
    if (cls.label == StratumLabel::Pi_S)
        rep.moduli["alpha"] = {exact_final(1, 3, 0), fn.slot(1).at(3, 0)};
    if (cls.label == StratumLabel::Pi_H) {
        rep.moduli["beta"] = {exact_final(0, 1, 2), fn.slot(0).at(1, 2)};
        // consistency probe of the quoted closed form (a12+3b03)/a03^(3/2)
        // against the operational modulus in the y-then-w gauge
        if (h_pre && (*h_pre)[2] > 0) {
            double closed = ((*h_pre)[0] + 3.0 * (*h_pre)[1]) / std::pow((*h_pre)[2], 1.5);
            double op = fn.slot(0).at(1, 2);
            double scale = std::max({1.0, std::fabs(closed), std::fabs(op)});
            if (std::fabs(closed - op) > 1e-9 * scale)
                rep.notes.push_back("beta_closed_form_mismatch: operational beta=" +
                                    std::to_string(op) + ", (a12+3*b03)/a03^(3/2)=" +
                                    std::to_string(closed));
        }
    }
    if (cls.label == StratumLabel::Pi_S) {
        bool finer = !k_is_zero(rep.exact_form.a(3, 1)) && !k_is_zero(rep.exact_form.b(1, 3));
        rep.notes.push_back(std::string("pi_s_a31_b13_nonzero=") + (finer ? "true" : "false"));
    }

    // residual (phi/psi) coefficients of the final gauge
    auto named = [&](int slot, int i, int j) {
        if (cls.label == StratumLabel::Pi_S && slot == 1 && i == 3 && j == 0) return true;
        if (cls.label == StratumLabel::Pi_H && slot == 0 && i == 1 && j == 2) return true;
        if (cls.label == StratumLabel::Pi_P &&
            ((slot == 1 && i == 0 && j == 3) || (slot == 0 && i == 0 && j == 4)))
            return true;
        if (cls.label == StratumLabel::Pi_I_plus && slot == 0 && i == 2 && j == 1) return true;
        if (cls.label == StratumLabel::Pi_I_minus && slot == 0 && i == 3 && j == 0) return true;
        return false;
    };
    auto fixed_unit = [&](int slot, int i, int j) {
        (void)j;
        return (i + j == 2) || (cls.label == StratumLabel::Pi_S && slot == 0 && i == 0 && j == 3) ||
               (cls.label == StratumLabel::Pi_B && slot == 0 && i == 0 && j == 3) ||
               (cls.label == StratumLabel::Pi_H && slot == 0 && i == 0 && j == 3) ||
               (cls.label == StratumLabel::Pi_P && slot == 0 && i == 1 && j == 2);
    };
    for (const auto& [slot, i, j] : detail::allowed_support(cls.label)) {
        if (named(slot, i, j) || fixed_unit(slot, i, j)) continue;
        double v = fn.slot(slot).at(i, j);
        std::optional<K> ex = exact_final(slot, i, j);
        if (v != 0.0 || (ex && !k_is_zero(*ex))) {
            std::string key = (slot == 0 ? "f1_x" : "f2_x") + std::to_string(i) + "y" +
                              std::to_string(j);
            rep.residuals[key] = {ex, v};
        }
    }
    return rep;
}

template <class K>
NormalFormReport<K> reduce_normal_form(const MongeJet<K>& f) {
    auto cls = classify_stratum(f);
    return reduce_normal_form_normalized(cls, f);
}

inline NormalFormReport<Surd> reduce_normal_form(const MongeJet<Rational>& f) {
    auto fs = f.map<Surd>([](const Rational& r) { return Surd(r); });
    auto cls = classify_stratum(fs);
    return reduce_normal_form_normalized(cls, fs);
}

// ---------------------------------------------------------------------------
// Projection-column verification
// ---------------------------------------------------------------------------

template <class K>
struct ProjectionColumnReport {
    StratumLabel stratum = StratumLabel::HigherCodim;
    std::vector<MondType> expected;
    std::vector<MondType> observed; // labels seen from asymptotic samples
    bool contained = false;         // observed subset of expected
    bool complete = false;          // observed equals expected
    int samples = 0;
    struct Failure {
        std::array<double, 5> point;
        MondType label;
    };
    std::vector<Failure> failures;
};

namespace detail {

inline std::vector<std::pair<long, long>> inflection_direction_grid() {
    return {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2},
            {-1, 2}, {2, -1}, {3, 1}, {1, 3}, {-3, 1}, {1, -3}};
}

} // namespace detail

/// Samples view points on every asymptotic line (a grid of tangent directions
/// for the inflection strata, where every line is asymptotic) and checks the
/// observed A^3-types against the stratum's expected set. For Pi_E the
/// expected set is empty: tangent-plane projections must stay crosscaps.
template <class K>
ProjectionColumnReport<K> verify_projection_column(const StratumClassification<K>& cls,
                                                   int points_per_line = 20,
                                                   std::uint64_t seed = 17) {
    ProjectionColumnReport<K> rep;
    rep.stratum = cls.label;
    rep.expected = expected_projections(cls.label);
    if (cls.label == StratumLabel::HigherCodim)
        throw HypothesisViolation("higher_codim", "verify_projection_column: unnamed stratum");

    const MongeJet<K>& g = cls.normalized;
    std::set<MondType> seen;
    std::set<MondType> bad;
    auto expected_has = [&rep](MondType t) {
        for (auto e : rep.expected)
            if (e == t) return true;
        return false;
    };

    std::vector<Direction<K>> lines;
    bool inflection = cls.two_jet == TwoJetClass::InflectionPlus ||
                      cls.two_jet == TwoJetClass::InflectionMinus;
    if (inflection) {
        for (auto [u, v] : detail::inflection_direction_grid())
            lines.push_back(Direction<K>::make(K(u), K(v)));
    } else if (cls.label != StratumLabel::Pi_E) {
        auto ad = asymptotic_directions(g);
        for (const auto& d : ad.directions)
            lines.push_back(Direction<K>{d.u1, d.u2}); // normalized jets: rational directions
    }

    if (cls.label == StratumLabel::Pi_E) {
        // no asymptotic lines: every tangent-plane point must give a plain
        // crosscap, off-plane points a regular germ
        for (auto [u, v] : detail::inflection_direction_grid()) {
            auto pts = sample_view_points(Direction<K>::make(K(u), K(v)),
                                          std::max(2, points_per_line / 6), seed);
            for (const auto& p : pts) {
                ++rep.samples;
                MondType t = classify_A3(project(g, p, 3));
                if (t != MondType::S0) {
                    bad.insert(t);
                    rep.failures.push_back(
                        {{scalar_traits<K>::to_double(p.a), scalar_traits<K>::to_double(p.b),
                          scalar_traits<K>::to_double(p.c), scalar_traits<K>::to_double(p.d),
                          scalar_traits<K>::to_double(p.e)},
                         t});
                }
            }
        }
        auto off = ViewPoint<K>::finite(K(0), K(0), K(1), K(0));
        ++rep.samples;
        if (classify_A3(project(g, off, 3)) != MondType::Regular)
            bad.insert(MondType::Other);
        rep.observed.assign(bad.begin(), bad.end());
        rep.contained = bad.empty();
        rep.complete = rep.contained;
        return rep;
    }

    int per_line = inflection
                       ? std::max(2, points_per_line / static_cast<int>(lines.size()) + 1)
                       : points_per_line;
    for (const auto& line : lines) {
        auto pts = sample_view_points(line, per_line, seed);
        for (const auto& p : pts) {
            ++rep.samples;
            MondType t = classify_A3(project(g, p, 3));
            seen.insert(t);
            if (!expected_has(t)) {
                bad.insert(t);
                rep.failures.push_back(
                    {{scalar_traits<K>::to_double(p.a), scalar_traits<K>::to_double(p.b),
                      scalar_traits<K>::to_double(p.c), scalar_traits<K>::to_double(p.d),
                      scalar_traits<K>::to_double(p.e)},
                     t});
            }
        }
    }
    rep.observed.assign(seen.begin(), seen.end());
    rep.contained = bad.empty();
    rep.complete = rep.contained && seen.size() == rep.expected.size();
    return rep;
}

template <class K>
ProjectionColumnReport<K> verify_projection_column(const MongeJet<K>& f, int points_per_line = 20,
                                                   std::uint64_t seed = 17) {
    return verify_projection_column(classify_stratum(f), points_per_line, seed);
}

inline ProjectionColumnReport<Surd> verify_projection_column(const MongeJet<Rational>& f,
                                                             int points_per_line = 20,
                                                             std::uint64_t seed = 17) {
    auto fs = f.map<Surd>([](const Rational& r) { return Surd(r); });
    return verify_projection_column(classify_stratum(fs), points_per_line, seed);
}

} // namespace projjet
