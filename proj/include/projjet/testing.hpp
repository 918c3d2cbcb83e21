#pragma once

// Deterministic random generators shared by the self-test command and the
// test suites.

#include "projjet/reduce.hpp"

namespace projjet::testing {

inline MongeJet<Rational> random_monge(Rng& rng, int order, long bound = 4) {
    Jet2<Rational> f1(order), f2(order);
    for (int d = 2; d <= order; ++d)
        for (int i = 0; i <= d; ++i) {
            f1.set(i, d - i, rng.rational(bound));
            f2.set(i, d - i, rng.rational(bound));
        }
    return MongeJet<Rational>(std::move(f1), std::move(f2));
}

/// Random representative of a stratum, generated on the Gibson-normalized
/// 2-jet with the stratum's coefficient conditions enforced (including the
/// reduction hypotheses, so every representative is reducible).
inline MongeJet<Rational> random_stratum_rep(Rng& rng, StratumLabel s, int order = 4,
                                             long bound = 3) {
    for (;;) {
        Jet2<Rational> f1(order), f2(order);
        for (int d = 3; d <= order; ++d)
            for (int i = 0; i <= d; ++i) {
                f1.set(i, d - i, rng.rational(bound));
                f2.set(i, d - i, rng.rational(bound));
            }
        switch (s) {
            case StratumLabel::Pi_E:
                f1.set(2, 0, Rational(1));
                f1.set(0, 2, Rational(-1));
                f2.set(1, 1, Rational(1));
                break;
            case StratumLabel::Pi_S:
                f1.set(2, 0, Rational(1));
                f2.set(0, 2, Rational(1));
                f1.set(0, 3, rng.nonzero_rational(bound));
                f2.set(3, 0, rng.nonzero_rational(bound));
                break;
            case StratumLabel::Pi_B:
                f1.set(2, 0, Rational(1));
                f2.set(0, 2, Rational(1));
                f1.set(0, 3, rng.nonzero_rational(bound));
                f2.set(3, 0, Rational(0));
                break;
            case StratumLabel::Pi_2B:
                f1.set(2, 0, Rational(1));
                f2.set(0, 2, Rational(1));
                f1.set(0, 3, Rational(0));
                f2.set(3, 0, Rational(0));
                break;
            case StratumLabel::Pi_H:
                f1.set(2, 0, Rational(1));
                f2.set(1, 1, Rational(1));
                f1.set(0, 3, rng.nonzero_rational(bound));
                break;
            case StratumLabel::Pi_P:
                f1.set(2, 0, Rational(1));
                f2.set(1, 1, Rational(1));
                f1.set(0, 3, Rational(0));
                f1.set(1, 2, rng.nonzero_rational(bound));
                f2.set(0, 3, rng.nonzero_rational(bound));
                break;
            case StratumLabel::Pi_I_plus:
                f1.set(2, 0, Rational(1));
                f1.set(0, 2, Rational(1));
                f2.set(3, 0, rng.nonzero_rational(bound));
                if (f2.at(3, 0) == f2.at(1, 2)) continue; // reduction needs b30 != b12
                break;
            case StratumLabel::Pi_I_minus:
                f1.set(1, 1, Rational(1));
                f2.set(3, 0, rng.nonzero_rational(bound));
                f2.set(0, 3, rng.nonzero_rational(bound));
                break;
            default: throw InputError("random_stratum_rep: no representative for HigherCodim");
        }
        MongeJet<Rational> f(std::move(f1), std::move(f2));
        if (s == StratumLabel::Pi_P && order >= 4) {
            // keep Lambda != 0 so the quartic cleanup applies
            auto fs = f.map<Surd>([](const Rational& r) { return Surd(r); });
            auto g0 = act_on_monge(step_parabolic_prenormalize(fs), fs);
            auto g1 = act_on_monge(step_parabolic_p_cubic(g0), g0);
            Surd gamma = g1.b(0, 3), lam = g1.a(0, 4);
            Surd L = Surd(Rational(6)) * gamma * gamma + Surd(Rational(4)) * lam -
                     Surd(Rational(15)) * gamma + Surd(Rational(5));
            if (L.is_zero()) continue;
        }
        return f;
    }
}

inline MongeJet<Rational> g5_conjugate(Rng& rng, const MongeJet<Rational>& f, long bound = 3) {
    return act_on_monge(random_element(rng, bound), f);
}

constexpr StratumLabel kAllStrata[] = {
    StratumLabel::Pi_E,      StratumLabel::Pi_S, StratumLabel::Pi_B,
    StratumLabel::Pi_2B,     StratumLabel::Pi_H, StratumLabel::Pi_P,
    StratumLabel::Pi_I_plus, StratumLabel::Pi_I_minus,
};

} // namespace projjet::testing
