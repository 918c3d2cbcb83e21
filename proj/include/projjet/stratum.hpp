#pragma once

#include <vector>

#include "projjet/mond.hpp"
#include "projjet/two_jet.hpp"

namespace projjet {

/// Strata of codimension <= 2 in the space of jets of Monge forms, keyed by
/// the A^3-types of central projections from asymptotic lines. HigherCodim
/// collects everything outside the eight named strata.
enum class StratumLabel {
    Pi_E,
    Pi_S,
    Pi_B,
    Pi_2B,
    Pi_H,
    Pi_P,
    Pi_I_plus,
    Pi_I_minus,
    HigherCodim,
};

inline const char* to_string(StratumLabel s) {
    switch (s) {
        case StratumLabel::Pi_E: return "Pi_E";
        case StratumLabel::Pi_S: return "Pi_S";
        case StratumLabel::Pi_B: return "Pi_B";
        case StratumLabel::Pi_2B: return "Pi_2B";
        case StratumLabel::Pi_H: return "Pi_H";
        case StratumLabel::Pi_P: return "Pi_P";
        case StratumLabel::Pi_I_plus: return "Pi_I_plus";
        case StratumLabel::Pi_I_minus: return "Pi_I_minus";
        case StratumLabel::HigherCodim: return "HigherCodim";
    }
    return "?";
}

inline int codimension(StratumLabel s) {
    switch (s) {
        case StratumLabel::Pi_E: return 0;
        case StratumLabel::Pi_S: return 0;
        case StratumLabel::Pi_B: return 1;
        case StratumLabel::Pi_2B: return 2;
        case StratumLabel::Pi_H: return 1;
        case StratumLabel::Pi_P: return 2;
        case StratumLabel::Pi_I_plus: return 2;
        case StratumLabel::Pi_I_minus: return 2;
        case StratumLabel::HigherCodim: return 3;
    }
    return -1;
}

/// A^3-types of central projections from the stratum's asymptotic lines.
inline std::vector<MondType> expected_projections(StratumLabel s) {
    switch (s) {
        case StratumLabel::Pi_E: return {};
        case StratumLabel::Pi_S: return {MondType::S};
        case StratumLabel::Pi_B: return {MondType::S, MondType::B};
        case StratumLabel::Pi_2B: return {MondType::B};
        case StratumLabel::Pi_H: return {MondType::H};
        case StratumLabel::Pi_P: return {MondType::P};
        case StratumLabel::Pi_I_plus: return {MondType::S, MondType::B};
        case StratumLabel::Pi_I_minus: return {MondType::S, MondType::B, MondType::H};
        case StratumLabel::HigherCodim: return {};
    }
    return {};
}

/// classify_stratum output: the label plus the 2-jet normalization it was
/// read in (with the orientation swap folded in when one was needed).
template <class K>
struct StratumClassification {
    StratumLabel label = StratumLabel::HigherCodim;
    TwoJetClass two_jet;
    ProjectiveMapG5<K> psi; // act_on_monge(psi, input) == normalized
    MongeJet<K> normalized;
    bool swapped = false;
    /// Pi_I_minus with b03 = 0 after canonicalization: the label holds but
    /// the cubic reduction hypothesis fails.
    bool reduction_hypothesis_ok = true;
};

namespace detail {

/// Orientation fixes: Pi_B wants the y^3 coefficient on the first slot
/// (x <-> y together with z <-> w preserves (x^2, y^2)); Pi_I_minus wants
/// b30 != 0 (x <-> y alone preserves (xy, 0) and reverses the b indices).
template <class K>
void apply_orientation_swap(StratumClassification<K>& out, bool swap_slots) {
    auto swap = swap_slots
                    ? ProjectiveMapG5<K>::swap_xy_zw()
                    : ProjectiveMapG5<K>::linear({K(0), K(1), K(1), K(0)},
                                                 {K(1), K(0), K(0), K(1)});
    out.normalized = act_on_monge(swap, out.normalized);
    out.psi = compose_maps(swap, out.psi);
    out.swapped = true;
}

} // namespace detail

/// Assigns the stratum of a Monge jet of order >= 3. Conditions are read on
/// the cubic coefficients in Gibson-normalized 2-jet coordinates.
template <class K>
StratumClassification<K> classify_stratum_normalized(const TwoJetNormalization<K>& n) {
    StratumClassification<K> out{StratumLabel::HigherCodim, n.cls, n.psi, n.normal, false, true};
    const MongeJet<K>& g = out.normalized;
    switch (n.cls) {
        case TwoJetClass::Elliptic: out.label = StratumLabel::Pi_E; break;
        case TwoJetClass::Hyperbolic: {
            bool a03 = !k_is_zero(g.a(0, 3)), b30 = !k_is_zero(g.b(3, 0));
            if (a03 && b30) out.label = StratumLabel::Pi_S;
            else if (!a03 && !b30) out.label = StratumLabel::Pi_2B;
            else {
                if (!a03) detail::apply_orientation_swap(out, true);
                out.label = StratumLabel::Pi_B;
            }
            break;
        }
        case TwoJetClass::Parabolic: {
            if (!k_is_zero(g.a(0, 3))) out.label = StratumLabel::Pi_H;
            else if (!k_is_zero(g.a(1, 2)) && !k_is_zero(g.b(0, 3)))
                out.label = StratumLabel::Pi_P;
            else out.label = StratumLabel::HigherCodim;
            break;
        }
        case TwoJetClass::InflectionPlus: out.label = StratumLabel::Pi_I_plus; break;
        case TwoJetClass::InflectionMinus: {
            bool b30 = !k_is_zero(g.b(3, 0)), b03 = !k_is_zero(g.b(0, 3));
            if (!b30 && !b03) {
                out.label = StratumLabel::HigherCodim;
                break;
            }
            if (!b30) detail::apply_orientation_swap(out, false);
            out.label = StratumLabel::Pi_I_minus;
            // after canonicalization the reduction needs the other corner too
            out.reduction_hypothesis_ok = !k_is_zero(out.normalized.b(0, 3));
            break;
        }
        default: out.label = StratumLabel::HigherCodim; break;
    }
    return out;
}

template <class K>
StratumClassification<K> classify_stratum(const MongeJet<K>& f) {
    if (f.order() < 3) throw InputError("classify_stratum: order < 3");
    return classify_stratum_normalized(normalize_2jet(f));
}

inline StratumClassification<Surd> classify_stratum(const MongeJet<Rational>& f) {
    if (f.order() < 3) throw InputError("classify_stratum: order < 3");
    return classify_stratum_normalized(normalize_2jet(f));
}

} // namespace projjet
