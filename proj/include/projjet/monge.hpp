#pragma once

#include <utility>

#include "projjet/jet2.hpp"

namespace projjet {

/// Monge form of a surface germ in 4-space: (z, w) = (f1(x,y), f2(x,y)) with
/// vanishing constant and linear parts. A point of V_l x V_l.
template <class K>
class MongeJet {
public:
    MongeJet() : f1_(2), f2_(2) {} // zero germ, order 2

    MongeJet(Jet2<K> f1, Jet2<K> f2) : f1_(std::move(f1)), f2_(std::move(f2)) {
        f1_.check_order(f2_);
        if (!f1_.vanishes_in_degrees(0, 1) || !f2_.vanishes_in_degrees(0, 1))
            throw InputError("MongeJet: constant or linear part nonzero");
    }

    int order() const { return f1_.order(); }
    const Jet2<K>& f1() const { return f1_; }
    const Jet2<K>& f2() const { return f2_; }
    const Jet2<K>& slot(int i) const { return i == 0 ? f1_ : f2_; }

    MongeJet truncated(int new_order) const {
        return MongeJet(f1_.truncated(new_order), f2_.truncated(new_order));
    }
    MongeJet with_order(int new_order) const {
        return MongeJet(f1_.with_order(new_order), f2_.with_order(new_order));
    }

    template <class K2, class F>
    MongeJet<K2> map(F&& f) const {
        return MongeJet<K2>(f1_.template map<K2>(f), f2_.template map<K2>(f));
    }

    friend bool operator==(const MongeJet& a, const MongeJet& b) {
        return a.f1_ == b.f1_ && a.f2_ == b.f2_;
    }
    friend bool operator!=(const MongeJet& a, const MongeJet& b) { return !(a == b); }

    /// Shorthand for cubic coefficients in the usual a_ij / b_ij notation.
    const K& a(int i, int j) const { return f1_.at(i, j); }
    const K& b(int i, int j) const { return f2_.at(i, j); }

private:
    Jet2<K> f1_, f2_;
};

template <class K>
MongeJet<K> monge_from_terms(int order, std::initializer_list<std::tuple<int, int, K>> t1,
                             std::initializer_list<std::tuple<int, int, K>> t2) {
    return MongeJet<K>(Jet2<K>::from_terms(order, t1), Jet2<K>::from_terms(order, t2));
}

inline MongeJet<Rational> monge_rational(int order,
                                         std::initializer_list<std::tuple<int, int, long>> t1,
                                         std::initializer_list<std::tuple<int, int, long>> t2) {
    Jet2<Rational> f1(order), f2(order);
    for (const auto& [i, j, c] : t1) f1.set(i, j, Rational(c));
    for (const auto& [i, j, c] : t2) f2.set(i, j, Rational(c));
    return MongeJet<Rational>(std::move(f1), std::move(f2));
}

} // namespace projjet
