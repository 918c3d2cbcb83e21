#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <tuple>
#include <utility>
#include <vector>

#include "projjet/errors.hpp"
#include "projjet/scalar.hpp"

namespace projjet {

/// Truncated bivariate polynomial of fixed order: sum of c_ij x^i y^j over
/// i + j <= order. Dense triangular storage; values are immutable in spirit —
/// every operation returns a fresh jet. K is Rational, Surd or double.
template <class K>
class Jet2 {
public:
    explicit Jet2(int order) : order_(order) {
        if (order < 0) throw InputError("Jet2: negative order");
        coeffs_.assign(size_for(order), K(0));
    }

    static Jet2 zero(int order) { return Jet2(order); }

    static Jet2 constant(int order, const K& c) {
        Jet2 j(order);
        j.set(0, 0, c);
        return j;
    }

    /// Convenience builder from monomial triples {i, j, coeff}.
    static Jet2 from_terms(int order, std::initializer_list<std::tuple<int, int, K>> terms) {
        Jet2 j(order);
        for (const auto& [i, jj, c] : terms) j.set(i, jj, c);
        return j;
    }

    int order() const { return order_; }

    const K& at(int i, int j) const {
        check_exp(i, j);
        return coeffs_[index(i, j)];
    }

    void set(int i, int j, const K& c) {
        check_exp(i, j);
        coeffs_[index(i, j)] = c;
    }

    void add_to(int i, int j, const K& c) {
        check_exp(i, j);
        coeffs_[index(i, j)] += c;
    }

    bool is_zero() const {
        for (const K& c : coeffs_)
            if (!k_is_zero(c)) return false;
        return true;
    }

    /// True when every monomial with total degree in [lo, hi] vanishes.
    bool vanishes_in_degrees(int lo, int hi) const {
        hi = std::min(hi, order_);
        for (int d = lo; d <= hi; ++d)
            for (int i = 0; i <= d; ++i)
                if (!k_is_zero(at(i, d - i))) return false;
        return true;
    }

    double max_abs() const {
        double m = 0;
        for (const K& c : coeffs_) m = std::max(m, std::fabs(scalar_traits<K>::to_double(c)));
        return m;
    }

    friend bool operator==(const Jet2& a, const Jet2& b) {
        if (a.order_ != b.order_) return false;
        for (std::size_t n = 0; n < a.coeffs_.size(); ++n)
            if (!k_is_zero(a.coeffs_[n] - b.coeffs_[n])) return false;
        return true;
    }
    friend bool operator!=(const Jet2& a, const Jet2& b) { return !(a == b); }

    friend Jet2 operator+(const Jet2& a, const Jet2& b) {
        a.check_order(b);
        Jet2 r(a);
        for (std::size_t n = 0; n < r.coeffs_.size(); ++n) r.coeffs_[n] += b.coeffs_[n];
        return r;
    }

    friend Jet2 operator-(const Jet2& a, const Jet2& b) {
        a.check_order(b);
        Jet2 r(a);
        for (std::size_t n = 0; n < r.coeffs_.size(); ++n) r.coeffs_[n] -= b.coeffs_[n];
        return r;
    }

    Jet2 operator-() const {
        Jet2 r(*this);
        for (K& c : r.coeffs_) c = -c;
        return r;
    }

    friend Jet2 operator*(const K& c, const Jet2& a) {
        Jet2 r(a);
        for (K& x : r.coeffs_) x *= c;
        return r;
    }

    /// Product truncated at the common order.
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        a.check_order(b);
        Jet2 r(a.order_);
        for (int da = 0; da <= a.order_; ++da)
            for (int i = 0; i <= da; ++i) {
                const K& ca = a.at(i, da - i);
                if (k_is_zero(ca)) continue;
                for (int db = 0; db + da <= a.order_; ++db)
                    for (int k = 0; k <= db; ++k) {
                        const K& cb = b.at(k, db - k);
                        if (k_is_zero(cb)) continue;
                        r.add_to(i + k, da - i + db - k, ca * cb);
                    }
            }
        return r;
    }

    Jet2 truncated(int new_order) const {
        if (new_order > order_) throw InputError("Jet2::truncated: order can only shrink");
        Jet2 r(new_order);
        for (int d = 0; d <= new_order; ++d)
            for (int i = 0; i <= d; ++i) r.set(i, d - i, at(i, d - i));
        return r;
    }

    /// Same coefficients, embedded at a (weakly) higher order.
    Jet2 with_order(int new_order) const {
        if (new_order < order_) return truncated(new_order);
        Jet2 r(new_order);
        for (int d = 0; d <= order_; ++d)
            for (int i = 0; i <= d; ++i) r.set(i, d - i, at(i, d - i));
        return r;
    }

    /// Homogeneous slice of degree d as a jet of the same order.
    Jet2 homogeneous_part(int d) const {
        Jet2 r(order_);
        if (d <= order_)
            for (int i = 0; i <= d; ++i) r.set(i, d - i, at(i, d - i));
        return r;
    }

    K evaluate(const K& x, const K& y) const {
        K acc(0);
        for (int d = order_; d >= 0; --d)
            for (int i = 0; i <= d; ++i) {
                const K& c = at(i, d - i);
                if (k_is_zero(c)) continue;
                K term = c;
                for (int n = 0; n < i; ++n) term *= x;
                for (int n = 0; n < d - i; ++n) term *= y;
                acc += term;
            }
        return acc;
    }

    /// Taylor re-expansion around (dx, dy): returns p with p(x, y) = this(x + dx, y + dy),
    /// exact for polynomials (the jet is treated as one).
    Jet2 recentered(const K& dx, const K& dy) const {
        // binomial tables up to order
        std::vector<std::vector<K>> binom(order_ + 1);
        for (int n = 0; n <= order_; ++n) {
            binom[n].assign(n + 1, K(1));
            for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
        }
        std::vector<K> px(order_ + 1, K(1)), py(order_ + 1, K(1));
        for (int n = 1; n <= order_; ++n) {
            px[n] = px[n - 1] * dx;
            py[n] = py[n - 1] * dy;
        }
        Jet2 r(order_);
        for (int d = 0; d <= order_; ++d)
            for (int i = 0; i <= d; ++i) {
                const K& c = at(i, d - i);
                if (k_is_zero(c)) continue;
                int j = d - i;
                for (int a = 0; a <= i; ++a)
                    for (int b = 0; b <= j; ++b)
                        r.add_to(a, b, c * binom[i][a] * binom[j][b] * px[i - a] * py[j - b]);
            }
        return r;
    }

    template <class K2, class F>
    Jet2<K2> map(F&& f) const {
        Jet2<K2> r(order_);
        for (int d = 0; d <= order_; ++d)
            for (int i = 0; i <= d; ++i) r.set(i, d - i, f(at(i, d - i)));
        return r;
    }

    static std::size_t size_for(int order) {
        return static_cast<std::size_t>(order + 1) * (order + 2) / 2;
    }

    void check_order(const Jet2& o) const {
        if (order_ != o.order_) throw OrderMismatch(order_, o.order_);
    }

private:
    std::size_t index(int i, int j) const {
        int d = i + j;
        return static_cast<std::size_t>(d) * (d + 1) / 2 + static_cast<std::size_t>(i);
    }
    void check_exp(int i, int j) const {
        if (i < 0 || j < 0 || i + j > order_)
            throw InputError("Jet2: exponent (" + std::to_string(i) + "," + std::to_string(j) +
                             ") outside order " + std::to_string(order_));
    }

    int order_;
    std::vector<K> coeffs_;
};

/// Tuple of 2 to 4 jets sharing one order; the codomain dimension of map
/// germs (R^2,0) -> (R^n,0).
template <class K>
class JetMapN {
public:
    JetMapN(std::vector<Jet2<K>> comps) : comps_(std::move(comps)) {
        if (comps_.size() < 2 || comps_.size() > 4)
            throw InputError("JetMapN: needs 2 to 4 components");
        for (const auto& c : comps_) comps_.front().check_order(c);
    }
    JetMapN(Jet2<K> a, Jet2<K> b) : JetMapN(std::vector<Jet2<K>>{std::move(a), std::move(b)}) {}
    JetMapN(Jet2<K> a, Jet2<K> b, Jet2<K> c)
        : JetMapN(std::vector<Jet2<K>>{std::move(a), std::move(b), std::move(c)}) {}

    int order() const { return comps_.front().order(); }
    int size() const { return static_cast<int>(comps_.size()); }
    const Jet2<K>& operator[](int i) const { return comps_[static_cast<std::size_t>(i)]; }
    Jet2<K>& operator[](int i) { return comps_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const JetMapN& a, const JetMapN& b) { return a.comps_ == b.comps_; }

private:
    std::vector<Jet2<K>> comps_;
};

template <class K>
JetMapN<K> identity_planar(int order) {
    Jet2<K> x(order), y(order);
    x.set(1, 0, K(1));
    y.set(0, 1, K(1));
    return JetMapN<K>(std::move(x), std::move(y));
}

/// f(s1(x,y), s2(x,y)) truncated at the common order; the substituted pair
/// must have no constant part.
template <class K>
Jet2<K> compose(const Jet2<K>& f, const JetMapN<K>& s) {
    if (s.size() != 2) throw InputError("compose: substitution needs exactly 2 components");
    f.check_order(s[0]);
    if (!k_is_zero(s[0].at(0, 0)) || !k_is_zero(s[1].at(0, 0)))
        throw InputError("compose: substituted map has nonzero constant part");
    const int ord = f.order();
    // powers of s1 and s2 up to the order
    std::vector<Jet2<K>> p1, p2;
    p1.reserve(ord + 1);
    p2.reserve(ord + 1);
    p1.push_back(Jet2<K>::constant(ord, K(1)));
    p2.push_back(Jet2<K>::constant(ord, K(1)));
    for (int n = 1; n <= ord; ++n) {
        p1.push_back(p1.back() * s[0]);
        p2.push_back(p2.back() * s[1]);
    }
    Jet2<K> r(ord);
    for (int d = 0; d <= ord; ++d)
        for (int i = 0; i <= d; ++i) {
            const K& c = f.at(i, d - i);
            if (k_is_zero(c)) continue;
            r = r + c * (p1[i] * p2[d - i]);
        }
    return r;
}

/// Componentwise composition with a planar substitution.
template <class K>
JetMapN<K> compose(const JetMapN<K>& m, const JetMapN<K>& s) {
    std::vector<Jet2<K>> comps;
    for (int i = 0; i < m.size(); ++i) comps.push_back(compose(m[i], s));
    return JetMapN<K>(std::move(comps));
}

/// Inverse of a planar jet with zero constant part and invertible linear
/// part: returns t with s o t = t o s = id through the order.
template <class K>
JetMapN<K> invert_planar(const JetMapN<K>& s) {
    if (s.size() != 2) throw InputError("invert_planar: needs exactly 2 components");
    if (!k_is_zero(s[0].at(0, 0)) || !k_is_zero(s[1].at(0, 0)))
        throw InputError("invert_planar: nonzero constant part");
    const int ord = s.order();
    const K a = s[0].at(1, 0), b = s[0].at(0, 1);
    const K c = s[1].at(1, 0), d = s[1].at(0, 1);
    const K det = a * d - b * c;
    if (k_is_zero(det)) throw SingularLinearPart("invert_planar: singular linear part");

    Jet2<K> li1(ord), li2(ord); // inverse of the linear part
    li1.set(1, 0, d / det);
    li1.set(0, 1, -b / det);
    li2.set(1, 0, -c / det);
    li2.set(0, 1, a / det);
    JetMapN<K> linv(li1, li2);
    JetMapN<K> id = identity_planar<K>(ord);

    // t_{n+1} = t_n + Linv(id - s o t_n); gains one correct degree per pass
    JetMapN<K> t = linv;
    for (int pass = 0; pass < ord; ++pass) {
        JetMapN<K> err(id[0] - compose(s[0], t), id[1] - compose(s[1], t));
        Jet2<K> u1 = compose(li1, err);
        Jet2<K> u2 = compose(li2, err);
        t = JetMapN<K>(t[0] + u1, t[1] + u2);
    }
    return t;
}

/// f * u^{-1} truncated at the order, u a unit (nonzero constant term).
template <class K>
Jet2<K> divide_by_unit(const Jet2<K>& f, const Jet2<K>& u) {
    f.check_order(u);
    const K c = u.at(0, 0);
    if (k_is_zero(c)) throw InputError("divide_by_unit: zero constant term in divisor");
    const int ord = f.order();
    // u^{-1} = (1/c) * sum_k (1 - u/c)^k, nilpotent tail
    Jet2<K> tail = Jet2<K>::constant(ord, K(1)) - (K(1) / c) * u;
    Jet2<K> inv = Jet2<K>::constant(ord, K(1));
    Jet2<K> pw = Jet2<K>::constant(ord, K(1));
    for (int k = 1; k <= ord; ++k) {
        pw = pw * tail;
        inv = inv + pw;
    }
    return (K(1) / c) * (f * inv);
}

} // namespace projjet
