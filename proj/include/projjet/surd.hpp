#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "projjet/rational.hpp"

namespace projjet {

/// Element a + b*sqrt(d) of a real quadratic extension of the rationals.
/// d is a square-reduced positive integer, d == 0 iff the value is rational.
/// Values from different extensions cannot be combined (throws), except that
/// plain rationals (b == 0) mix with everything. Sign tests are exact.
class Surd {
public:
    Surd() : a_(0), b_(0), d_(0) {}
    Surd(const Rational& a) : a_(a), b_(0), d_(0) {}
    Surd(Rational&& a) : a_(std::move(a)), b_(0), d_(0) {}
    Surd(long n) : a_(n), b_(0), d_(0) {}
    Surd(int n) : a_(n), b_(0), d_(0) {}

    Surd(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        canonicalize();
    }

    /// sqrt(r) for r >= 0, canonicalized: sqrt(8) -> 2*sqrt(2), sqrt(9/4) -> 3/2.
    static Surd sqrt_of(const Rational& r) {
        if (r.sgn() < 0) throw std::domain_error("Surd::sqrt_of: negative argument");
        if (r.is_zero()) return Surd();
        Rational s, m;
        Rational::square_split(r, s, m);
        if (m.is_one()) return Surd(s);
        return Surd(Rational(0), s, m);
    }

    const Rational& rat_part() const { return a_; }
    const Rational& surd_coeff() const { return b_; }
    const Rational& radicand() const { return d_; }
    bool is_rational() const { return b_.is_zero(); }

    /// The rational value; throws when irrational.
    const Rational& as_rational() const {
        if (!is_rational()) throw std::domain_error("Surd: not rational");
        return a_;
    }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const { return b_.is_zero() && a_.is_one(); }

    int sgn() const {
        if (b_.is_zero()) return a_.sgn();
        if (a_.is_zero()) return b_.sgn();
        int sa = a_.sgn(), sb = b_.sgn();
        if (sa == sb) return sa;
        // sign(a + b sqrt(d)) with a, b of opposite sign: compare a^2 vs b^2 d
        int c = (a_ * a_ - b_ * b_ * d_).sgn();
        if (c == 0) return 0; // cannot happen with square-reduced d, kept for safety
        return c > 0 ? sa : sb;
    }

    friend Surd operator+(const Surd& x, const Surd& y) {
        Rational d = joint_radicand(x, y);
        return Surd(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Surd operator-(const Surd& x, const Surd& y) {
        Rational d = joint_radicand(x, y);
        return Surd(x.a_ - y.a_, x.b_ - y.b_, d);
    }
    friend Surd operator*(const Surd& x, const Surd& y) {
        Rational d = joint_radicand(x, y);
        return Surd(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend Surd operator/(const Surd& x, const Surd& y) {
        if (y.is_zero()) throw std::domain_error("Surd: division by zero");
        Rational d = joint_radicand(x, y);
        Rational n = y.a_ * y.a_ - y.b_ * y.b_ * d; // conjugate norm, nonzero
        return Surd((x.a_ * y.a_ - x.b_ * y.b_ * d) / n, (x.b_ * y.a_ - x.a_ * y.b_) / n, d);
    }
    Surd operator-() const {
        Surd r(*this);
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }

    Surd& operator+=(const Surd& o) { return *this = *this + o; }
    Surd& operator-=(const Surd& o) { return *this = *this - o; }
    Surd& operator*=(const Surd& o) { return *this = *this * o; }
    Surd& operator/=(const Surd& o) { return *this = *this / o; }

    Surd inverse() const { return Surd(Rational(1)) / *this; }
    Surd abs() const { return sgn() < 0 ? -*this : *this; }

    friend bool operator==(const Surd& x, const Surd& y) {
        if (x.b_.is_zero() && y.b_.is_zero()) return x.a_ == y.a_;
        return (x - y).is_zero();
    }
    friend bool operator!=(const Surd& x, const Surd& y) { return !(x == y); }
    friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sgn() < 0; }
    friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sgn() <= 0; }
    friend bool operator>(const Surd& x, const Surd& y) { return (x - y).sgn() > 0; }
    friend bool operator>=(const Surd& x, const Surd& y) { return (x - y).sgn() >= 0; }

    std::optional<Surd> exact_sqrt() const {
        if (!is_rational()) return std::nullopt;
        auto r = a_.exact_sqrt();
        if (!r) return std::nullopt;
        return Surd(*r);
    }
    std::optional<Surd> exact_cbrt() const {
        if (!is_rational()) return std::nullopt;
        auto r = a_.exact_cbrt();
        if (!r) return std::nullopt;
        return Surd(*r);
    }

    double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(d_.to_double()); }

    std::string to_string() const {
        if (is_rational()) return a_.to_string();
        std::string s;
        if (!a_.is_zero()) s += a_.to_string() + (b_.sgn() > 0 ? "+" : "");
        s += b_.to_string() + "*sqrt(" + d_.to_string() + ")";
        return s;
    }

private:
    void canonicalize() {
        if (b_.is_zero() || d_.is_zero()) {
            b_ = Rational(0);
            d_ = Rational(0);
            return;
        }
        if (d_.sgn() < 0) throw std::domain_error("Surd: negative radicand");
        Rational s, m;
        Rational::square_split(d_, s, m);
        if (m.is_one()) { // d was a perfect square
            a_ += b_ * s;
            b_ = Rational(0);
            d_ = Rational(0);
            return;
        }
        b_ *= s;
        d_ = m;
    }

    static Rational joint_radicand(const Surd& x, const Surd& y) {
        if (x.b_.is_zero()) return y.d_;
        if (y.b_.is_zero()) return x.d_;
        if (x.d_ != y.d_)
            throw std::domain_error("Surd: mixing incompatible quadratic extensions (sqrt(" +
                                    x.d_.to_string() + ") vs sqrt(" + y.d_.to_string() + "))");
        return x.d_;
    }

    Rational a_, b_, d_;
};

} // namespace projjet
