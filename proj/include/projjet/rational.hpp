#pragma once

#include <gmp.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace projjet {

/// Exact arbitrary-precision rational, canonical form (gcd 1, positive
/// denominator). Thin RAII wrapper over GMP's mpq_t.
class Rational {
public:
    Rational() { mpq_init(q_); }

    Rational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }

    Rational(int n) : Rational(static_cast<long>(n)) {}

    Rational(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { // mpq_set_si takes an unsigned denominator
            num = -num;
            den = -den;
        }
        mpq_init(q_);
        mpq_set_si(q_, num, static_cast<unsigned long>(den));
        mpq_canonicalize(q_);
    }

    /// Parses "num", "num/den" or "-num/den" in base 10.
    static Rational from_string(std::string_view s) {
        Rational r;
        std::string buf(s);
        if (buf.empty() || mpq_set_str(r.q_, buf.c_str(), 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + buf + "'");
        if (mpz_sgn(mpq_denref(r.q_)) == 0)
            throw std::invalid_argument("Rational: zero denominator in '" + buf + "'");
        mpq_canonicalize(r.q_);
        return r;
    }

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }

    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }

    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }

    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }

    ~Rational() { mpq_clear(q_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        Rational r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    Rational operator-() const {
        Rational r;
        mpq_neg(r.q_, q_);
        return r;
    }

    Rational& operator+=(const Rational& o) { mpq_add(q_, q_, o.q_); return *this; }
    Rational& operator-=(const Rational& o) { mpq_sub(q_, q_, o.q_); return *this; }
    Rational& operator*=(const Rational& o) { mpq_mul(q_, q_, o.q_); return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
    int sgn() const { return mpq_sgn(q_); }

    Rational abs() const {
        Rational r;
        mpq_abs(r.q_, q_);
        return r;
    }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        Rational r;
        mpq_inv(r.q_, q_);
        return r;
    }

    bool is_integer() const { return mpz_cmp_si(mpq_denref(q_), 1) == 0; }

    /// Exact square root if this is a perfect square of a rational.
    std::optional<Rational> exact_sqrt() const {
        if (sgn() < 0) return std::nullopt;
        Rational r;
        if (!mpz_perfect_square_p(mpq_numref(q_)) || !mpz_perfect_square_p(mpq_denref(q_)))
            return std::nullopt;
        mpz_sqrt(mpq_numref(r.q_), mpq_numref(q_));
        mpz_sqrt(mpq_denref(r.q_), mpq_denref(q_));
        return r;
    }

    /// Exact real cube root if this is a perfect cube of a rational.
    std::optional<Rational> exact_cbrt() const {
        Rational a = abs();
        Rational r;
        mpz_t tmp;
        mpz_init(tmp);
        bool num_ok = mpz_root(tmp, mpq_numref(a.q_), 3) != 0;
        if (num_ok) mpz_set(mpq_numref(r.q_), tmp);
        bool den_ok = num_ok && mpz_root(tmp, mpq_denref(a.q_), 3) != 0;
        if (den_ok) mpz_set(mpq_denref(r.q_), tmp);
        mpz_clear(tmp);
        if (!den_ok) return std::nullopt;
        if (sgn() < 0) r = -r;
        return r;
    }

    /// Splits |numerator*denominator| as s^2 * m with m square-reduced; used
    /// to canonicalize sqrt(p/q) = (s/q) * sqrt(m). Small square factors are
    /// peeled off by trial division, then a final perfect-square check.
    static void square_split(const Rational& r, Rational& s_out, Rational& m_out);

    double to_double() const { return mpq_get_d(q_); }

    std::string to_string() const {
        char* s = mpq_get_str(nullptr, 10, q_);
        std::string out(s);
        void (*freefunc)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefunc);
        freefunc(s, out.size() + 1);
        return out;
    }

    mpq_srcptr raw() const { return q_; }

private:
    mpq_t q_;
};

inline void Rational::square_split(const Rational& r, Rational& s_out, Rational& m_out) {
    if (r.sgn() < 0) throw std::domain_error("square_split: negative argument");
    // N = num*den; sqrt(num/den) = sqrt(N)/den
    mpz_t n, q, rem, sq;
    mpz_inits(n, q, rem, sq, nullptr);
    mpz_mul(n, mpq_numref(r.q_), mpq_denref(r.q_));
    mpz_set_ui(sq, 1);
    if (mpz_perfect_square_p(n)) {
        mpz_sqrt(sq, n);
        mpz_set_ui(n, 1);
    } else {
        for (unsigned long p = 2; p <= 997; p = (p == 2 ? 3 : p + 2)) {
            mpz_t p2;
            mpz_init_set_ui(p2, p * p);
            while (true) {
                mpz_tdiv_qr(q, rem, n, p2);
                if (mpz_sgn(rem) != 0) break;
                mpz_swap(n, q);
                mpz_mul_ui(sq, sq, p);
            }
            mpz_clear(p2);
        }
        if (mpz_perfect_square_p(n)) {
            mpz_t root;
            mpz_init(root);
            mpz_sqrt(root, n);
            mpz_mul(sq, sq, root);
            mpz_set_ui(n, 1);
            mpz_clear(root);
        }
    }
    Rational s, m;
    mpz_set(mpq_numref(s.q_), sq);
    mpz_set(mpq_denref(s.q_), mpq_denref(r.q_));
    mpq_canonicalize(s.q_);
    mpz_set(mpq_numref(m.q_), n);
    mpq_canonicalize(m.q_);
    mpz_clears(n, q, rem, sq, nullptr);
    s_out = std::move(s);
    m_out = std::move(m);
}

} // namespace projjet
