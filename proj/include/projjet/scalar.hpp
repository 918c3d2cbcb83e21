#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <limits>
#include <string>

#include "projjet/rational.hpp"
#include "projjet/surd.hpp"

namespace projjet {

/// Zero-test policy for floating-point classification: relative tolerance
/// against the magnitude scale of the jet under test. Exact scalars ignore it.
struct FloatZeroPolicy {
    double tol = 1e-9;
    double scale = 1.0;
    // Smallest |value|/threshold ratio seen among *nonzero* decisions; lets
    // callers flag near-degenerate classifications.
    double min_margin = std::numeric_limits<double>::infinity();

    static FloatZeroPolicy& current() {
        thread_local FloatZeroPolicy p;
        return p;
    }

    double threshold() const { return tol * (scale > 1.0 ? scale : 1.0); }

    bool is_zero(double x) {
        double t = threshold();
        double ax = std::fabs(x);
        if (ax <= t) return true;
        double margin = ax / t;
        if (margin < min_margin) min_margin = margin;
        return false;
    }
};

/// RAII guard setting the float tolerance context for a classification call.
struct FloatZeroGuard {
    FloatZeroPolicy saved;
    FloatZeroGuard(double tol, double scale) : saved(FloatZeroPolicy::current()) {
        auto& p = FloatZeroPolicy::current();
        p.tol = tol;
        p.scale = scale < 1.0 ? 1.0 : scale;
        p.min_margin = std::numeric_limits<double>::infinity();
    }
    double min_margin() const { return FloatZeroPolicy::current().min_margin; }
    ~FloatZeroGuard() { FloatZeroPolicy::current() = saved; }
};

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static int sgn(const Rational& x) { return x.sgn(); }
    static Rational from_rational(const Rational& r) { return r; }
    static double to_double(const Rational& x) { return x.to_double(); }
    static std::string to_string(const Rational& x) { return x.to_string(); }
    static std::optional<Rational> exact_cbrt(const Rational& x) { return x.exact_cbrt(); }
};

template <>
struct scalar_traits<Surd> {
    static constexpr bool exact = true;
    static bool is_zero(const Surd& x) { return x.is_zero(); }
    static int sgn(const Surd& x) { return x.sgn(); }
    static Surd from_rational(const Rational& r) { return Surd(r); }
    static double to_double(const Surd& x) { return x.to_double(); }
    static std::string to_string(const Surd& x) { return x.to_string(); }
    static std::optional<Surd> exact_cbrt(const Surd& x) { return x.exact_cbrt(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static bool is_zero(double x) { return FloatZeroPolicy::current().is_zero(x); }
    static int sgn(double x) { return is_zero(x) ? 0 : (x > 0 ? 1 : -1); }
    static double from_rational(const Rational& r) { return r.to_double(); }
    static double to_double(double x) { return x; }
    static std::string to_string(double x) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return buf;
    }
    static std::optional<double> exact_cbrt(double x) { return std::cbrt(x); }
};

template <class K>
bool k_is_zero(const K& x) { return scalar_traits<K>::is_zero(x); }

template <class K>
int k_sgn(const K& x) { return scalar_traits<K>::sgn(x); }

/// Deterministic splitmix64 stream; the only randomness source in the
/// library, so seeded runs are reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Rational with |value| <= bound and denominator <= max_den.
    Rational rational(long bound, long max_den = 8) {
        long den = uniform(1, max_den);
        long num = uniform(-bound * den, bound * den);
        return Rational(num, den);
    }

    Rational nonzero_rational(long bound, long max_den = 8) {
        for (;;) {
            Rational r = rational(bound, max_den);
            if (!r.is_zero()) return r;
        }
    }

    Rng fork() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }

private:
    std::uint64_t state_;
};

} // namespace projjet
