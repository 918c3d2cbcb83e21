#include "doctest.h"

#include "projjet/two_jet.hpp"

using namespace projjet;

namespace {

using RM = MongeJet<Rational>;

RM pair2(long a20, long a11, long a02, long b20, long b11, long b02) {
    Jet2<Rational> f1(2), f2(2);
    f1.set(2, 0, Rational(a20));
    f1.set(1, 1, Rational(a11));
    f1.set(0, 2, Rational(a02));
    f2.set(2, 0, Rational(b20));
    f2.set(1, 1, Rational(b11));
    f2.set(0, 2, Rational(b02));
    return RM(std::move(f1), std::move(f2));
}

// GL(2) x GL(2) conjugate as a pure-linear group element.
MongeJet<Rational> linear_conjugate(Rng& rng, const MongeJet<Rational>& f, long bound = 10) {
    for (;;) {
        std::array<Rational, 4> L{rng.rational(bound), rng.rational(bound), rng.rational(bound),
                                  rng.rational(bound)};
        std::array<Rational, 4> N{rng.rational(bound), rng.rational(bound), rng.rational(bound),
                                  rng.rational(bound)};
        auto psi = ProjectiveMapG5<Rational>::linear(L, N);
        if (psi.valid()) return act_on_monge(psi, f);
    }
}

const std::pair<TwoJetClass, MongeJet<Rational> (*)()> kReps[] = {
    {TwoJetClass::Hyperbolic, [] { return pair2(1, 0, 0, 0, 0, 1); }},
    {TwoJetClass::Elliptic, [] { return pair2(1, 0, -1, 0, 1, 0); }},
    {TwoJetClass::Parabolic, [] { return pair2(1, 0, 0, 0, 1, 0); }},
    {TwoJetClass::InflectionPlus, [] { return pair2(1, 0, 1, 0, 0, 0); }},
    {TwoJetClass::InflectionMinus, [] { return pair2(0, 1, 0, 0, 0, 0); }},
    {TwoJetClass::DegenerateInflectionRank1, [] { return pair2(1, 0, 0, 0, 0, 0); }},
    {TwoJetClass::DegenerateInflectionZero, [] { return pair2(0, 0, 0, 0, 0, 0); }},
};

} // namespace

TEST_CASE("Gibson normal forms classify to their own labels") {
    for (const auto& [cls, make] : kReps) CHECK(classify_2jet(make()) == cls);
    CHECK(codimension(TwoJetClass::Hyperbolic) == 0);
    CHECK(codimension(TwoJetClass::Elliptic) == 0);
    CHECK(codimension(TwoJetClass::Parabolic) == 1);
    CHECK(codimension(TwoJetClass::InflectionPlus) == 2);
    CHECK(codimension(TwoJetClass::InflectionMinus) == 2);
    CHECK(codimension(TwoJetClass::DegenerateInflectionRank1) == 3);
    CHECK(codimension(TwoJetClass::DegenerateInflectionZero) == 4);
}

TEST_CASE("delta form matches the worked example") {
    // (2x^2 + 2xy, xy + 3y^2): delta = u1^2 + 6 u1 u2 + 3 u2^2, disc 24
    auto f = pair2(2, 2, 0, 0, 1, 3);
    auto d = delta_form(f);
    CHECK(d.c20 == Rational(1));
    CHECK(d.c11 == Rational(6));
    CHECK(d.c02 == Rational(3));
    CHECK(delta_discriminant(d) == Rational(24));
    CHECK(classify_2jet(f) == TwoJetClass::Hyperbolic);
}

TEST_CASE("asymptotic direction counts characterize the classes") {
    CHECK(asymptotic_directions(pair2(1, 0, 0, 0, 0, 1)).count() == 2);
    CHECK(asymptotic_directions(pair2(1, 0, -1, 0, 1, 0)).count() == 0);
    CHECK(asymptotic_directions(pair2(1, 0, 0, 0, 1, 0)).count() == 1);
    CHECK(asymptotic_directions(pair2(1, 0, 1, 0, 0, 0)).all);
    CHECK(asymptotic_directions(pair2(0, 1, 0, 0, 0, 0)).all);
    CHECK(asymptotic_directions(pair2(0, 0, 0, 0, 0, 0)).all);

    // (x^2, y^2): directions are the x and y axes
    auto dirs = asymptotic_directions(pair2(1, 0, 0, 0, 0, 1));
    REQUIRE(dirs.count() == 2);
    CHECK(dirs.directions[0] == Direction<Surd>::make(Surd(Rational(0)), Surd(Rational(1))));
    CHECK(dirs.directions[1] == Direction<Surd>::make(Surd(Rational(1)), Surd(Rational(0))));

    // (x^2, xy): unique asymptotic line is the y-axis, direction (0 : 1)
    auto pdirs = asymptotic_directions(pair2(1, 0, 0, 0, 1, 0));
    REQUIRE(pdirs.count() == 1);
    CHECK(pdirs.directions[0] == Direction<Surd>::make(Surd(Rational(0)), Surd(Rational(1))));
}

TEST_CASE("classification is invariant under random linear conjugation") {
    Rng rng(2718);
    for (const auto& [cls, make] : kReps) {
        auto rep = make();
        for (int t = 0; t < 40; ++t) {
            auto g = linear_conjugate(rng, rep);
            CHECK(classify_2jet(g) == cls);
            auto ad = asymptotic_directions(g);
            auto ar = asymptotic_directions(rep);
            CHECK(ad.all == ar.all);
            if (!ad.all) CHECK(ad.count() == ar.count());
        }
    }
}

TEST_CASE("classification is invariant under full G(5) action") {
    Rng rng(31337);
    for (const auto& [cls, make] : kReps) {
        auto rep = make().with_order(3);
        for (int t = 0; t < 15; ++t) {
            auto psi = random_element(rng, 3);
            CHECK(classify_2jet(act_on_monge(psi, rep)) == cls);
        }
    }
}

TEST_CASE("delta roots transform by the inverse linear map") {
    Rng rng(113);
    auto rep = pair2(1, 0, 0, 0, 0, 1);
    for (int t = 0; t < 25; ++t) {
        std::array<Rational, 4> L{rng.rational(5), rng.rational(5), rng.rational(5),
                                  rng.rational(5)};
        std::array<Rational, 4> N{rng.rational(5), rng.rational(5), rng.rational(5),
                                  rng.rational(5)};
        auto psi = ProjectiveMapG5<Rational>::linear(L, N);
        if (!psi.valid()) continue;
        auto g = act_on_monge(psi, rep);
        // directions of g are the preimages under L of the axes of rep
        auto gd = asymptotic_directions(g);
        REQUIRE(gd.count() == 2);
        for (const auto& dir : gd.directions) {
            // L * dir must be an axis direction: (L dir)_1 * (L dir)_2 == 0
            Surd v1 = Surd(L[0]) * dir.u1 + Surd(L[1]) * dir.u2;
            Surd v2 = Surd(L[2]) * dir.u1 + Surd(L[3]) * dir.u2;
            CHECK((v1 * v2).is_zero());
        }
    }
}

TEST_CASE("normalize_2jet: already-normal forms give the identity") {
    for (const auto& [cls, make] : kReps) {
        auto n = normalize_2jet(make());
        CHECK(n.cls == cls);
        CHECK(n.psi.is_identity());
        CHECK(residual_check(n.psi, make().map<Surd>([](const Rational& r) { return Surd(r); }),
                             n.normal, 2));
    }
}

TEST_CASE("normalize_2jet: diagonal rescaling case (2x^2, 3y^2)") {
    auto n = normalize_2jet(pair2(2, 0, 0, 0, 0, 3));
    CHECK(n.cls == TwoJetClass::Hyperbolic);
    CHECK(n.normal == pair2(1, 0, 0, 0, 0, 1).map<Surd>([](const Rational& r) { return Surd(r); }));
}

TEST_CASE("normalize_2jet reaches the exact normal form on random conjugates") {
    Rng rng(580);
    for (const auto& [cls, make] : kReps) {
        auto rep = make().with_order(2);
        for (int t = 0; t < 12; ++t) {
            auto g = linear_conjugate(rng, rep, 6);
            auto n = normalize_2jet(g);
            CHECK(n.cls == cls);
            CHECK(classify_2jet(n.normal) == cls);
            auto gs = g.map<Surd>([](const Rational& r) { return Surd(r); });
            CHECK(residual_check(n.psi, gs, n.normal, 2));
            CHECK(n.normal == rep.map<Surd>([](const Rational& r) { return Surd(r); }));
        }
    }
}

TEST_CASE("normalize_2jet handles genuinely irrational cases via one surd") {
    // elliptic pair whose eigenvalue scaling needs a square root
    auto f = pair2(1, 0, -2, 0, 3, 0);
    CHECK(classify_2jet(f) == TwoJetClass::Elliptic);
    auto n = normalize_2jet(f);
    CHECK(n.cls == TwoJetClass::Elliptic);
    auto fs = f.map<Surd>([](const Rational& r) { return Surd(r); });
    CHECK(residual_check(n.psi, fs, n.normal, 2));

    // hyperbolic pair with irrational asymptotic directions
    auto h = pair2(1, 1, -1, 0, 0, 1);
    REQUIRE(classify_2jet(h) == TwoJetClass::Hyperbolic);
    auto nh = normalize_2jet(h);
    CHECK(nh.normal ==
          pair2(1, 0, 0, 0, 0, 1).map<Surd>([](const Rational& r) { return Surd(r); }));
    CHECK(residual_check(nh.psi, h.map<Surd>([](const Rational& r) { return Surd(r); }), nh.normal,
                         2));

    // definite inflection slot needing sqrt(2): (x^2 + 2y^2, 0)
    auto ip = pair2(1, 0, 2, 0, 0, 0);
    REQUIRE(classify_2jet(ip) == TwoJetClass::InflectionPlus);
    auto np = normalize_2jet(ip);
    CHECK(np.normal ==
          pair2(1, 0, 1, 0, 0, 0).map<Surd>([](const Rational& r) { return Surd(r); }));
}

TEST_CASE("order < 2 is rejected") {
    Jet2<Rational> z(1);
    CHECK_THROWS_AS(classify_2jet(MongeJet<Rational>(z, z)), InputError);
}
