#include "doctest.h"

#include "projjet/mond.hpp"
#include "projjet/projection.hpp"

using namespace projjet;

namespace {

using RM = MongeJet<Rational>;
using VP = ViewPoint<Rational>;

RM hy(std::initializer_list<std::tuple<int, int, long>> t1,
      std::initializer_list<std::tuple<int, int, long>> t2) {
    return monge_rational(3, t1, t2);
}

} // namespace

TEST_CASE("projection from outside the tangent plane is regular") {
    auto f = hy({{2, 0, 1}, {0, 3, 2}}, {{0, 2, 1}, {3, 0, -1}});
    for (auto p : {VP::finite(Rational(0), Rational(0), Rational(1), Rational(0)),
                   VP::finite(Rational(1), Rational(2), Rational(3), Rational(-1)),
                   VP::at_infinity(Rational(0), Rational(0), Rational(0), Rational(1))}) {
        CHECK(!p.on_tangent_plane());
        CHECK(classify_A3(project(f, p, 3)) == MondType::Regular);
    }
}

TEST_CASE("projection from the tangent plane is singular") {
    auto f = hy({{2, 0, 1}, {0, 3, 2}}, {{0, 2, 1}, {3, 0, -1}});
    for (auto p : {VP::finite(Rational(0), Rational(1), Rational(0), Rational(0)),
                   VP::finite(Rational(2), Rational(-3), Rational(0), Rational(0)),
                   VP::at_infinity(Rational(1), Rational(1), Rational(0), Rational(0))}) {
        CHECK(p.on_tangent_plane());
        CHECK(classify_A3(project(f, p, 3)) != MondType::Regular);
    }
}

TEST_CASE("hyperbolic germ projected from the y-axis matches the reduced shape") {
    // j^2 f = (x^2, y^2) with a21 = 2, a03 = 3; from p = (0, a, 0, 0) the jet
    // is A^3-equivalent to (x, a(a21 a - 1) x^2 y + a03 y^3, y^2).
    auto f = hy({{2, 0, 1}, {2, 1, 2}, {0, 3, 3}}, {{0, 2, 1}});
    for (long a : {1L, 2L, -1L}) {
        auto proj = project(f, VP::finite(Rational(0), Rational(a), Rational(0), Rational(0)), 3);
        Jet2<Rational> g1(3), g2(3), g3(3);
        g1.set(1, 0, Rational(1));
        g2.set(2, 1, Rational(a) * (Rational(2 * a) - Rational(1)));
        g2.set(0, 3, Rational(3));
        g3.set(0, 2, Rational(1));
        CHECK(classify_A3(proj) == classify_A3(JetMapN<Rational>(g1, g2, g3)));
        CHECK(classify_A3(proj) == MondType::S);
    }
    // with a03 = 0 the same points give B-type
    auto fb = hy({{2, 0, 1}, {2, 1, 2}}, {{0, 2, 1}});
    CHECK(classify_A3(project(fb, VP::finite(Rational(0), Rational(1), Rational(0), Rational(0)),
                              3)) == MondType::B);
    // and from infinity on the same axis: (x, xy, a21 x^2 y + a03 y^3)
    CHECK(classify_A3(project(f, VP::at_infinity(Rational(0), Rational(1), Rational(0),
                                                 Rational(0)),
                              3)) == MondType::S);
}

TEST_CASE("parabolic germ projected from its unique asymptotic line") {
    // j^2 f = (x^2, xy): from p = (0, a, 0, 0) the jet is A^3-equivalent to
    // (x, a12 a xy^2 + a03 y^3, xy + b03 y^3).
    auto mk = [](long a12, long a03, long b03) {
        return hy({{2, 0, 1}, {1, 2, a12}, {0, 3, a03}}, {{1, 1, 1}, {0, 3, b03}});
    };
    auto pt = VP::finite(Rational(0), Rational(2), Rational(0), Rational(0));
    CHECK(classify_A3(project(mk(1, 1, 1), pt, 3)) == MondType::H);
    CHECK(classify_A3(project(mk(1, 0, 1), pt, 3)) == MondType::P);
    CHECK(classify_A3(project(mk(1, 0, 0), pt, 3)) == MondType::R);
    CHECK(classify_A3(project(mk(0, 0, 1), pt, 3)) == MondType::T);
    CHECK(classify_A3(project(mk(0, 0, 0), pt, 3)) == MondType::U);
}

TEST_CASE("chart choice does not change the label") {
    auto f = hy({{2, 0, 1}, {0, 3, 2}}, {{0, 2, 1}, {3, 0, -1}});
    // every coordinate nonzero: all four charts admissible
    auto p = VP::finite(Rational(1), Rational(1, 2), Rational(-2), Rational(3));
    auto base = classify_A3(project(f, p, 3));
    for (int chart = 0; chart < 4; ++chart)
        CHECK(classify_A3(project(f, p, 3, chart)) == base);
    // on-tangent-plane point with both x-a and y-b admissible
    auto q = VP::finite(Rational(1), Rational(1), Rational(0), Rational(0));
    CHECK(classify_A3(project(f, q, 3, 0)) == classify_A3(project(f, q, 3, 1)));
    CHECK_THROWS_AS(project(f, q, 3, 2), InputError);
}

TEST_CASE("projection is equivariant under the group action") {
    Rng rng(606);
    auto f = monge_rational(3, {{2, 0, 1}, {0, 3, 1}, {2, 1, -2}}, {{0, 2, 1}, {3, 0, 2}});
    int tested = 0;
    for (int t = 0; t < 40 && tested < 12; ++t) {
        auto psi = random_element(rng, 2);
        auto g = act_on_monge(psi, f);
        VP p = VP::finite(rng.rational(3), rng.nonzero_rational(3), rng.rational(3),
                          rng.rational(3));
        std::array<Rational, 5> h = psi.inverse().apply_point(p.homogeneous());
        bool degenerate = true;
        for (const auto& c : h)
            if (!c.is_zero()) degenerate = false;
        if (degenerate) continue;
        auto q = VP::from_homogeneous(h);
        if (q.is_origin()) continue;
        ++tested;
        CHECK(classify_A3(project(f, p, 3)) == classify_A3(project(g, q, 3)));
    }
    CHECK(tested >= 12);
}

TEST_CASE("sample_view_points reference sequence") {
    auto dir = Direction<Rational>::make(Rational(0), Rational(1));
    auto pts = sample_view_points(dir, 3);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].a == Rational(0));
    CHECK(pts[0].b == Rational(1));
    CHECK(pts[0].is_finite());
    CHECK(pts[1].b == Rational(-2));
    CHECK(!pts[2].is_finite());
    CHECK(pts[2].b == Rational(1));
    for (const auto& p : pts) {
        CHECK(p.on_tangent_plane());
        CHECK(on_line_through_origin(p, dir));
    }
    // deterministic under a fixed seed; distinct points
    auto s1 = sample_view_points(dir, 5, 42);
    auto s2 = sample_view_points(dir, 5, 42);
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].a == s2[i].a);
        CHECK(s1[i].b == s2[i].b);
        CHECK(s1[i].e == s2[i].e);
    }
    for (std::size_t i = 0; i < s1.size(); ++i)
        for (std::size_t j = i + 1; j < s1.size(); ++j)
            CHECK((s1[i].a != s1[j].a || s1[i].b != s1[j].b || s1[i].e != s1[j].e));
}

TEST_CASE("asymptotic-line membership of view points") {
    auto f = hy({{2, 0, 1}}, {{0, 2, 1}}); // lines: x and y axes
    CHECK(is_on_asymptotic_line(f, VP::finite(Rational(0), Rational(3), Rational(0), Rational(0))));
    CHECK(is_on_asymptotic_line(f, VP::at_infinity(Rational(1), Rational(0), Rational(0),
                                                   Rational(0))));
    CHECK(!is_on_asymptotic_line(f, VP::finite(Rational(1), Rational(1), Rational(0), Rational(0))));
    CHECK(!is_on_asymptotic_line(f, VP::finite(Rational(0), Rational(1), Rational(1), Rational(0))));
    // elliptic germs have no asymptotic lines; inflection germs own them all
    auto fe = hy({{2, 0, 1}, {0, 2, -1}}, {{1, 1, 1}});
    CHECK(!is_on_asymptotic_line(fe, VP::finite(Rational(0), Rational(1), Rational(0), Rational(0))));
    auto fi = hy({{1, 1, 1}}, {});
    CHECK(is_on_asymptotic_line(fi, VP::finite(Rational(5), Rational(7), Rational(0), Rational(0))));
}

TEST_CASE("view point validation") {
    auto f = hy({{2, 0, 1}}, {{0, 2, 1}});
    CHECK_THROWS_AS(project(f, VP::finite(Rational(0), Rational(0), Rational(0), Rational(0)), 3),
                    InputError);
    CHECK_THROWS_AS(VP::at_infinity(Rational(0), Rational(0), Rational(0), Rational(0)),
                    InputError);
}
