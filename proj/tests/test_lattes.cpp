#include <catch2/catch_amalgamated.hpp>

#include <padic_dynamo/lattes.hpp>

using namespace pdyn;

TEST_CASE("x_multiplication m=2") {
    LegendreCurve E(Rat(2));
    RationalMap dbl = x_multiplication(2, E);
    CHECK(dbl.degree() == 4);
    // (x^2 - 2)^2 / (4x(x-1)(x-2)), normalized to a monic denominator
    RationalMap expected(Poly({Rat(4), Rat(0), Rat(-4), Rat(0), Rat(1)}) * Rat(1, 4),
                         Poly({Rat(0), Rat(2), Rat(-3), Rat(1)}));
    CHECK(dbl == expected);
    // the 2-torsion x-values map to x(O) = infinity
    for (const Rat& x : {Rat(0), Rat(1), Rat(2)})
        CHECK(dbl.evaluate(ProjPoint(x)) == ProjPoint::infinity());
    CHECK(dbl.evaluate(ProjPoint::infinity()) == ProjPoint::infinity());
    CHECK_THROWS_AS(LegendreCurve(Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(LegendreCurve(Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(x_multiplication(4, E), UnsupportedM);
}

TEST_CASE("x_multiplication m=3 commutes with m=2") {
    LegendreCurve E(Rat(2));
    RationalMap two = x_multiplication(2, E);
    RationalMap three = x_multiplication(3, E);
    CHECK(three.degree() == 9);
    // [3] fixes the 2-torsion x-values
    for (const Rat& x : {Rat(0), Rat(1), Rat(2)})
        CHECK(three.evaluate(ProjPoint(x)) == ProjPoint(x));
    // sampled commutation [2][3] = [3][2] = [6] on x-coordinates
    for (const Rat& x : {Rat(3), Rat(5), Rat(7), Rat(-1), Rat(1, 2)}) {
        ProjPoint p(x);
        CHECK(two.evaluate(three.evaluate(p)) == three.evaluate(two.evaluate(p)));
    }
}

TEST_CASE("torsion translations") {
    LegendreCurve E(Rat(2));
    for (TorsionMarker t : {TorsionMarker::T0, TorsionMarker::T1, TorsionMarker::TLambda}) {
        Mobius tau = torsion_translation(t, E);
        // translation by 2-torsion is an involution on x-coordinates
        Mobius sq = tau.compose(tau);
        CHECK(sq.a * sq.d - sq.b * sq.c != 0);
        for (const Rat& x : {Rat(3), Rat(5), Rat(-2)})
            CHECK(sq.apply(ProjPoint(x)) == ProjPoint(x));
    }
    // tau_{T0} swaps x(O)=infinity and x(T0)=0
    Mobius t0 = torsion_translation(TorsionMarker::T0, E);
    CHECK(t0.apply(ProjPoint::infinity()) == ProjPoint(Rat(0)));
    CHECK(t0.apply(ProjPoint(Rat(0))) == ProjPoint::infinity());
}

TEST_CASE("flexible_lattes") {
    LegendreCurve E(Rat(2));
    SECTION("degree m^2 and torsion variants") {
        for (long m : {2L, 3L})
            for (TorsionMarker t : {TorsionMarker::O, TorsionMarker::T0}) {
                RationalMap f = flexible_lattes({E, m, t, Mobius::identity()});
                CHECK(f.degree() == m * m);
            }
    }
    SECTION("conjugation moves the postcritical set") {
        // h = z + 1 carries {0,1,2,inf} to {1,2,3,inf}
        Mobius h(Rat(1), Rat(1), Rat(0), Rat(1));
        RationalMap f = flexible_lattes({E, 2, TorsionMarker::O, h});
        PostcriticalReport rep = postcritical_set(f, 64);
        CHECK(rep.strict.size() == 4);
        CHECK(rep.strict.contains_point(ProjPoint(Rat(1))));
        CHECK(rep.strict.contains_point(ProjPoint(Rat(2))));
        CHECK(rep.strict.contains_point(ProjPoint(Rat(3))));
        CHECK(rep.strict.contains_point(ProjPoint::infinity()));
    }
    SECTION("translated map is the translation after [2]") {
        RationalMap f = flexible_lattes({E, 2, TorsionMarker::T0, Mobius::identity()});
        RationalMap plain = flexible_lattes({E, 2, TorsionMarker::O, Mobius::identity()});
        Mobius t0 = torsion_translation(TorsionMarker::T0, E);
        for (const Rat& x : {Rat(3), Rat(5), Rat(7), Rat(-1)}) {
            ProjPoint p(x);
            CHECK(f.evaluate(p) == t0.apply(plain.evaluate(p)));
        }
    }
}

TEST_CASE("postcritical sets of polynomial maps") {
    RationalMap sq = RationalMap::polynomial(Poly::monomial(2));
    PostcriticalReport rep = postcritical_set(sq, 16);
    CHECK(rep.strict.size() == 2);
    CHECK(rep.strict.contains_point(ProjPoint(Rat(0))));
    CHECK(rep.strict.contains_point(ProjPoint::infinity()));
    RationalMap cheb = RationalMap::polynomial(Poly({Rat(-2), Rat(0), Rat(1)}));
    PostcriticalReport rep2 = postcritical_set(cheb, 16);
    CHECK(rep2.strict.size() == 3);
    CHECK(rep2.strict.contains_point(ProjPoint(Rat(-2))));
    CHECK(rep2.strict.contains_point(ProjPoint(Rat(2))));
    CHECK(rep2.strict.contains_point(ProjPoint::infinity()));
}

TEST_CASE("milnor_criterion") {
    for (const Rat& l : {Rat(2), Rat(-1), Rat(3)}) {
        LattesSpec spec{LegendreCurve(l), 2, TorsionMarker::O, Mobius::identity()};
        MilnorVerdict v = milnor_criterion(flexible_lattes(spec));
        CHECK(v.passes);
        CHECK(v.strictly_postcritical_count == 4);
        CHECK(v.all_critical_simple);
        CHECK(v.none_strictly_postcritical_critical);
    }
    CHECK(!milnor_criterion(RationalMap::polynomial(Poly::monomial(2))).passes);
    CHECK(!milnor_criterion(RationalMap::polynomial(Poly({Rat(-1), Rat(0), Rat(1)}))).passes);
    // m = 3 Lattes also passes
    LattesSpec spec3{LegendreCurve(Rat(2)), 3, TorsionMarker::O, Mobius::identity()};
    MilnorVerdict v3 = milnor_criterion(flexible_lattes(spec3));
    CHECK(v3.passes);
}
