#include <catch2/catch_amalgamated.hpp>

#include <padic_dynamo/series.hpp>

using namespace pdyn;

namespace {
TruncatedSeries ts(std::initializer_list<Rat> coeffs) {
    return TruncatedSeries::polynomial(Poly(coeffs));
}
}  // namespace

TEST_CASE("gauss_norm_exponent") {
    const BigInt p = 3;
    TruncatedSeries h = ts({Rat(27), Rat(3), Rat(1)});  // p^3 + p z + z^2
    CHECK(gauss_norm_exponent(h, p, 1) == 2);
    CHECK(gauss_norm_exponent(ts({Rat(27)}), p, 5) == 3);
    CHECK(gauss_norm_exponent(ts({Rat(0), Rat(1)}), p, Rat(7, 2)) == Rat(7, 2));
}

TEST_CASE("gauss norm with tail bounds") {
    const BigInt p = 2;
    TruncatedSeries h{Poly({Rat(0), Rat(1)}), TailBound{Rat(0), Rat(2)}};
    // tail floor 2 at rho=0 dominates the head value 0
    CHECK(gauss_norm_exponent(h, p, 0) == 0);
    // at rho below the reference exponent the tail is uncertified
    CHECK_THROWS_AS(gauss_norm_exponent(h, p, -1), TailNotDominated);
    TruncatedSeries bad{Poly({Rat(4)}), TailBound{Rat(0), Rat(1)}};
    // tail could attain a smaller exponent than v(4)=2
    CHECK_THROWS_AS(gauss_norm_exponent(bad, p, 0), TailNotDominated);
}

TEST_CASE("weierstrass_degree open vs closed") {
    const BigInt p = 3;
    TruncatedSeries h = ts({Rat(27), Rat(3), Rat(1)});
    CHECK(weierstrass_degree(h, p, LogRadius::closed_disk(1)) == 2);
    CHECK(weierstrass_degree(h, p, LogRadius::open_disk(1)) == 1);
    CHECK(weierstrass_degree(ts({Rat(0), Rat(0), Rat(0), Rat(1)}), p,
                             LogRadius::closed_disk(Rat(5, 7))) == 3);
    CHECK(weierstrass_degree(ts({Rat(0), Rat(3), Rat(1)}), p, LogRadius::open_disk(0)) == 2);
}

TEST_CASE("copolygon breakpoints") {
    const BigInt p = 3;
    Copolygon cp = copolygon(ts({Rat(27), Rat(3), Rat(1)}), p, 0, 2);
    REQUIRE(cp.size() == 3);
    CHECK(cp[0].exponent == 0);
    CHECK(cp[0].value == 0);
    CHECK(cp[0].right_slope == 2);
    CHECK(cp[1].exponent == 1);
    CHECK(cp[1].value == 2);
    CHECK(cp[1].right_slope == 2);
    CHECK(cp[2].exponent == 2);
    CHECK(cp[2].value == 3);
    CHECK(cp[2].right_slope == 1);
    // slopes toward smaller radius are nonincreasing
    for (std::size_t i = 0; i + 1 < cp.size(); ++i)
        CHECK(cp[i].right_slope >= cp[i + 1].right_slope);
    // z^d: single slope d
    Copolygon zd = copolygon(ts({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)}), p, 0, 1);
    for (const auto& pt : zd) CHECK(pt.right_slope == 4);
    CHECK(copolygon_csv(cp).substr(0, 26) == "exponent,value,right_slope");
}

TEST_CASE("copolygon of g_2 matches its polygon") {
    Copolygon cp = copolygon(ts({Rat(0), Rat(2), Rat(1)}), 2, 0, 2);
    CHECK(cp.front().right_slope == 2);
    CHECK(cp.back().right_slope == 1);
    bool has_breakpoint_at_1 = false;
    for (const auto& pt : cp) has_breakpoint_at_1 |= pt.exponent == 1;
    CHECK(has_breakpoint_at_1);
}

TEST_CASE("distortion") {
    CHECK(distortion(ts({Rat(0), Rat(0), Rat(1)}), 2, Rat(3, 4)) == -1);  // z^2 at p=2
    CHECK(distortion(ts({Rat(0), Rat(1)}), 5, Rat(2)) == 0);              // z
    // slope identity: slope of rho -> delta just right of rho is 1 + l - m
    const BigInt p = 3;
    TruncatedSeries h = ts({Rat(0), Rat(9), Rat(0), Rat(1)});  // 9z + z^3
    Rat rho = 1, eps(1, 10);
    // toward larger radius = smaller exponent
    Rat d0 = distortion(h, p, rho), d1 = distortion(h, p, Rat(rho - eps));
    long m = static_cast<long>(weierstrass_degree(h, p, LogRadius::closed_disk(rho)));
    long l = static_cast<long>(weierstrass_degree(
        TruncatedSeries::polynomial(h.head.derivative()), p, LogRadius::closed_disk(rho)));
    CHECK((d1 - d0) / eps == Rat(1 + l - m));
}

TEST_CASE("image_disk") {
    const BigInt p = 5;
    TruncatedSeries h = ts({Rat(7), Rat(0), Rat(1)});  // 7 + z^2
    DiskImage img = image_disk(h, p, LogRadius::closed_disk(1));
    CHECK(img.center == 7);
    CHECK(img.radius.exponent == 2);
    CHECK(!img.radius.open);
    CHECK(img.multiplicity == 2);
    DiskImage lin = image_disk(ts({Rat(1), Rat(1)}), p, LogRadius::open_disk(Rat(3)));
    CHECK(lin.center == 1);
    CHECK(lin.radius.exponent == 3);
    CHECK(lin.multiplicity == 1);
    CHECK_THROWS_AS(image_disk(ts({Rat(4)}), p, LogRadius::open_disk(0)), ConstantSeries);
}

TEST_CASE("image_disk composes") {
    const BigInt p = 3;
    Poly f({Rat(0), Rat(3), Rat(1)});
    Poly g({Rat(0), Rat(0), Rat(1)});
    LogRadius disk = LogRadius::closed_disk(1);
    DiskImage inner = image_disk(TruncatedSeries::polynomial(g), p, disk);
    DiskImage outer =
        image_disk(TruncatedSeries::polynomial(f), p,
                   LogRadius{inner.radius.exponent, inner.radius.open});
    DiskImage whole = image_disk(TruncatedSeries::polynomial(f.compose(g)), p, disk);
    CHECK(whole.radius.exponent == outer.radius.exponent);
    CHECK(whole.multiplicity == inner.multiplicity * outer.multiplicity);
}

TEST_CASE("lemma52_classify") {
    const BigInt p = 3;
    TruncatedSeries h = ts({Rat(0), Rat(9), Rat(1)});  // 9z + z^2
    SECTION("gamma maps to zero") {
        Lemma52Certificate c = lemma52_classify(h, Rat(-9), p, 0);
        CHECK(c.verdict == BasinVerdict::GammaMapsToZero);
        CHECK(c.r_exponent == 2);
        REQUIRE(c.s_exponent.has_value());
        CHECK(*c.s_exponent == 1);
    }
    SECTION("gamma wanders via the strict-contraction zone") {
        Lemma52Certificate c = lemma52_classify(h, Rat(9), p, 0);
        CHECK(c.verdict == BasinVerdict::GammaWanders);
        REQUIRE(!c.orbit_valuations.empty());
        CHECK(c.orbit_valuations.front() == 2);
        CHECK(c.orbit_valuations.back() > c.r_exponent);
    }
    SECTION("boundary case of the hypothesis") {
        TruncatedSeries hb = ts({Rat(0), Rat(4), Rat(1)});  // |A_1| = 1/4 at p=2
        Lemma52Certificate c = lemma52_classify(hb, Rat(1), 2, 0);
        CHECK(c.verdict == BasinVerdict::HypothesisFails);
    }
    SECTION("witness counts are consistent") {
        Lemma52Certificate c = lemma52_classify(h, Rat(-9), p, 0);
        CHECK(c.wdeg_on_S == 2);
        CHECK(c.crit_in_rho == 1);
        CHECK(c.distinct_roots == 2);
        // M - a = m - b
        CHECK(c.crit_in_rho - c.crit_not_to_zero == c.wdeg_on_S - c.distinct_roots);
    }
}
