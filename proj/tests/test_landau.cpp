#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pinch/fixtures.hpp"
#include "pinch/landau.hpp"
#include "pinch/parse.hpp"

using namespace pinch;

namespace {
Polynomial P(const std::string& s) { return parse_polynomial(s); }
}

TEST_CASE("one-quadric system in all charts") {
    FamilyFile fam = fixtures::simple();

    SUBCASE("projective") {
        LandauSystem sys = generate_landau_system(fam.forms, Chart::projective);
        REQUIRE(sys.alphas.size() == 1);
        CHECK(var_name(sys.alphas[0]) == "a1");
        REQUIRE(sys.coords.size() == 2);
        CHECK(var_name(sys.coords[0]) == "u");
        CHECK(var_name(sys.coords[1]) == "z1");
        REQUIRE(sys.params.size() == 1);
        CHECK(var_name(sys.params[0]) == "t");
        REQUIRE(sys.vanishing.size() == 1);
        CHECK(sys.vanishing[0].str() == "t^2*u^2 + z1^2");
        REQUIRE(sys.gradient.size() == 2);
        CHECK(sys.gradient[0] == P("a1 t^2 u"));
        CHECK(sys.gradient[1] == P("a1 z1"));
        CHECK(sys.norm_alphas);
        CHECK(sys.norm_coords);
    }
    SUBCASE("finite") {
        LandauSystem sys = generate_landau_system(fam.forms, Chart::finite);
        CHECK(sys.coords.size() == 1);
        CHECK(sys.vanishing[0] == P("z1^2 + t^2"));
        REQUIRE(sys.gradient.size() == 1);  // homogenization row dropped
        CHECK(sys.gradient[0] == P("a1 z1"));
        CHECK_FALSE(sys.norm_coords);
        // The critical locus in this chart is exactly t = 0 (with z1 = 0):
        // z1^2 + t^2 = 0 and a1 z1 = 0 with a1 != 0.
        std::map<VarId, GaussianRational> good{{sys.alphas[0], GaussianRational(1)},
                                               {sys.coords[0], GaussianRational(0)},
                                               {sys.params[0], GaussianRational(0)}};
        for (auto& r : residuals_exact(sys, good)) CHECK(r.is_zero());
    }
    SUBCASE("infinity") {
        LandauSystem sys = generate_landau_system(fam.forms, Chart::infinity);
        CHECK(sys.coords.size() == 1);
        CHECK(sys.vanishing[0] == P("z1^2"));
        REQUIRE(sys.gradient.size() == 2);  // homogenization row kept
        CHECK(sys.gradient[0].is_zero());
        CHECK(sys.gradient[1] == P("a1 z1"));
        CHECK(sys.norm_coords);
        // Nothing lies at infinity: z1^2 = 0 forces z1 = 0, which the
        // coordinate normalization excludes.
    }
}

TEST_CASE("two-quadric system, finite chart") {
    FamilyFile fam = fixtures::two_quadrics();
    LandauSystem sys = generate_landau_system(fam.forms, Chart::finite);
    REQUIRE(sys.alphas.size() == 2);
    REQUIRE(sys.vanishing.size() == 2);
    CHECK(sys.vanishing[0] == P("z1^2 + z1 t + z2^2 + 1"));
    CHECK(sys.vanishing[1] == P("z1^2 + z2^2 + t^2"));
    REQUIRE(sys.gradient.size() == 2);
    CHECK(sys.gradient[0] == P("a1 z1 + 1/2 a1 t + a2 z1"));
    CHECK(sys.gradient[1] == P("a1 z2 + a2 z2"));

    // Pinned single-form branch point: t = 2, alpha = (1, 0), z = (-1, 0).
    std::map<VarId, GaussianRational> w{{sys.alphas[0], GaussianRational(1)},
                                        {sys.alphas[1], GaussianRational(0)},
                                        {sys.coords[0], GaussianRational(-1)},
                                        {sys.coords[1], GaussianRational(0)},
                                        {sys.params[0], GaussianRational(2)}};
    auto r = residuals_exact(sys, w);
    CHECK(r[0].is_zero());        // Q1 vanishes
    CHECK_FALSE(r[1].is_zero());  // Q2 = 5 there: branch {0} only
    CHECK(r[2].is_zero());
    CHECK(r[3].is_zero());
}

TEST_CASE("bubble system and the exact hand witness") {
    FeynmanFamily fam = feynman_family(fixtures::bubble());
    LandauSystem fin = generate_landau_system(fam.forms, Chart::finite);
    REQUIRE(fin.coords.size() == 4);
    REQUIRE(fin.gradient.size() == 4);
    // Row mu: a1 k_mu + a2 (k_mu - p_mu).
    CHECK(fin.gradient[0] == P("a1 k1_0 + a2 k1_0 - a2 p_0"));

    std::map<VarId, GaussianRational> w;
    w[fin.alphas[0]] = GaussianRational::frac(2, 3);
    w[fin.alphas[1]] = GaussianRational::frac(1, 3);
    for (int mu = 0; mu < 4; ++mu) w[fin.coords[mu]] = GaussianRational(0);
    w[fin.coords[0]] = GaussianRational::i();
    for (VarId p : fam.layout.momenta) w[p] = GaussianRational(0);
    w[fam.layout.momenta[0]] = GaussianRational(0, 3);  // p = (3i, 0, 0, 0)
    w[fam.layout.masses[0]] = GaussianRational(1);
    w[fam.layout.masses[1]] = GaussianRational(2);
    for (auto& r : residuals_exact(fin, w)) CHECK(r.is_zero());

    // Infinity chart: both forms degenerate to k^2; the homogenization row
    // becomes the second-type coupling -a2 (p . k).
    LandauSystem inf = generate_landau_system(fam.forms, Chart::infinity);
    REQUIRE(inf.gradient.size() == 5);
    CHECK(inf.vanishing[0] == P("k1_0^2 + k1_1^2 + k1_2^2 + k1_3^2"));
    CHECK(inf.vanishing[1] == inf.vanishing[0]);
    CHECK(inf.gradient[0] == P("-(a2 p_0 k1_0 + a2 p_1 k1_1 + a2 p_2 k1_2 + a2 p_3 k1_3)"));
    CHECK(inf.norm_coords);

    // Second-type witness at p = (i, 1, 0, 0), a null point: k parallel to p,
    // alpha = (1, -1).
    std::map<VarId, GaussianRational> s;
    s[inf.alphas[0]] = GaussianRational(1);
    s[inf.alphas[1]] = GaussianRational(-1);
    s[inf.coords[0]] = GaussianRational::i();
    s[inf.coords[1]] = GaussianRational(1);
    s[inf.coords[2]] = s[inf.coords[3]] = GaussianRational(0);
    s[fam.layout.momenta[0]] = GaussianRational::i();
    s[fam.layout.momenta[1]] = GaussianRational(1);
    s[fam.layout.momenta[2]] = s[fam.layout.momenta[3]] = GaussianRational(0);
    s[fam.layout.masses[0]] = GaussianRational(1);
    s[fam.layout.masses[1]] = GaussianRational(2);
    for (auto& r : residuals_exact(inf, s)) CHECK(r.is_zero());
}

TEST_CASE("branch enumeration") {
    auto b1 = enumerate_branches(1);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0] == std::vector<int>{0});
    auto b2 = enumerate_branches(2);
    REQUIRE(b2.size() == 3);
    CHECK(b2[0] == std::vector<int>{0});
    CHECK(b2[1] == std::vector<int>{1});
    CHECK(b2[2] == std::vector<int>{0, 1});
    CHECK(enumerate_branches(4).size() == 15);
    CHECK_THROWS_AS(enumerate_branches(0), std::invalid_argument);
}

TEST_CASE("system JSON round trip") {
    FamilyFile fam = fixtures::two_quadrics();
    LandauSystem sys = generate_landau_system(fam.forms, Chart::infinity);
    std::string text = sys.to_json();
    LandauSystem back = LandauSystem::from_json(text);
    CHECK(back.chart == sys.chart);
    CHECK(back.alphas == sys.alphas);
    CHECK(back.coords == sys.coords);
    CHECK(back.params == sys.params);
    REQUIRE(back.vanishing.size() == sys.vanishing.size());
    for (std::size_t i = 0; i < sys.vanishing.size(); ++i)
        CHECK(back.vanishing[i] == sys.vanishing[i]);
    REQUIRE(back.gradient.size() == sys.gradient.size());
    for (std::size_t i = 0; i < sys.gradient.size(); ++i)
        CHECK(back.gradient[i] == sys.gradient[i]);
    CHECK(back.norm_alphas == sys.norm_alphas);
    CHECK(back.norm_coords == sys.norm_coords);
    CHECK(back.to_json() == text);

    CHECK_THROWS_AS(LandauSystem::from_json("{\"kind\":\"landau_system\",\"oops\":1}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(LandauSystem::from_json("[1,2]"), std::invalid_argument);
}

TEST_CASE("family file round trip") {
    FamilyFile fam = fixtures::two_quadrics();
    std::string text = family_to_json(fam);
    FamilyFile back = parse_family_json(text);
    CHECK(back.coords == fam.coords);
    CHECK(back.params == fam.params);
    REQUIRE(back.forms.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(back.forms[i].poly() == fam.forms[i].poly());

    CHECK_THROWS_AS(parse_family_json("{\"kind\":\"quadratic_family\",\"coords\":[],"
                                      "\"params\":[],\"forms\":[]}"),
                    std::invalid_argument);
    // Identifiers outside the declared variables are rejected.
    CHECK_THROWS_AS(parse_family_json("{\"kind\":\"quadratic_family\",\"coords\":[\"z1\"],"
                                      "\"params\":[],\"forms\":[\"z1^2 + w\"]}"),
                    std::invalid_argument);
}

TEST_CASE("mismatched coordinates are rejected") {
    FamilyFile a = fixtures::simple();
    FamilyFile b = fixtures::two_quadrics();
    std::vector<QuadraticFamily> mixed = {a.forms[0], b.forms[0]};
    CHECK_THROWS_AS(generate_landau_system(mixed, Chart::finite), std::invalid_argument);
}
