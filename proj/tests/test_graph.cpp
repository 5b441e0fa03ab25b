#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pinch/graph.hpp"

using namespace pinch;

namespace {

FeynmanGraph bubble() {
    FeynmanGraph g;
    g.vertices = {"a", "b"};
    g.edges = {{"e1", "a", "b", "m1", GaussianRational(1)},
               {"e2", "a", "b", "m2", GaussianRational(1)}};
    g.external = {{"a", 1}, {"b", 1}};
    g.dimension = 4;
    return g;
}

FeynmanGraph sunrise() {
    FeynmanGraph g;
    g.vertices = {"a", "b"};
    g.edges = {{"e1", "a", "b", "m1", GaussianRational(1)},
               {"e2", "a", "b", "m2", GaussianRational(1)},
               {"e3", "a", "b", "m3", GaussianRational(1)}};
    g.external = {{"a", 1}, {"b", 1}};
    g.dimension = 4;
    return g;
}

// Outer bubble a--b with the lower line split at c and doubled: the inner
// bubble {e2,e3} is the unique divergent proper subgraph in D=4.
FeynmanGraph nested_bubble() {
    FeynmanGraph g;
    g.vertices = {"a", "c", "b"};
    g.edges = {{"e1", "a", "c", "m", GaussianRational(1)},
               {"e2", "c", "b", "m", GaussianRational(1)},
               {"e3", "c", "b", "m", GaussianRational(1)},
               {"e4", "b", "a", "m", GaussianRational(1)}};
    g.external = {{"a", 1}, {"b", 1}};
    g.dimension = 4;
    return g;
}

}  // namespace

TEST_CASE("validation and JSON round trip") {
    FeynmanGraph g = bubble();
    g.validate();
    std::string text = graph_to_json(g);
    FeynmanGraph h = parse_graph_json(text);
    CHECK(h.vertices == g.vertices);
    CHECK(h.edges.size() == 2);
    CHECK(h.edges[0].mass == "m1");
    CHECK(h.phi("a") == 1);
    CHECK(h.dimension == 4);

    CHECK_THROWS_AS(parse_graph_json("{\"vertices\":[\"a\"],\"edges\":[],\"bogus\":1}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_graph_json(
            "{\"vertices\":[\"a\"],\"edges\":[{\"id\":\"e\",\"ends\":[\"a\",\"zz\"]}]}"),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_graph_json("not json"), std::invalid_argument);
    FeynmanGraph dup = bubble();
    dup.edges[1].id = "e1";
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
}

TEST_CASE("connectivity, loops, 1PI") {
    CHECK(loop_number(bubble()) == 1);
    CHECK(loop_number(sunrise()) == 2);
    CHECK(is_one_particle_irreducible(bubble()));
    CHECK(is_one_particle_irreducible(sunrise()));
    CHECK(is_one_particle_irreducible(nested_bubble()));

    FeynmanGraph path;
    path.vertices = {"a", "b", "c"};
    path.edges = {{"e1", "a", "b", "", GaussianRational(1)},
                  {"e2", "b", "c", "", GaussianRational(1)}};
    path.external = {{"a", 1}, {"c", 1}};
    CHECK(loop_number(path) == 0);
    CHECK(is_connected(path));
    CHECK_FALSE(is_one_particle_irreducible(path));

    FeynmanGraph loopy;
    loopy.vertices = {"a"};
    loopy.edges = {{"e1", "a", "a", "m", GaussianRational(1)}};
    CHECK(loop_number(loopy) == 1);
    CHECK(is_one_particle_irreducible(loopy));

    FeynmanGraph disc;
    disc.vertices = {"a", "b"};
    CHECK_FALSE(is_connected(disc));
    CHECK(component_count(disc) == 2);
}

TEST_CASE("routing: bubble matches the pinned labeling") {
    FeynmanGraph g = bubble();
    Routing r = build_routing(g);
    CHECK(r.base == "a");
    REQUIRE(r.chords.size() == 1);
    // Edge 1 is the chord and carries k1; edge 2 carries -k1 - pb.
    CHECK(r.chords[0] == 0);
    CHECK(r.loop_coeffs[0] == std::map<int, int>{{0, 1}});
    CHECK(r.ext_coeffs[0].empty());
    CHECK(r.loop_coeffs[1] == std::map<int, int>{{0, -1}});
    CHECK(r.ext_coeffs[1] == std::map<std::string, int>{{"b", -1}});
    CHECK(routing_conserves(g, r));
    CHECK(edge_momentum_str(g, r, 0) == "k1");
    CHECK(edge_momentum_str(g, r, 1) == "-k1 - pb");
}

TEST_CASE("routing: sunrise chords carry k1,k2; tree edge carries -k1-k2-pb") {
    FeynmanGraph g = sunrise();
    Routing r = build_routing(g);
    REQUIRE(r.chords.size() == 2);
    CHECK(r.chords[0] == 0);
    CHECK(r.chords[1] == 1);
    CHECK(r.loop_coeffs[0] == std::map<int, int>{{0, 1}});
    CHECK(r.loop_coeffs[1] == std::map<int, int>{{1, 1}});
    CHECK(r.loop_coeffs[2] == std::map<int, int>{{0, -1}, {1, -1}});
    CHECK(r.ext_coeffs[2] == std::map<std::string, int>{{"b", -1}});
    CHECK(routing_conserves(g, r));
}

TEST_CASE("routing: trees have no loop part; self-loops are chords") {
    FeynmanGraph path;
    path.vertices = {"a", "b", "c"};
    path.edges = {{"e1", "a", "b", "", GaussianRational(1)},
                  {"e2", "b", "c", "", GaussianRational(1)}};
    path.external = {{"a", 1}, {"b", 1}, {"c", 1}};
    Routing r = build_routing(path);
    CHECK(r.chords.empty());
    for (auto& lc : r.loop_coeffs) CHECK(lc.empty());
    CHECK(routing_conserves(path, r));
    // Leaf edge carries exactly -pc.
    CHECK(r.ext_coeffs[1] == std::map<std::string, int>{{"c", -1}});

    FeynmanGraph loopy;
    loopy.vertices = {"a", "b"};
    loopy.edges = {{"e1", "a", "b", "", GaussianRational(1)},
                   {"e2", "b", "b", "", GaussianRational(1)}};
    loopy.external = {{"a", 1}, {"b", 1}};
    Routing lr = build_routing(loopy);
    REQUIRE(lr.chords.size() == 1);
    CHECK(lr.chords[0] == 1);
    CHECK(lr.loop_coeffs[1] == std::map<int, int>{{0, 1}});
    CHECK(lr.ext_coeffs[1].empty());  // self-loop momentum decouples from conservation
    CHECK(routing_conserves(loopy, lr));
}

TEST_CASE("routing conservation on random corpus graphs") {
    auto corpus = connected_multigraphs(4, 5, 4, 1);
    CHECK(corpus.size() > 50);
    for (auto& g : corpus) {
        Routing r = build_routing(g);
        CHECK(static_cast<int>(r.chords.size()) == loop_number(g));
        CHECK(routing_conserves(g, r));
    }
}

TEST_CASE("symanzik: pinned examples") {
    CHECK(symanzik_first(bubble()).str() == "a1 + a2");
    CHECK(symanzik_first(sunrise()).str() == "a1*a2 + a1*a3 + a2*a3");
    FeynmanGraph single;
    single.vertices = {"a", "b"};
    single.edges = {{"e1", "a", "b", "", GaussianRational(1)}};
    CHECK(symanzik_first(single).str() == "1");
    // Self-loops multiply the rest by their alpha.
    FeynmanGraph loopy = bubble();
    loopy.edges.push_back({"e3", "a", "a", "", GaussianRational(1)});
    Polynomial expect = symanzik_first(bubble()) * Polynomial::variable(alpha_var(2));
    CHECK(symanzik_first(loopy) == expect);
}

TEST_CASE("symanzik equals the loop-momentum Gram determinant") {
    for (auto& g : connected_multigraphs(3, 4, 4, 0)) {
        Routing r = build_routing(g);
        SymbolicMatrix B = symanzik_gram(g, r);
        CHECK(B.determinant().as_polynomial() == symanzik_first(g));
    }
}

TEST_CASE("symanzik is positive on positive weights") {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (auto& g : connected_multigraphs(3, 4, 4, 0)) {
        Polynomial ug = symanzik_first(g);
        for (int rep = 0; rep < 5; ++rep) {
            std::map<VarId, std::complex<double>> pt;
            for (std::size_t e = 0; e < g.edges.size(); ++e) pt[alpha_var(e)] = u(rng);
            CHECK(ug.eval(pt).real() > 0);
        }
    }
}

TEST_CASE("power counting") {
    CHECK(omega_of(bubble()) == 0);  // 2 - (4/2)*1
    CHECK(omega_of(sunrise()) == -1);
    CHECK(omega_of(nested_bubble()) == 0);
    FeynmanGraph tadpole;
    tadpole.vertices = {"a"};
    tadpole.edges = {{"e1", "a", "a", "m", GaussianRational(1)}};
    tadpole.dimension = 2;
    CHECK(omega_of(tadpole) == 0);
    // Non-integer exponents enter through their real part.
    FeynmanGraph frac = bubble();
    frac.edges[0].lambda = GaussianRational::frac(3, 2);
    CHECK(omega_of(frac) == mpq_class(1, 2));
}

TEST_CASE("divergent subgraph enumeration") {
    CHECK(divergent_subsets(bubble()).empty());
    FeynmanGraph path;
    path.vertices = {"a", "b", "c"};
    path.edges = {{"e1", "a", "b", "", GaussianRational(1)},
                  {"e2", "b", "c", "", GaussianRational(1)}};
    CHECK(divergent_subsets(path).empty());

    auto subs = divergent_subsets(nested_bubble());
    REQUIRE(subs.size() == 1);
    CHECK(subs[0] == std::vector<int>{1, 2});

    // Sunrise in D=4: each edge pair is a divergent bubble.
    auto ss = divergent_subsets(sunrise());
    REQUIRE(ss.size() == 3);
    CHECK(ss[0] == std::vector<int>{0, 1});
    CHECK(ss[1] == std::vector<int>{0, 2});
    CHECK(ss[2] == std::vector<int>{1, 2});
}

TEST_CASE("contraction") {
    FeynmanGraph g = nested_bubble();
    FeynmanGraph c = contract(g, {1, 2});
    CHECK(c.vertices == std::vector<std::string>{"a", "c"});
    CHECK(c.edges.size() == 2);
    CHECK(c.phi("a") == 1);
    CHECK(c.phi("c") == 1);  // b's leg lands on the merged vertex
    FeynmanGraph outer;
    outer.vertices = {"a", "b"};
    outer.edges = {{"x1", "a", "b", "m", GaussianRational(1)},
                   {"x2", "a", "b", "m", GaussianRational(1)}};
    outer.external = {{"a", 1}, {"b", 1}};
    CHECK(is_isomorphic(c, outer));

    // Contracting a self-loop-producing subset.
    FeynmanGraph s = sunrise();
    FeynmanGraph sc = contract(s, {0});
    CHECK(sc.vertices.size() == 1);
    CHECK(sc.edges.size() == 2);
    CHECK(sc.edges[0].a == sc.edges[0].b);
    CHECK(loop_number(sc) == 2);
}

TEST_CASE("isomorphism respects structure") {
    FeynmanGraph a = sunrise();
    FeynmanGraph b = sunrise();
    std::swap(b.vertices[0], b.vertices[1]);  // relabeling only
    CHECK(is_isomorphic(a, b));
    FeynmanGraph c = sunrise();
    c.edges[0].mass = "mX";
    CHECK_FALSE(is_isomorphic(a, c));
    FeynmanGraph d = sunrise();
    d.external = {{"a", 2}, {"b", 0}};
    CHECK_FALSE(is_isomorphic(a, d));
    FeynmanGraph e = sunrise();
    e.edges[0].lambda = GaussianRational(2);
    CHECK_FALSE(is_isomorphic(a, e));

    FeynmanGraph parallel, selfloop;
    parallel.vertices = {"a", "b"};
    parallel.edges = {{"e1", "a", "b", "m", GaussianRational(1)},
                      {"e2", "a", "b", "m", GaussianRational(1)}};
    selfloop.vertices = {"a", "b"};
    selfloop.edges = {{"e1", "a", "b", "m", GaussianRational(1)},
                      {"e2", "a", "a", "m", GaussianRational(1)}};
    CHECK_FALSE(is_isomorphic(parallel, selfloop));
}

TEST_CASE("corpus enumeration") {
    auto small = connected_multigraphs(2, 2, 4, 0);
    CHECK(small.size() == 6);
    for (auto& g : small) CHECK(is_connected(g));
    // Corpus is duplicate-free by canonical key.
    std::set<std::string> keys;
    for (auto& g : small) CHECK(keys.insert(canonical_key(g)).second);

    auto one_pi_corpus = connected_multigraphs(4, 5, 4, 1);
    int n_1pi = 0;
    for (auto& g : one_pi_corpus)
        if (is_one_particle_irreducible(g) && loop_number(g) >= 1) ++n_1pi;
    CHECK(n_1pi > 20);
}
