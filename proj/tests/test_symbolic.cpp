#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <random>

#include "pinch/matrix.hpp"
#include "pinch/parse.hpp"

using namespace pinch;

namespace {

// Shared fixture variables, interned once in a fixed order so canonical
// serialization in this binary is stable.
VarId vt() { static VarId v = intern_var("t"); return v; }
VarId vz0() { static VarId v = intern_var("z0"); return v; }
VarId vz1() { static VarId v = intern_var("z1"); return v; }
VarId vx() { static VarId v = intern_var("x"); return v; }
VarId vy() { static VarId v = intern_var("y"); return v; }

Polynomial P(VarId v) { return Polynomial::variable(v); }

GaussianRational random_rat(std::mt19937_64& rng, bool complex_part = true) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    mpq_class re(num(rng), den(rng));
    re.canonicalize();
    mpq_class im(0);
    if (complex_part) {
        im = mpq_class(num(rng), den(rng));
        im.canonicalize();
    }
    return {re, im};
}

Polynomial random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars, int max_terms,
                       std::uint32_t max_deg, bool complex_coeffs = true) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<std::uint32_t> deg(0, max_deg);
    std::vector<Term> terms;
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        std::vector<std::pair<VarId, std::uint32_t>> f;
        for (VarId v : vars) {
            std::uint32_t e = deg(rng);
            if (e) f.emplace_back(v, e);
        }
        terms.push_back({Monomial(std::move(f)), random_rat(rng, complex_coeffs)});
    }
    return Polynomial::from_terms(std::move(terms));
}

// Oracle: cofactor-expansion determinant, written independently of the
// Bareiss implementation under test.
Polynomial cofactor_det(const std::vector<std::vector<Polynomial>>& m) {
    std::size_t n = m.size();
    if (n == 0) return Polynomial(GaussianRational::one());
    if (n == 1) return m[0][0];
    Polynomial acc;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Polynomial term = m[0][j] * cofactor_det(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace

TEST_CASE("gaussian rational arithmetic") {
    GaussianRational a = GaussianRational::frac(1, 2);
    GaussianRational b(mpq_class(3), mpq_class(-2));  // 3 - 2i
    CHECK((a + b).str() == "7/2-2*i");
    CHECK((a * b).str() == "3/2-i");
    CHECK((GaussianRational::i() * GaussianRational::i()).str() == "-1");
    CHECK(b * b.inverse() == GaussianRational::one());
    CHECK((-b).str() == "-3+2*i");
    CHECK(GaussianRational::zero().str() == "0");
    CHECK(GaussianRational::i().str() == "i");
    CHECK((-GaussianRational::i()).str() == "-i");
    CHECK(GaussianRational(mpq_class(0), mpq_class(2, 3)).str() == "2/3*i");
    CHECK(b.conj().str() == "3+2*i");
    CHECK(b.norm_sq() == 13);
    CHECK_THROWS_AS(GaussianRational::zero().inverse(), std::domain_error);
}

TEST_CASE("term order is graded lexicographic") {
    VarId t = vt(), z0 = vz0(), z1 = vz1();
    Monomial t2 = Monomial::var(t, 2);
    Monomial z0z1 = Monomial::var(z0) * Monomial::var(z1);
    Monomial z1sq = Monomial::var(z1, 2);
    // Same degree: earlier variable with higher exponent wins.
    CHECK(term_order_cmp(t2, z0z1) > 0);
    CHECK(term_order_cmp(z0z1, z1sq) > 0);
    // Higher total degree dominates regardless of variables.
    CHECK(term_order_cmp(Monomial::var(z1, 3), t2) > 0);
    CHECK(term_order_cmp(t2, t2) == 0);
}

TEST_CASE("polynomial arithmetic and canonical form") {
    VarId t = vt(), z0 = vz0(), z1 = vz1();
    Polynomial p = P(t).pow(2) * P(z0).pow(2) + P(z1).pow(2);
    CHECK(p.str() == "t^2*z0^2 + z1^2");
    CHECK(p.total_degree() == 4);
    CHECK(p.degree_in(z1) == 2);

    Polynomial q = (P(z0) + P(z1)) * (P(z0) - P(z1));
    CHECK(q == P(z0).pow(2) - P(z1).pow(2));
    CHECK((q - q).is_zero());

    Polynomial c = Polynomial(GaussianRational::frac(-1, 2)) * P(z0) + Polynomial(3);
    CHECK(c.str() == "-1/2*z0 + 3");
    Polynomial mixed = Polynomial(GaussianRational(mpq_class(1), mpq_class(2))) * P(z1);
    CHECK(mixed.str() == "(1+2*i)*z1");
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(12345);
    std::vector<VarId> vars{vt(), vz0(), vz1()};
    for (int rep = 0; rep < 40; ++rep) {
        Polynomial a = random_poly(rng, vars, 4, 2);
        Polynomial b = random_poly(rng, vars, 4, 2);
        Polynomial c = random_poly(rng, vars, 4, 2);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a * Polynomial(1) == a);
        CHECK((a * Polynomial()).is_zero());
    }
}

TEST_CASE("derivatives: hand values and finite-difference oracle") {
    VarId t = vt(), z0 = vz0(), z1 = vz1();
    Polynomial p = P(t).pow(2) * P(z0).pow(2) + P(z1).pow(2);
    CHECK(p.derivative(z0) == Polynomial(2) * P(t).pow(2) * P(z0));
    CHECK(p.derivative(t) == Polynomial(2) * P(t) * P(z0).pow(2));
    CHECK(p.derivative(z1) == Polynomial(2) * P(z1));
    CHECK(p.derivative(vx()).is_zero());

    std::mt19937_64 rng(777);
    std::vector<VarId> vars{t, z0, z1};
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        Polynomial a = random_poly(rng, vars, 5, 3);
        for (VarId v : vars) {
            Polynomial d = a.derivative(v);
            std::map<VarId, std::complex<double>> pt;
            for (VarId w : vars) pt[w] = {u(rng), u(rng)};
            const double h = 1e-6;
            auto hi = pt, lo = pt;
            hi[v] += h;
            lo[v] -= h;
            std::complex<double> fd = (a.eval(hi) - a.eval(lo)) / (2 * h);
            std::complex<double> ex = d.eval(pt);
            double scale = std::max(1.0, std::abs(ex));
            CHECK(std::abs(fd - ex) / scale < 1e-6);
        }
    }
}

TEST_CASE("exact division") {
    VarId x = vx(), y = vy();
    Polynomial a = (P(x) + P(y)).pow(2) * (P(x) - P(y));
    auto q = a.divide_exact(P(x) + P(y));
    REQUIRE(q.has_value());
    CHECK(*q == (P(x) + P(y)) * (P(x) - P(y)));
    CHECK_FALSE(a.divide_exact(P(x) + Polynomial(1)).has_value());
    CHECK_THROWS_AS(a.divide_exact(Polynomial()), std::invalid_argument);
    // Exact multiples always divide back out.
    std::mt19937_64 rng(999);
    std::vector<VarId> vars{x, y};
    for (int rep = 0; rep < 25; ++rep) {
        Polynomial f = random_poly(rng, vars, 3, 2);
        Polynomial g = random_poly(rng, vars, 3, 2);
        if (g.is_zero()) continue;
        auto r = (f * g).divide_exact(g);
        REQUIRE(r.has_value());
        CHECK(*r == f);
    }
}

TEST_CASE("substitution") {
    VarId x = vx(), y = vy();
    Polynomial p = P(x).pow(2) + P(y);
    CHECK(p.subst(x, Polynomial(2)) == Polynomial(4) + P(y));
    // Simultaneous swap.
    std::map<VarId, Polynomial> swap{{x, P(y)}, {y, P(x)}};
    CHECK(p.subst(swap) == P(y).pow(2) + P(x));
    // Chained vs composed.
    Polynomial q = p.subst(x, P(y) + Polynomial(1));
    CHECK(q == (P(y) + Polynomial(1)).pow(2) + P(y));
}

TEST_CASE("content") {
    VarId x = vx();
    Polynomial p = Polynomial(GaussianRational::frac(4, 3)) * P(x) + Polynomial(GaussianRational::frac(2, 9));
    CHECK(p.content() == mpq_class(2, 9));
    CHECK(Polynomial().content() == 1);
}

TEST_CASE("evaluation, exact and double") {
    VarId t = vt(), z0 = vz0(), z1 = vz1();
    Polynomial p = P(t).pow(2) * P(z0).pow(2) + P(z1).pow(2);
    std::map<VarId, GaussianRational> pt{{t, GaussianRational::frac(1, 2)},
                                         {z0, GaussianRational(2)},
                                         {z1, GaussianRational::i()}};
    CHECK(p.eval_exact(pt) == GaussianRational::zero());
    std::map<VarId, std::complex<double>> dpt{{t, {0.5, 0}}, {z0, {2, 0}}, {z1, {0, 1}}};
    CHECK(std::abs(p.eval(dpt)) < 1e-15);
    CHECK_THROWS_AS(p.eval({{t, {1, 0}}}), std::invalid_argument);
}

TEST_CASE("compiled evaluation agrees with symbolic") {
    std::mt19937_64 rng(31337);
    std::vector<VarId> vars{vt(), vz0(), vz1()};
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        Polynomial a = random_poly(rng, vars, 6, 3);
        std::map<VarId, std::uint32_t> slots{{vars[0], 0}, {vars[1], 1}};
        GaussianRational fixedval = random_rat(rng);
        CompiledPoly cp = compile_poly(a, slots, {{vars[2], fixedval}});
        std::vector<std::complex<double>> x{{u(rng), u(rng)}, {u(rng), u(rng)}};
        std::map<VarId, std::complex<double>> pt{
            {vars[0], x[0]}, {vars[1], x[1]}, {vars[2], fixedval.to_complex()}};
        CHECK(std::abs(cp.eval(x) - a.eval(pt)) < 1e-9);
    }
}

TEST_CASE("parser round-trips canonical serialization") {
    std::map<std::string, VarId> vars{{"t", vt()}, {"z0", vz0()}, {"z1", vz1()},
                                      {"x", vx()}, {"y", vy()}};
    std::mt19937_64 rng(2024);
    std::vector<VarId> ids{vt(), vz0(), vz1(), vx(), vy()};
    for (int rep = 0; rep < 30; ++rep) {
        Polynomial a = random_poly(rng, ids, 6, 3);
        CHECK(parse_polynomial(a.str(), vars) == a);
    }
    CHECK(parse_polynomial("t^2*z0^2 + z1^2", vars).str() == "t^2*z0^2 + z1^2");
    CHECK(parse_polynomial("(x+y)^2", vars) == (P(vx()) + P(vy())).pow(2));
    CHECK(parse_polynomial("x/2", vars) == P(vx()).scaled(GaussianRational::frac(1, 2)));
    CHECK(parse_complex_literal("3i").str() == "3*i");
    CHECK(parse_complex_literal("1+2i").str() == "1+2*i");
    CHECK(parse_complex_literal("-1/2").str() == "-1/2");
    CHECK(parse_complex_literal("2.5e-1").str() == "1/4");
    CHECK(parse_complex_literal("0.1") == GaussianRational::frac(1, 10));
    CHECK_THROWS_AS(parse_polynomial("nope", vars), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial("x+", vars), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial("x 2y ^", vars), std::invalid_argument);
    // Proper quotients are rational functions, not polynomials.
    CHECK_THROWS_AS(parse_polynomial("1/x", vars), std::invalid_argument);
    RationalFunction rf = parse_rational_function("(x^2-y^2)/(x+y)", vars);
    CHECK(rf.equals(RationalFunction(P(vx()) - P(vy()))));
}

TEST_CASE("rational function arithmetic") {
    VarId x = vx(), y = vy();
    RationalFunction a(P(x), P(y));
    RationalFunction b(P(y), P(x));
    CHECK((a * b).equals(RationalFunction(1)));
    CHECK((a + b).equals(RationalFunction(P(x).pow(2) + P(y).pow(2), P(x) * P(y))));
    CHECK((a - a).is_zero());
    RationalFunction d = a.derivative(x);
    CHECK(d.equals(RationalFunction(Polynomial(1), P(y))));
    RationalFunction dy = a.derivative(y);
    CHECK(dy.equals(RationalFunction(-P(x), P(y).pow(2))));
    CHECK_THROWS_AS(a / RationalFunction(0), std::domain_error);
    // Denominator is normalized monic.
    RationalFunction c(P(x), P(y).scaled(GaussianRational(2)));
    CHECK(c.den() == P(y));
    CHECK(c.num() == P(x).scaled(GaussianRational::frac(1, 2)));
}

TEST_CASE("determinants: pinned examples") {
    VarId t = vt();
    SymbolicMatrix m(2, 2);
    m.at(0, 0) = RationalFunction(P(t).pow(2));
    m.at(1, 1) = RationalFunction(1);
    CHECK(m.determinant().as_polynomial() == P(t).pow(2));

    SymbolicMatrix empty(0, 0);
    CHECK(empty.determinant().equals(RationalFunction(1)));

    // Bordered 5x5 with identity block: Schur complement gives m2^2.
    std::vector<VarId> p;
    for (int mu = 0; mu < 4; ++mu) p.push_back(intern_var("p" + std::to_string(mu)));
    VarId m2 = intern_var("m2");
    Polynomial psq;
    for (VarId c : p) psq += P(c).pow(2);
    SymbolicMatrix M(5, 5);
    M.at(0, 0) = RationalFunction(psq + P(m2).pow(2));
    for (int mu = 0; mu < 4; ++mu) {
        M.at(0, mu + 1) = RationalFunction(-P(p[mu]));
        M.at(mu + 1, 0) = RationalFunction(-P(p[mu]));
        M.at(mu + 1, mu + 1) = RationalFunction(1);
    }
    // Oracle: by the Schur identity det = (p^2+m2^2) - p^T I p = m2^2.
    CHECK(M.determinant().as_polynomial() == P(m2).pow(2));
}

TEST_CASE("bareiss agrees with cofactor oracle") {
    std::mt19937_64 rng(4242);
    std::vector<VarId> vars{vx(), vy()};
    for (int n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 6; ++rep) {
            std::vector<std::vector<Polynomial>> grid(n, std::vector<Polynomial>(n));
            SymbolicMatrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    grid[i][j] = random_poly(rng, vars, 2, 2);
                    m.at(i, j) = RationalFunction(grid[i][j]);
                }
            CHECK(bareiss_determinant(grid) == cofactor_det(grid));
            CHECK(m.determinant().as_polynomial() == cofactor_det(grid));
        }
    }
}

TEST_CASE("determinant of rational-function matrices") {
    VarId x = vx(), y = vy();
    SymbolicMatrix m(2, 2);
    m.at(0, 0) = RationalFunction(Polynomial(1), P(x));
    m.at(0, 1) = RationalFunction(P(y));
    m.at(1, 0) = RationalFunction(P(y));
    m.at(1, 1) = RationalFunction(Polynomial(1), P(x));
    RationalFunction det = m.determinant();
    RationalFunction expect =
        RationalFunction(Polynomial(1), P(x).pow(2)) - RationalFunction(P(y).pow(2));
    CHECK(det.equals(expect));
}

TEST_CASE("adjugate: examples and identity") {
    CHECK(SymbolicMatrix::identity(3).adjugate().equals(SymbolicMatrix::identity(3)));

    VarId x = vx(), y = vy();
    SymbolicMatrix m(2, 2);
    m.at(0, 0) = RationalFunction(P(x));
    m.at(0, 1) = RationalFunction(Polynomial(1));
    m.at(1, 0) = RationalFunction(Polynomial(2));
    m.at(1, 1) = RationalFunction(P(y));
    SymbolicMatrix adj = m.adjugate();
    CHECK(adj.at(0, 0).equals(RationalFunction(P(y))));
    CHECK(adj.at(0, 1).equals(RationalFunction(Polynomial(-1))));
    CHECK(adj.at(1, 0).equals(RationalFunction(Polynomial(-2))));
    CHECK(adj.at(1, 1).equals(RationalFunction(P(x))));

    std::mt19937_64 rng(555);
    std::vector<VarId> vars{x, y};
    for (int rep = 0; rep < 5; ++rep) {
        SymbolicMatrix a(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.at(i, j) = RationalFunction(random_poly(rng, vars, 2, 1));
        SymbolicMatrix lhs = a * a.adjugate();
        RationalFunction det = a.determinant();
        CHECK(lhs.equals(SymbolicMatrix::identity(3).scaled(det)));
        // Polynomial entries stay polynomial.
        CHECK(a.adjugate().is_polynomial());
    }
}

TEST_CASE("exact matrix: rank, nullspace, determinant") {
    QMatrix m(3, 3);
    long vals[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = GaussianRational(vals[i][j]);
    CHECK(m.determinant() == GaussianRational::zero());
    CHECK(m.rank() == 2);
    auto ns = m.nullspace();
    REQUIRE(ns.size() == 1);
    // Verify the kernel vector annihilates the matrix.
    for (int i = 0; i < 3; ++i) {
        GaussianRational acc;
        for (int j = 0; j < 3; ++j) acc += m.at(i, j) * ns[0][j];
        CHECK(acc == GaussianRational::zero());
    }
    CHECK(QMatrix::identity(4).determinant() == GaussianRational::one());
}

TEST_CASE("exact definiteness tests with eigenvalue cross-check") {
    // Leading-minor trap: [[0,0],[0,-1]] has all leading minors 0 yet is not PSD.
    QMatrix trap(2, 2);
    trap.at(1, 1) = GaussianRational(-1);
    CHECK_FALSE(trap.is_positive_semidefinite());
    QMatrix psd(2, 2);
    psd.at(0, 0) = psd.at(0, 1) = psd.at(1, 0) = psd.at(1, 1) = GaussianRational(1);
    CHECK(psd.is_positive_semidefinite());
    CHECK_FALSE(psd.is_positive_definite());

    std::mt19937_64 rng(606);
    std::uniform_int_distribution<long> entry(-4, 4);
    for (int rep = 0; rep < 40; ++rep) {
        int n = 2 + static_cast<int>(rng() % 3);
        QMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                a.at(i, j) = GaussianRational(entry(rng));
                a.at(j, i) = a.at(i, j);
            }
        Eigen::MatrixXd ad(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ad(i, j) = a.at(i, j).re().get_d();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ad);
        double lmin = es.eigenvalues().minCoeff();
        if (std::abs(lmin) < 1e-9) continue;  // skip numerically marginal draws
        CHECK(a.is_positive_definite() == (lmin > 0));
        CHECK(a.is_positive_semidefinite() == (lmin > 0));
    }
    QMatrix complex_entry(1, 1);
    complex_entry.at(0, 0) = GaussianRational::i();
    CHECK_THROWS_AS(complex_entry.is_positive_definite(), std::invalid_argument);
}
