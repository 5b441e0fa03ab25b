#include "pinch/regularize.hpp"

#include <algorithm>
#include <stdexcept>

namespace pinch {

namespace {

using PolyMat = std::vector<std::vector<Polynomial>>;

Polynomial quad_value(const PolyMat& m, const std::vector<int>& v) {
    std::size_t n = m.size();
    Polynomial q;
    for (std::size_t i = 0; i < n; ++i) {
        if (!v[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (v[j]) q += m[i][j].scaled(GaussianRational(v[i] * v[j]));
    }
    return q;
}

bool positive_at(const Polynomial& q, const std::map<VarId, GaussianRational>& pt) {
    GaussianRational val = q.eval_exact(pt);
    return val.is_real() && val.re() > 0;
}

// Keep exceptional-set generators small and canonical: primitive with a
// positive-leading real part where possible.
Polynomial normalize_gen(const Polynomial& p) {
    Polynomial q = p.scaled(GaussianRational(mpq_class(1) / p.content()));
    GaussianRational lead = q.leading_term().coeff;
    if (lead.re() < 0 || (lead.re() == 0 && lead.im() < 0)) q = -q;
    return q;
}

struct Recursion {
    const std::map<VarId, GaussianRational>* prefer;
    std::vector<Polynomial> exceptional;

    void record(const Polynomial& gen) {
        if (gen.is_constant()) return;
        Polynomial g = normalize_gen(gen);
        for (auto& e : exceptional)
            if (e == g) return;
        exceptional.push_back(g);
    }

    // Returns T with T^t M T diagonal.  `prev` is the pivot of the enclosing
    // level; Sylvester's identity makes the Schur update divisible by it, which
    // keeps entry degrees minor-bounded (Bareiss) instead of doubling per level.
    PolyMat run(const PolyMat& m, const Polynomial& prev = Polynomial(1)) {
        std::size_t n = m.size();
        PolyMat t(n, std::vector<Polynomial>(n));
        if (n == 0) return t;

        std::vector<int> v1 = find_pivot_vector(m);
        if (v1.empty()) { // M identically zero: nothing to do
            for (std::size_t i = 0; i < n; ++i) t[i][i] = Polynomial(1);
            return t;
        }
        Polynomial q1 = quad_value(m, v1);
        record(q1);

        // a = M v1; the pivot row j*.  For a unit vector v1 = e_i the natural
        // pivot is i itself: the Schur update below is then exactly divisible
        // by a_j* and degrees stay Bareiss-bounded.
        std::vector<Polynomial> a(n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                if (v1[j]) a[k] += m[k][j].scaled(GaussianRational(v1[j]));
        std::size_t js = n;
        int weight = 0;
        std::size_t unit_at = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (v1[i]) {
                ++weight;
                unit_at = i;
            }
        if (weight == 1) {
            js = unit_at;
        } else {
            for (std::size_t j = 0; j < n; ++j)
                if (!a[j].is_zero()) {
                    js = j;
                    break;
                }
        }
        record(a[js]);

        // Basis of the M-orthogonal complement of v1: b_k = a_j* e_k - a_k e_j*.
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < n; ++k)
            if (k != js) rest.push_back(k);
        std::size_t r = rest.size();

        PolyMat sub(r, std::vector<Polynomial>(r));
        for (std::size_t x = 0; x < r; ++x)
            for (std::size_t y = x; y < r; ++y) {
                std::size_t k = rest[x], l = rest[y];
                Polynomial e = a[js] * a[js] * m[k][l] - a[js] * a[l] * m[k][js] -
                               a[k] * a[js] * m[js][l] + a[k] * a[l] * m[js][js];
                sub[x][y] = e;
                if (y != x) sub[y][x] = e;
            }
        auto try_divide_all = [&](const Polynomial& divisor) {
            if (divisor.is_constant()) return false;
            PolyMat divided = sub;
            for (std::size_t x = 0; x < r; ++x)
                for (std::size_t y = 0; y < r; ++y) {
                    auto d = sub[x][y].divide_exact(divisor);
                    if (!d) return false;
                    divided[x][y] = *d;
                }
            sub = std::move(divided);
            return true;
        };
        for (int pass = 0; pass < 4; ++pass)
            if (!try_divide_all(a[js]) && !try_divide_all(prev)) break;

        PolyMat tsub = run(sub, a[js]);

        // First column v1, remaining columns are the b-embedding of tsub.
        for (std::size_t i = 0; i < n; ++i) t[i][0] = Polynomial(v1[i]);
        for (std::size_t c = 0; c < r; ++c)
            for (std::size_t x = 0; x < r; ++x) {
                const Polynomial& w = tsub[x][c];
                if (w.is_zero()) continue;
                std::size_t k = rest[x];
                t[k][c + 1] += a[js] * w;
                t[js][c + 1] -= a[k] * w;
            }
        return t;
    }

    // A 0/1 vector v with v^t M v not identically zero, or empty if M == 0.
    // Tiers: unit vectors, then pair sums, then triple sums; within a tier the
    // prefer-point steers toward positive values.
    std::vector<int> find_pivot_vector(const PolyMat& m) {
        std::size_t n = m.size();
        for (int tier = 1; tier <= 3; ++tier) {
            std::vector<std::vector<int>> nonzero;
            auto consider = [&](std::vector<int> v) {
                if (!quad_value(m, v).is_zero()) nonzero.push_back(std::move(v));
            };
            if (tier == 1) {
                for (std::size_t i = 0; i < n; ++i) {
                    std::vector<int> v(n, 0);
                    v[i] = 1;
                    consider(std::move(v));
                }
            } else if (tier == 2) {
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j) {
                        std::vector<int> v(n, 0);
                        v[i] = v[j] = 1;
                        consider(std::move(v));
                    }
            } else {
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        for (std::size_t l = j + 1; l < n; ++l) {
                            std::vector<int> v(n, 0);
                            v[i] = v[j] = v[l] = 1;
                            consider(std::move(v));
                        }
            }
            if (nonzero.empty()) continue;
            if (prefer)
                for (auto& v : nonzero)
                    if (positive_at(quad_value(m, v), *prefer)) return v;
            return nonzero.front();
        }
        return {};
    }
};

PolyMat to_polymat(const SymbolicMatrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("diagonalize: square matrix required");
    PolyMat m(M.rows(), std::vector<Polynomial>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) m[i][j] = M.poly_at(i, j);
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = i + 1; j < M.cols(); ++j)
            if (m[i][j] != m[j][i])
                throw std::invalid_argument("diagonalize: matrix is not symmetric");
    return m;
}

Diagonalization diagonalize_impl(const SymbolicMatrix& M,
                                 const std::map<VarId, GaussianRational>* prefer) {
    PolyMat m = to_polymat(M);
    Recursion rec;
    rec.prefer = prefer;
    PolyMat t = rec.run(m);

    std::size_t n = m.size();
    Diagonalization out;
    out.T = SymbolicMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.T.at(i, j) = RationalFunction(t[i][j]);
    out.lambda.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
        Polynomial lam;
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i][c].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!t[j][c].is_zero()) lam += t[i][c] * m[i][j] * t[j][c];
        }
        out.lambda[c] = std::move(lam);
    }
    out.exceptional = std::move(rec.exceptional);
    return out;
}

} // namespace

std::size_t Diagonalization::rank() const {
    std::size_t k = 0;
    for (auto& l : lambda)
        if (!l.is_zero()) ++k;
    return k;
}

Diagonalization diagonalize(const SymbolicMatrix& M) { return diagonalize_impl(M, nullptr); }

Diagonalization diagonalize(const SymbolicMatrix& M,
                            const std::map<VarId, GaussianRational>& prefer) {
    return diagonalize_impl(M, &prefer);
}

Regulator build_regulator(const SymbolicMatrix& M, const Diagonalization& d) {
    std::size_t n = M.rows();
    if (d.lambda.size() != n) throw std::invalid_argument("regulator: mismatched diagonalization");

    // Stable permutation putting the generically nonzero directions first;
    // the regulator acts on the complementary (degenerate) directions.
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < n; ++c)
        if (!d.lambda[c].is_zero()) order.push_back(c);
    std::size_t k = order.size();
    for (std::size_t c = 0; c < n; ++c)
        if (d.lambda[c].is_zero()) order.push_back(c);

    Regulator out;
    out.rank = k;
    if (k == n) {
        out.A = SymbolicMatrix(n, n); // zero: nothing to regulate
        return out;
    }

    // The recursion's basis columns accumulate powers of the pivots it
    // recorded; strip those common factors before forming the adjugate.
    // Column scaling keeps every stated property of the regulator and keeps
    // the minor degrees small.
    std::vector<std::vector<Polynomial>> cols(n, std::vector<Polynomial>(n));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) cols[c][i] = d.T.poly_at(i, order[c]);
    for (auto& col : cols) {
        bool again = true;
        while (again) {
            again = false;
            for (const Polynomial& g : d.exceptional) {
                std::vector<Polynomial> q(n);
                bool ok = true;
                for (std::size_t i = 0; i < n && ok; ++i) {
                    auto dv = col[i].divide_exact(g);
                    if (dv)
                        q[i] = *dv;
                    else
                        ok = false;
                }
                if (ok) {
                    col = std::move(q);
                    again = true;
                }
            }
        }
    }
    SymbolicMatrix Tp(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) Tp.at(i, c) = RationalFunction(cols[c][i]);
    SymbolicMatrix adj = Tp.adjugate();

    // A = adj^t J adj with J = diag(0_k, 1_{n-k}): manifestly of the form
    // S^t S, hence PSD at every real parameter point.
    SymbolicMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            RationalFunction s;
            for (std::size_t r = k; r < n; ++r) s += adj.at(r, i) * adj.at(r, j);
            A.at(i, j) = s;
            if (j != i) A.at(j, i) = A.at(i, j);
        }
    out.A = std::move(A);
    return out;
}

bool pd_for_all_positive_eps(const QMatrix& M0, const QMatrix& A0) {
    if (!M0.is_positive_semidefinite() || !A0.is_positive_semidefinite()) return false;
    std::size_t n = M0.rows();
    QMatrix stacked(2 * n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            stacked.at(i, j) = M0.at(i, j);
            stacked.at(n + i, j) = A0.at(i, j);
        }
    return stacked.rank() == n;
}

FamilyRegularization regularize_forms(
    const std::vector<QuadraticFamily>& forms,
    const std::optional<std::map<VarId, GaussianRational>>& prefer) {
    FamilyRegularization out;
    out.u = intern_var("u");
    for (auto& f : forms) {
        QuadraticFamily h = f.homogenized(out.u);
        Diagonalization d = prefer ? diagonalize(h.M, *prefer) : diagonalize(h.M);
        out.reg.push_back(build_regulator(h.M, d));
        out.diag.push_back(std::move(d));
        out.homogenized.push_back(std::move(h));
    }
    return out;
}

} // namespace pinch
