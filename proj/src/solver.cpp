#include "pinch/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

namespace pinch {

namespace {

using Cx = std::complex<double>;

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix(a ^ splitmix(b)); }
std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return splitmix(mix(a, b) ^ splitmix(c));
}
std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return splitmix(mix(a, b, c) ^ splitmix(d));
}

// Deterministic draws: own Box-Muller on mt19937_64 so results do not depend
// on the standard library's distribution implementations.
struct Draw {
    std::mt19937_64 g;
    bool cached = false;
    double cache = 0;

    explicit Draw(std::uint64_t seed) : g(seed) {}

    double uniform01() {  // (0, 1]
        return static_cast<double>((g() >> 11) + 1) * (1.0 / 9007199254740992.0);
    }
    double normal() {
        if (cached) {
            cached = false;
            return cache;
        }
        double r = std::sqrt(-2.0 * std::log(uniform01()));
        double th = 6.283185307179586476925287 * uniform01();
        cache = r * std::sin(th);
        cached = true;
        return r * std::cos(th);
    }
    Cx cnormal() { return {normal() * 0.7071067811865476, normal() * 0.7071067811865476}; }

    // Small random element of the coefficient field, denominator 16.
    GaussianRational grational() {
        auto part = [&]() {
            mpq_class q(static_cast<long>(g() % 97) - 48, 16);
            q.canonicalize();
            return q;
        };
        mpq_class re = part(), im = part();
        return GaussianRational(re, im);
    }
};

double residual_of(const std::vector<CompiledPoly>& rows, const std::vector<Cx>& x) {
    double r = 0;
    for (auto& p : rows) r = std::max(r, std::abs(p.eval(x)));
    return r;
}

struct BranchSystem {
    std::vector<int> support;
    std::size_t n_alpha = 0;            // leading unknowns are the on-support multipliers
    std::vector<VarId> unknowns;
    std::vector<CompiledPoly> full;     // unprojected verification rows
    std::vector<CompiledPoly> rows;     // square system
    std::vector<std::vector<CompiledPoly>> jac;
};

BranchSystem make_branch_system(const LandauSystem& sys, const std::vector<int>& support,
                                const std::map<VarId, GaussianRational>& params,
                                std::uint64_t draw_seed) {
    BranchSystem b;
    b.support = support;
    b.n_alpha = support.size();

    std::vector<bool> on(sys.n_forms(), false);
    for (int i : support) on[i] = true;
    std::map<VarId, GaussianRational> fixed = params;
    for (std::size_t i = 0; i < sys.n_forms(); ++i)
        if (!on[i]) fixed[sys.alphas[i]] = GaussianRational(0);

    for (int i : support) b.unknowns.push_back(sys.alphas[i]);
    for (VarId v : sys.coords) b.unknowns.push_back(v);
    std::map<VarId, std::uint32_t> slots;
    for (std::size_t u = 0; u < b.unknowns.size(); ++u)
        slots[b.unknowns[u]] = static_cast<std::uint32_t>(u);

    std::vector<const Polynomial*> active;
    for (int i : support) active.push_back(&sys.vanishing[i]);
    for (auto& gr : sys.gradient) active.push_back(&gr);
    for (auto* p : active) b.full.push_back(compile_poly(*p, slots, fixed));

    int nn = (sys.norm_alphas ? 1 : 0) + (sys.norm_coords ? 1 : 0);
    int target = static_cast<int>(b.unknowns.size()) - nn;
    if (target < 0) target = 0;

    Draw rng(draw_seed);
    std::vector<Polynomial> square;
    for (int r = 0; r < target; ++r) {
        Polynomial row;
        bool any = false;
        for (auto* p : active) {
            GaussianRational c = rng.grational();
            if (c.is_zero()) continue;
            row += p->scaled(c);
            any = true;
        }
        if (!any && !active.empty()) row = *active[0];
        square.push_back(std::move(row));
    }
    auto nonzero = [&]() {
        GaussianRational c = rng.grational();
        while (c.is_zero()) c = rng.grational();
        return c;
    };
    auto norm_row = [&](std::size_t lo, std::size_t hi) {
        Polynomial row(GaussianRational(-1));
        for (std::size_t u = lo; u < hi; ++u)
            row += Polynomial::variable(b.unknowns[u]).scaled(nonzero());
        return row;
    };
    if (sys.norm_alphas) square.push_back(norm_row(0, b.n_alpha));
    if (sys.norm_coords) square.push_back(norm_row(b.n_alpha, b.unknowns.size()));

    for (auto& p : square) {
        b.rows.push_back(compile_poly(p, slots, fixed));
        std::vector<CompiledPoly> drow;
        for (VarId u : b.unknowns) drow.push_back(compile_poly(p.derivative(u), slots, fixed));
        b.jac.push_back(std::move(drow));
    }
    return b;
}

struct NewtonOutcome {
    bool converged = false;
    std::vector<Cx> x;
    double res = 0;
    int iters = 0;
    std::vector<double> trace;
};

NewtonOutcome newton(const BranchSystem& b, std::vector<Cx> x, const SolverOptions& opt) {
    const std::size_t U = b.unknowns.size(), R = b.rows.size();
    NewtonOutcome out;
    double res = residual_of(b.rows, x);
    out.trace.push_back(res);
    for (int iter = 0; iter < opt.max_iters; ++iter) {
        if (res < opt.newton_tol) {
            out.converged = true;
            break;
        }
        Eigen::MatrixXcd J(R, U);
        Eigen::VectorXcd F(R);
        for (std::size_t r = 0; r < R; ++r) {
            F(r) = b.rows[r].eval(x);
            for (std::size_t c = 0; c < U; ++c) J(r, c) = b.jac[r][c].eval(x);
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(J);
        Eigen::VectorXcd step = cod.solve(-F);
        if (!step.allFinite()) break;
        double lam = 1.0;
        bool accepted = false;
        for (int h = 0; h <= 30; ++h, lam *= 0.5) {
            std::vector<Cx> xt(U);
            for (std::size_t c = 0; c < U; ++c) xt[c] = x[c] + lam * step(c);
            double rt = residual_of(b.rows, xt);
            if (rt < res) {
                x = std::move(xt);
                res = rt;
                accepted = true;
                break;
            }
        }
        out.iters = iter + 1;
        out.trace.push_back(res);
        if (!accepted) break;
    }
    if (res < opt.newton_tol) out.converged = true;
    out.x = std::move(x);
    out.res = res;
    return out;
}

std::optional<Witness> verify_witness(const LandauSystem& sys, const BranchSystem& b,
                                      const NewtonOutcome& n, const SolverOptions& opt) {
    double v = residual_of(b.full, n.x);
    if (!(v < opt.verify_tol)) return std::nullopt;
    Witness w;
    w.branch = b.support;
    w.alphas.assign(sys.alphas.size(), Cx(0));
    for (std::size_t k = 0; k < b.n_alpha; ++k) w.alphas[b.support[k]] = n.x[k];
    w.coords.assign(n.x.begin() + b.n_alpha, n.x.end());
    w.residual = v;
    w.iterations = n.iters;
    w.trace = n.trace;
    return w;
}

bool near(const Witness& a, const Witness& b, double radius) {
    if (a.alphas.size() != b.alphas.size() || a.coords.size() != b.coords.size()) return false;
    double d = 0;
    for (std::size_t i = 0; i < a.alphas.size(); ++i)
        d = std::max(d, std::abs(a.alphas[i] - b.alphas[i]));
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        d = std::max(d, std::abs(a.coords[i] - b.coords[i]));
    return d < radius;
}

std::uint64_t mask_of(const std::vector<int>& support) {
    std::uint64_t m = 0;
    for (int i : support) m |= std::uint64_t(1) << i;
    return m;
}

} // namespace

MembershipReport membership_test(const LandauSystem& sys,
                                 const std::map<VarId, GaussianRational>& params,
                                 const SolverOptions& opt) {
    for (VarId v : sys.params)
        if (!params.count(v))
            throw std::invalid_argument("missing value for parameter " + var_name(v));

    MembershipReport report;
    for (auto& support : enumerate_branches(sys.n_forms())) {
        ++report.branches_tried;
        std::uint64_t mask = mask_of(support);
        bool found_here = false;
        for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
            BranchSystem b =
                make_branch_system(sys, support, params, mix(opt.seed, 2 * mask + 1, attempt));
            for (int start = 0; start < opt.starts; ++start) {
                Draw init(mix(opt.seed, mask, attempt, start));
                std::vector<Cx> x0;
                for (std::size_t u = 0; u < b.unknowns.size(); ++u) x0.push_back(init.cnormal());
                NewtonOutcome n = newton(b, std::move(x0), opt);
                if (!n.converged) continue;
                auto w = verify_witness(sys, b, n, opt);
                if (!w) continue;
                bool dup = false;
                for (auto& seen : report.witnesses)
                    if (near(seen, *w, opt.cluster_radius)) {
                        dup = true;
                        break;
                    }
                if (!dup) report.witnesses.push_back(std::move(*w));
                report.member = true;
                found_here = true;
                if (!opt.collect_all) return report;
            }
            if (found_here) break;  // keep the first working draw for this branch
        }
    }
    return report;
}

std::vector<ScanPoint> scan_parameter(const LandauSystem& sys,
                                      const std::map<VarId, GaussianRational>& base,
                                      VarId var, const std::vector<GaussianRational>& values,
                                      const SolverOptions& opt) {
    std::vector<ScanPoint> out;
    for (auto& v : values) {
        std::map<VarId, GaussianRational> pt = base;
        pt[var] = v;
        MembershipReport r = membership_test(sys, pt, opt);
        ScanPoint sp;
        sp.value = v;
        sp.member = r.member;
        sp.n_witnesses = static_cast<int>(r.witnesses.size());
        sp.best_residual = 0;
        if (!r.witnesses.empty()) {
            sp.best_residual = r.witnesses[0].residual;
            for (auto& w : r.witnesses) sp.best_residual = std::min(sp.best_residual, w.residual);
        }
        out.push_back(std::move(sp));
    }
    return out;
}

bool params_physical(const KinematicLayout& layout,
                     const std::map<VarId, GaussianRational>& params) {
    auto get = [&](VarId v) -> const GaussianRational& {
        auto it = params.find(v);
        if (it == params.end())
            throw std::invalid_argument("missing value for parameter " + var_name(v));
        return it->second;
    };
    for (VarId m : layout.masses)
        if (!get(m).is_real()) return false;
    int d = layout.dimension;
    for (std::size_t blk = 0; blk + d <= layout.momenta.size(); blk += d) {
        const GaussianRational& e = get(layout.momenta[blk]);
        if (e.re() != 0) return false;  // energy purely imaginary
        mpq_class sq = -e.im() * e.im();
        for (int mu = 1; mu < d; ++mu) {
            const GaussianRational& s = get(layout.momenta[blk + mu]);
            if (s.im() != 0) return false;  // space real
            sq += s.re() * s.re();
        }
        if (sq > 0) return false;
    }
    return true;
}

namespace {

// Split into real and imaginary coefficient parts.
std::pair<Polynomial, Polynomial> split_poly(const Polynomial& p) {
    std::vector<Term> re, im;
    for (const Term& t : p.terms()) {
        if (t.coeff.re() != 0) re.push_back({t.mono, GaussianRational(t.coeff.re())});
        if (t.coeff.im() != 0) im.push_back({t.mono, GaussianRational(t.coeff.im())});
    }
    return {Polynomial::from_terms(std::move(re)), Polynomial::from_terms(std::move(im))};
}

struct RealSystem {
    std::vector<VarId> unknowns;  // on-support multipliers, then coordinates
    std::size_t n_alpha = 0;
    std::vector<CompiledPoly> check;  // split polynomial rows (no norms)
    std::vector<CompiledPoly> rows;   // check + norm rows
    std::vector<std::vector<CompiledPoly>> jac;
};

struct RealNewtonOutcome {
    bool converged = false;
    Eigen::VectorXd x;
    double res = 0;
};

RealNewtonOutcome newton_real(const RealSystem& s, Eigen::VectorXd x, const SolverOptions& opt) {
    const std::size_t U = s.unknowns.size(), R = s.rows.size();
    auto res_at = [&](const Eigen::VectorXd& v) {
        std::vector<Cx> xc(U);
        for (std::size_t u = 0; u < U; ++u) xc[u] = v(u);
        return residual_of(s.rows, xc);
    };
    double res = res_at(x);
    RealNewtonOutcome out;
    for (int iter = 0; iter < opt.max_iters; ++iter) {
        if (res < opt.newton_tol) break;
        std::vector<Cx> xc(U);
        for (std::size_t u = 0; u < U; ++u) xc[u] = x(u);
        Eigen::MatrixXd J(R, U);
        Eigen::VectorXd F(R);
        for (std::size_t r = 0; r < R; ++r) {
            F(r) = s.rows[r].eval(xc).real();
            for (std::size_t c = 0; c < U; ++c) J(r, c) = s.jac[r][c].eval(xc).real();
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
        Eigen::VectorXd step = cod.solve(-F);
        if (!step.allFinite()) break;
        double lam = 1.0;
        bool accepted = false;
        for (int h = 0; h <= 30; ++h, lam *= 0.5) {
            Eigen::VectorXd xt = x + lam * step;
            double rt = res_at(xt);
            if (rt < res) {
                x = xt;
                res = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    out.converged = res < opt.newton_tol;
    out.x = std::move(x);
    out.res = res;
    return out;
}

} // namespace

PhysicalCheck is_physical(const LandauSystem& sys, const KinematicLayout& layout,
                          const std::map<VarId, GaussianRational>& params, const Witness& w,
                          const SolverOptions& opt) {
    PhysicalCheck out;
    if (!params_physical(layout, params)) {
        out.reason = "parameters are not on the physical slice";
        return out;
    }

    // Multipliers must be real and nonnegative after dividing by one overall
    // complex scale.
    const double screen_tol = 1e-5;
    std::size_t istar = 0;
    double amax = 0;
    for (std::size_t i = 0; i < w.alphas.size(); ++i)
        if (std::abs(w.alphas[i]) > amax) {
            amax = std::abs(w.alphas[i]);
            istar = i;
        }
    if (amax < 1e-8) {
        out.reason = "multipliers vanish";
        return out;
    }
    std::vector<double> beta(w.alphas.size());
    double bsum = 0;
    for (std::size_t i = 0; i < w.alphas.size(); ++i) {
        Cx r = w.alphas[i] / w.alphas[istar];
        if (std::abs(r.imag()) > screen_tol || r.real() < -screen_tol) {
            out.reason = "multipliers are not nonnegative real up to scale";
            return out;
        }
        beta[i] = std::max(r.real(), 0.0);
        bsum += beta[i];
    }
    if (bsum < 1e-8) {
        out.reason = "multiplier sum vanishes";
        return out;
    }
    for (auto& bi : beta) bi /= bsum;

    // Loop-momentum screen, with one ray rescaling when the chart is
    // projective (coordinate normalization active).
    std::map<std::size_t, bool> is_energy;  // coord position -> energy slot?
    std::map<std::size_t, bool> is_loop;
    for (std::size_t c = 0; c < sys.coords.size(); ++c) {
        auto it = std::find(layout.loops.begin(), layout.loops.end(), sys.coords[c]);
        is_loop[c] = it != layout.loops.end();
        is_energy[c] =
            is_loop[c] && ((it - layout.loops.begin()) % layout.dimension == 0);
    }
    std::vector<Cx> k = w.coords;
    if (sys.norm_coords) {
        std::size_t jstar = 0;
        double kmax = 0;
        for (std::size_t c = 0; c < k.size(); ++c)
            if (is_loop[c] && std::abs(k[c]) > kmax) {
                kmax = std::abs(k[c]);
                jstar = c;
            }
        if (kmax > 1e-12) {
            Cx scale = is_energy[jstar] ? Cx(0, kmax) / k[jstar] : Cx(kmax) / k[jstar];
            for (auto& v : k) v *= scale;
        }
    }
    double kscale = 1.0;
    for (std::size_t c = 0; c < k.size(); ++c)
        if (is_loop[c]) kscale = std::max(kscale, std::abs(k[c]));
    for (std::size_t c = 0; c < k.size(); ++c) {
        if (!is_loop[c]) continue;
        double off = is_energy[c] ? std::abs(k[c].real()) : std::abs(k[c].imag());
        if (off > screen_tol * kscale) {
            out.reason = "loop momenta leave the physical slice";
            return out;
        }
    }

    // Pinned all-real certification: substitute exact parameters, replace
    // every energy component by i*xi, split into real rows, normalize the
    // multiplier sum to one, and refine from the screened candidate.
    std::vector<bool> on(sys.n_forms(), false);
    for (int i : w.branch) on[i] = true;
    std::map<VarId, Polynomial> repl;
    for (auto& [v, val] : params) repl[v] = Polynomial(val);
    for (std::size_t i = 0; i < sys.n_forms(); ++i)
        if (!on[i]) repl[sys.alphas[i]] = Polynomial();
    for (std::size_t c = 0; c < sys.coords.size(); ++c)
        if (is_energy[c])
            repl[sys.coords[c]] =
                Polynomial::variable(sys.coords[c]).scaled(GaussianRational::i());

    RealSystem rs;
    for (int i : w.branch) rs.unknowns.push_back(sys.alphas[i]);
    rs.n_alpha = rs.unknowns.size();
    for (VarId v : sys.coords) rs.unknowns.push_back(v);
    std::map<VarId, std::uint32_t> slots;
    for (std::size_t u = 0; u < rs.unknowns.size(); ++u)
        slots[rs.unknowns[u]] = static_cast<std::uint32_t>(u);
    std::map<VarId, GaussianRational> nofix;

    std::vector<Polynomial> prows;
    auto add_split = [&](const Polynomial& p) {
        auto [re, im] = split_poly(p.subst(repl));
        if (!re.is_zero()) prows.push_back(re);
        if (!im.is_zero()) prows.push_back(im);
    };
    for (int i : w.branch) add_split(sys.vanishing[i]);
    for (auto& gr : sys.gradient) add_split(gr);
    for (auto& p : prows) rs.check.push_back(compile_poly(p, slots, nofix));

    for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
        std::vector<Polynomial> all = prows;
        Polynomial anorm(GaussianRational(-1));
        for (std::size_t u = 0; u < rs.n_alpha; ++u)
            anorm += Polynomial::variable(rs.unknowns[u]);
        all.push_back(anorm);
        if (sys.norm_coords) {
            Draw rng(mix(opt.seed, 0xF15Cu, attempt));
            Polynomial cnorm(GaussianRational(-1));
            for (std::size_t u = rs.n_alpha; u < rs.unknowns.size(); ++u) {
                GaussianRational c(rng.grational().re());
                while (c.is_zero()) c = GaussianRational(rng.grational().re());
                cnorm += Polynomial::variable(rs.unknowns[u]).scaled(c);
            }
            all.push_back(cnorm);
        }
        rs.rows.clear();
        rs.jac.clear();
        for (auto& p : all) {
            rs.rows.push_back(compile_poly(p, slots, nofix));
            std::vector<CompiledPoly> drow;
            for (VarId u : rs.unknowns) drow.push_back(compile_poly(p.derivative(u), slots, nofix));
            rs.jac.push_back(std::move(drow));
        }

        Eigen::VectorXd x0(rs.unknowns.size());
        for (std::size_t u = 0; u < rs.n_alpha; ++u) x0(u) = beta[w.branch[u]];
        for (std::size_t c = 0; c < sys.coords.size(); ++c)
            x0(rs.n_alpha + c) = is_energy[c] ? k[c].imag() : k[c].real();

        RealNewtonOutcome n = newton_real(rs, x0, opt);
        if (!n.converged) continue;
        std::vector<Cx> xc(rs.unknowns.size());
        for (std::size_t u = 0; u < rs.unknowns.size(); ++u) xc[u] = n.x(u);
        double vres = residual_of(rs.check, xc);
        bool nonneg = true;
        double asum = 0;
        for (std::size_t u = 0; u < rs.n_alpha; ++u) {
            if (n.x(u) < -1e-9) nonneg = false;
            asum += n.x(u);
        }
        if (vres < opt.verify_tol && nonneg && std::abs(asum - 1.0) < 1e-6) {
            out.physical = true;
            out.residual = vres;
            out.alphas.assign(sys.alphas.size(), 0.0);
            for (std::size_t u = 0; u < rs.n_alpha; ++u)
                out.alphas[w.branch[u]] = n.x(u);
            out.coords.resize(sys.coords.size());
            for (std::size_t c = 0; c < sys.coords.size(); ++c)
                out.coords[c] = is_energy[c] ? Cx(0, n.x(rs.n_alpha + c))
                                             : Cx(n.x(rs.n_alpha + c), 0);
            return out;
        }
    }
    out.reason = "real refinement did not certify the candidate";
    return out;
}

} // namespace pinch
