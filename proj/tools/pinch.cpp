// Command-line surface of the toolkit: routing, Symanzik polynomials, power
// counting, critical-point (Landau) systems with pointwise membership and
// parameter scans, regularization of quadratic-form families, Hopf-algebra
// coproducts/antipodes, and Birkhoff renormalization.  Every report ends with
// a one-line manifest that pins the command, input digests, seed, and
// version, so reports are reproducible byte for byte.
//
// Exit codes: 0 success; 2 parse or validation error (malformed file or
// command line); 3 precondition violation on well-formed input; 4 the
// requested "--expect member" outcome was not met.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pinch/errors.hpp"
#include "pinch/fixtures.hpp"
#include "pinch/graph.hpp"
#include "pinch/landau.hpp"
#include "pinch/manifest.hpp"
#include "pinch/matrix.hpp"
#include "pinch/parse.hpp"
#include "pinch/quadform.hpp"
#include "pinch/regularize.hpp"
#include "pinch/renorm.hpp"
#include "pinch/solver.hpp"

namespace {

using namespace pinch;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", x);
    return b;
}

std::string fmtc(std::complex<double> z) {
    if (z.imag() == 0) return fmt(z.real());
    char b[80];
    std::snprintf(b, sizeof b, "%.6g%+.6gi", z.real(), z.imag());
    return b;
}

double qabs(const GaussianRational& g) {
    return std::hypot(g.re().get_d(), g.im().get_d());
}

std::string name_list(const std::vector<VarId>& vs) {
    std::string out;
    for (VarId v : vs) {
        if (!out.empty()) out += ", ";
        out += var_name(v);
    }
    return out;
}

std::string edge_set_str(const FeynmanGraph& g, const std::vector<int>& subset) {
    std::string out = "{";
    for (std::size_t k = 0; k < subset.size(); ++k) {
        if (k) out += ",";
        out += g.edges[subset[k]].id;
    }
    return out + "}";
}

// Signed combination of named symbols, e.g. "k1 - pa + 2*pb".
std::string signed_combo(const std::vector<std::pair<std::string, int>>& terms) {
    std::string out;
    for (auto& [sym, c] : terms) {
        if (c == 0) continue;
        std::string mag = std::abs(c) == 1 ? sym : std::to_string(std::abs(c)) + "*" + sym;
        if (out.empty())
            out = (c < 0 ? "-" : "") + mag;
        else
            out += (c < 0 ? " - " : " + ") + mag;
    }
    return out.empty() ? "0" : out;
}

void print_matrix(std::ostream& os, const SymbolicMatrix& m, const std::string& indent) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << indent << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << m.at(i, j).str();
        }
        os << "]\n";
    }
}

QMatrix eval_matrix(const SymbolicMatrix& m, const std::map<VarId, GaussianRational>& point) {
    QMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).eval_exact(point);
    return out;
}

void finish(RunManifest& man) { std::cout << "manifest: " << man.json_line() << "\n"; }

std::string json_kind(const std::string& text, const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw std::invalid_argument("\"" + path + "\" is not a JSON object");
    return j.value("kind", "graph");
}

// Graph files and quadratic-family files are both accepted wherever a family
// of forms is needed; graphs contribute their propagator forms over the loop
// coordinates.
struct FormsInput {
    std::vector<QuadraticFamily> forms;
    std::vector<VarId> coords;
    std::vector<VarId> params;
    std::optional<KinematicLayout> layout;
};

FormsInput load_forms(const std::string& path, const std::string& text) {
    std::string kind = json_kind(text, path);
    if (kind == "quadratic_family") {
        FamilyFile f = parse_family_json(text);
        return {f.forms, f.coords, f.params, std::nullopt};
    }
    if (kind == "graph") {
        FeynmanGraph g = parse_graph_json(text);
        if (loop_number(g) == 0)
            throw PreconditionError("graph \"" + path +
                                    "\" has no loops: the propagator family has no coordinates");
        FeynmanFamily ff = feynman_family(g);
        return {ff.forms, ff.layout.loops, ff.layout.all_params(), ff.layout};
    }
    throw std::invalid_argument("\"" + path + "\": expected a graph or quadratic_family file, got kind \"" +
                                kind + "\"");
}

// ---------------------------------------------------------------------------

int cmd_route(const std::string& path, RunManifest& man) {
    std::string text = slurp(path);
    man.add_input(path, text);
    FeynmanGraph g = parse_graph_json(text);
    Routing r = build_routing(g);
    std::cout << "graph " << path << ": " << g.vertices.size() << " vertices, " << g.edges.size()
              << " edges, h1 = " << loop_number(g) << ", D = " << g.dimension << "\n";
    std::cout << "base vertex: " << r.base << "\n";
    std::vector<int> tree = r.tree;
    std::cout << "spanning tree: " << edge_set_str(g, tree) << "\n";
    std::cout << "edge momenta (loop part K, external part P):\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        std::vector<std::pair<std::string, int>> K, P;
        for (auto& [l, c] : r.loop_coeffs[e]) K.emplace_back("k" + std::to_string(l + 1), c);
        for (auto& [v, c] : r.ext_coeffs[e]) P.emplace_back("p" + v, c);
        std::cout << "  " << g.edges[e].id << ": " << g.edges[e].a << " -> " << g.edges[e].b
                  << "  K = " << signed_combo(K) << "  P = " << signed_combo(P) << "  mass "
                  << g.edges[e].mass << "\n";
    }
    std::cout << "conservation at non-base vertices: " << (routing_conserves(g, r) ? "PASS" : "FAIL")
              << "\n";
    finish(man);
    return 0;
}

int cmd_symanzik(const std::string& path, RunManifest& man) {
    std::string text = slurp(path);
    man.add_input(path, text);
    FeynmanGraph g = parse_graph_json(text);
    Routing r = build_routing(g);
    Polynomial U = symanzik_first(g);
    std::vector<std::vector<int>> trees = spanning_trees(g);
    SymbolicMatrix gram = symanzik_gram(g, r);
    RationalFunction det = gram.determinant();
    bool ok = det.equals(RationalFunction(U));
    std::cout << "U_G = " << U.str() << "\n";
    std::cout << "spanning trees: " << trees.size() << "\n";
    std::cout << "gram matrix: " << gram.rows() << " x " << gram.cols() << " in "
              << name_list([&] {
                     std::vector<VarId> as;
                     for (std::size_t e = 0; e < g.edges.size(); ++e) as.push_back(alpha_var(e));
                     return as;
                 }())
              << "\n";
    std::cout << "determinant check: " << (ok ? "PASS" : "FAIL") << "\n";
    finish(man);
    return 0;
}

int cmd_power_count(const std::string& path, RunManifest& man) {
    std::string text = slurp(path);
    man.add_input(path, text);
    FeynmanGraph g = parse_graph_json(text);
    if (g.edges.size() > 16)
        throw std::invalid_argument("exhaustive power counting is limited to 16 edges");
    mpq_class wg = omega_of(g);
    std::cout << "omega(G) = " << rational_str(wg) << "  (h1 = " << loop_number(g)
              << ", D = " << g.dimension << ")\n";
    std::vector<std::pair<std::vector<int>, mpq_class>> subs;
    int n = static_cast<int>(g.edges.size());
    for (int mask = 1; mask + 1 < (1 << n); ++mask) {
        std::vector<int> subset;
        for (int e = 0; e < n; ++e)
            if (mask & (1 << e)) subset.push_back(e);
        FeynmanGraph sg = subgraph_of(g, subset);
        if (!is_connected(sg) || !is_one_particle_irreducible(sg) || loop_number(sg) == 0) continue;
        subs.emplace_back(subset, omega_of_subset(g, subset));
    }
    std::cout << "1PI loop-carrying proper subgraphs: " << subs.size() << "\n";
    const std::vector<int>* offender = nullptr;
    for (auto& [subset, w] : subs) {
        std::cout << "  " << edge_set_str(g, subset) << ": omega = " << rational_str(w) << "\n";
        if (w >= 0 && !offender) offender = &subset;
    }
    if (wg >= 0)
        std::cout << "verdict: not convergent (superficial)\n";
    else if (offender)
        std::cout << "verdict: not convergent (subgraph " << edge_set_str(g, *offender) << ")\n";
    else
        std::cout << "verdict: convergent\n";
    finish(man);
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_landau_gen(const std::string& path, const std::string& chart, const std::string& outfile,
                   RunManifest& man) {
    std::string text = slurp(path);
    man.add_input(path, text);
    man.config["chart"] = chart;
    FormsInput in = load_forms(path, text);
    LandauSystem sys = generate_landau_system(in.forms, chart_from_name(chart));
    std::string body = sys.to_json();
    if (!outfile.empty()) {
        std::ofstream out(outfile, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write output file \"" + outfile + "\"");
        out << body;
        man.config["out"] = outfile;
        std::cout << "wrote " << outfile << "\n";
    } else {
        std::cout << body;
    }
    std::cout << "chart: " << chart_name(sys.chart) << "; forms: " << sys.n_forms()
              << "; multipliers: " << name_list(sys.alphas) << "; coords: " << name_list(sys.coords)
              << "; params: " << name_list(sys.params) << "\n";
    finish(man);
    return 0;
}

int cmd_landau_verify(const std::string& syspath, const std::string& witpath, double tol,
                      RunManifest& man) {
    std::string systext = slurp(syspath);
    std::string wittext = slurp(witpath);
    man.add_input(syspath, systext);
    man.add_input(witpath, wittext);
    man.config["tol"] = fmt(tol);
    LandauSystem sys = LandauSystem::from_json(systext);

    nlohmann::json j = nlohmann::json::parse(wittext);
    if (!j.is_object() || j.value("kind", "") != "witness" || !j.contains("point") ||
        !j.at("point").is_object())
        throw std::invalid_argument("witness file must be {\"kind\":\"witness\",\"point\":{...}}");
    std::vector<VarId> all = sys.alphas;
    all.insert(all.end(), sys.coords.begin(), sys.coords.end());
    all.insert(all.end(), sys.params.begin(), sys.params.end());
    std::map<std::string, VarId> byname;
    for (VarId v : all) byname[var_name(v)] = v;
    std::map<VarId, GaussianRational> point;
    for (auto& [key, val] : j.at("point").items()) {
        auto it = byname.find(key);
        if (it == byname.end())
            throw std::invalid_argument("witness assigns \"" + key +
                                        "\" which is not a variable of the system");
        GaussianRational gv;
        if (val.is_number_integer())
            gv = GaussianRational(mpq_class(val.get<long>()));
        else if (val.is_string())
            gv = parse_complex_literal(val.get<std::string>());
        else
            throw std::invalid_argument("witness value for \"" + key +
                                        "\" must be an integer or a quoted exact literal");
        point[it->second] = gv;
    }
    std::vector<std::string> missing = missing_names(point, all);
    if (!missing.empty()) {
        std::string list;
        for (auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw std::invalid_argument("witness leaves variables unassigned: " + list);
    }

    std::vector<GaussianRational> res = residuals_exact(sys, point);
    std::size_t nv = sys.n_forms();
    double worst = 0;
    std::size_t zeros = 0;
    std::cout << "chart: " << chart_name(sys.chart) << "; residual rows: " << res.size() << " ("
              << nv << " vanishing + " << res.size() - nv << " gradient)\n";
    for (std::size_t k = 0; k < res.size(); ++k) {
        std::string label =
            k < nv ? "vanishing[" + std::to_string(k + 1) + "]"
                   : "gradient[" + std::to_string(k - nv + 1) + "]";
        std::cout << "  " << label << " = " << res[k].str() << "\n";
        worst = std::max(worst, qabs(res[k]));
        if (res[k].is_zero()) ++zeros;
    }
    std::cout << "exact zeros: " << zeros << " of " << res.size() << "\n";
    std::cout << "max |residual| = " << fmt(worst) << "\n";
    std::cout << "verdict: " << (worst < tol ? "PASS" : "FAIL") << " (tol = " << fmt(tol) << ")\n";
    finish(man);
    return 0;
}

void print_witness(const LandauSystem& sys, const Witness& w, std::size_t index) {
    std::cout << "  witness " << index << ": branch ";
    std::string b;
    for (int f : w.branch) b += (b.empty() ? "" : ",") + std::to_string(f + 1);
    std::cout << "{" << b << "}, residual " << fmt(w.residual) << ", iterations " << w.iterations
              << "\n";
    for (std::size_t k = 0; k < sys.alphas.size(); ++k)
        std::cout << "    " << var_name(sys.alphas[k]) << " = " << fmtc(w.alphas[k]) << "\n";
    for (std::size_t k = 0; k < sys.coords.size(); ++k)
        std::cout << "    " << var_name(sys.coords[k]) << " = " << fmtc(w.coords[k]) << "\n";
}

int cmd_landau_member(const std::string& syspath, const std::string& at, std::uint64_t seed,
                      int starts, int attempts, const std::string& expect, bool all,
                      RunManifest& man) {
    std::string systext = slurp(syspath);
    man.add_input(syspath, systext);
    man.set_seed(seed);
    man.config["at"] = at;
    if (!expect.empty()) man.config["expect"] = expect;
    LandauSystem sys = LandauSystem::from_json(systext);
    std::map<VarId, GaussianRational> point = parse_point_spec(at, sys.params);
    std::vector<std::string> missing = missing_names(point, sys.params);
    if (!missing.empty()) {
        std::string list;
        for (auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw std::invalid_argument("point leaves parameters unassigned: " + list);
    }
    SolverOptions opt;
    opt.seed = seed;
    opt.starts = starts;
    opt.max_attempts = attempts;
    opt.collect_all = all;
    MembershipReport rep = membership_test(sys, point, opt);
    std::cout << "chart: " << chart_name(sys.chart) << "; forms: " << sys.n_forms() << "\n";
    std::cout << "point:";
    for (VarId v : sys.params) std::cout << " " << var_name(v) << " = " << point.at(v).str() << ";";
    std::cout << "\n";
    std::cout << "verdict: " << rep.verdict() << "\n";
    std::cout << "branches tried: " << rep.branches_tried << "\n";
    std::cout << "witnesses: " << rep.witnesses.size() << "\n";
    for (std::size_t k = 0; k < rep.witnesses.size(); ++k) print_witness(sys, rep.witnesses[k], k + 1);
    finish(man);
    if (expect == "member" && !rep.member) return 4;
    return 0;
}

int cmd_landau_scan(const std::string& syspath, const std::string& grid, const std::string& params,
                    std::uint64_t seed, bool full, RunManifest& man) {
    std::string systext = slurp(syspath);
    man.add_input(syspath, systext);
    man.set_seed(seed);
    man.config["grid"] = grid;
    if (!params.empty()) man.config["params"] = params;
    LandauSystem sys = LandauSystem::from_json(systext);

    std::size_t eq = grid.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("grid must be var=lo:hi:count or var=lo:hi:count x lo:hi:count");
    std::string varname = grid.substr(0, eq);
    while (!varname.empty() && varname.back() == ' ') varname.pop_back();
    VarId var = 0;
    if (!lookup_var(varname, var) ||
        std::find(sys.params.begin(), sys.params.end(), var) == sys.params.end())
        throw std::invalid_argument("scanned variable \"" + varname +
                                    "\" is not a parameter of the system (params: " +
                                    name_list(sys.params) + ")");
    std::string ranges = grid.substr(eq + 1);
    std::vector<std::string> parts;
    {
        std::size_t xp = ranges.find('x');
        if (xp == std::string::npos)
            parts = {ranges};
        else
            parts = {ranges.substr(0, xp), ranges.substr(xp + 1)};
    }
    std::vector<mpq_class> res = parse_grid_range(parts[0]);
    std::vector<mpq_class> ims =
        parts.size() == 2 ? parse_grid_range(parts[1]) : std::vector<mpq_class>{mpq_class(0)};
    std::vector<GaussianRational> values;
    values.reserve(res.size() * ims.size());
    for (const mpq_class& re : res)
        for (const mpq_class& im : ims) values.emplace_back(re, im);

    std::vector<VarId> rest;
    for (VarId p : sys.params)
        if (p != var) rest.push_back(p);
    std::map<VarId, GaussianRational> base = parse_point_spec(params, rest);
    std::vector<std::string> missing = missing_names(base, rest);
    if (!missing.empty()) {
        std::string list;
        for (auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw std::invalid_argument("scan leaves parameters unassigned (use --params): " + list);
    }

    SolverOptions opt;
    opt.seed = seed;
    std::vector<ScanPoint> table = scan_parameter(sys, base, var, values, opt);
    std::cout << "scan " << varname << ": " << res.size() << " x " << ims.size() << " = "
              << values.size() << " grid points\n";
    std::size_t members = 0;
    for (const ScanPoint& sp : table) {
        if (sp.member) ++members;
        if (full || sp.member)
            std::cout << "  " << varname << " = " << sp.value.str() << "  "
                      << (sp.member ? "member" : "no-witness-found")
                      << (sp.member ? "  residual " + fmt(sp.best_residual) + "  witnesses " +
                                          std::to_string(sp.n_witnesses)
                                    : "")
                      << "\n";
    }
    std::cout << "summary: " << members << " of " << values.size() << " points are members\n";
    finish(man);
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_regularize(const std::string& path, const std::string& at, RunManifest& man) {
    std::string text = slurp(path);
    man.add_input(path, text);
    if (!at.empty()) man.config["at"] = at;
    FormsInput in = load_forms(path, text);

    std::optional<std::map<VarId, GaussianRational>> prefer;
    if (!at.empty()) {
        std::map<VarId, GaussianRational> pt = parse_point_spec(at, in.params);
        std::vector<std::string> missing = missing_names(pt, in.params);
        if (!missing.empty()) {
            std::string list;
            for (auto& m : missing) list += (list.empty() ? "" : ", ") + m;
            throw std::invalid_argument("point leaves parameters unassigned: " + list);
        }
        prefer = pt;
    }

    FamilyRegularization fr = regularize_forms(in.forms, prefer);
    std::cout << "forms: " << in.forms.size() << "; coordinates: " << name_list(in.coords)
              << "; homogenization: " << var_name(fr.u) << "\n";
    VarId eps = intern_var("eps");
    for (std::size_t i = 0; i < in.forms.size(); ++i) {
        const QuadraticFamily& hom = fr.homogenized[i];
        const Diagonalization& d = fr.diag[i];
        const Regulator& reg = fr.reg[i];
        std::size_t n = hom.dim();
        std::cout << "form " << i + 1 << ": " << in.forms[i].poly().str() << "\n";
        std::cout << "  homogenized matrix:\n";
        print_matrix(std::cout, hom.M, "    ");
        std::cout << "  congruence T:\n";
        print_matrix(std::cout, d.T, "    ");
        std::cout << "  diagonal:";
        for (const Polynomial& l : d.lambda) std::cout << " " << l.str() << ";";
        std::cout << "\n";
        SymbolicMatrix check = d.T.transpose() * hom.M * d.T;
        bool diag_ok = true;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                if (r == c) {
                    if (!check.at(r, c).equals(RationalFunction(d.lambda[r]))) diag_ok = false;
                } else if (!check.at(r, c).is_zero()) {
                    diag_ok = false;
                }
            }
        std::cout << "  T^t M T diagonal: " << (diag_ok ? "PASS" : "FAIL") << "\n";
        if (!d.exceptional.empty()) {
            std::cout << "  valid off the locus of:";
            for (const Polynomial& e : d.exceptional) std::cout << " " << e.str() << ";";
            std::cout << "\n";
        }
        std::cout << "  generic rank: " << reg.rank << " of " << n << "\n";
        std::cout << "  regulator A:\n";
        print_matrix(std::cout, reg.A, "    ");
        SymbolicMatrix meps(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                meps.at(r, c) = hom.M.at(r, c) +
                                RationalFunction(Polynomial::variable(eps)) * reg.A.at(r, c);
        std::cout << "  det(M + eps*A) identically zero: "
                  << (meps.determinant().is_zero() ? "YES" : "NO") << "\n";
        if (prefer) {
            QMatrix M0 = hom.matrix_at(*prefer);
            QMatrix A0 = eval_matrix(reg.A, *prefer);
            std::cout << "  at the point: M + eps*A positive definite for all eps > 0: "
                      << (pd_for_all_positive_eps(M0, A0) ? "YES" : "NO") << "\n";
        }
    }
    if (prefer) {
        PointClass pc = classify_point(in.forms, *prefer);
        std::cout << "point class: " << point_class_name(pc) << "\n";
    }
    finish(man);
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_hopf(const std::string& path, const std::string& name, bool antipode, RunManifest& man) {
    std::string text = slurp(path);
    man.add_input(path, text);
    FeynmanGraph g = parse_graph_json(text);
    HopfAlgebra H;
    GraphId id = H.intern(g, name);
    const FeynmanGraph& gg = H.graph(id);
    std::cout << "generator " << H.name(id) << ": " << gg.edges.size() << " edges, h1 = "
              << loop_number(gg) << ", omega = " << rational_str(omega_of(gg)) << "\n";
    std::cout << "divergent proper subgraphs: " << divergent_subsets(gg).size() << "\n";
    if (antipode) {
        std::cout << "antipode: " << H.sum_str(H.antipode(id)) << "\n";
        std::cout << "check m(S (x) id) Delta = 0: "
                  << (H.counit_convolution(id).empty() ? "PASS" : "FAIL") << "\n";
    } else {
        std::cout << "coproduct: " << H.tensor_str(H.coproduct(id)) << "\n";
        std::cout << "reduced: " << H.tensor_str(H.reduced_coproduct(id)) << "\n";
    }
    finish(man);
    return 0;
}

int cmd_renorm(const std::string& path, const std::string& charfile, const std::string& schemefile,
               const std::string& name, RunManifest& man) {
    std::string text = slurp(path);
    std::string chartext = slurp(charfile);
    std::string schemetext = slurp(schemefile);
    man.add_input(path, text);
    man.add_input(charfile, chartext);
    man.add_input(schemefile, schemetext);

    Scheme scheme = parse_scheme_json(schemetext);
    HopfAlgebra H;
    FeynmanGraph g = parse_graph_json(text);
    GraphId id = H.intern(g, name);
    Character phi = parse_character_json(H, chartext, scheme);

    std::cout << "scheme: "
              << (scheme.kind == Scheme::Kind::minimal ? "minimal subtraction"
                                                       : "momentum subtraction")
              << ", window [" << scheme.window_lo << ", " << scheme.window_hi << "]\n";
    if (scheme.kind == Scheme::Kind::momentum)
        for (auto& [nlegs, sub] : scheme.reference) {
            std::cout << "  reference (" << nlegs << " legs):";
            for (auto& [v, val] : sub) std::cout << " " << var_name(v) << " = " << val.str() << ";";
            std::cout << "\n";
        }
    const FeynmanGraph& gg = H.graph(id);
    std::cout << "graph " << H.name(id) << ": h1 = " << loop_number(gg)
              << ", omega = " << rational_str(omega_of(gg)) << "\n";

    Birkhoff bf(H, phi, scheme);
    std::cout << "phi       = " << bf.phi().on_generator(id).str() << "\n";
    std::cout << "phi_bar   = " << bf.bogoliubov(id).str() << "\n";
    std::cout << "phi_minus = " << bf.minus_of(id).str() << "\n";
    LaurentSeries plus = bf.plus_of(id);
    std::cout << "phi_plus  = " << plus.str() << "\n";
    std::cout << "physical limit = " << physical_limit(plus).str() << "\n";
    finish(man);
    return 0;
}

int cmd_examples(const std::string& name, const std::string& dir, RunManifest& man) {
    man.config["name"] = name;
    man.config["dir"] = dir;
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    if (name == "all") {
        written = fixtures::write_examples(dir);
    } else {
        std::string canonical = name == "twoquadrics" ? "two_quadrics" : name;
        std::string body;
        if (canonical == "simple")
            body = family_to_json(fixtures::simple());
        else if (canonical == "two_quadrics")
            body = family_to_json(fixtures::two_quadrics());
        else if (canonical == "bubble")
            body = graph_to_json(fixtures::bubble());
        else if (canonical == "sunrise")
            body = graph_to_json(fixtures::sunrise());
        else if (canonical == "nested_bubble")
            body = graph_to_json(fixtures::nested_bubble());
        else
            throw std::invalid_argument(
                "unknown example \"" + name +
                "\"; choose from simple, two_quadrics, bubble, sunrise, nested_bubble, all");
        fs::create_directories(dir);
        std::ofstream out(fs::path(dir) / (canonical + ".json"), std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write under \"" + dir + "\"");
        out << body;
        written = {canonical + ".json"};
    }
    for (const std::string& w : written)
        std::cout << "wrote " << (fs::path(dir) / w).string() << "\n";
    finish(man);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact critical-surface analysis and renormalization for quadratic-form "
                 "families and Feynman graphs"};
    app.require_subcommand(1);
    std::function<int(RunManifest&)> action;

    // route
    {
        auto path = std::make_shared<std::string>();
        CLI::App* c = app.add_subcommand("route", "print the loop/external momentum routing");
        c->add_option("graph", *path, "graph JSON file")->required();
        c->callback([&action, path] {
            action = [path](RunManifest& m) { return cmd_route(*path, m); };
        });
    }
    // symanzik
    {
        auto path = std::make_shared<std::string>();
        CLI::App* c = app.add_subcommand(
            "symanzik", "first Symanzik polynomial with the determinant cross-check");
        c->add_option("graph", *path, "graph JSON file")->required();
        c->callback([&action, path] {
            action = [path](RunManifest& m) { return cmd_symanzik(*path, m); };
        });
    }
    // power-count
    {
        auto path = std::make_shared<std::string>();
        CLI::App* c = app.add_subcommand(
            "power-count", "superficial degree of divergence of the graph and its subgraphs");
        c->add_option("graph", *path, "graph JSON file")->required();
        c->callback([&action, path] {
            action = [path](RunManifest& m) { return cmd_power_count(*path, m); };
        });
    }
    // landau
    {
        CLI::App* landau = app.add_subcommand("landau", "critical-point systems");
        landau->require_subcommand(1);
        {
            auto path = std::make_shared<std::string>();
            auto chart = std::make_shared<std::string>("projective");
            auto out = std::make_shared<std::string>();
            CLI::App* c = landau->add_subcommand("gen", "generate the critical-point system");
            c->add_option("input", *path, "graph or quadratic_family JSON file")->required();
            c->add_option("--chart", *chart, "projective, finite, or infinity")
                ->check(CLI::IsMember({"projective", "finite", "infinity"}))
                ->capture_default_str();
            c->add_option("--out", *out, "write the system JSON here instead of stdout");
            c->callback([&action, path, chart, out] {
                action = [path, chart, out](RunManifest& m) {
                    return cmd_landau_gen(*path, *chart, *out, m);
                };
            });
        }
        {
            auto syspath = std::make_shared<std::string>();
            auto witpath = std::make_shared<std::string>();
            auto tol = std::make_shared<double>(1e-9);
            CLI::App* c = landau->add_subcommand("verify", "evaluate a witness exactly");
            c->add_option("system", *syspath, "system JSON file")->required();
            c->add_option("witness", *witpath, "witness JSON file")->required();
            c->add_option("--tol", *tol, "pass threshold on max |residual|")
                ->capture_default_str();
            c->callback([&action, syspath, witpath, tol] {
                action = [syspath, witpath, tol](RunManifest& m) {
                    return cmd_landau_verify(*syspath, *witpath, *tol, m);
                };
            });
        }
        {
            auto syspath = std::make_shared<std::string>();
            auto at = std::make_shared<std::string>();
            auto seed = std::make_shared<std::uint64_t>(1);
            auto starts = std::make_shared<int>(12);
            auto attempts = std::make_shared<int>(4);
            auto expect = std::make_shared<std::string>();
            auto all = std::make_shared<bool>(false);
            CLI::App* c = landau->add_subcommand("member", "pointwise membership test");
            c->add_option("system", *syspath, "system JSON file")->required();
            c->add_option("--at", *at, "parameter point, e.g. \"t=1/2\" or \"p=(3i,0,0,0);m=(1,2)\"")
                ->required();
            c->add_option("--seed", *seed, "random seed")->capture_default_str();
            c->add_option("--starts", *starts, "Newton starts per branch")->capture_default_str();
            c->add_option("--attempts", *attempts, "projection redraws per branch")
                ->capture_default_str();
            c->add_option("--expect", *expect, "exit 4 unless this verdict is reached")
                ->check(CLI::IsMember({"member"}));
            c->add_flag("--all", *all, "collect witnesses from every branch");
            c->callback([&action, syspath, at, seed, starts, attempts, expect, all] {
                action = [syspath, at, seed, starts, attempts, expect, all](RunManifest& m) {
                    return cmd_landau_member(*syspath, *at, *seed, *starts, *attempts, *expect,
                                             *all, m);
                };
            });
        }
        {
            auto syspath = std::make_shared<std::string>();
            auto grid = std::make_shared<std::string>();
            auto params = std::make_shared<std::string>();
            auto seed = std::make_shared<std::uint64_t>(1);
            auto full = std::make_shared<bool>(false);
            CLI::App* c = landau->add_subcommand("scan", "membership over a parameter grid");
            c->add_option("system", *syspath, "system JSON file")->required();
            c->add_option("--grid", *grid,
                          "var=lo:hi:count (real) or var=lo:hi:count x lo:hi:count (re x im)")
                ->required();
            c->add_option("--params", *params, "values for the remaining parameters");
            c->add_option("--seed", *seed, "random seed")->capture_default_str();
            c->add_flag("--full", *full, "print every grid point, not only members");
            c->callback([&action, syspath, grid, params, seed, full] {
                action = [syspath, grid, params, seed, full](RunManifest& m) {
                    return cmd_landau_scan(*syspath, *grid, *params, *seed, *full, m);
                };
            });
        }
    }
    // regularize
    {
        auto path = std::make_shared<std::string>();
        auto at = std::make_shared<std::string>();
        CLI::App* c = app.add_subcommand(
            "regularize", "homogenize, diagonalize, and regularize a family of forms");
        c->add_option("input", *path, "graph or quadratic_family JSON file")->required();
        c->add_option("--at", *at, "parameter point for exact definiteness checks");
        c->callback([&action, path, at] {
            action = [path, at](RunManifest& m) { return cmd_regularize(*path, *at, m); };
        });
    }
    // hopf
    {
        CLI::App* hopf = app.add_subcommand("hopf", "graph Hopf algebra");
        hopf->require_subcommand(1);
        for (bool anti : {false, true}) {
            auto path = std::make_shared<std::string>();
            auto name = std::make_shared<std::string>("G");
            CLI::App* c = hopf->add_subcommand(anti ? "antipode" : "coproduct",
                                               anti ? "antipode of a 1PI generator"
                                                    : "coproduct of a 1PI generator");
            c->add_option("graph", *path, "graph JSON file")->required();
            c->add_option("--name", *name, "display name for the generator")
                ->capture_default_str();
            c->callback([&action, path, name, anti] {
                action = [path, name, anti](RunManifest& m) {
                    return cmd_hopf(*path, *name, anti, m);
                };
            });
        }
    }
    // renorm
    {
        auto path = std::make_shared<std::string>();
        auto charfile = std::make_shared<std::string>();
        auto schemefile = std::make_shared<std::string>();
        auto name = std::make_shared<std::string>("G");
        CLI::App* c = app.add_subcommand(
            "renorm", "Birkhoff splitting of a character on one generator");
        c->add_option("graph", *path, "graph JSON file")->required();
        c->add_option("--character", *charfile, "character JSON file")->required();
        c->add_option("--scheme", *schemefile, "scheme JSON file")->required();
        c->add_option("--name", *name, "display name for the generator")->capture_default_str();
        c->callback([&action, path, charfile, schemefile, name] {
            action = [path, charfile, schemefile, name](RunManifest& m) {
                return cmd_renorm(*path, *charfile, *schemefile, *name, m);
            };
        });
    }
    // examples
    {
        auto name = std::make_shared<std::string>();
        auto dir = std::make_shared<std::string>(".");
        CLI::App* c = app.add_subcommand("examples", "materialize the bundled example files");
        c->add_option("name", *name,
                      "simple, two_quadrics, bubble, sunrise, nested_bubble, or all")
            ->required();
        c->add_option("--dir", *dir, "output directory")->capture_default_str();
        c->callback([&action, name, dir] {
            action = [name, dir](RunManifest& m) { return cmd_examples(*name, *dir, m); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunManifest man;
    man.command = "pinch";
    for (int i = 1; i < argc; ++i) {
        man.command += ' ';
        man.command += argv[i];
    }
    try {
        return action ? action(man) : 0;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
