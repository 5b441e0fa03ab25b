#include "pinch/quadform.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "pinch/parse.hpp"

namespace pinch {

Polynomial QuadraticFamily::poly() const {
    std::size_t n = coords.size();
    Polynomial q = b;
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial zi = Polynomial::variable(coords[i]);
        q += lin[i] * zi.scaled(GaussianRational(2));
        for (std::size_t j = 0; j < n; ++j)
            q += M.poly_at(i, j) * zi * Polynomial::variable(coords[j]);
    }
    return q;
}

QuadraticFamily QuadraticFamily::from_poly(const Polynomial& q,
                                           const std::vector<VarId>& coords) {
    std::size_t n = coords.size();
    std::map<VarId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[coords[i]] = i;

    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
    std::vector<Polynomial> lin(n);
    Polynomial b;
    GaussianRational half = GaussianRational::frac(1, 2);

    for (const Term& t : q.terms()) {
        // Split the monomial into its coordinate part and parameter part.
        std::vector<std::pair<std::size_t, std::uint32_t>> cpart;
        std::vector<std::pair<VarId, std::uint32_t>> ppart;
        std::uint32_t cdeg = 0;
        for (auto& [v, e] : t.mono.factors()) {
            auto it = index.find(v);
            if (it != index.end()) {
                cpart.push_back({it->second, e});
                cdeg += e;
            } else {
                ppart.push_back({v, e});
            }
        }
        if (cdeg > 2)
            throw std::invalid_argument("quadratic decomposition: degree " +
                                        std::to_string(cdeg) + " in the coordinates");
        Polynomial param = Polynomial::from_terms({{Monomial(ppart), t.coeff}});
        if (cdeg == 0) {
            b += param;
        } else if (cdeg == 1) {
            lin[cpart[0].first] += param.scaled(half);
        } else if (cpart.size() == 1) {
            m[cpart[0].first][cpart[0].first] += param;
        } else {
            std::size_t i = cpart[0].first, j = cpart[1].first;
            m[i][j] += param.scaled(half);
            m[j][i] += param.scaled(half);
        }
    }

    SymbolicMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M.at(i, j) = RationalFunction(m[i][j]);
    return {coords, std::move(M), std::move(lin), std::move(b)};
}

QuadraticFamily QuadraticFamily::homogenized(VarId u) const {
    std::size_t n = coords.size();
    for (VarId c : coords)
        if (c == u) throw std::invalid_argument("homogenization variable already a coordinate");
    SymbolicMatrix H(n + 1, n + 1);
    H.at(0, 0) = RationalFunction(b);
    for (std::size_t i = 0; i < n; ++i) {
        H.at(0, i + 1) = RationalFunction(lin[i]);
        H.at(i + 1, 0) = RationalFunction(lin[i]);
        for (std::size_t j = 0; j < n; ++j) H.at(i + 1, j + 1) = M.at(i, j);
    }
    std::vector<VarId> cs;
    cs.reserve(n + 1);
    cs.push_back(u);
    cs.insert(cs.end(), coords.begin(), coords.end());
    return {std::move(cs), std::move(H),
            std::vector<Polynomial>(n + 1), Polynomial()};
}

QMatrix QuadraticFamily::matrix_at(const std::map<VarId, GaussianRational>& point) const {
    return M.eval_exact(point);
}

const char* point_class_name(PointClass c) {
    switch (c) {
        case PointClass::regular: return "regular";
        case PointClass::quasi_regular: return "quasi-regular";
        default: return "irregular";
    }
}

PointClass classify_point(const std::vector<QuadraticFamily>& family,
                          const std::map<VarId, GaussianRational>& point) {
    bool all_pd = true;
    for (auto& f : family) {
        QMatrix m = f.matrix_at(point);
        if (!m.is_positive_semidefinite()) return PointClass::irregular;
        if (all_pd && !m.is_positive_definite()) all_pd = false;
    }
    return all_pd ? PointClass::regular : PointClass::quasi_regular;
}

std::vector<VarId> KinematicLayout::all_params() const {
    std::vector<VarId> out = momenta;
    out.insert(out.end(), masses.begin(), masses.end());
    return out;
}

FeynmanFamily feynman_family(const FeynmanGraph& g, const Routing& r) {
    g.validate();
    KinematicLayout lay;
    lay.dimension = g.dimension;
    lay.n_loops = static_cast<int>(r.chords.size());

    for (int i = 1; i <= lay.n_loops; ++i)
        for (int mu = 0; mu < lay.dimension; ++mu)
            lay.loops.push_back(intern_var("k" + std::to_string(i) + "_" + std::to_string(mu)));

    // External vertices in input order; overall conservation eliminates the
    // last one.  A single survivor is renamed to plain p.
    std::vector<std::string> ext;
    for (auto& v : g.vertices)
        if (g.phi(v) > 0) ext.push_back(v);
    std::string eliminated = ext.empty() ? std::string() : ext.back();
    std::vector<std::string> survivors(ext.begin(), ext.empty() ? ext.end() : ext.end() - 1);

    bool plain = survivors.size() == 1;
    std::map<std::string, std::vector<VarId>> pvars;
    for (auto& v : survivors) {
        std::string stem = plain ? "p" : "p" + v;
        std::vector<VarId> comps;
        for (int mu = 0; mu < lay.dimension; ++mu)
            comps.push_back(intern_var(stem + "_" + std::to_string(mu)));
        lay.momenta.insert(lay.momenta.end(), comps.begin(), comps.end());
        lay.momentum_vertices.push_back(plain ? "" : v);
        pvars[v] = std::move(comps);
    }

    std::map<std::string, VarId> mass_var;
    for (auto& e : g.edges)
        if (!e.mass.empty() && !mass_var.count(e.mass)) mass_var[e.mass] = intern_var(e.mass);
    for (auto& e : g.edges)
        if (!e.mass.empty()) {
            VarId mv = mass_var[e.mass];
            if (std::find(lay.masses.begin(), lay.masses.end(), mv) == lay.masses.end())
                lay.masses.push_back(mv);
        }

    FeynmanFamily fam;
    fam.layout = lay;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        // Reduced external coefficients: substituting
        // p_elim = -(sum of surviving external momenta).
        std::map<std::string, int> d;
        int delim = 0;
        for (auto& [v, c] : r.ext_coeffs[e]) {
            if (v == eliminated)
                delim = c;
            else
                d[v] += c;
        }
        if (delim != 0)
            for (auto& v : survivors) d[v] -= delim;

        Polynomial q;
        for (int mu = 0; mu < lay.dimension; ++mu) {
            Polynomial f;
            for (auto& [i, c] : r.loop_coeffs[e])
                f += Polynomial::variable(lay.loops[i * lay.dimension + mu])
                         .scaled(GaussianRational(c));
            for (auto& [v, c] : d)
                if (c != 0)
                    f += Polynomial::variable(pvars[v][mu]).scaled(GaussianRational(c));
            q += f * f;
        }
        if (!g.edges[e].mass.empty()) {
            Polynomial m = Polynomial::variable(mass_var[g.edges[e].mass]);
            q += m * m;
        }
        fam.propagators.push_back(q);
        fam.forms.push_back(QuadraticFamily::from_poly(q, lay.loops));
    }
    return fam;
}

FeynmanFamily feynman_family(const FeynmanGraph& g) {
    return feynman_family(g, build_routing(g));
}

FamilyFile parse_family_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("family file: bad JSON: ") + e.what());
    }
    static const std::set<std::string> known = {"kind", "coords", "params", "forms"};
    for (auto& [key, _] : j.items())
        if (!known.count(key))
            throw std::invalid_argument("family file: unknown field \"" + key + "\"");
    if (j.value("kind", "") != "quadratic_family")
        throw std::invalid_argument("family file: kind must be \"quadratic_family\"");

    FamilyFile f;
    std::map<std::string, VarId> vars;
    auto load = [&](const char* key, std::vector<VarId>& out) {
        for (auto& name : j.at(key)) {
            std::string s = name.get<std::string>();
            if (s.empty() || s == "i")
                throw std::invalid_argument("family file: invalid variable name \"" + s + "\"");
            VarId v = intern_var(s);
            if (!vars.emplace(s, v).second)
                throw std::invalid_argument("family file: duplicate variable \"" + s + "\"");
            out.push_back(v);
        }
    };
    load("coords", f.coords);
    load("params", f.params);
    if (f.coords.empty()) throw std::invalid_argument("family file: no coordinates");
    for (auto& s : j.at("forms")) {
        Polynomial p = parse_polynomial(s.get<std::string>(), vars);
        f.forms.push_back(QuadraticFamily::from_poly(p, f.coords));
    }
    if (f.forms.empty()) throw std::invalid_argument("family file: no forms");
    return f;
}

FamilyFile load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_family_json(buf.str());
}

std::string family_to_json(const FamilyFile& f) {
    nlohmann::json j;
    j["kind"] = "quadratic_family";
    auto names = [](const std::vector<VarId>& vs) {
        std::vector<std::string> out;
        for (VarId v : vs) out.push_back(var_name(v));
        return out;
    };
    j["coords"] = names(f.coords);
    j["params"] = names(f.params);
    std::vector<std::string> forms;
    for (auto& q : f.forms) forms.push_back(q.poly().str());
    j["forms"] = forms;
    return j.dump(2) + "\n";
}

} // namespace pinch
