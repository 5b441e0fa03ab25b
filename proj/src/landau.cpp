#include "pinch/landau.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "pinch/graph.hpp"
#include "pinch/parse.hpp"

namespace pinch {

const char* chart_name(Chart c) {
    switch (c) {
        case Chart::projective: return "projective";
        case Chart::finite: return "finite";
        default: return "infinity";
    }
}

Chart chart_from_name(const std::string& name) {
    if (name == "projective") return Chart::projective;
    if (name == "finite") return Chart::finite;
    if (name == "infinity") return Chart::infinity;
    throw std::invalid_argument("unknown chart \"" + name + "\"");
}

LandauSystem generate_landau_system(const std::vector<QuadraticFamily>& forms, Chart chart) {
    if (forms.empty()) throw std::invalid_argument("no forms given");
    const std::vector<VarId>& z = forms[0].coords;
    for (auto& f : forms)
        if (f.coords != z)
            throw std::invalid_argument("all forms must share one coordinate vector");

    LandauSystem sys;
    sys.chart = chart;
    for (std::size_t i = 0; i < forms.size(); ++i)
        sys.alphas.push_back(alpha_var(i));
    VarId u = intern_var("u");

    std::size_t n = z.size();
    std::vector<QuadraticFamily> homog;
    for (auto& f : forms) homog.push_back(f.homogenized(u));
    const std::vector<VarId>& w = homog[0].coords;  // (u, z...)

    // Parameters: everything in the forms that is not a coordinate.
    std::set<VarId> seen;
    for (auto& f : forms) {
        Polynomial p = f.poly();
        for (VarId v : p.vars())
            if (std::find(z.begin(), z.end(), v) == z.end()) seen.insert(v);
    }
    sys.params.assign(seen.begin(), seen.end());

    // Chart restriction of the homogenized coordinates.
    std::map<VarId, Polynomial> restrict;
    if (chart == Chart::finite) restrict[u] = Polynomial(1);
    if (chart == Chart::infinity) restrict[u] = Polynomial();
    if (chart == Chart::projective)
        sys.coords = w;
    else
        sys.coords = z;

    for (auto& h : homog) sys.vanishing.push_back(h.poly().subst(restrict));

    // Halved gradient rows sum_i a_i (M_i w)_j; the finite chart drops the
    // homogenization row (recoverable from the others by the Euler identity
    // on the support), the infinity chart keeps it.
    std::size_t j0 = chart == Chart::finite ? 1 : 0;
    for (std::size_t j = j0; j < n + 1; ++j) {
        Polynomial row;
        for (std::size_t i = 0; i < forms.size(); ++i) {
            Polynomial inner;
            for (std::size_t l = 0; l < n + 1; ++l) {
                Polynomial e = homog[i].M.poly_at(j, l);
                if (e.is_zero()) continue;
                inner += e * Polynomial::variable(w[l]);
            }
            if (inner.is_zero()) continue;
            row += Polynomial::variable(sys.alphas[i]) * inner.subst(restrict);
        }
        sys.gradient.push_back(std::move(row));
    }

    sys.norm_alphas = true;
    sys.norm_coords = chart != Chart::finite;
    return sys;
}

std::vector<std::vector<int>> enumerate_branches(std::size_t n_forms) {
    if (n_forms == 0 || n_forms > 20) throw std::invalid_argument("unsupported form count");
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n_forms); ++mask) {
        std::vector<int> s;
        for (std::size_t i = 0; i < n_forms; ++i)
            if (mask & (std::uint64_t(1) << i)) s.push_back(static_cast<int>(i));
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<GaussianRational> residuals_exact(const LandauSystem& sys,
                                              const std::map<VarId, GaussianRational>& point) {
    std::vector<GaussianRational> out;
    for (auto& p : sys.vanishing) out.push_back(p.eval_exact(point));
    for (auto& p : sys.gradient) out.push_back(p.eval_exact(point));
    return out;
}

std::string LandauSystem::to_json() const {
    nlohmann::json j;
    j["kind"] = "landau_system";
    j["chart"] = chart_name(chart);
    auto names = [](const std::vector<VarId>& vs) {
        std::vector<std::string> out;
        for (VarId v : vs) out.push_back(var_name(v));
        return out;
    };
    j["alphas"] = names(alphas);
    j["coords"] = names(coords);
    j["params"] = names(params);
    std::vector<std::string> vstr, gstr;
    for (auto& p : vanishing) vstr.push_back(p.str());
    for (auto& p : gradient) gstr.push_back(p.str());
    j["vanishing"] = vstr;
    j["gradient"] = gstr;
    j["norms"] = {{"alphas", norm_alphas}, {"coords", norm_coords}};
    return j.dump(2) + "\n";
}

LandauSystem LandauSystem::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("landau system: bad JSON: ") + e.what());
    }
    static const std::set<std::string> known = {"kind",   "chart",  "alphas",    "coords",
                                               "params", "norms",  "vanishing", "gradient"};
    for (auto& [key, _] : j.items())
        if (!known.count(key))
            throw std::invalid_argument("landau system: unknown field \"" + key + "\"");
    if (j.value("kind", "") != "landau_system")
        throw std::invalid_argument("landau system: kind must be \"landau_system\"");

    LandauSystem sys;
    sys.chart = chart_from_name(j.at("chart").get<std::string>());
    std::map<std::string, VarId> vars;
    auto load_vars = [&](const char* key, std::vector<VarId>& out) {
        for (auto& name : j.at(key)) {
            std::string s = name.get<std::string>();
            if (s == "i" || s.empty())
                throw std::invalid_argument("landau system: invalid variable name \"" + s + "\"");
            VarId v = intern_var(s);
            if (!vars.emplace(s, v).second)
                throw std::invalid_argument("landau system: duplicate variable \"" + s + "\"");
            out.push_back(v);
        }
    };
    load_vars("alphas", sys.alphas);
    load_vars("coords", sys.coords);
    load_vars("params", sys.params);
    for (auto& s : j.at("vanishing"))
        sys.vanishing.push_back(parse_polynomial(s.get<std::string>(), vars));
    for (auto& s : j.at("gradient"))
        sys.gradient.push_back(parse_polynomial(s.get<std::string>(), vars));
    const auto& norms = j.at("norms");
    sys.norm_alphas = norms.at("alphas").get<bool>();
    sys.norm_coords = norms.at("coords").get<bool>();
    if (sys.alphas.size() != sys.vanishing.size())
        throw std::invalid_argument("landau system: one multiplier per vanishing polynomial");
    return sys;
}

} // namespace pinch
