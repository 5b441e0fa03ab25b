#include "pinch/renorm.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "pinch/parse.hpp"

namespace pinch {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Graph-sum layer

GraphMono mono_mul(const GraphMono& a, const GraphMono& b) {
    GraphMono out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void add_term(GraphSum& s, const GraphMono& m, const mpq_class& c) {
    auto it = s.find(m);
    if (it == s.end()) {
        if (c != 0) s.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) s.erase(it);
}

void add_term(TensorSum& s, const GraphMono& l, const GraphMono& r, const mpq_class& c) {
    auto key = std::make_pair(l, r);
    auto it = s.find(key);
    if (it == s.end()) {
        if (c != 0) s.emplace(std::move(key), c);
        return;
    }
    it->second += c;
    if (it->second == 0) s.erase(it);
}

GraphSum sum_mul(const GraphSum& a, const GraphSum& b) {
    GraphSum out;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) add_term(out, mono_mul(ma, mb), ca * cb);
    return out;
}

namespace {

std::vector<FeynmanGraph> split_components(const FeynmanGraph& g) {
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        return it->second = find(it->second);
    };
    for (auto& e : g.edges) {
        std::string ra = find(e.a), rb = find(e.b);
        parent[ra] = rb;
        parent[rb] = rb;
    }
    std::vector<std::string> roots;  // discovery order over vertices
    std::map<std::string, std::size_t> slot;
    for (auto& v : g.vertices) {
        if (!parent.count(v)) continue;  // untouched vertex
        std::string r = find(v);
        if (!slot.count(r)) {
            slot[r] = roots.size();
            roots.push_back(r);
        }
    }
    std::vector<FeynmanGraph> out(roots.size());
    for (auto& c : out) c.dimension = g.dimension;
    for (auto& v : g.vertices) {
        if (!parent.count(v)) continue;
        FeynmanGraph& c = out[slot[find(v)]];
        c.vertices.push_back(v);
        auto it = g.external.find(v);
        if (it != g.external.end() && it->second > 0) c.external[v] = it->second;
    }
    for (auto& e : g.edges) out[slot[find(e.a)]].edges.push_back(e);
    return out;
}

std::string joined_edge_ids(const FeynmanGraph& g) {
    std::string out;
    for (auto& e : g.edges) {
        if (!out.empty()) out += ",";
        out += e.id;
    }
    return out;
}

std::string joined_edge_ids(const FeynmanGraph& g, const std::vector<int>& subset) {
    std::string out;
    for (int e : subset) {
        if (!out.empty()) out += ",";
        out += g.edges[e].id;
    }
    return out;
}

} // namespace

GraphId HopfAlgebra::intern(const FeynmanGraph& g, const std::string& name_hint) {
    g.validate();
    if (!is_one_particle_irreducible(g) || loop_number(g) < 1)
        throw PreconditionError("Hopf generators must be 1PI graphs with at least one loop");
    std::string key = canonical_key(g);
    auto it = by_key_.find(key);
    if (it != by_key_.end()) return it->second;
    GraphId id = static_cast<GraphId>(graphs_.size());
    graphs_.push_back(g);
    names_.push_back(name_hint.empty() ? "g" + std::to_string(id) : name_hint);
    by_key_.emplace(std::move(key), id);
    return id;
}

const FeynmanGraph& HopfAlgebra::graph(GraphId id) const { return graphs_.at(id); }
const std::string& HopfAlgebra::name(GraphId id) const { return names_.at(id); }

int HopfAlgebra::grading(GraphId id) const { return loop_number(graphs_.at(id)); }

int HopfAlgebra::grading(const GraphMono& m) const {
    int s = 0;
    for (GraphId id : m) s += grading(id);
    return s;
}

TensorSum HopfAlgebra::coproduct(GraphId id) {
    auto mit = cop_memo_.find(id);
    if (mit != cop_memo_.end()) return mit->second;
    const FeynmanGraph g = graphs_.at(id);  // copy: intern below may reallocate
    const std::string gname = names_.at(id);
    TensorSum t;
    add_term(t, {id}, {}, 1);
    add_term(t, {}, {id}, 1);
    for (auto& sub : divergent_subsets(g)) {
        GraphMono left;
        for (auto& comp : split_components(subgraph_of(g, sub)))
            left.push_back(intern(comp, gname + "[" + joined_edge_ids(comp) + "]"));
        std::sort(left.begin(), left.end());
        GraphId rest = intern(contract(g, sub), gname + "/[" + joined_edge_ids(g, sub) + "]");
        add_term(t, left, {rest}, 1);
    }
    cop_memo_[id] = t;
    return t;
}

TensorSum HopfAlgebra::coproduct(const GraphMono& m) {
    TensorSum acc;
    add_term(acc, {}, {}, 1);
    for (GraphId id : m) {
        TensorSum factor = coproduct(id);
        TensorSum next;
        for (auto& [lr, c] : acc)
            for (auto& [lr2, c2] : factor)
                add_term(next, mono_mul(lr.first, lr2.first), mono_mul(lr.second, lr2.second),
                         c * c2);
        acc = std::move(next);
    }
    return acc;
}

TensorSum HopfAlgebra::reduced_coproduct(GraphId id) {
    TensorSum t = coproduct(id);
    add_term(t, {id}, {}, -1);
    add_term(t, {}, {id}, -1);
    return t;
}

TensorSum HopfAlgebra::reduced_coproduct(const GraphMono& m) {
    TensorSum t = coproduct(m);
    add_term(t, m, {}, -1);
    add_term(t, {}, m, -1);
    return t;
}

GraphSum HopfAlgebra::antipode(GraphId id) {
    auto mit = anti_memo_.find(id);
    if (mit != anti_memo_.end()) return mit->second;
    GraphSum out;
    add_term(out, {id}, -1);
    for (auto& [lr, c] : reduced_coproduct(id)) {
        GraphSum sl = antipode(lr.first);  // left factors have strictly lower grading
        for (auto& [m, cm] : sl) add_term(out, mono_mul(m, lr.second), -c * cm);
    }
    anti_memo_[id] = out;
    return out;
}

GraphSum HopfAlgebra::antipode(const GraphMono& m) {
    GraphSum acc;
    add_term(acc, {}, 1);
    for (GraphId id : m) acc = sum_mul(acc, antipode(id));
    return acc;
}

GraphSum HopfAlgebra::antipode(const GraphSum& s) {
    GraphSum acc;
    for (auto& [m, c] : s)
        for (auto& [m2, c2] : antipode(m)) add_term(acc, m2, c * c2);
    return acc;
}

TensorCube HopfAlgebra::expand_left(const TensorSum& t) {
    TensorCube out;
    for (auto& [lr, c] : t)
        for (auto& [ab, c2] : coproduct(lr.first)) {
            auto key = std::make_tuple(ab.first, ab.second, lr.second);
            auto it = out.find(key);
            if (it == out.end())
                out.emplace(std::move(key), c * c2);
            else if ((it->second += c * c2) == 0)
                out.erase(it);
        }
    return out;
}

TensorCube HopfAlgebra::expand_right(const TensorSum& t) {
    TensorCube out;
    for (auto& [lr, c] : t)
        for (auto& [ab, c2] : coproduct(lr.second)) {
            auto key = std::make_tuple(lr.first, ab.first, ab.second);
            auto it = out.find(key);
            if (it == out.end())
                out.emplace(std::move(key), c * c2);
            else if ((it->second += c * c2) == 0)
                out.erase(it);
        }
    return out;
}

GraphSum HopfAlgebra::counit_convolution(GraphId id) {
    GraphSum acc;
    for (auto& [lr, c] : coproduct(id)) {
        GraphSum sl = antipode(lr.first);
        for (auto& [m, cm] : sl) add_term(acc, mono_mul(m, lr.second), c * cm);
    }
    return acc;
}

std::string HopfAlgebra::mono_str(const GraphMono& m) const {
    if (m.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        if (!out.empty()) out += "*";
        out += name(m[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

namespace {

std::string coeff_prefix(const mpq_class& c, const std::string& body) {
    mpq_class a = abs(c);
    std::string piece;
    if (a == 1 && body != "1")
        piece = body;
    else if (body == "1")
        piece = a.get_str();
    else
        piece = a.get_str() + "*" + body;
    return piece;
}

std::string join_signed(std::vector<std::pair<bool, std::string>> pieces) {
    if (pieces.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i == 0)
            out += (pieces[i].first ? "-" : "") + pieces[i].second;
        else
            out += (pieces[i].first ? " - " : " + ") + pieces[i].second;
    }
    return out;
}

} // namespace

std::string HopfAlgebra::sum_str(const GraphSum& s) const {
    std::vector<std::pair<bool, std::string>> pieces;
    for (auto& [m, c] : s) pieces.emplace_back(c < 0, coeff_prefix(c, mono_str(m)));
    return join_signed(std::move(pieces));
}

std::string HopfAlgebra::tensor_str(const TensorSum& t) const {
    std::vector<std::pair<bool, std::string>> pieces;
    for (auto& [lr, c] : t)
        pieces.emplace_back(c < 0,
                            coeff_prefix(c, mono_str(lr.first) + " (x) " + mono_str(lr.second)));
    return join_signed(std::move(pieces));
}

// ---------------------------------------------------------------------------
// Coefficients

Coefficient Coefficient::sampler(SampleFn fn) {
    Coefficient c;
    c.f_.reset();
    c.s_ = std::move(fn);
    return c;
}

const RationalFunction& Coefficient::value() const {
    if (!f_) throw PreconditionError("coefficient is a numeric sampler; no exact value");
    return *f_;
}

Coefficient Coefficient::operator+(const Coefficient& o) const {
    if (f_ && o.f_) return Coefficient(*f_ + *o.f_);
    Coefficient a = *this, b = o;
    return sampler([a, b](const std::map<VarId, std::complex<double>>& pt) {
        return a.sample(pt) + b.sample(pt);
    });
}

Coefficient Coefficient::operator*(const Coefficient& o) const {
    if (f_ && o.f_) return Coefficient(*f_ * *o.f_);
    if (is_zero() || o.is_zero()) return Coefficient();
    Coefficient a = *this, b = o;
    return sampler([a, b](const std::map<VarId, std::complex<double>>& pt) {
        return a.sample(pt) * b.sample(pt);
    });
}

Coefficient Coefficient::operator-() const { return scaled(-1); }

Coefficient Coefficient::scaled(const mpq_class& c) const {
    if (f_) return Coefficient(*f_ * RationalFunction(GaussianRational(c)));
    Coefficient a = *this;
    double d = c.get_d();
    return sampler([a, d](const std::map<VarId, std::complex<double>>& pt) {
        return d * a.sample(pt);
    });
}

Coefficient Coefficient::bind(const std::map<VarId, GaussianRational>& point) const {
    if (f_) {
        std::map<VarId, Polynomial> repl;
        for (auto& [v, q] : point) repl[v] = Polynomial(q);
        try {
            return Coefficient(f_->subst(repl));
        } catch (const std::exception& e) {
            throw PreconditionError(std::string("coefficient undefined at the requested point: ") +
                                    e.what());
        }
    }
    Coefficient a = *this;
    std::map<VarId, std::complex<double>> fixed;
    for (auto& [v, q] : point) fixed[v] = {q.re().get_d(), q.im().get_d()};
    return sampler([a, fixed](const std::map<VarId, std::complex<double>>& pt) {
        std::map<VarId, std::complex<double>> merged = pt;
        for (auto& [v, z] : fixed) merged[v] = z;
        return a.sample(merged);
    });
}

std::complex<double> Coefficient::sample(const std::map<VarId, std::complex<double>>& point) const {
    if (f_) return f_->eval(point);
    return s_(point);
}

bool Coefficient::equals(const Coefficient& o) const {
    if (!f_ || !o.f_) return false;
    return f_->equals(*o.f_);
}

std::string Coefficient::str() const { return f_ ? f_->str() : "<sampler>"; }

// ---------------------------------------------------------------------------
// Laurent series

LaurentSeries LaurentSeries::constant(Coefficient c) { return term(0, std::move(c)); }

LaurentSeries LaurentSeries::term(int power, Coefficient c) {
    if (c.is_zero()) return LaurentSeries();
    LaurentSeries s;
    s.lo_ = power;
    s.hi_ = unbounded;
    s.c_.emplace(power, std::move(c));
    return s;
}

LaurentSeries::LaurentSeries(int lo, int hi, std::map<int, Coefficient> coeffs)
    : lo_(lo), hi_(hi), c_(std::move(coeffs)) {
    if (lo_ > hi_) throw std::invalid_argument("Laurent window is empty");
    for (auto& [k, v] : c_) {
        (void)v;
        if (k < lo_ || k > hi_)
            throw std::invalid_argument("Laurent coefficient outside the window");
    }
    normalize();
}

void LaurentSeries::normalize() {
    for (auto it = c_.begin(); it != c_.end();)
        it = it->second.is_zero() ? c_.erase(it) : std::next(it);
    // Tighten lo to the actual support: absent in-window entries are exact
    // zeros, so the series is identically zero below its first stored power.
    // This keeps product windows from degrading more than the data warrants.
    if (!c_.empty())
        lo_ = std::max(lo_, c_.begin()->first);
    else
        lo_ = hi_ == unbounded ? 0 : hi_;
}

Coefficient LaurentSeries::at(int k) const {
    if (k > hi_)
        throw PreconditionError("coefficient of eps^" + std::to_string(k) +
                                " is beyond the known window");
    auto it = c_.find(k);
    return it == c_.end() ? Coefficient() : it->second;
}

bool LaurentSeries::known_zero() const { return exact() && c_.empty(); }

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    LaurentSeries out;
    out.lo_ = std::min(lo_, o.lo_);
    out.hi_ = std::min(hi_, o.hi_);
    if (out.lo_ > out.hi_) throw PreconditionError("Laurent windows do not overlap");
    out.c_ = c_;
    for (auto& [k, v] : o.c_) {
        if (k > out.hi_) continue;
        auto it = out.c_.find(k);
        if (it == out.c_.end())
            out.c_.emplace(k, v);
        else
            it->second = it->second + v;
    }
    for (auto it = out.c_.begin(); it != out.c_.end();)
        it = it->first > out.hi_ ? out.c_.erase(it) : std::next(it);
    out.normalize();
    return out;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator-() const { return scaled(-1); }

LaurentSeries LaurentSeries::scaled(const mpq_class& c) const {
    if (c == 0) return LaurentSeries();
    LaurentSeries out = *this;
    for (auto& [k, v] : out.c_) {
        (void)k;
        v = v.scaled(c);
    }
    return out;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    if (known_zero() || o.known_zero()) return LaurentSeries();
    auto sat = [](int h, int l) { return h >= unbounded ? unbounded : h + l; };
    LaurentSeries out;
    out.lo_ = lo_ + o.lo_;
    out.hi_ = std::min(sat(hi_, o.lo_), sat(o.hi_, lo_));
    if (out.lo_ > out.hi_) throw PreconditionError("Laurent windows do not overlap");
    for (auto& [i, a] : c_)
        for (auto& [j, b] : o.c_) {
            if (i + j > out.hi_) continue;
            Coefficient prod = a * b;
            auto it = out.c_.find(i + j);
            if (it == out.c_.end())
                out.c_.emplace(i + j, std::move(prod));
            else
                it->second = it->second + prod;
        }
    out.normalize();
    return out;
}

LaurentSeries LaurentSeries::principal_part() const {
    if (lo_ < 0 && hi_ < -1)
        throw PreconditionError("principal part is not fully known on this window");
    LaurentSeries out;
    out.lo_ = std::min(lo_, 0);
    out.hi_ = unbounded;
    for (auto& [k, v] : c_)
        if (k < 0) out.c_.emplace(k, v);
    out.normalize();
    return out;
}

LaurentSeries LaurentSeries::nonnegative_part() const {
    if (hi_ < 0) throw PreconditionError("window does not reach the finite part");
    LaurentSeries out;
    out.lo_ = 0;
    out.hi_ = hi_;
    for (auto& [k, v] : c_)
        if (k >= 0) out.c_.emplace(k, v);
    out.normalize();
    return out;
}

LaurentSeries LaurentSeries::bind(const std::map<VarId, GaussianRational>& point) const {
    LaurentSeries out = *this;
    for (auto& [k, v] : out.c_) {
        (void)k;
        v = v.bind(point);
    }
    out.normalize();
    return out;
}

std::string LaurentSeries::str() const {
    if (c_.empty()) return "0";
    std::vector<std::pair<bool, std::string>> pieces;
    for (auto& [k, v] : c_) {
        std::string cs = v.str();
        bool neg = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos) {
            neg = true;
            cs = cs.substr(1);
        }
        std::string body;
        if (k == 0) {
            body = cs;
        } else {
            std::string epss = k == 1 ? "eps" : "eps^" + std::to_string(k);
            if (cs == "1")
                body = epss;
            else if (cs.find(' ') != std::string::npos)
                body = "(" + cs + ")*" + epss;
            else
                body = cs + "*" + epss;
        }
        pieces.emplace_back(neg, body);
    }
    return join_signed(std::move(pieces));
}

bool agree_on(const LaurentSeries& a, const LaurentSeries& b, int lo, int hi) {
    if (!a.known(hi) || !b.known(hi)) return false;
    for (int k = lo; k <= hi; ++k)
        if (!a.at(k).equals(b.at(k))) return false;
    return true;
}

Coefficient physical_limit(const LaurentSeries& s) {
    if (s.hi() < 0) throw PreconditionError("finite part unknown at this truncation");
    for (auto& [k, v] : s.coefficients()) {
        (void)v;
        if (k < 0)
            throw PreconditionError("physical limit does not exist: nonzero principal part");
    }
    return s.at(0);
}

// ---------------------------------------------------------------------------
// Characters and schemes

const LaurentSeries& Character::on_generator(GraphId id) const {
    auto it = values.find(id);
    if (it == values.end())
        throw PreconditionError("character undefined on generator " + std::to_string(id));
    return it->second;
}

LaurentSeries Character::of(const GraphMono& m) const {
    LaurentSeries acc = LaurentSeries::one();
    for (GraphId id : m) acc = acc * on_generator(id);
    return acc;
}

LaurentSeries Character::of(const GraphSum& s) const {
    LaurentSeries acc;
    for (auto& [m, c] : s) acc = acc + of(m).scaled(c);
    return acc;
}

LaurentSeries Scheme::apply(const LaurentSeries& s, const FeynmanGraph& g) const {
    if (kind == Kind::minimal) return s.principal_part();
    int n = g.n_external();
    auto it = reference.find(n);
    if (it == reference.end())
        throw PreconditionError("no reference point configured for graphs with " +
                                std::to_string(n) + " external legs");
    return s.bind(it->second);
}

namespace {

GaussianRational parse_constant(const json& v, const char* where) {
    if (v.is_number_integer()) return GaussianRational(static_cast<long>(v.get<long long>()));
    if (v.is_string()) {
        Polynomial p = parse_polynomial(v.get<std::string>(), {});
        if (!p.is_constant())
            throw std::invalid_argument(std::string(where) + ": expected a constant value");
        return p.constant_value();
    }
    throw std::invalid_argument(std::string(where) + ": values must be integers or strings");
}

int parse_int_key(const std::string& s, const char* where) {
    std::size_t pos = 0;
    int v;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(where) + ": bad integer key \"" + s + "\"");
    }
    if (pos != s.size())
        throw std::invalid_argument(std::string(where) + ": bad integer key \"" + s + "\"");
    return v;
}

std::string slurp(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument(std::string("cannot open ") + what + " file \"" + path + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Scheme parse_scheme_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("scheme file: ") + e.what());
    }
    if (!j.is_object() || j.value("kind", "") != "scheme")
        throw std::invalid_argument("scheme file: expected an object with kind \"scheme\"");
    static const std::set<std::string> known = {"kind", "name", "window", "reference"};
    for (auto& [k, v] : j.items()) {
        (void)v;
        if (!known.count(k))
            throw std::invalid_argument("scheme file: unknown field \"" + k + "\"");
    }
    Scheme s;
    std::string name = j.at("name").get<std::string>();
    if (name == "minimal")
        s.kind = Scheme::Kind::minimal;
    else if (name == "momentum")
        s.kind = Scheme::Kind::momentum;
    else
        throw std::invalid_argument("scheme file: unknown scheme \"" + name +
                                    "\" (expected \"minimal\" or \"momentum\")");
    if (j.count("window")) {
        const json& w = j.at("window");
        if (!w.is_array() || w.size() != 2)
            throw std::invalid_argument("scheme file: window must be [lo, hi]");
        s.window_lo = w[0].get<int>();
        s.window_hi = w[1].get<int>();
        if (s.window_lo > s.window_hi)
            throw std::invalid_argument("scheme file: window must be [lo, hi] with lo <= hi");
    }
    if (j.count("reference")) {
        for (auto& [k, pt] : j.at("reference").items()) {
            int n = parse_int_key(k, "scheme file reference");
            if (!pt.is_object())
                throw std::invalid_argument("scheme file: reference entries must be objects");
            std::map<VarId, GaussianRational> vals;
            for (auto& [vn, vv] : pt.items())
                vals[intern_var(vn)] = parse_constant(vv, "scheme file reference");
            s.reference[n] = std::move(vals);
        }
    }
    if (s.kind == Scheme::Kind::momentum && s.reference.empty())
        throw std::invalid_argument("scheme file: the momentum scheme needs a reference table");
    return s;
}

Scheme load_scheme_file(const std::string& path) {
    return parse_scheme_json(slurp(path, "scheme"));
}

Character parse_character_json(HopfAlgebra& H, const std::string& text, const Scheme& scheme) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("character file: ") + e.what());
    }
    if (!j.is_object() || j.value("kind", "") != "character")
        throw std::invalid_argument("character file: expected an object with kind \"character\"");
    static const std::set<std::string> known = {"kind", "symbols", "entries"};
    for (auto& [k, v] : j.items()) {
        (void)v;
        if (!known.count(k))
            throw std::invalid_argument("character file: unknown field \"" + k + "\"");
    }
    std::map<std::string, VarId> symbols;
    if (j.count("symbols"))
        for (auto& s : j.at("symbols")) {
            std::string n = s.get<std::string>();
            symbols[n] = intern_var(n);
        }
    Character phi;
    for (auto& e : j.at("entries")) {
        static const std::set<std::string> eknown = {"graph", "series"};
        for (auto& [k, v] : e.items()) {
            (void)v;
            if (!eknown.count(k))
                throw std::invalid_argument("character file: unknown entry field \"" + k + "\"");
        }
        FeynmanGraph g = parse_graph_json(e.at("graph").dump());
        GraphId id = H.intern(g);
        std::map<std::string, VarId> vars = symbols;
        for (auto& ed : g.edges)
            if (!ed.mass.empty()) vars[ed.mass] = intern_var(ed.mass);
        std::map<int, Coefficient> coeffs;
        for (auto& [pk, pv] : e.at("series").items()) {
            int p = parse_int_key(pk, "character series");
            if (p < scheme.window_lo || p > scheme.window_hi)
                throw std::invalid_argument("character file: series power " + std::to_string(p) +
                                            " lies outside the scheme window");
            coeffs[p] = Coefficient(parse_rational_function(pv.get<std::string>(), vars));
        }
        if (phi.values.count(id))
            throw std::invalid_argument("character file: duplicate entry for one graph");
        phi.values.emplace(id, LaurentSeries(scheme.window_lo, scheme.window_hi, coeffs));
    }
    return phi;
}

Character load_character_file(HopfAlgebra& H, const std::string& path, const Scheme& scheme) {
    return parse_character_json(H, slurp(path, "character"), scheme);
}

// ---------------------------------------------------------------------------
// Birkhoff splitting

Birkhoff::Birkhoff(HopfAlgebra& H, Character phi, Scheme scheme)
    : H_(H), phi_(std::move(phi)), scheme_(std::move(scheme)) {}

void Birkhoff::require_log_divergent(GraphId id) const {
    if (scheme_.kind != Scheme::Kind::momentum) return;
    if (omega_of(H_.graph(id)) != 0)
        throw PreconditionError(
            "the momentum scheme is restricted to logarithmically divergent graphs; \"" +
            H_.name(id) + "\" is not");
}

LaurentSeries Birkhoff::bogoliubov(GraphId id) {
    auto it = bar_memo_.find(id);
    if (it != bar_memo_.end()) return it->second;
    require_log_divergent(id);
    LaurentSeries acc = phi_.on_generator(id);
    for (auto& [lr, c] : H_.reduced_coproduct(id))
        acc = acc + (minus_of(lr.first) * phi_.of(lr.second)).scaled(c);
    bar_memo_[id] = acc;
    return acc;
}

const LaurentSeries& Birkhoff::minus_of(GraphId id) {
    auto it = minus_memo_.find(id);
    if (it != minus_memo_.end()) return it->second;
    LaurentSeries m = -scheme_.apply(bogoliubov(id), H_.graph(id));
    return minus_memo_.emplace(id, std::move(m)).first->second;
}

LaurentSeries Birkhoff::plus_of(GraphId id) { return bogoliubov(id) + minus_of(id); }

LaurentSeries Birkhoff::minus_of(const GraphMono& m) {
    LaurentSeries acc = LaurentSeries::one();
    for (GraphId id : m) acc = acc * minus_of(id);
    return acc;
}

LaurentSeries Birkhoff::plus_of(const GraphMono& m) {
    LaurentSeries acc = LaurentSeries::one();
    for (GraphId id : m) acc = acc * plus_of(id);
    return acc;
}

LaurentSeries Birkhoff::minus_of(const GraphSum& s) {
    LaurentSeries acc;
    for (auto& [m, c] : s) acc = acc + minus_of(m).scaled(c);
    return acc;
}

LaurentSeries Birkhoff::convolution_with_phi(const GraphMono& m) {
    LaurentSeries acc;
    for (auto& [lr, c] : H_.coproduct(m))
        acc = acc + (minus_of(lr.first) * phi_.of(lr.second)).scaled(c);
    return acc;
}

} // namespace pinch
