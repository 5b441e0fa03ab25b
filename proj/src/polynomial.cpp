#include "pinch/polynomial.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace pinch {

namespace {

struct VarRegistry {
    std::mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, VarId> ids;
};

VarRegistry& registry() {
    static VarRegistry r;
    return r;
}

}  // namespace

VarId intern_var(std::string_view name) {
    if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.ids.find(std::string(name));
    if (it != r.ids.end()) return it->second;
    VarId id = static_cast<VarId>(r.names.size());
    r.names.emplace_back(name);
    r.ids.emplace(r.names.back(), id);
    return id;
}

bool lookup_var(std::string_view name, VarId& out) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.ids.find(std::string(name));
    if (it == r.ids.end()) return false;
    out = it->second;
    return true;
}

const std::string& var_name(VarId id) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    if (id >= r.names.size()) throw std::out_of_range("unknown variable id");
    return r.names[id];
}

std::size_t var_count() {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    return r.names.size();
}

Monomial::Monomial(std::vector<std::pair<VarId, std::uint32_t>> factors) : f_(std::move(factors)) {
    std::sort(f_.begin(), f_.end());
    std::vector<std::pair<VarId, std::uint32_t>> merged;
    for (auto& [v, e] : f_) {
        if (e == 0) continue;
        if (!merged.empty() && merged.back().first == v)
            merged.back().second += e;
        else
            merged.emplace_back(v, e);
    }
    f_ = std::move(merged);
}

Monomial Monomial::var(VarId v, std::uint32_t e) {
    Monomial m;
    if (e > 0) m.f_.emplace_back(v, e);
    return m;
}

std::uint32_t Monomial::degree() const {
    std::uint32_t d = 0;
    for (auto& [v, e] : f_) d += e;
    return d;
}

std::uint32_t Monomial::degree_in(VarId v) const {
    for (auto& [w, e] : f_)
        if (w == v) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial out;
    out.f_.reserve(f_.size() + o.f_.size());
    std::size_t i = 0, j = 0;
    while (i < f_.size() || j < o.f_.size()) {
        if (j == o.f_.size() || (i < f_.size() && f_[i].first < o.f_[j].first)) {
            out.f_.push_back(f_[i++]);
        } else if (i == f_.size() || o.f_[j].first < f_[i].first) {
            out.f_.push_back(o.f_[j++]);
        } else {
            out.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
            ++i, ++j;
        }
    }
    return out;
}

bool Monomial::divides(const Monomial& o) const {
    std::size_t j = 0;
    for (auto& [v, e] : f_) {
        while (j < o.f_.size() && o.f_[j].first < v) ++j;
        if (j == o.f_.size() || o.f_[j].first != v || o.f_[j].second < e) return false;
    }
    return true;
}

Monomial Monomial::divide(const Monomial& o) const {
    Monomial out;
    std::size_t j = 0;
    for (auto& [v, e] : f_) {
        while (j < o.f_.size() && o.f_[j].first < v) {
            throw std::invalid_argument("Monomial::divide: not divisible");
        }
        std::uint32_t sub = 0;
        if (j < o.f_.size() && o.f_[j].first == v) {
            sub = o.f_[j].second;
            ++j;
        }
        if (sub > e) throw std::invalid_argument("Monomial::divide: not divisible");
        if (e - sub > 0) out.f_.emplace_back(v, e - sub);
    }
    if (j != o.f_.size()) throw std::invalid_argument("Monomial::divide: not divisible");
    return out;
}

std::string Monomial::str() const {
    std::string out;
    for (auto& [v, e] : f_) {
        if (!out.empty()) out += "*";
        out += var_name(v);
        if (e >= 2) out += "^" + std::to_string(e);
    }
    return out;
}

int term_order_cmp(const Monomial& a, const Monomial& b) {
    std::uint32_t da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    // Lexicographic on exponent vectors, earlier-registered variables more
    // significant: at the first position where the vectors differ, the larger
    // exponent wins.
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() && j < fb.size()) {
        if (fa[i].first < fb[j].first) return 1;   // a has positive exp where b has 0
        if (fb[j].first < fa[i].first) return -1;
        if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? -1 : 1;
        ++i, ++j;
    }
    if (i < fa.size()) return 1;
    if (j < fb.size()) return -1;
    return 0;
}

namespace {
struct TermGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return term_order_cmp(a, b) > 0; }
};
}  // namespace

Polynomial::Polynomial(GaussianRational c) {
    if (!c.is_zero()) t_.push_back({Monomial(), std::move(c)});
}

Polynomial Polynomial::variable(VarId v) {
    Polynomial p;
    p.t_.push_back({Monomial::var(v), GaussianRational::one()});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.t_ = std::move(terms);
    p.normalize();
    return p;
}

void Polynomial::normalize() {
    std::sort(t_.begin(), t_.end(),
              [](const Term& a, const Term& b) { return term_order_cmp(a.mono, b.mono) > 0; });
    std::vector<Term> merged;
    for (auto& t : t_) {
        if (!merged.empty() && merged.back().mono == t.mono)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    t_.clear();
    for (auto& t : merged)
        if (!t.coeff.is_zero()) t_.push_back(std::move(t));
}

bool Polynomial::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_[0].mono.empty());
}

GaussianRational Polynomial::constant_value() const {
    if (t_.empty()) return GaussianRational::zero();
    if (!is_constant()) throw std::logic_error("Polynomial::constant_value: not constant");
    return t_[0].coeff;
}

std::uint32_t Polynomial::total_degree() const {
    return t_.empty() ? 0 : t_[0].mono.degree();
}

std::uint32_t Polynomial::degree_in(VarId v) const {
    std::uint32_t d = 0;
    for (auto& t : t_) d = std::max(d, t.mono.degree_in(v));
    return d;
}

std::vector<VarId> Polynomial::vars() const {
    std::vector<VarId> out;
    for (auto& t : t_)
        for (auto& [v, e] : t.mono.factors()) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Polynomial::depends_on(VarId v) const {
    for (auto& t : t_)
        if (t.mono.degree_in(v) > 0) return true;
    return false;
}

const Term& Polynomial::leading_term() const {
    if (t_.empty()) throw std::logic_error("Polynomial::leading_term: zero polynomial");
    return t_[0];
}

GaussianRational Polynomial::coeff_of(const Monomial& m) const {
    for (auto& t : t_)
        if (t.mono == m) return t.coeff;
    return GaussianRational::zero();
}

Polynomial Polynomial::operator-() const {
    Polynomial p(*this);
    for (auto& t : p.t_) t.coeff = -t.coeff;
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        int c;
        if (i == t_.size())
            c = -1;
        else if (j == o.t_.size())
            c = 1;
        else
            c = term_order_cmp(t_[i].mono, o.t_[j].mono);
        if (c > 0) {
            out.push_back(std::move(t_[i++]));
        } else if (c < 0) {
            out.push_back(o.t_[j++]);
        } else {
            GaussianRational s = t_[i].coeff + o.t_[j].coeff;
            if (!s.is_zero()) out.push_back({t_[i].mono, std::move(s)});
            ++i, ++j;
        }
    }
    t_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::map<Monomial, GaussianRational, TermGreater> acc;
    for (auto& ta : a.t_)
        for (auto& tb : b.t_) {
            Monomial m = ta.mono * tb.mono;
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), ta.coeff * tb.coeff);
            else
                it->second += ta.coeff * tb.coeff;
        }
    Polynomial out;
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.t_.push_back({m, c});
    return out;
}

Polynomial Polynomial::scaled(const GaussianRational& c) const {
    if (c.is_zero()) return Polynomial();
    Polynomial p(*this);
    for (auto& t : p.t_) t.coeff *= c;
    return p;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
    Polynomial out(GaussianRational::one());
    for (std::uint32_t k = 0; k < e; ++k) out *= *this;
    return out;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (std::size_t k = 0; k < t_.size(); ++k)
        if (t_[k].mono != o.t_[k].mono || t_[k].coeff != o.t_[k].coeff) return false;
    return true;
}

Polynomial Polynomial::derivative(VarId v) const {
    std::vector<Term> out;
    for (auto& t : t_) {
        std::uint32_t e = t.mono.degree_in(v);
        if (e == 0) continue;
        Monomial m = t.mono.divide(Monomial::var(v));
        out.push_back({std::move(m), t.coeff * GaussianRational(static_cast<long>(e))});
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::subst(const std::map<VarId, Polynomial>& repl) const {
    // Per-variable power caches keep repeated exponents cheap.
    std::map<VarId, std::vector<Polynomial>> powers;
    auto power = [&](VarId v, std::uint32_t e) -> const Polynomial& {
        auto& cache = powers[v];
        if (cache.empty()) {
            cache.push_back(Polynomial(GaussianRational::one()));
            auto it = repl.find(v);
            cache.push_back(it != repl.end() ? it->second : Polynomial::variable(v));
        }
        while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
        return cache[e];
    };
    Polynomial out;
    for (auto& t : t_) {
        Polynomial piece(t.coeff);
        for (auto& [v, e] : t.mono.factors()) piece *= power(v, e);
        out += piece;
    }
    return out;
}

Polynomial Polynomial::subst(VarId v, const Polynomial& r) const {
    return subst(std::map<VarId, Polynomial>{{v, r}});
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
    if (d.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
    Polynomial rem(*this), quot;
    const Term& lead = d.leading_term();
    while (!rem.is_zero()) {
        const Term& rl = rem.leading_term();
        if (!lead.mono.divides(rl.mono)) return std::nullopt;
        Term q{rl.mono.divide(lead.mono), rl.coeff / lead.coeff};
        Polynomial qp = from_terms({q});
        quot += qp;
        rem -= qp * d;
    }
    return quot;
}

mpq_class Polynomial::content() const {
    mpz_class num_gcd = 0, den_lcm = 1;
    auto fold = [&](const mpq_class& q) {
        if (q == 0) return;
        mpz_class n = abs(q.get_num());
        mpz_class d = q.get_den();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    };
    for (auto& t : t_) {
        fold(t.coeff.re());
        fold(t.coeff.im());
    }
    if (num_gcd == 0) return mpq_class(1);
    mpq_class c(num_gcd, den_lcm);
    c.canonicalize();
    return c;
}

std::complex<double> Polynomial::eval(const std::map<VarId, std::complex<double>>& point) const {
    std::map<VarId, std::vector<std::complex<double>>> powers;
    auto power = [&](VarId v, std::uint32_t e) -> std::complex<double> {
        auto it = point.find(v);
        if (it == point.end())
            throw std::invalid_argument("Polynomial::eval: missing value for " + var_name(v));
        auto& cache = powers[v];
        if (cache.empty()) cache = {std::complex<double>(1.0, 0.0), it->second};
        while (cache.size() <= e) cache.push_back(cache.back() * it->second);
        return cache[e];
    };
    std::complex<double> acc(0.0, 0.0);
    for (auto& t : t_) {
        std::complex<double> v = t.coeff.to_complex();
        for (auto& [var, e] : t.mono.factors()) v *= power(var, e);
        acc += v;
    }
    return acc;
}

GaussianRational Polynomial::eval_exact(const std::map<VarId, GaussianRational>& point) const {
    GaussianRational acc;
    for (auto& t : t_) {
        GaussianRational v = t.coeff;
        for (auto& [var, e] : t.mono.factors()) {
            auto it = point.find(var);
            if (it == point.end())
                throw std::invalid_argument("Polynomial::eval_exact: missing value for " +
                                            var_name(var));
            for (std::uint32_t k = 0; k < e; ++k) v *= it->second;
        }
        acc += v;
    }
    return acc;
}

std::string Polynomial::str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < t_.size(); ++k) {
        const Term& t = t_[k];
        std::string piece;
        if (t.mono.empty()) {
            piece = t.coeff.str();
        } else {
            std::string c = t.coeff.str();
            bool mixed = t.coeff.re() != 0 && t.coeff.im() != 0;
            if (mixed)
                piece = "(" + c + ")*" + t.mono.str();
            else if (c == "1")
                piece = t.mono.str();
            else if (c == "-1")
                piece = "-" + t.mono.str();
            else
                piece = c + "*" + t.mono.str();
        }
        if (k == 0) {
            out = piece;
        } else if (!piece.empty() && piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

std::complex<double> CompiledPoly::eval(const std::vector<std::complex<double>>& x) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& t : terms) {
        std::complex<double> v = t.coeff;
        for (auto& [slot, e] : t.powers) {
            std::complex<double> b = x[slot];
            for (std::uint32_t k = 0; k < e; ++k) v *= b;
        }
        acc += v;
    }
    return acc;
}

CompiledPoly compile_poly(const Polynomial& p, const std::map<VarId, std::uint32_t>& slots,
                          const std::map<VarId, GaussianRational>& fixed) {
    std::map<VarId, Polynomial> repl;
    for (auto& [v, val] : fixed) repl.emplace(v, Polynomial(val));
    Polynomial q = p.subst(repl);
    CompiledPoly out;
    for (auto& t : q.terms()) {
        CompiledPoly::CTerm ct;
        ct.coeff = t.coeff.to_complex();
        for (auto& [v, e] : t.mono.factors()) {
            auto it = slots.find(v);
            if (it == slots.end())
                throw std::invalid_argument("compile_poly: unbound variable " + var_name(v));
            ct.powers.emplace_back(it->second, e);
        }
        out.terms.push_back(std::move(ct));
    }
    return out;
}

}  // namespace pinch
