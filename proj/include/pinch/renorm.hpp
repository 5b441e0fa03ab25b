#pragma once

// Hopf algebra of one-particle-irreducible graphs and renormalization by
// Birkhoff splitting.  The product is disjoint union (commutative monomials
// over a registry of generators), the coproduct pairs each divergent subgraph
// with the graph it contracts to, and characters take values in truncated
// Laurent series in the regulator eps.  Series coefficients are exact
// rational functions of kinematic symbols, or opaque numeric samplers.  A
// scheme R splits series; the Bogoliubov recursion then turns a character
// phi into counterterms phi_minus and the renormalized part phi_plus.

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pinch/errors.hpp"
#include "pinch/graph.hpp"
#include "pinch/rational_function.hpp"

namespace pinch {

// ---------------------------------------------------------------------------
// Graph-sum layer

using GraphId = int;
using GraphMono = std::vector<GraphId>;  // ascending ids with repeats; empty = 1
using GraphSum = std::map<GraphMono, mpq_class>;
using TensorSum = std::map<std::pair<GraphMono, GraphMono>, mpq_class>;
using TensorCube = std::map<std::tuple<GraphMono, GraphMono, GraphMono>, mpq_class>;

GraphMono mono_mul(const GraphMono& a, const GraphMono& b);
void add_term(GraphSum& s, const GraphMono& m, const mpq_class& c);
void add_term(TensorSum& s, const GraphMono& l, const GraphMono& r, const mpq_class& c);
GraphSum sum_mul(const GraphSum& a, const GraphSum& b);

// Registry of 1PI generators (isomorphism-classified) carrying the coproduct
// and antipode.  Generators must be 1PI with at least one loop; trees and
// bridged graphs are rejected.
class HopfAlgebra {
public:
    GraphId intern(const FeynmanGraph& g, const std::string& name_hint = "");
    const FeynmanGraph& graph(GraphId id) const;
    const std::string& name(GraphId id) const;
    std::size_t size() const { return graphs_.size(); }
    int grading(GraphId id) const;           // loop number
    int grading(const GraphMono& m) const;

    TensorSum coproduct(GraphId id);
    TensorSum coproduct(const GraphMono& m);       // multiplicative
    TensorSum reduced_coproduct(GraphId id);       // without g*1 and 1*g
    TensorSum reduced_coproduct(const GraphMono& m);
    GraphSum antipode(GraphId id);
    GraphSum antipode(const GraphMono& m);         // factorwise
    GraphSum antipode(const GraphSum& s);          // linear

    // Axiom material: expand one tensor slot, or collapse by multiplying.
    TensorCube expand_left(const TensorSum& t);    // applies coproduct to left slots
    TensorCube expand_right(const TensorSum& t);
    GraphSum counit_convolution(GraphId id);       // m(S (x) id) Delta(g)

    std::string mono_str(const GraphMono& m) const;
    std::string sum_str(const GraphSum& s) const;
    std::string tensor_str(const TensorSum& t) const;

private:
    std::vector<FeynmanGraph> graphs_;
    std::vector<std::string> names_;
    std::map<std::string, GraphId> by_key_;
    std::map<GraphId, TensorSum> cop_memo_;
    std::map<GraphId, GraphSum> anti_memo_;
};

// ---------------------------------------------------------------------------
// Coefficients: exact rational functions or numeric samplers

using SampleFn =
    std::function<std::complex<double>(const std::map<VarId, std::complex<double>>&)>;

class Coefficient {
public:
    Coefficient() : f_(RationalFunction()) {}
    Coefficient(RationalFunction f) : f_(std::move(f)) {}
    Coefficient(mpq_class q) : f_(RationalFunction(GaussianRational(std::move(q)))) {}
    Coefficient(int n) : f_(RationalFunction(n)) {}
    static Coefficient sampler(SampleFn fn);

    bool exact() const { return f_.has_value(); }
    bool is_zero() const { return f_ && f_->is_zero(); }  // samplers are never known zero
    const RationalFunction& value() const;                // exact only

    Coefficient operator+(const Coefficient& o) const;
    Coefficient operator*(const Coefficient& o) const;
    Coefficient operator-() const;
    Coefficient scaled(const mpq_class& c) const;

    // Partial substitution of exact values; samplers capture the bindings.
    Coefficient bind(const std::map<VarId, GaussianRational>& point) const;
    std::complex<double> sample(const std::map<VarId, std::complex<double>>& point) const;

    // Exact structural equality; false whenever a sampler is involved.
    bool equals(const Coefficient& o) const;

    std::string str() const;

private:
    std::optional<RationalFunction> f_;
    SampleFn s_;
};

// ---------------------------------------------------------------------------
// Truncated Laurent series in eps

// Coefficients are known on the window [lo, hi]; below lo the series is
// identically zero, above hi it is unknown.  hi == unbounded marks an exact
// series.  Arithmetic tracks the window on which the result is fully
// determined by known data.
class LaurentSeries {
public:
    static constexpr int unbounded = 1 << 20;

    LaurentSeries() : lo_(0), hi_(unbounded) {}                       // exact zero
    static LaurentSeries constant(Coefficient c);
    static LaurentSeries one() { return constant(Coefficient(1)); }
    static LaurentSeries term(int power, Coefficient c);
    LaurentSeries(int lo, int hi, std::map<int, Coefficient> coeffs);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool exact() const { return hi_ == unbounded; }
    bool known(int k) const { return k <= hi_; }  // below lo means known zero
    // Known-zero entries answer an exact zero; k outside the window throws.
    Coefficient at(int k) const;
    const std::map<int, Coefficient>& coefficients() const { return c_; }
    bool known_zero() const;  // exact with no terms

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator-() const;
    LaurentSeries scaled(const mpq_class& c) const;

    LaurentSeries principal_part() const;     // powers < 0; exact above
    LaurentSeries nonnegative_part() const;   // powers >= 0; zero below
    LaurentSeries bind(const std::map<VarId, GaussianRational>& point) const;

    std::string str() const;

private:
    int lo_, hi_;
    std::map<int, Coefficient> c_;  // within window; no stored exact zeros
    void normalize();
};

// True when both series are known and exactly equal on every power of
// [lo, hi]; sampler coefficients make this false.
bool agree_on(const LaurentSeries& a, const LaurentSeries& b, int lo, int hi);

// The eps^0 coefficient; requires the principal part to be known zero.
Coefficient physical_limit(const LaurentSeries& s);

// ---------------------------------------------------------------------------
// Characters and schemes

struct Character {
    std::map<GraphId, LaurentSeries> values;  // per generator
    const LaurentSeries& on_generator(GraphId id) const;  // throws if undefined
    LaurentSeries of(const GraphMono& m) const;           // multiplicative
    LaurentSeries of(const GraphSum& s) const;            // linear
};

struct Scheme {
    enum class Kind { minimal, momentum };
    Kind kind = Kind::minimal;
    int window_lo = -3, window_hi = 3;
    // momentum scheme: external-leg count -> reference substitution.  Mass
    // symbols are left untouched.
    std::map<int, std::map<VarId, GaussianRational>> reference;

    // R applied to the series attached to graph g.
    LaurentSeries apply(const LaurentSeries& s, const FeynmanGraph& g) const;
};

Scheme parse_scheme_json(const std::string& text);
Scheme load_scheme_file(const std::string& path);
// Entries are matched by graph isomorphism through the registry; series
// coefficients may use the listed symbols and each entry's mass symbols.
Character parse_character_json(HopfAlgebra& H, const std::string& text, const Scheme& scheme);
Character load_character_file(HopfAlgebra& H, const std::string& path, const Scheme& scheme);

// ---------------------------------------------------------------------------
// Birkhoff splitting via the Bogoliubov recursion:
//   phibar(g) = phi(g) + sum over the reduced coproduct of minus(left)*phi(right)
//   minus(g)  = -R(phibar(g)),   plus(g) = phibar(g) - R(phibar(g))
// extended multiplicatively to products.  The momentum scheme is restricted
// to logarithmically divergent generators (omega = 0) throughout.
class Birkhoff {
public:
    Birkhoff(HopfAlgebra& H, Character phi, Scheme scheme);

    const LaurentSeries& minus_of(GraphId id);
    LaurentSeries plus_of(GraphId id);
    LaurentSeries bogoliubov(GraphId id);
    LaurentSeries minus_of(const GraphMono& m);
    LaurentSeries plus_of(const GraphMono& m);
    LaurentSeries minus_of(const GraphSum& s);

    // m(minus (x) phi) Delta(m): equals plus_of(m) when the scheme splits.
    LaurentSeries convolution_with_phi(const GraphMono& m);
    const Character& phi() const { return phi_; }
    const Scheme& scheme() const { return scheme_; }

private:
    HopfAlgebra& H_;
    Character phi_;
    Scheme scheme_;
    std::map<GraphId, LaurentSeries> minus_memo_;
    std::map<GraphId, LaurentSeries> bar_memo_;
    void require_log_divergent(GraphId id) const;
};

}  // namespace pinch
