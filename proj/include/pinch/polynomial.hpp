#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/rational.hpp"

namespace pinch {

// Indeterminates are interned process-wide; the registration order fixes the
// variable order used by the graded-lexicographic term order and by canonical
// serialization.  Callers that care about printed order (fixtures, file
// loaders) intern their variables up front in a documented sequence.
using VarId = std::uint32_t;

VarId intern_var(std::string_view name);
bool lookup_var(std::string_view name, VarId& out);
const std::string& var_name(VarId id);
std::size_t var_count();

// Sparse exponent vector: (var, exp) pairs, ascending var, exps > 0.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<VarId, std::uint32_t>> factors);
    static Monomial var(VarId v, std::uint32_t e = 1);

    const std::vector<std::pair<VarId, std::uint32_t>>& factors() const { return f_; }
    std::uint32_t degree() const;
    std::uint32_t degree_in(VarId v) const;
    bool empty() const { return f_.empty(); }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial divide(const Monomial& o) const;  // this / o (o must divide)

    bool operator==(const Monomial& o) const { return f_ == o.f_; }
    bool operator!=(const Monomial& o) const { return f_ != o.f_; }

    std::string str() const;

private:
    std::vector<std::pair<VarId, std::uint32_t>> f_;
};

// Graded lexicographic order; returns <0, 0, >0 as a is smaller/equal/greater.
int term_order_cmp(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    GaussianRational coeff;
};

// Multivariate polynomial over the Gaussian rationals.  Terms are kept sorted
// in descending graded-lex order with no zero coefficients, so equality is
// plain structural equality and serialization is canonical.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(GaussianRational c);
    Polynomial(int n) : Polynomial(GaussianRational(n)) {}
    static Polynomial variable(VarId v);
    static Polynomial from_terms(std::vector<Term> terms);  // normalizes

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    // Zero polynomial yields 0; otherwise requires is_constant().
    GaussianRational constant_value() const;

    std::uint32_t total_degree() const;  // 0 for the zero polynomial
    std::uint32_t degree_in(VarId v) const;
    std::vector<VarId> vars() const;  // ascending, distinct
    bool depends_on(VarId v) const;

    const Term& leading_term() const;  // throws on zero

    GaussianRational coeff_of(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial scaled(const GaussianRational& c) const;
    Polynomial pow(std::uint32_t e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(VarId v) const;

    // Simultaneous substitution var -> polynomial (identity where absent).
    Polynomial subst(const std::map<VarId, Polynomial>& repl) const;
    Polynomial subst(VarId v, const Polynomial& repl) const;

    // Exact division: returns this/d when d divides exactly, nullopt otherwise.
    std::optional<Polynomial> divide_exact(const Polynomial& d) const;

    // Positive rational c with this/c "primitive" (integer Gaussian
    // coefficients with unit content).  Zero polynomial yields 1.
    mpq_class content() const;

    std::complex<double> eval(const std::map<VarId, std::complex<double>>& point) const;
    GaussianRational eval_exact(const std::map<VarId, GaussianRational>& point) const;

    std::string str() const;

private:
    std::vector<Term> t_;  // descending graded-lex, no zero coeffs
    void normalize();
};

// Polynomial specialized to numeric coefficients and a slot-indexed unknown
// vector; the solver's inner loop evaluates these.
struct CompiledPoly {
    struct CTerm {
        std::complex<double> coeff;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> powers;  // (slot, exp)
    };
    std::vector<CTerm> terms;

    std::complex<double> eval(const std::vector<std::complex<double>>& x) const;
};

// Substitutes `fixed` exactly, maps remaining variables through `slots`;
// throws if a variable is in neither.
CompiledPoly compile_poly(const Polynomial& p, const std::map<VarId, std::uint32_t>& slots,
                          const std::map<VarId, GaussianRational>& fixed);

}  // namespace pinch
