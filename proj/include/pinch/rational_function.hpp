#pragma once

#include <map>
#include <string>

#include "pinch/polynomial.hpp"

namespace pinch {

// Quotient of polynomials.  Normal form: denominator nonzero with leading
// coefficient 1; num/den are reduced by rational content only (no multivariate
// gcd), so equality testing goes through cross-multiplication.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(GaussianRational::one()) {}
    RationalFunction(Polynomial p) : num_(std::move(p)), den_(GaussianRational::one()) {}
    RationalFunction(GaussianRational c) : RationalFunction(Polynomial(std::move(c))) {}
    RationalFunction(int n) : RationalFunction(Polynomial(n)) {}
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    // Requires is_polynomial().
    Polynomial as_polynomial() const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction derivative(VarId v) const;
    RationalFunction subst(const std::map<VarId, Polynomial>& repl) const;

    // Value equality (cross-multiplied); exact.
    bool equals(const RationalFunction& o) const;

    std::complex<double> eval(const std::map<VarId, std::complex<double>>& point) const;
    GaussianRational eval_exact(const std::map<VarId, GaussianRational>& point) const;

    std::string str() const;

private:
    Polynomial num_, den_;
    void normalize();
};

}  // namespace pinch
