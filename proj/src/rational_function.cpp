#include "pinch/rational_function.hpp"

#include <stdexcept>

namespace pinch {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(GaussianRational::one());
        return;
    }
    GaussianRational lc = den_.leading_term().coeff;
    if (!lc.is_one()) {
        GaussianRational inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Polynomial RationalFunction::as_polynomial() const {
    if (!is_polynomial()) throw std::logic_error("RationalFunction: not a polynomial");
    return num_.scaled(den_.constant_value().inverse());
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r(*this);
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::derivative(VarId v) const {
    Polynomial n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
    return RationalFunction(std::move(n), den_ * den_);
}

RationalFunction RationalFunction::subst(const std::map<VarId, Polynomial>& repl) const {
    return RationalFunction(num_.subst(repl), den_.subst(repl));
}

bool RationalFunction::equals(const RationalFunction& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

std::complex<double> RationalFunction::eval(
    const std::map<VarId, std::complex<double>>& point) const {
    return num_.eval(point) / den_.eval(point);
}

GaussianRational RationalFunction::eval_exact(
    const std::map<VarId, GaussianRational>& point) const {
    GaussianRational d = den_.eval_exact(point);
    if (d.is_zero()) throw std::domain_error("RationalFunction: pole at evaluation point");
    return num_.eval_exact(point) / d;
}

std::string RationalFunction::str() const {
    if (is_polynomial()) return as_polynomial().str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace pinch
