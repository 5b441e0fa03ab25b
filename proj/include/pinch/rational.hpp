#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace pinch {

// Canonical text form of an exact rational: "7", "-3/4".
std::string rational_str(const mpq_class& q);

// Exact complex rational a + b*i.  The workhorse scalar for all symbolic
// arithmetic in this library; arbitrary precision via GMP.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(int n) : re_(n), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}
    GaussianRational(mpq_class re) : re_(std::move(re)), im_(0) {}
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }
    static GaussianRational frac(long num, long den) {
        if (den == 0) throw std::invalid_argument("GaussianRational: zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return GaussianRational(q);
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, mpq_class(-im_)}; }
    mpq_class norm_sq() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    GaussianRational inverse() const {
        if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
        mpq_class n = norm_sq();
        return {mpq_class(re_ / n), mpq_class(-im_ / n)};
    }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Total order (real-lex); used only to keep containers deterministic.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    // "0", "3", "-1/2", "i", "-i", "2/3*i", "1/2+3/4*i", "1-i"
    std::string str() const;

private:
    mpq_class re_, im_;
};

}  // namespace pinch
