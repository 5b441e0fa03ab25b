#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pinch/rational_function.hpp"

namespace pinch {

// Dense exact matrix over the Gaussian rationals.
class QMatrix {
public:
    QMatrix() : r_(0), c_(0) {}
    QMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    GaussianRational& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    const GaussianRational& at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

    QMatrix transpose() const;
    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix scaled(const GaussianRational& s) const;

    bool is_real() const;
    bool is_symmetric() const;

    GaussianRational determinant() const;  // square only
    std::size_t rank() const;
    // Basis of the right kernel (each vector as a column-major std::vector).
    std::vector<std::vector<GaussianRational>> nullspace() const;

    // Submatrix on the given (sorted) row/col index sets.
    QMatrix submatrix(const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) const;

    // Exact sign tests for real symmetric matrices; throw if not real symmetric.
    bool is_positive_definite() const;       // leading principal minors > 0
    bool is_positive_semidefinite() const;   // all principal minors >= 0

    bool operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && e_ == o.e_; }

private:
    std::size_t r_, c_;
    std::vector<GaussianRational> e_;
};

// Dense matrix of rational functions; also used with all-polynomial entries
// (quadratic-form matrices, diagonalizing bases, regulators).
class SymbolicMatrix {
public:
    SymbolicMatrix() : r_(0), c_(0) {}
    SymbolicMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}
    static SymbolicMatrix identity(std::size_t n);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    RationalFunction& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    const RationalFunction& at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

    bool is_polynomial() const;
    // Requires the entry to be polynomial.
    Polynomial poly_at(std::size_t i, std::size_t j) const;

    SymbolicMatrix transpose() const;
    SymbolicMatrix operator*(const SymbolicMatrix& o) const;
    SymbolicMatrix operator+(const SymbolicMatrix& o) const;
    SymbolicMatrix operator-(const SymbolicMatrix& o) const;
    SymbolicMatrix scaled(const RationalFunction& s) const;

    bool equals(const SymbolicMatrix& o) const;
    bool is_symmetric() const;
    bool is_zero() const;

    // Fraction-free (Bareiss) elimination on the polynomial part; rational
    // entries are handled by clearing row denominators first.  0x0 -> 1.
    RationalFunction determinant() const;
    // adj(M) with M * adj(M) == det(M) * I; polynomial entries stay polynomial.
    SymbolicMatrix adjugate() const;

    SymbolicMatrix subst(const std::map<VarId, Polynomial>& repl) const;
    QMatrix eval_exact(const std::map<VarId, GaussianRational>& point) const;

    std::string str() const;

private:
    std::size_t r_, c_;
    std::vector<RationalFunction> e_;
};

// Bareiss determinant of an all-polynomial grid (row-major, n x n).
Polynomial bareiss_determinant(std::vector<std::vector<Polynomial>> m);

}  // namespace pinch
