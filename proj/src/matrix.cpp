#include "pinch/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace pinch {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GaussianRational::one();
    return m;
}

QMatrix QMatrix::transpose() const {
    QMatrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("QMatrix: shape mismatch");
    QMatrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.c_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
        }
    return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("QMatrix: shape mismatch");
    QMatrix m(r_, c_);
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
    return m;
}

QMatrix QMatrix::scaled(const GaussianRational& s) const {
    QMatrix m(*this);
    for (auto& x : m.e_) x *= s;
    return m;
}

bool QMatrix::is_real() const {
    for (auto& x : e_)
        if (!x.is_real()) return false;
    return true;
}

bool QMatrix::is_symmetric() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = i + 1; j < c_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

GaussianRational QMatrix::determinant() const {
    if (r_ != c_) throw std::invalid_argument("QMatrix: determinant of non-square matrix");
    std::size_t n = r_;
    QMatrix m(*this);
    GaussianRational det = GaussianRational::one();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m.at(piv, k).is_zero()) ++piv;
        if (piv == n) return GaussianRational::zero();
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
            det = -det;
        }
        det *= m.at(k, k);
        GaussianRational inv = m.at(k, k).inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m.at(i, k).is_zero()) continue;
            GaussianRational f = m.at(i, k) * inv;
            for (std::size_t j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return det;
}

namespace {

// Row-reduce in place; returns pivot column list.
std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
        GaussianRational inv = m.at(row, col).inverse();
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            GaussianRational f = m.at(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t QMatrix::rank() const {
    QMatrix m(*this);
    return rref(m).size();
}

std::vector<std::vector<GaussianRational>> QMatrix::nullspace() const {
    QMatrix m(*this);
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(c_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<GaussianRational>> basis;
    for (std::size_t free = 0; free < c_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<GaussianRational> v(c_);
        v[free] = GaussianRational::one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

QMatrix QMatrix::submatrix(const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) const {
    QMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(rows[i], cols[j]);
    return m;
}

bool QMatrix::is_positive_definite() const {
    if (!is_real() || !is_symmetric())
        throw std::invalid_argument("positive-definite test requires a real symmetric matrix");
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < r_; ++k) {
        idx.push_back(k);
        GaussianRational d = submatrix(idx, idx).determinant();
        if (!(d.is_real() && d.re() > 0)) return false;
    }
    return true;
}

bool QMatrix::is_positive_semidefinite() const {
    if (!is_real() || !is_symmetric())
        throw std::invalid_argument("positive-semidefinite test requires a real symmetric matrix");
    // All principal minors (not only leading) must be nonnegative.
    std::size_t n = r_;
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (std::size_t(1) << k)) idx.push_back(k);
        GaussianRational d = submatrix(idx, idx).determinant();
        if (!(d.is_real() && d.re() >= 0)) return false;
    }
    return true;
}

SymbolicMatrix SymbolicMatrix::identity(std::size_t n) {
    SymbolicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RationalFunction(1);
    return m;
}

bool SymbolicMatrix::is_polynomial() const {
    for (auto& x : e_)
        if (!x.is_polynomial()) return false;
    return true;
}

Polynomial SymbolicMatrix::poly_at(std::size_t i, std::size_t j) const {
    return at(i, j).as_polynomial();
}

SymbolicMatrix SymbolicMatrix::transpose() const {
    SymbolicMatrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

SymbolicMatrix SymbolicMatrix::operator*(const SymbolicMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("SymbolicMatrix: shape mismatch");
    SymbolicMatrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.c_; ++j)
                m.at(i, j) += at(i, k) * o.at(k, j);
        }
    return m;
}

SymbolicMatrix SymbolicMatrix::operator+(const SymbolicMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("SymbolicMatrix: shape mismatch");
    SymbolicMatrix m(r_, c_);
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
    return m;
}

SymbolicMatrix SymbolicMatrix::operator-(const SymbolicMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("SymbolicMatrix: shape mismatch");
    SymbolicMatrix m(r_, c_);
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] - o.e_[k];
    return m;
}

SymbolicMatrix SymbolicMatrix::scaled(const RationalFunction& s) const {
    SymbolicMatrix m(*this);
    for (auto& x : m.e_) x *= s;
    return m;
}

bool SymbolicMatrix::equals(const SymbolicMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (std::size_t k = 0; k < e_.size(); ++k)
        if (!e_[k].equals(o.e_[k])) return false;
    return true;
}

bool SymbolicMatrix::is_symmetric() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = i + 1; j < c_; ++j)
            if (!at(i, j).equals(at(j, i))) return false;
    return true;
}

bool SymbolicMatrix::is_zero() const {
    for (auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

Polynomial bareiss_determinant(std::vector<std::vector<Polynomial>> m) {
    std::size_t n = m.size();
    if (n == 0) return Polynomial(GaussianRational::one());
    for (auto& row : m)
        if (row.size() != n) throw std::invalid_argument("bareiss_determinant: not square");
    bool neg = false;
    Polynomial prev(GaussianRational::one());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return Polynomial();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto q = num.divide_exact(prev);
                if (!q) throw std::logic_error("bareiss_determinant: inexact division");
                m[i][j] = std::move(*q);
            }
            m[i][k] = Polynomial();
        }
        prev = m[k][k];
    }
    Polynomial det = m[n - 1][n - 1];
    return neg ? -det : det;
}

RationalFunction SymbolicMatrix::determinant() const {
    if (r_ != c_) throw std::invalid_argument("SymbolicMatrix: determinant of non-square matrix");
    std::size_t n = r_;
    if (n == 0) return RationalFunction(1);
    // Clear denominators row by row, then run fraction-free elimination.
    std::vector<std::vector<Polynomial>> grid(n, std::vector<Polynomial>(n));
    Polynomial divisor(GaussianRational::one());
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial rowden(GaussianRational::one());
        for (std::size_t j = 0; j < n; ++j) rowden *= at(i, j).den();
        divisor *= rowden;
        for (std::size_t j = 0; j < n; ++j) {
            auto q = rowden.divide_exact(at(i, j).den());
            grid[i][j] = at(i, j).num() * (*q);
        }
    }
    return RationalFunction(bareiss_determinant(std::move(grid)), divisor);
}

SymbolicMatrix SymbolicMatrix::adjugate() const {
    if (r_ != c_) throw std::invalid_argument("SymbolicMatrix: adjugate of non-square matrix");
    std::size_t n = r_;
    SymbolicMatrix adj(n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj.at(0, 0) = RationalFunction(1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            SymbolicMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(rr, cc) = at(r, c);
                    ++cc;
                }
                ++rr;
            }
            RationalFunction d = minor.determinant();
            adj.at(j, i) = ((i + j) % 2 == 0) ? d : -d;
        }
    return adj;
}

SymbolicMatrix SymbolicMatrix::subst(const std::map<VarId, Polynomial>& repl) const {
    SymbolicMatrix m(r_, c_);
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].subst(repl);
    return m;
}

QMatrix SymbolicMatrix::eval_exact(const std::map<VarId, GaussianRational>& point) const {
    QMatrix m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j).eval_exact(point);
    return m;
}

std::string SymbolicMatrix::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < r_; ++i) {
        out += (i ? ", [" : "[");
        for (std::size_t j = 0; j < c_; ++j) {
            if (j) out += ", ";
            out += at(i, j).str();
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace pinch
