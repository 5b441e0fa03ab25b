#pragma once

// Constructive congruence diagonalization of symmetric polynomial matrix
// families, and regulator matrices that restore generic nondegeneracy of
// rank-deficient families: A is symmetric, polynomial, positive semidefinite
// at every real parameter point, and det(M + eps*A) is not identically zero.

#include <map>
#include <optional>
#include <vector>

#include "pinch/matrix.hpp"
#include "pinch/quadform.hpp"

namespace pinch {

struct Diagonalization {
    SymbolicMatrix T;               // polynomial congruence: T^t M T diagonal
    std::vector<Polynomial> lambda; // diagonal entries, column order
    // Nonconstant generators whose common nonvanishing keeps T invertible and
    // the pivots meaningful; empty when the construction is globally valid.
    std::vector<Polynomial> exceptional;

    std::size_t rank() const; // number of identically nonzero lambda entries
};

// `prefer`, when given, steers pivot choices toward vectors whose value is
// positive at that parameter point (useful near a quasi-regular point).
Diagonalization diagonalize(const SymbolicMatrix& M);
Diagonalization diagonalize(const SymbolicMatrix& M,
                            const std::map<VarId, GaussianRational>& prefer);

struct Regulator {
    SymbolicMatrix A;   // n x n symmetric polynomial; PSD at every real point
    std::size_t rank;   // generic rank of M; A vanishes iff rank == n
};

Regulator build_regulator(const SymbolicMatrix& M, const Diagonalization& d);

// Exact certificate that M0 + eps*A0 is positive definite for every eps > 0:
// both PSD with trivial common kernel.
bool pd_for_all_positive_eps(const QMatrix& M0, const QMatrix& A0);

// Homogenize, diagonalize and regularize every form of a family.
struct FamilyRegularization {
    VarId u;                                 // homogenization coordinate
    std::vector<QuadraticFamily> homogenized;
    std::vector<Diagonalization> diag;
    std::vector<Regulator> reg;
};

FamilyRegularization regularize_forms(
    const std::vector<QuadraticFamily>& forms,
    const std::optional<std::map<VarId, GaussianRational>>& prefer = std::nullopt);

} // namespace pinch
