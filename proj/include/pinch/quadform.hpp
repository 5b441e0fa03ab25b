#pragma once

// Families of quadratic forms Q(z; t) = z^T M(t) z + 2 a(t)^T z + b(t) whose
// coefficients are polynomials in a set of parameter variables, together with
// homogenization and exact definiteness classification at rational parameter
// points.  Also builds the per-edge propagator family of a routed graph.

#include <map>
#include <string>
#include <vector>

#include "pinch/graph.hpp"
#include "pinch/matrix.hpp"
#include "pinch/polynomial.hpp"

namespace pinch {

struct QuadraticFamily {
    std::vector<VarId> coords;   // the z variables, in matrix order
    SymbolicMatrix M;            // n x n symmetric, polynomial entries
    std::vector<Polynomial> lin; // a(t), length n
    Polynomial b;

    std::size_t dim() const { return coords.size(); }

    // Reassemble z^T M z + 2 a^T z + b.
    Polynomial poly() const;

    // Decompose q over the given coordinates; every other variable is treated
    // as a parameter.  Throws std::invalid_argument if q has degree > 2 in the
    // coordinates.
    static QuadraticFamily from_poly(const Polynomial& q,
                                     const std::vector<VarId>& coords);

    // Homogenize with a fresh first coordinate u: the result is the pure
    // quadratic u^2 b + 2 u a^T z + z^T M z with matrix [[b, a^T], [a, M]]
    // over coordinates (u, z1..zn).
    QuadraticFamily homogenized(VarId u) const;

    // M evaluated at a parameter point.
    QMatrix matrix_at(const std::map<VarId, GaussianRational>& point) const;
};

enum class PointClass { regular, quasi_regular, irregular };

const char* point_class_name(PointClass c);

// regular: every M_i(t0) positive definite; quasi_regular: every M_i(t0)
// positive semidefinite and at least one not definite; irregular otherwise.
// Checks are exact (principal minors); t0 must make every matrix real.
PointClass classify_point(const std::vector<QuadraticFamily>& family,
                          const std::map<VarId, GaussianRational>& point);

// Variable layout of a graph's momentum space after overall momentum
// conservation has been used to eliminate the last external vertex.
struct KinematicLayout {
    int dimension = 4;
    int n_loops = 0;
    std::vector<VarId> loops;   // k{i}_{mu}, loop-major
    std::vector<VarId> momenta; // surviving external components
    std::vector<VarId> masses;  // one per distinct mass label, edge order
    std::vector<std::string> momentum_vertices; // surviving vertices, "" if renamed to plain p

    std::vector<VarId> all_params() const;
};

struct FeynmanFamily {
    KinematicLayout layout;
    std::vector<Polynomial> propagators;   // Q_e = f_e . f_e + m_e^2, edge order
    std::vector<QuadraticFamily> forms;    // propagators decomposed over loop coords
};

FeynmanFamily feynman_family(const FeynmanGraph& g, const Routing& r);
FeynmanFamily feynman_family(const FeynmanGraph& g);

// A family of quadratic forms given directly, with declared coordinate and
// parameter variables.
struct FamilyFile {
    std::vector<VarId> coords;
    std::vector<VarId> params;
    std::vector<QuadraticFamily> forms;
};

FamilyFile parse_family_json(const std::string& text);
FamilyFile load_family_file(const std::string& path);
std::string family_to_json(const FamilyFile& f);

} // namespace pinch
