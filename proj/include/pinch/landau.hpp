#pragma once

// Critical-point systems for families of quadratic forms: for each form
// either its multiplier vanishes or the form does, while the multiplier-
// weighted gradient of the homogenized family vanishes identically.  Three
// affine charts of the projective coordinate space are supported; the
// infinity chart keeps the homogenization row, which turns into the
// second-type constraint coupling linear parts and multipliers.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pinch/quadform.hpp"

namespace pinch {

enum class Chart { projective, finite, infinity };

const char* chart_name(Chart c);
Chart chart_from_name(const std::string& name);

struct LandauSystem {
    Chart chart = Chart::finite;
    std::vector<VarId> alphas;  // one multiplier per form
    std::vector<VarId> coords;  // chart unknowns (projective: u first)
    std::vector<VarId> params;
    std::vector<Polynomial> vanishing;  // per-form chart polynomial
    std::vector<Polynomial> gradient;   // always-on rows
    bool norm_alphas = true;   // normalize the multiplier vector when solving
    bool norm_coords = false;  // normalize the coordinate vector when solving

    std::size_t n_forms() const { return vanishing.size(); }

    std::string to_json() const;
    static LandauSystem from_json(const std::string& text);
};

// Forms must share one coordinate vector; every other variable appearing in
// them becomes a parameter.  Multipliers are a1..aN, the homogenization
// coordinate is u.
LandauSystem generate_landau_system(const std::vector<QuadraticFamily>& forms, Chart chart);

// All 2^N - 1 nonempty supports in ascending bitmask order; each entry lists
// the indices of the forms required to vanish.
std::vector<std::vector<int>> enumerate_branches(std::size_t n_forms);

// Exact residuals at a full assignment: the vanishing polynomials first,
// then the gradient rows.
std::vector<GaussianRational> residuals_exact(const LandauSystem& sys,
                                              const std::map<VarId, GaussianRational>& point);

} // namespace pinch
