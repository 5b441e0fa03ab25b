#pragma once

// Pointwise membership testing for critical-point systems: enumerate branch
// supports, close each branch into a square system with a seeded rational
// projection plus normalization rows, run damped Newton from seeded random
// starts, and accept witnesses only after the full unprojected system
// evaluates below the verification tolerance.  A negative outcome is always
// reported as "no witness found", never as certified absence.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pinch/landau.hpp"
#include "pinch/quadform.hpp"

namespace pinch {

struct SolverOptions {
    std::uint64_t seed = 1;
    int starts = 12;          // Newton starts per branch and attempt
    int max_attempts = 4;     // projection/normalization redraws per branch
    int max_iters = 60;
    double newton_tol = 1e-12;    // square-system convergence target
    double verify_tol = 1e-9;     // full-system witness acceptance
    double cluster_radius = 1e-6; // witness deduplication distance
    bool collect_all = false;     // keep searching after the first witness
};

struct Witness {
    std::vector<int> branch;                   // form indices forced to vanish
    std::vector<std::complex<double>> alphas;  // all multipliers (off-support: 0)
    std::vector<std::complex<double>> coords;  // chart coordinates
    double residual = 0;                       // sup-norm over the full system
    int iterations = 0;
    std::vector<double> trace;                 // residual per Newton iteration
};

struct MembershipReport {
    bool member = false;
    std::vector<Witness> witnesses;
    int branches_tried = 0;
    const char* verdict() const { return member ? "member" : "no-witness-found"; }
};

// `params` must assign an exact value to every parameter of the system.
MembershipReport membership_test(const LandauSystem& sys,
                                 const std::map<VarId, GaussianRational>& params,
                                 const SolverOptions& opt = {});

struct ScanPoint {
    GaussianRational value;
    bool member = false;
    double best_residual = 0;  // smallest witness residual when member
    int n_witnesses = 0;
};

std::vector<ScanPoint> scan_parameter(const LandauSystem& sys,
                                      const std::map<VarId, GaussianRational>& base,
                                      VarId var, const std::vector<GaussianRational>& values,
                                      const SolverOptions& opt = {});

// Exact test that the parameter point is physical: every momentum has a
// purely imaginary energy component and real spatial components with
// nonpositive square, and every mass is real.
bool params_physical(const KinematicLayout& layout,
                     const std::map<VarId, GaussianRational>& params);

struct PhysicalCheck {
    bool physical = false;
    std::string reason;            // why not, when physical is false
    double residual = 0;           // certifying real solve, when attempted
    std::vector<double> alphas;    // certified multipliers (sum 1)
    std::vector<std::complex<double>> coords;  // certified chart point
};

// Feynman-kinematics test of a verified witness.  Screens the multipliers
// (real and nonnegative up to one overall complex scale) and the loop
// momenta (imaginary energy, real space, up to a ray rescaling on projective
// charts), then certifies by re-solving an all-real pinned system: energies
// substituted as i*xi, multipliers normalized by sum one, Newton started
// from the screened candidate.
PhysicalCheck is_physical(const LandauSystem& sys, const KinematicLayout& layout,
                          const std::map<VarId, GaussianRational>& params, const Witness& w,
                          const SolverOptions& opt = {});

} // namespace pinch
