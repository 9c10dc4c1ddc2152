#pragma once

// Randomized check suites shared by the command-line tool and the acceptance
// tests. Every suite is deterministic given its seed.

#include <cstdint>
#include <string>
#include <vector>

#include "opflow/linalg.hpp"

namespace opflow {

struct Deviation {
    std::string name;
    double max_deviation = 0.0;
};

struct IdentitySuiteResult {
    std::vector<Deviation> deviations;
    Index trials = 0;
    double worst() const;
};

/// Transform identities over `trials` random instances with dimensions in [1, max_dim].
IdentitySuiteResult run_identity_suite(std::uint64_t seed, Index trials, Index max_dim);

struct SurgeryInstance {
    double epsilon;
    double c;
    double cayley_change;  ///< ||kappa(A') - kappa(A)||
};

struct SurgerySuiteResult {
    std::vector<SurgeryInstance> instances;
    Index violations = 0;
};

/// Minimal c with |kappa(c) - 1| = 2 / sqrt(c^2 + 1) <= epsilon / 2.
double surgery_threshold(double epsilon);

/// Random diagonal A, c above surgery_threshold(epsilon), random B with spectrum outside [-c, c].
SurgerySuiteResult run_surgery_suite(std::uint64_t seed, const std::vector<double>& epsilons, Index trials_per_epsilon,
                                     Index max_dim = 12);

struct CoveringSuiteResult {
    Index instances = 0;
    Index counterexamples = 0;
    Index members = 0;  ///< instances where A lies in X_{tau cup tau'}
};

/// Checks X_tau cap X_tau' = X_{tau cup tau'} on random (A, tau, tau').
CoveringSuiteResult run_covering_suite(std::uint64_t seed, Index instances);

struct HomotopySuiteResult {
    bool endpoints_exact = true;
    double min_singular_value = 0.0;  ///< over zk_contraction at t = 0.1, ..., 0.9
    double u1_defect = 0.0;           ///< max ||J h_t J - h_t*|| for the log retraction
    std::vector<Index> grids;
    std::vector<double> delta;          ///< discretization tolerance per grid
    std::vector<double> lipschitz_zk;   ///< sampled Lipschitz constant per grid
    std::vector<double> rk_consistency; ///< ||H_t^{-1} - h_t(A^{-1}, B^{-1})|| / ||h_t|| at t = 1/2
    double compact_gap_violation = 0.0; ///< max(0, ||H'_t^{-1}|| - 1/lambda) over samples
    bool delta_decreasing() const;
};

HomotopySuiteResult run_homotopy_suite(std::uint64_t seed, const std::vector<Index>& grids = {128, 256, 512});

struct DichotomyRow {
    double x1;
    double riesz_lower_bound;  ///< certified lower bound on ||phi(A_x) - phi(A_[1:0])||
    double gap_dist;           ///< ||p(A_x) - p(A_[1:0])||
};

/// Compares A_[1:x1] with the Dirichlet operator A_[1:0] on the given grid.
/// Since phi(A_[1:0]) >= 0, -lambda_min(phi(A_x)) bounds the Riesz distance from
/// below; when that positivity fails the Weyl gap is used instead.
std::vector<DichotomyRow> dichotomy_sweep(const std::vector<double>& x1_values, Index grid_n);

/// n log-spaced values from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, Index n);

}  // namespace opflow
