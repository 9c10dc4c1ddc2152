#pragma once

// Spectral predicates and decompositions: window projections, the covering
// sets X_tau, finite/infinite part splitting and the density surgery.
//
// Essential spectrum is empty in finite dimension, so covering membership only
// checks that no eigenvalue comes close to a point of tau.

#include <vector>

#include "opflow/linalg.hpp"

namespace opflow {

/// Default distance between tau and the spectrum required for membership.
inline constexpr double kCoveringGap = 1e-6;
/// Eigenvalues closer than this to a window edge make the window ill-posed.
inline constexpr double kWindowCollision = 1e-9;

/// Finite non-empty subset of R, symmetric about 0, stored ascending.
class SymmetricTuple {
  public:
    /// Sorts and deduplicates; throws ValidationError if empty or not symmetric (1e-12).
    explicit SymmetricTuple(std::vector<double> points);

    /// {-r_k, r_k} for the given magnitudes.
    static SymmetricTuple from_magnitudes(const std::vector<double>& magnitudes);

    const std::vector<double>& points() const { return points_; }
    /// The hull [min, max] = [-max, max].
    double hull_radius() const { return points_.back(); }

    SymmetricTuple unite(const SymmetricTuple& other) const;

  private:
    std::vector<double> points_;
};

struct WindowProjection {
    CMat projection;
    Index rank = 0;
};

/// Spectral projection 1_[lo, hi](A).
WindowProjection window_projection(const HermOp& a, double lo, double hi);

/// True iff every point of tau is at distance >= gap from spec(A).
bool covering_membership(const HermOp& a, const SymmetricTuple& tau, double gap = kCoveringGap);

/// Restrictions of A to V = range 1_hull(tau)(A) and to its complement.
struct SplitOperator {
    CMat window_basis;      ///< n x dim V, orthonormal columns
    CMat complement_basis;  ///< n x (n - dim V)
    HermOp finite_part;
    HermOp infinite_part;

    /// window_basis A' window_basis* + complement_basis A'' complement_basis*.
    CMat reassemble() const;
};

SplitOperator split_finite_infinite(const HermOp& a, const SymmetricTuple& tau);

/// Orthonormal eigenvectors of A with eigenvalues outside [-c, c], ascending
/// eigenvalue order; the basis in which density_surgery reads B.
CMat surgery_complement_basis(const HermOp& a, double c);

/// A' = A p + Q B Q*, p = 1_[-c, c](A), Q = surgery_complement_basis(A, c).
HermOp density_surgery(const HermOp& a, double c, const HermOp& b);

/// Number of eigenvalues below threshold.
Index negative_count(const HermOp& a, double threshold = 0.0);

}  // namespace opflow
