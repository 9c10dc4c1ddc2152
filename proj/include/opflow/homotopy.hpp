#pragma once

// Explicit homotopies on a discretized L^2[0,1] and on matrices.
//
// L^2[0,1] is replaced by piecewise constants on n equal cells. The shrink and
// stretch isometries u_t f(s) = f(s/t)/sqrt(t) and v_t f(s) = f((s-t)/(1-t))/sqrt(1-t)
// are represented by their cell-average (Galerkin) matrices. These are exact
// isometries only in the limit: a square matrix cannot map n cells isometrically
// onto the roughly t*n cells of [0, t]. Defects are therefore measured on the
// span of the lowest cosine modes, where they vanish as n grows.
//
// The contraction formulas place a's copy on [0, 1-t] and b's copy on [1-t, 1],
// so that t = 0 gives a and t = 1 gives b; both endpoints are returned exactly.
// Injectivity of zk_contraction survives the discretization for sign-definite
// inputs; for indefinite a the compression U a U* can be singular on a grid.

#include <functional>
#include <vector>

#include "opflow/linalg.hpp"

namespace opflow {

/// Number of low cosine modes spanning the subspace on which isometry defects are measured.
inline constexpr Index kSmoothModes = 8;
/// Inputs to the contractions count as singular below this singular value.
inline constexpr double kInjectivityFloor = 1e-10;
/// Distance from -1 at which an eigenvalue is on the logarithm's branch cut.
inline constexpr double kBranchCutDistance = 1e-8;

/// n equal cells on [0,1], nodes at the cell centres, weights 1/n.
class GridSpace {
  public:
    explicit GridSpace(Index n_points);

    Index size() const { return n_; }
    const RVec& nodes() const { return nodes_; }
    const RVec& weights() const { return weights_; }

    /// Orthonormal (Euclidean) basis of the span of cos(m pi s), m < modes, sampled at the nodes.
    CMat smooth_basis(Index modes = kSmoothModes) const;

  private:
    Index n_;
    RVec nodes_;
    RVec weights_;
};

/// Galerkin matrix of u_t, 0 < t <= 1. Exactly the identity at t = 1.
CMat shrink_isometry(double t, const GridSpace& grid);
/// Galerkin matrix of v_t, 0 <= t < 1. Exactly the identity at t = 0.
CMat stretch_isometry(double t, const GridSpace& grid);

struct IsometryDefects {
    double shrink = 0.0;      ///< ||(u*u - 1) P||
    double stretch = 0.0;     ///< ||(v*v - 1) P||
    double complement = 0.0;  ///< ||(uu* + vv* - 1) P||
    double max() const;
};

/// Defects at t in (0,1), P the projection onto grid.smooth_basis(modes).
IsometryDefects isometry_defects(double t, const GridSpace& grid, Index modes = kSmoothModes);

/// delta(n): largest defect over the given t samples (default 0.1, 0.2, ..., 0.9).
double discretization_tolerance(const GridSpace& grid, std::vector<double> ts = {});

/// h_t = (1-t) U a U* + t V b V*, with U = u_{1-t}, V = v_{1-t}; h_0 = a, h_1 = b.
/// a and b must be Hermitian and injective (DegeneracyError otherwise).
CMat zk_contraction(double t, const CMat& a, const CMat& b, const GridSpace& grid);

/// zk_contraction with the input checks done once, for sampling many t.
class ZkContraction {
public:
    ZkContraction(CMat a, CMat b, const GridSpace& grid);
    CMat operator()(double t) const;

private:
    CMat a_, b_;
    GridSpace grid_;
};

/// Graded variant on H + H using u (+) u and v (+) v.
CMat zk_contraction_graded(double t, const CMat& a, const CMat& b, const GridSpace& grid);

/// H_t = U A U* / (1-t) + V B V* / t, with U = u_{1-t}, V = v_{1-t}; H_0 = A, H_1 = B.
HermOp rk_contraction(double t, const HermOp& a, const HermOp& b, const GridSpace& grid);

/// H'_t = C_t A C_t with C_t = ((1-t) + t k)^{-1}; k positive with ||k|| < 1.
HermOp compactify_homotopy(double t, const HermOp& a, const HermOp& k);

/// diag(0.9 / (j + 1)).
HermOp default_compact_weight(Index n);

/// exp(t log u) with the principal logarithm; h_0 = 1 and h_1 = u exactly.
CMat unitary_log_retraction(double t, const CMat& u);

/// Largest ||h(t_{k+1}) - h(t_k)|| / (t_{k+1} - t_k) over consecutive points of an
/// equally spaced grid of `points` values on [lo, hi].
double sampled_lipschitz(const std::function<CMat(double)>& h, double lo = 0.0, double hi = 1.0,
                         Index points = 32);

}  // namespace opflow
