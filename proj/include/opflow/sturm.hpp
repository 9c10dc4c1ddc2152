#pragma once

// -d^2/dt^2 on [0,1] with psi(0) = 0 and the Robin condition
// x0 psi(1) - x1 psi'(1) = 0 at t = 1, its finite-difference discretization and
// an independent root-finding oracle.
//
// Discretization: nodes t_j = j h, j = 1..n, h = 1/n. The Robin row comes from a
// ghost node at 1 + h, then the matrix is symmetrized by diag(1, ..., 1, 1/sqrt2),
// giving a real symmetric tridiagonal matrix whose last diagonal entry is
// 2(1 - r)/h^2 with r = h x0/x1, capped at r = 1/h + 1. As x1 -> 0+ one eigenvalue
// runs off to about -2/h^3. At x1 = 0 the last node is decoupled with the
// Dirichlet penalty 2/h^3. Only the last diagonal entry depends on x and it
// increases with theta, so every eigenvalue branch is monotone along the loop.
//
// Positive eigenvalues lambda = mu^2 solve x0 sin(mu) = x1 mu cos(mu) (substitute
// psi = sin(mu t) into the boundary condition); negative ones lambda = -mu^2 solve
// x0 sinh(mu) = x1 mu cosh(mu).

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "opflow/linalg.hpp"

namespace opflow {

/// [x0 : x1] normalized to x0^2 + x1^2 = 1 with x0 > 0, or [0 : 1].
class ProjectivePoint {
  public:
    ProjectivePoint(double x0, double x1);
    /// [cos theta : sin theta].
    static ProjectivePoint from_angle(double theta);

    double x0() const { return x0_; }
    double x1() const { return x1_; }
    /// Representative angle in [0, pi).
    double angle() const;

    bool operator==(const ProjectivePoint& other) const = default;

  private:
    double x0_;
    double x1_;
};

struct RobinOperator {
    ProjectivePoint parameter;
    Index grid_n;
    HermOp matrix;
    std::string scheme;
};

/// Tridiagonal discretization with grid_n unknowns; grid_n >= 16.
RobinOperator assemble_robin_operator(const ProjectivePoint& x, Index grid_n);

/// Bisection on [lo, hi] until the bracket is shorter than tol. f(lo) and f(hi)
/// must not have the same strict sign.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

/// The `count` lowest eigenvalues of the continuous problem, ascending.
std::vector<double> analytic_eigenvalues(const ProjectivePoint& x, Index count);

struct GraphPoint {
    Index branch_index;
    double lambda;
};

struct GraphSample {
    double theta;
    std::vector<GraphPoint> points;
};

inline constexpr double kDefaultSpectralWindow = 50.0;

/// Eigenvalues in [-window, window] at theta_k = k pi / loop_samples, k < loop_samples.
/// Branches are numbered by ascending position, shifted by one at theta = 0 where
/// the boundary branch has left through infinity.
std::vector<GraphSample> spectral_graph(Index loop_samples, Index grid_n, double window = kDefaultSpectralWindow);

/// CSV with header `theta,branch_index,lambda`, shortest round-trip doubles.
void write_spectral_graph_csv(std::ostream& os, const std::vector<GraphSample>& graph);

/// Angles where some branch changes sign between consecutive samples, by linear interpolation.
std::vector<double> zero_crossing_angles(const std::vector<GraphSample>& graph);

struct Concentration {
    double mu;
    double mass_left;
};

inline constexpr double kConcentrationMargin = 0.1;

/// mu = sqrt(-lambda_min) and the L^2 mass of the normalized eigenfunction on [0, 1 - delta].
Concentration eigenfunction_concentration(const ProjectivePoint& x, Index grid_n,
                                          double delta = kConcentrationMargin);

/// theta -> A_[cos theta : sin theta] on the given grid.
std::function<HermOp(double)> robin_loop(Index grid_n);

}  // namespace opflow
