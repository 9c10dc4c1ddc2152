#pragma once

// Maps between operators, the unit ball, graph projections on H + H and
// unitaries.
//
// Finite dimension collapses the "1 - a*a has dense range" description of the
// image of the bounded transform to invertibility of 1 - a*a, so the inverse
// transform is defined on the open unit ball only.

#include "opflow/linalg.hpp"

namespace opflow {

/// Tolerance for I-Lagrangian checks (anticommutator norm).
inline constexpr double kLagrangianTolerance = 1e-8;
/// Tolerance for p^2 = p = p* checks.
inline constexpr double kProjectionTolerance = 1e-10;
/// Slack on ||a|| <= 1 for the closed-ball transforms.
inline constexpr double kBallTolerance = 1e-10;
/// Margin below 1 required by the inverse bounded transform.
inline constexpr double kStrictBallMargin = 1e-8;

/// Orthogonal projection on the doubled space H + H (dimension 2n).
class GraphProjection {
  public:
    /// Validates p^2 = p = p* to kProjectionTolerance.
    static GraphProjection from_matrix(CMat p);

    /// p0: projection onto H + 0.
    static GraphProjection horizontal(Index n);
    /// p_inf: projection onto 0 + H.
    static GraphProjection vertical(Index n);

    const CMat& matrix() const { return p_; }
    Index dim() const { return p_.rows(); }
    Index half_dim() const { return p_.rows() / 2; }

    /// max(||p^2 - p||, ||p - p*||).
    double projection_defect() const;

  private:
    explicit GraphProjection(CMat p) : p_(std::move(p)) {}
    friend GraphProjection make_projection_unchecked(CMat p);
    CMat p_;
};

/// Constant symmetries and unitaries on H + H.
struct Symplectics {
    Index n = 0;
    CMat I;      ///< [[0, -i], [i, 0]]
    CMat J;      ///< [[1, 0], [0, -1]] (grading)
    CMat v_lag;  ///< (1/sqrt2) [[-1, i], [1, i]], conjugates I to J
    CMat v_odd;  ///< [[1, 0], [0, i]], squares to J

    static Symplectics make(Index n);
};

/// A (1 + A*A)^{-1/2}; maps every matrix into the open unit ball.
CMat bounded_transform(const CMat& a);
/// Spectral form lambda / sqrt(1 + lambda^2), stable for huge eigenvalues.
HermOp bounded_transform(const HermOp& a);

/// a (1 - a*a)^{-1/2}. Requires ||a|| < 1 - 1e-8 (OutOfBallError otherwise).
CMat inverse_bounded_transform(const CMat& a);

/// Graph projection [[R, R A*], [A R, 1 - (1 + AA*)^{-1}]], R = (1 + A*A)^{-1}.
GraphProjection graph_projection(const CMat& a);
/// Same projection built from the eigendecomposition of A.
GraphProjection graph_projection(const HermOp& a);

/// [[1 - a*a, sqrt(1 - a*a) a*], [a sqrt(1 - a*a), aa*]] for ||a|| <= 1.
GraphProjection ball_projection(const CMat& a);

/// (A - i)(A + i)^{-1}.
CMat cayley(const HermOp& a);
/// (a - i sqrt(1 - a^2))^2 for Hermitian contractions.
CMat cayley_ball(const HermOp& a);

/// ||I(2p - 1) + (2p - 1)I||.
double lagrangian_defect(const GraphProjection& p);

/// Unitary u with v_lag (2p - 1) v_lag* = [[0, u*], [u, 0]]; sends p_inf to 1 and p0 to -1.
CMat lagrangian_to_unitary(const GraphProjection& p);

/// [[0, A*], [A, 0]].
HermOp odd_embedding(const CMat& a);

/// v_odd (1 - 2p) v_odd; lands in {u : J u J = u*}.
CMat proj_to_unitary(const GraphProjection& p);

/// ||J u J - u*||.
double odd_unitary_defect(const CMat& u);

/// Deviation of ball_projection(a) - p0 from diag(-a*, a) W, where
/// W = [[a, -sqrt(1 - aa*)], [sqrt(1 - a*a), a*]]. Throws ValidationError if W is
/// not unitary to 1e-10.
double fredholm_factor_check(const CMat& a);

/// The unitary second factor W above.
CMat fredholm_second_factor(const CMat& a);

/// sqrt(1 - a*a) with the boundary clamp; throws OutOfBallError when ||a|| > 1 + 1e-10.
CMat defect_root(const CMat& a);

}  // namespace opflow
