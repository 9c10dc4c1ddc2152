#include "opflow/transforms.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <sstream>

namespace opflow {

namespace {

constexpr Complex kI(0.0, 1.0);

// Eigenvalues of 1 - a*a down to this value are treated as rounding noise on
// the unit sphere. It matches the slack accepted by the ball check.
constexpr double kClampFloor = -3e-10;

void require_closed_ball(double norm, const char* what) {
    if (norm > 1.0 + kBallTolerance) {
        std::ostringstream os;
        os << what << ": operator norm " << norm << " exceeds 1 + " << kBallTolerance;
        throw OutOfBallError(os.str());
    }
}

// sqrt(1 - a*a) and sqrt(1 - aa*) from one SVD a = U S V*, so that both roots
// share the singular vectors of a even where 1 - s^2 is pure rounding noise.
struct BallRoots {
    CMat right;  // V sqrt(1 - S^2) V*
    CMat left;   // U sqrt(1 - S^2) U*
};

BallRoots ball_roots(const CMat& a) {
    Eigen::BDCSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVec& sv = svd.singularValues();
    RVec root(sv.size());
    for (Index k = 0; k < sv.size(); ++k) {
        const double x = (1.0 - sv(k)) * (1.0 + sv(k));
        if (x < kClampFloor) {
            std::ostringstream os;
            os << "square root of 1 - a*a: eigenvalue " << x << " is negative beyond rounding";
            throw OutOfBallError(os.str());
        }
        root(k) = std::sqrt(std::max(x, 0.0));
    }
    const auto d = root.cast<Complex>().asDiagonal();
    return {svd.matrixV() * d * svd.matrixV().adjoint(), svd.matrixU() * d * svd.matrixU().adjoint()};
}

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

GraphProjection make_projection_unchecked(CMat p) { return GraphProjection(std::move(p)); }

GraphProjection GraphProjection::from_matrix(CMat p) {
    require_square(p, "GraphProjection");
    if (p.rows() % 2 != 0) throw DimensionMismatchError("GraphProjection: dimension must be even");
    GraphProjection g(std::move(p));
    const double defect = g.projection_defect();
    if (defect > kProjectionTolerance) {
        std::ostringstream os;
        os << "not an orthogonal projection: max(||p^2 - p||, ||p - p*||) = " << defect;
        throw ValidationError(os.str());
    }
    return g;
}

GraphProjection GraphProjection::horizontal(Index n) {
    CMat p = CMat::Zero(2 * n, 2 * n);
    p.topLeftCorner(n, n).setIdentity();
    return GraphProjection(std::move(p));
}

GraphProjection GraphProjection::vertical(Index n) {
    CMat p = CMat::Zero(2 * n, 2 * n);
    p.bottomRightCorner(n, n).setIdentity();
    return GraphProjection(std::move(p));
}

double GraphProjection::projection_defect() const {
    return std::max(op_norm(p_ * p_ - p_), op_norm(p_ - p_.adjoint()));
}

Symplectics Symplectics::make(Index n) {
    const CMat one = identity(n);
    const CMat zero = CMat::Zero(n, n);
    Symplectics s;
    s.n = n;
    s.I = block2(zero, -kI * one, kI * one, zero);
    s.J = block2(one, zero, zero, -one);
    s.v_lag = block2(-one, kI * one, one, kI * one) / std::sqrt(2.0);
    s.v_odd = block2(one, zero, zero, kI * one);
    return s;
}

CMat bounded_transform(const CMat& a) {
    require_square(a, "bounded_transform");
    const HermOp gram(hermitian_part(a.adjoint() * a));
    const CMat scale = func_calc(gram, [](double x) { return Complex(1.0 / std::sqrt(1.0 + std::max(x, 0.0)), 0.0); });
    return a * scale;
}

HermOp bounded_transform(const HermOp& a) {
    return func_calc_real(a, [](double x) { return x / std::hypot(1.0, x); });
}

CMat inverse_bounded_transform(const CMat& a) {
    require_square(a, "inverse_bounded_transform");
    const double norm = op_norm(a);
    if (norm >= 1.0 - kStrictBallMargin) {
        std::ostringstream os;
        os << "inverse_bounded_transform: operator norm " << norm << " is not below 1 - " << kStrictBallMargin;
        throw OutOfBallError(os.str());
    }
    const HermOp gram(hermitian_part(a.adjoint() * a));
    const CMat scale = func_calc(gram, [](double x) { return Complex(1.0 / std::sqrt(1.0 - x), 0.0); });
    return a * scale;
}

GraphProjection graph_projection(const CMat& a) {
    require_square(a, "graph_projection");
    const Index n = a.rows();
    const CMat one = identity(n);
    const CMat r = Eigen::LLT<CMat>(one + a.adjoint() * a).solve(one);
    const CMat s = Eigen::LLT<CMat>(one + a * a.adjoint()).solve(one);
    const CMat p = block2(r, r * a.adjoint(), a * r, one - s);
    return make_projection_unchecked(hermitian_part(p));
}

GraphProjection graph_projection(const HermOp& a) {
    const CMat& u = a.eigenvectors();
    const RVec& lambda = a.eigenvalues();
    const Index n = a.dim();
    RVec f1(n), f2(n), f3(n);
    for (Index k = 0; k < n; ++k) {
        const double x = lambda(k);
        const double d = 1.0 + x * x;
        f1(k) = 1.0 / d;
        f2(k) = x / d;
        f3(k) = (x * x) / d;
    }
    auto calc = [&](const RVec& f) -> CMat { return u * f.cast<Complex>().asDiagonal() * u.adjoint(); };
    const CMat off = calc(f2);
    return make_projection_unchecked(hermitian_part(block2(calc(f1), off, off, calc(f3))));
}

CMat defect_root(const CMat& a) {
    require_square(a, "defect_root");
    require_closed_ball(op_norm(a), "defect_root");
    return ball_roots(a).right;
}

GraphProjection ball_projection(const CMat& a) {
    require_square(a, "ball_projection");
    require_closed_ball(op_norm(a), "ball_projection");
    const Index n = a.rows();
    const CMat one = identity(n);
    const CMat lower = a * ball_roots(a).right;
    const CMat p = block2(one - a.adjoint() * a, lower.adjoint(), lower, a * a.adjoint());
    return make_projection_unchecked(hermitian_part(p));
}

CMat cayley(const HermOp& a) {
    return func_calc(a, [](double x) { return (Complex(x, -1.0)) / (Complex(x, 1.0)); });
}

CMat cayley_ball(const HermOp& a) {
    require_closed_ball(op_norm(a), "cayley_ball");
    return func_calc(a, [](double x) {
        const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
        const Complex w(x, -s);
        return w * w;
    });
}

double lagrangian_defect(const GraphProjection& p) {
    const Symplectics sym = Symplectics::make(p.half_dim());
    const CMat r = 2.0 * p.matrix() - identity(p.dim());
    return op_norm(sym.I * r + r * sym.I);
}

CMat lagrangian_to_unitary(const GraphProjection& p) {
    const double defect = lagrangian_defect(p);
    if (defect > kLagrangianTolerance) {
        std::ostringstream os;
        os << "projection is not Lagrangian: ||I(2p-1) + (2p-1)I|| = " << defect;
        throw ValidationError(os.str());
    }
    const Index n = p.half_dim();
    const Symplectics sym = Symplectics::make(n);
    const CMat r = 2.0 * p.matrix() - identity(p.dim());
    const CMat conj = sym.v_lag * r * sym.v_lag.adjoint();
    return conj.bottomLeftCorner(n, n);
}

HermOp odd_embedding(const CMat& a) {
    require_square(a, "odd_embedding");
    const Index n = a.rows();
    const CMat zero = CMat::Zero(n, n);
    return HermOp(block2(zero, a.adjoint(), a, zero));
}

CMat proj_to_unitary(const GraphProjection& p) {
    const Symplectics sym = Symplectics::make(p.half_dim());
    return sym.v_odd * (identity(p.dim()) - 2.0 * p.matrix()) * sym.v_odd;
}

double odd_unitary_defect(const CMat& u) {
    require_square(u, "odd_unitary_defect");
    if (u.rows() % 2 != 0) throw DimensionMismatchError("odd_unitary_defect: dimension must be even");
    const Symplectics sym = Symplectics::make(u.rows() / 2);
    return op_norm(sym.J * u * sym.J - u.adjoint());
}

CMat fredholm_second_factor(const CMat& a) {
    require_square(a, "fredholm_second_factor");
    require_closed_ball(op_norm(a), "fredholm_second_factor");
    const BallRoots roots = ball_roots(a);
    return block2(a, -roots.left, roots.right, a.adjoint());
}

double fredholm_factor_check(const CMat& a) {
    const CMat w = fredholm_second_factor(a);
    const double w_defect = unitarity_defect(w);
    if (w_defect > 1e-10) {
        std::ostringstream os;
        os << "second factor is not unitary: ||W*W - 1|| = " << w_defect;
        throw ValidationError(os.str());
    }
    const Index n = a.rows();
    const CMat zero = CMat::Zero(n, n);
    const CMat left = block2(-a.adjoint(), zero, zero, a);
    const CMat shifted = ball_projection(a).matrix() - GraphProjection::horizontal(n).matrix();
    return op_norm(shifted - left * w);
}

}  // namespace opflow
