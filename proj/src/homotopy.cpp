#include "opflow/homotopy.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace opflow {

namespace {

void require_unit_interval(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0)) {
        std::ostringstream os;
        os << what << ": parameter t = " << t << " outside [0, 1]";
        throw ParameterError(os.str());
    }
}

void require_injective_hermitian(const CMat& m, const char* what) {
    const Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    const double s = es.eigenvalues().cwiseAbs().minCoeff();
    if (s < kInjectivityFloor) {
        std::ostringstream os;
        os << what << ": operator is not injective (smallest singular value " << s << ")";
        throw DegeneracyError(os.str());
    }
}

void require_hermitian(const CMat& m, const char* what) {
    require_square(m, what);
    const double defect = (m - m.adjoint()).norm();
    if (defect > kHermitianTolerance * std::max(1.0, m.norm())) {
        std::ostringstream os;
        os << what << ": input is not Hermitian (||M - M*||_F = " << defect << ")";
        throw ValidationError(os.str());
    }
}

// Matrix of f -> f(affine^{-1}(s)) / sqrt(scale) where affine(x) = offset + scale x,
// averaged over cells: M[j, k] = (n / sqrt(scale)) |cell_j cap affine(cell_k)|.
CMat affine_cell_operator(double offset, double scale, Index n) {
    CMat m = CMat::Zero(n, n);
    const double factor = static_cast<double>(n) / std::sqrt(scale);
    const double dn = static_cast<double>(n);
    for (Index k = 0; k < n; ++k) {
        const double lo = offset + scale * static_cast<double>(k) / dn;
        const double hi = offset + scale * static_cast<double>(k + 1) / dn;
        const Index j0 = std::max<Index>(0, static_cast<Index>(std::floor(lo * dn)) - 1);
        const Index j1 = std::min<Index>(n - 1, static_cast<Index>(std::ceil(hi * dn)) + 1);
        for (Index j = j0; j <= j1; ++j) {
            const double a = static_cast<double>(j) / dn;
            const double b = static_cast<double>(j + 1) / dn;
            const double overlap = std::min(b, hi) - std::max(a, lo);
            if (overlap > 0.0) m(j, k) = factor * overlap;
        }
    }
    return m;
}

}  // namespace

GridSpace::GridSpace(Index n_points) : n_(n_points) {
    if (n_points < 1) throw ParameterError("GridSpace: need at least one cell");
    nodes_.resize(n_);
    weights_ = RVec::Constant(n_, 1.0 / static_cast<double>(n_));
    for (Index j = 0; j < n_; ++j) nodes_(j) = (static_cast<double>(j) + 0.5) / static_cast<double>(n_);
}

CMat GridSpace::smooth_basis(Index modes) const {
    const Index m = std::min(modes, n_);
    CMat c(n_, m);
    for (Index k = 0; k < m; ++k)
        for (Index j = 0; j < n_; ++j)
            c(j, k) = std::cos(std::numbers::pi * static_cast<double>(k) * nodes_(j));
    Eigen::HouseholderQR<CMat> qr(c);
    return qr.householderQ() * CMat::Identity(n_, m);
}

CMat shrink_isometry(double t, const GridSpace& grid) {
    if (!(t > 0.0 && t <= 1.0)) {
        std::ostringstream os;
        os << "shrink_isometry: t = " << t << " outside (0, 1]";
        throw ParameterError(os.str());
    }
    if (t == 1.0) return identity(grid.size());
    return affine_cell_operator(0.0, t, grid.size());
}

CMat stretch_isometry(double t, const GridSpace& grid) {
    if (!(t >= 0.0 && t < 1.0)) {
        std::ostringstream os;
        os << "stretch_isometry: t = " << t << " outside [0, 1)";
        throw ParameterError(os.str());
    }
    if (t == 0.0) return identity(grid.size());
    return affine_cell_operator(t, 1.0 - t, grid.size());
}

double IsometryDefects::max() const { return std::max({shrink, stretch, complement}); }

IsometryDefects isometry_defects(double t, const GridSpace& grid, Index modes) {
    if (!(t > 0.0 && t < 1.0)) throw ParameterError("isometry_defects: t must lie in (0, 1)");
    const CMat p = grid.smooth_basis(modes);
    const CMat u = shrink_isometry(t, grid);
    const CMat v = stretch_isometry(t, grid);
    const Eigen::SparseMatrix<Complex> us = u.sparseView();
    const Eigen::SparseMatrix<Complex> vs = v.sparseView();
    const CMat up = us * p;
    const CMat vp = vs * p;
    IsometryDefects d;
    d.shrink = op_norm(CMat(us.adjoint() * up - p));
    d.stretch = op_norm(CMat(vs.adjoint() * vp - p));
    d.complement = op_norm(CMat(us * CMat(us.adjoint() * p) + vs * CMat(vs.adjoint() * p) - p));
    return d;
}

double discretization_tolerance(const GridSpace& grid, std::vector<double> ts) {
    if (ts.empty())
        for (int k = 1; k <= 9; ++k) ts.push_back(0.1 * k);
    double delta = 0.0;
    for (double t : ts) delta = std::max(delta, isometry_defects(t, grid).max());
    return delta;
}

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;

// w m w* for a sparse w; the isometry matrices have at most a few entries per column.
CMat conjugate(const SparseC& w, const CMat& m) {
    const CMat wm = w * m;
    return (w * wm.adjoint()).adjoint();
}

CMat zk_formula(double t, const CMat& a, const CMat& b, const CMat& u, const CMat& v) {
    const SparseC us = u.sparseView();
    const SparseC vs = v.sparseView();
    return (1.0 - t) * conjugate(us, a) + t * conjugate(vs, b);
}

void check_zk_inputs(const CMat& a, const CMat& b, Index expected, const char* what) {
    require_hermitian(a, what);
    require_hermitian(b, what);
    require_same_dims(a.rows(), expected, what);
    require_same_dims(b.rows(), expected, what);
    require_injective_hermitian(a, what);
    require_injective_hermitian(b, what);
}

}  // namespace

ZkContraction::ZkContraction(CMat a, CMat b, const GridSpace& grid) : a_(std::move(a)), b_(std::move(b)), grid_(grid) {
    check_zk_inputs(a_, b_, grid_.size(), "zk_contraction");
}

CMat ZkContraction::operator()(double t) const {
    require_unit_interval(t, "zk_contraction");
    if (t == 0.0) return a_;
    if (t == 1.0) return b_;
    return zk_formula(t, a_, b_, shrink_isometry(1.0 - t, grid_), stretch_isometry(1.0 - t, grid_));
}

CMat zk_contraction(double t, const CMat& a, const CMat& b, const GridSpace& grid) {
    require_unit_interval(t, "zk_contraction");
    return ZkContraction(a, b, grid)(t);
}

CMat zk_contraction_graded(double t, const CMat& a, const CMat& b, const GridSpace& grid) {
    require_unit_interval(t, "zk_contraction_graded");
    check_zk_inputs(a, b, 2 * grid.size(), "zk_contraction_graded");
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    const CMat u = shrink_isometry(1.0 - t, grid);
    const CMat v = stretch_isometry(1.0 - t, grid);
    return zk_formula(t, a, b, block_diag(u, u), block_diag(v, v));
}

HermOp rk_contraction(double t, const HermOp& a, const HermOp& b, const GridSpace& grid) {
    require_unit_interval(t, "rk_contraction");
    require_same_dims(a.dim(), grid.size(), "rk_contraction");
    require_same_dims(b.dim(), grid.size(), "rk_contraction");
    for (const HermOp* op : {&a, &b}) {
        const double m = op->eigenvalues().cwiseAbs().minCoeff();
        if (m < kInjectivityFloor) {
            std::ostringstream os;
            os << "rk_contraction: operator is singular (smallest |eigenvalue| " << m << ")";
            throw DegeneracyError(os.str());
        }
    }
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    const CMat u = shrink_isometry(1.0 - t, grid);
    const CMat v = stretch_isometry(1.0 - t, grid);
    const SparseC us = u.sparseView();
    const SparseC vs = v.sparseView();
    const CMat h = conjugate(us, a.matrix()) / (1.0 - t) + conjugate(vs, b.matrix()) / t;
    return HermOp(CMat(0.5 * (h + h.adjoint())));
}

HermOp default_compact_weight(Index n) {
    RVec d(n);
    for (Index j = 0; j < n; ++j) d(j) = 0.9 / static_cast<double>(j + 1);
    return HermOp::diagonal(d);
}

HermOp compactify_homotopy(double t, const HermOp& a, const HermOp& k) {
    require_unit_interval(t, "compactify_homotopy");
    require_same_dims(a.dim(), k.dim(), "compactify_homotopy");
    if (k.dim() > 0 && !(k.min_eigenvalue() > 0.0 && k.max_eigenvalue() < 1.0)) {
        std::ostringstream os;
        os << "compactify_homotopy: weight k must be positive with norm < 1 (spectrum in [" << k.min_eigenvalue()
           << ", " << k.max_eigenvalue() << "])";
        throw ParameterError(os.str());
    }
    if (t == 0.0) return a;
    const CMat c = func_calc(k, [t](double x) { return Complex(1.0 / ((1.0 - t) + t * x), 0.0); });
    const CMat h = c * a.matrix() * c;
    return HermOp(CMat(0.5 * (h + h.adjoint())));
}

CMat unitary_log_retraction(double t, const CMat& u) {
    require_unit_interval(t, "unitary_log_retraction");
    require_square(u, "unitary_log_retraction");
    const double defect = unitarity_defect(u);
    if (defect > 1e-10) {
        std::ostringstream os;
        os << "unitary_log_retraction: input is not unitary (||u*u - 1|| = " << defect << ")";
        throw ValidationError(os.str());
    }
    const NormalEigendecomposition e = normal_eig(u);
    for (Index k = 0; k < e.values.size(); ++k) {
        if (std::abs(e.values(k) + 1.0) < kBranchCutDistance) {
            std::ostringstream os;
            os << "unitary_log_retraction: eigenvalue " << e.values(k) << " lies on the branch cut at -1";
            throw BranchCutError(os.str());
        }
    }
    if (t == 0.0) return identity(u.rows());
    if (t == 1.0) return u;
    CVec w(e.values.size());
    for (Index k = 0; k < w.size(); ++k) w(k) = std::polar(1.0, t * std::arg(e.values(k)));
    return e.vectors * w.asDiagonal() * e.vectors.adjoint();
}

double sampled_lipschitz(const std::function<CMat(double)>& h, double lo, double hi, Index points) {
    if (points < 2 || !(hi > lo)) throw ParameterError("sampled_lipschitz: need at least two points on a proper interval");
    double best = 0.0;
    CMat prev = h(lo);
    double prev_t = lo;
    for (Index k = 1; k < points; ++k) {
        const double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        CMat cur = h(t);
        const CMat diff = cur - prev;
        const double norm = (diff - diff.adjoint()).norm() <= kHermitianTolerance * diff.norm() ? hermitian_op_norm(diff)
                                                                                               : op_norm(diff);
        best = std::max(best, norm / (t - prev_t));
        prev = std::move(cur);
        prev_t = t;
    }
    return best;
}

}  // namespace opflow
