#include "opflow/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <mutex>

namespace opflow {

struct HermOp::State {
    Index n = 0;
    bool tridiagonal = false;
    RVec diag;
    RVec off;

    mutable std::once_flag dense_once;
    mutable CMat dense;

    mutable std::once_flag values_once;
    mutable RVec values;

    mutable std::once_flag vectors_once;
    mutable CMat vectors;
};

HermOp::HermOp() : HermOp(CMat(0, 0)) {}

HermOp::HermOp(std::shared_ptr<const State> state) : state_(std::move(state)) {}

HermOp::HermOp(const CMat& m) {
    require_square(m, "HermOp");
    const double scale = m.norm();
    const double defect = (m - m.adjoint()).norm();
    if (defect > kHermitianTolerance * scale) {
        std::ostringstream os;
        os << "matrix is not Hermitian: ||M - M*||_F = " << defect << " exceeds " << kHermitianTolerance
           << " * ||M||_F = " << kHermitianTolerance * scale;
        throw ValidationError(os.str());
    }
    auto s = std::make_shared<State>();
    s->n = m.rows();
    s->dense = 0.5 * (m + m.adjoint());
    std::call_once(s->dense_once, [] {});
    state_ = std::move(s);
}

HermOp HermOp::real_tridiagonal(RVec diagonal, RVec off_diagonal) {
    const Index n = diagonal.size();
    if (n > 0 && off_diagonal.size() != n - 1) {
        throw DimensionMismatchError("tridiagonal: off-diagonal must have length n - 1");
    }
    if (!diagonal.allFinite() || !off_diagonal.allFinite()) {
        throw ValidationError("tridiagonal: non-finite entries");
    }
    auto s = std::make_shared<State>();
    s->n = n;
    s->tridiagonal = true;
    s->diag = std::move(diagonal);
    s->off = std::move(off_diagonal);
    return HermOp(std::shared_ptr<const State>(std::move(s)));
}

HermOp HermOp::diagonal(const RVec& values) {
    return real_tridiagonal(values, RVec::Zero(values.size() > 0 ? values.size() - 1 : 0));
}

HermOp HermOp::zero(Index n) { return diagonal(RVec::Zero(n)); }

Index HermOp::dim() const { return state_->n; }

bool HermOp::is_tridiagonal() const { return state_->tridiagonal; }

const RVec& HermOp::tridiagonal_diagonal() const {
    if (!state_->tridiagonal) throw ValidationError("operator has no tridiagonal representation");
    return state_->diag;
}

const RVec& HermOp::tridiagonal_off_diagonal() const {
    if (!state_->tridiagonal) throw ValidationError("operator has no tridiagonal representation");
    return state_->off;
}

const CMat& HermOp::matrix() const {
    const State& s = *state_;
    std::call_once(s.dense_once, [&] {
        s.dense = CMat::Zero(s.n, s.n);
        for (Index i = 0; i < s.n; ++i) s.dense(i, i) = s.diag(i);
        for (Index i = 0; i + 1 < s.n; ++i) {
            s.dense(i, i + 1) = s.off(i);
            s.dense(i + 1, i) = s.off(i);
        }
    });
    return s.dense;
}

const RVec& HermOp::eigenvalues() const {
    const State& s = *state_;
    std::call_once(s.values_once, [&] {
        if (s.n == 0) {
            s.values = RVec(0);
        } else if (s.tridiagonal) {
            Eigen::SelfAdjointEigenSolver<RMat> es;
            es.computeFromTridiagonal(s.diag, s.off, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) throw Error("tridiagonal eigensolver failed to converge");
            s.values = es.eigenvalues();
        } else {
            Eigen::SelfAdjointEigenSolver<CMat> es(matrix(), Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver failed to converge");
            s.values = es.eigenvalues();
        }
    });
    return s.values;
}

const CMat& HermOp::eigenvectors() const {
    const State& s = *state_;
    std::call_once(s.vectors_once, [&] {
        if (s.n == 0) {
            s.vectors = CMat(0, 0);
        } else if (s.tridiagonal) {
            Eigen::SelfAdjointEigenSolver<RMat> es;
            es.computeFromTridiagonal(s.diag, s.off, Eigen::ComputeEigenvectors);
            if (es.info() != Eigen::Success) throw Error("tridiagonal eigensolver failed to converge");
            s.vectors = es.eigenvectors().cast<Complex>();
        } else {
            Eigen::SelfAdjointEigenSolver<CMat> es(matrix(), Eigen::ComputeEigenvectors);
            if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver failed to converge");
            s.vectors = es.eigenvectors();
        }
    });
    return s.vectors;
}

Eigendecomposition herm_eig(const HermOp& m) { return {m.eigenvalues(), m.eigenvectors()}; }

double op_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

double op_norm(const HermOp& m) {
    if (m.dim() == 0) return 0.0;
    return std::max(std::abs(m.min_eigenvalue()), std::abs(m.max_eigenvalue()));
}

double hermitian_op_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    const CMat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double min_singular_value(const CMat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<CMat> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

CMat identity(Index n) { return CMat::Identity(n, n); }

CMat block2(const CMat& a, const CMat& b, const CMat& c, const CMat& d) {
    const Index n = a.rows();
    if (a.cols() != n || b.rows() != n || b.cols() != n || c.rows() != n || c.cols() != n || d.rows() != n ||
        d.cols() != n) {
        throw DimensionMismatchError("block2: blocks must be square of equal size");
    }
    CMat r(2 * n, 2 * n);
    r.topLeftCorner(n, n) = a;
    r.topRightCorner(n, n) = b;
    r.bottomLeftCorner(n, n) = c;
    r.bottomRightCorner(n, n) = d;
    return r;
}

CMat block_diag(const CMat& a, const CMat& b) {
    CMat r = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    r.topLeftCorner(a.rows(), a.cols()) = a;
    r.bottomRightCorner(b.rows(), b.cols()) = b;
    return r;
}

double unitarity_defect(const CMat& u) {
    require_square(u, "unitarity_defect");
    return hermitian_op_norm(u.adjoint() * u - identity(u.rows()));
}

double hermiticity_defect(const CMat& m) { return op_norm(m - m.adjoint()); }

NormalEigendecomposition normal_eig(const CMat& m) {
    require_square(m, "normal_eig");
    if (m.rows() == 0) return {CVec(0), CMat(0, 0)};
    Eigen::ComplexSchur<CMat> schur(m);
    if (schur.info() != Eigen::Success) throw Error("complex Schur decomposition failed to converge");
    return {schur.matrixT().diagonal(), schur.matrixU()};
}

void require_square(const CMat& m, const char* what) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw DimensionMismatchError(os.str());
    }
}

void require_same_dims(Index a, Index b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw DimensionMismatchError(os.str());
    }
}

}  // namespace opflow
