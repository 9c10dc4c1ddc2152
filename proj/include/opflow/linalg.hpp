#pragma once

// Dense complex linear algebra kernel: Hermitian operators with memoized
// eigendecompositions, functional calculus and operator norms.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <utility>

#include "opflow/errors.hpp"

namespace opflow {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative Hermiticity tolerance applied when a HermOp is constructed.
inline constexpr double kHermitianTolerance = 1e-12;

/// Self-adjoint operator on C^n.
///
/// Values are immutable; copies share one cache, and the eigendecomposition is
/// computed at most once (thread-safe) on first use. Real symmetric
/// tridiagonal operators keep only their two diagonals and are materialized as
/// a dense matrix lazily.
class HermOp {
  public:
    HermOp();

    /// Validates ||M - M*||_F <= 1e-12 ||M||_F, then stores (M + M*)/2.
    /// Throws ValidationError naming both norms otherwise.
    explicit HermOp(const CMat& m);

    static HermOp real_tridiagonal(RVec diagonal, RVec off_diagonal);
    static HermOp diagonal(const RVec& values);
    static HermOp zero(Index n);

    Index dim() const;
    bool is_tridiagonal() const;

    const CMat& matrix() const;
    /// Ascending eigenvalues.
    const RVec& eigenvalues() const;
    /// Unitary whose columns are eigenvectors matching eigenvalues().
    const CMat& eigenvectors() const;

    const RVec& tridiagonal_diagonal() const;
    const RVec& tridiagonal_off_diagonal() const;

    double min_eigenvalue() const { return eigenvalues()(0); }
    double max_eigenvalue() const { return eigenvalues()(dim() - 1); }

  private:
    struct State;
    explicit HermOp(std::shared_ptr<const State> state);
    std::shared_ptr<const State> state_;
};

struct Eigendecomposition {
    RVec values;
    CMat vectors;
};

/// Ascending eigenvalues and orthonormal eigenvectors.
Eigendecomposition herm_eig(const HermOp& m);

/// U f(Lambda) U*. Throws DomainError if f is not finite at an eigenvalue.
template <class F>
CMat func_calc(const HermOp& m, F&& f) {
    const RVec& lambda = m.eigenvalues();
    const CMat& u = m.eigenvectors();
    CVec fl(lambda.size());
    for (Index k = 0; k < lambda.size(); ++k) {
        const Complex v = f(lambda(k));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream os;
            os << "spectral function undefined at eigenvalue " << lambda(k);
            throw DomainError(os.str());
        }
        fl(k) = v;
    }
    return u * fl.asDiagonal() * u.adjoint();
}

/// Functional calculus with a real-valued f; the result is Hermitian.
template <class F>
HermOp func_calc_real(const HermOp& m, F&& f) {
    CMat r = func_calc(m, [&](double x) { return Complex(f(x), 0.0); });
    r = (0.5 * (r + r.adjoint())).eval();
    return HermOp(r);
}

/// Largest singular value.
double op_norm(const CMat& m);
/// Largest |eigenvalue|.
double op_norm(const HermOp& m);
/// Operator norm of a matrix known to be Hermitian up to rounding.
double hermitian_op_norm(const CMat& m);

/// Smallest singular value.
double min_singular_value(const CMat& m);

CMat identity(Index n);

/// [[a, b], [c, d]] for square blocks of equal size.
CMat block2(const CMat& a, const CMat& b, const CMat& c, const CMat& d);
/// Block diag(a, b).
CMat block_diag(const CMat& a, const CMat& b);

double unitarity_defect(const CMat& u);
double hermiticity_defect(const CMat& m);

/// Eigenvalues and a unitary eigenbasis of a normal matrix (via complex Schur).
struct NormalEigendecomposition {
    CVec values;
    CMat vectors;
};
NormalEigendecomposition normal_eig(const CMat& m);

void require_square(const CMat& m, const char* what);
void require_same_dims(Index a, Index b, const char* what);

}  // namespace opflow
