#include "opflow/sampling.hpp"

#include <Eigen/QR>

namespace opflow {

CMat random_gaussian(Rng& rng, Index rows, Index cols) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CMat m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const double re = nd(rng);
            const double im = nd(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

CMat random_hermitian(Rng& rng, Index n) {
    const CMat g = random_gaussian(rng, n, n);
    return 0.5 * (g + g.adjoint());
}

CMat random_unitary(Rng& rng, Index n) {
    const CMat g = random_gaussian(rng, n, n);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ() * identity(n);
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

CMat random_with_norm(Rng& rng, Index n, double norm) {
    CMat g = random_gaussian(rng, n, n);
    const double s = op_norm(g);
    if (s > 0.0) g *= norm / s;
    return g;
}

CMat random_hermitian_with_spectrum(Rng& rng, const RVec& eigenvalues) {
    const CMat u = random_unitary(rng, eigenvalues.size());
    CMat m = u * eigenvalues.cast<Complex>().asDiagonal() * u.adjoint();
    return 0.5 * (m + m.adjoint());
}

CVec random_unit_vector(Rng& rng, Index n) {
    CVec v = random_gaussian(rng, n, 1).col(0);
    return v / v.norm();
}

double uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> ud(lo, hi);
    return ud(rng);
}

Index uniform_index(Rng& rng, Index lo, Index hi) {
    std::uniform_int_distribution<Index> ud(lo, hi);
    return ud(rng);
}

}  // namespace opflow
