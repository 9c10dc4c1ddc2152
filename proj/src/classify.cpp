#include "opflow/classify.hpp"

#include <algorithm>
#include <cmath>

namespace opflow {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

// Fixes the phase of each column so that its largest entry is real positive.
// Eigenvectors are otherwise only determined up to a unit scalar.
CMat normalize_phases(CMat v) {
    for (Index j = 0; j < v.cols(); ++j) {
        Index arg = 0;
        v.col(j).cwiseAbs().maxCoeff(&arg);
        const Complex z = v(arg, j);
        if (std::abs(z) > 0.0) v.col(j) *= std::conj(z) / std::abs(z);
    }
    return v;
}

CMat select_columns(const CMat& v, const std::vector<Index>& cols) {
    CMat out(v.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = v.col(cols[k]);
    return out;
}

HermOp compress(const HermOp& a, const CMat& basis) {
    if (basis.cols() == 0) return HermOp(CMat(0, 0));
    const CMat m = basis.adjoint() * a.matrix() * basis;
    return HermOp(CMat(0.5 * (m + m.adjoint())));
}

}  // namespace

SymmetricTuple::SymmetricTuple(std::vector<double> points) {
    if (points.empty()) throw ValidationError("symmetric tuple must be non-empty");
    for (double p : points)
        if (!std::isfinite(p)) throw ValidationError("symmetric tuple has a non-finite point");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const std::size_t m = points.size();
    for (std::size_t k = 0; k < m; ++k) {
        const double mirror = points[m - 1 - k];
        if (std::abs(points[k] + mirror) > kSymmetryTolerance * std::max(1.0, std::abs(mirror))) {
            std::ostringstream os;
            os << "tuple is not symmetric about 0: " << points[k] << " has no mirror point";
            throw ValidationError(os.str());
        }
    }
    points_ = std::move(points);
}

SymmetricTuple SymmetricTuple::from_magnitudes(const std::vector<double>& magnitudes) {
    std::vector<double> pts;
    for (double r : magnitudes) {
        pts.push_back(std::abs(r));
        pts.push_back(-std::abs(r));
    }
    return SymmetricTuple(std::move(pts));
}

SymmetricTuple SymmetricTuple::unite(const SymmetricTuple& other) const {
    std::vector<double> pts = points_;
    pts.insert(pts.end(), other.points_.begin(), other.points_.end());
    return SymmetricTuple(std::move(pts));
}

WindowProjection window_projection(const HermOp& a, double lo, double hi) {
    if (!(lo <= hi)) throw ParameterError("window_projection: requires lo <= hi");
    const RVec& lambda = a.eigenvalues();
    std::vector<Index> inside;
    for (Index k = 0; k < lambda.size(); ++k) {
        const double x = lambda(k);
        if (std::abs(x - lo) < kWindowCollision || std::abs(x - hi) < kWindowCollision) {
            std::ostringstream os;
            os << "eigenvalue " << x << " collides with the window edge of [" << lo << ", " << hi << "]";
            throw BoundaryCollisionError(os.str());
        }
        if (x > lo && x < hi) inside.push_back(k);
    }
    WindowProjection w;
    w.rank = static_cast<Index>(inside.size());
    if (w.rank == a.dim()) {
        w.projection = identity(a.dim());
    } else {
        const CMat basis = select_columns(a.eigenvectors(), inside);
        w.projection = basis * basis.adjoint();
    }
    return w;
}

bool covering_membership(const HermOp& a, const SymmetricTuple& tau, double gap) {
    if (!(gap > 0.0)) throw ParameterError("covering_membership: gap must be positive");
    const RVec& lambda = a.eigenvalues();
    for (double p : tau.points()) {
        // lambda is ascending, so the nearest eigenvalue is next to the insertion point.
        const double* first = lambda.data();
        const double* last = first + lambda.size();
        const double* it = std::lower_bound(first, last, p);
        if (it != last && std::abs(*it - p) < gap) return false;
        if (it != first && std::abs(*(it - 1) - p) < gap) return false;
    }
    return true;
}

CMat SplitOperator::reassemble() const {
    const Index n = window_basis.rows();
    CMat m = CMat::Zero(n, n);
    if (window_basis.cols() > 0) m += window_basis * finite_part.matrix() * window_basis.adjoint();
    if (complement_basis.cols() > 0) m += complement_basis * infinite_part.matrix() * complement_basis.adjoint();
    return m;
}

SplitOperator split_finite_infinite(const HermOp& a, const SymmetricTuple& tau) {
    if (!covering_membership(a, tau, kWindowCollision)) {
        throw NotInCoveringError("split_finite_infinite: spectrum meets tau");
    }
    const double r = tau.hull_radius();
    const RVec& lambda = a.eigenvalues();
    std::vector<Index> inside, outside;
    for (Index k = 0; k < lambda.size(); ++k) (std::abs(lambda(k)) < r ? inside : outside).push_back(k);
    const CMat v = normalize_phases(a.eigenvectors());
    SplitOperator s;
    s.window_basis = select_columns(v, inside);
    s.complement_basis = select_columns(v, outside);
    s.finite_part = compress(a, s.window_basis);
    s.infinite_part = compress(a, s.complement_basis);
    return s;
}

CMat surgery_complement_basis(const HermOp& a, double c) {
    if (!(c > 0.0)) throw ParameterError("surgery: c must be positive");
    const RVec& lambda = a.eigenvalues();
    std::vector<Index> outside;
    for (Index k = 0; k < lambda.size(); ++k)
        if (std::abs(lambda(k)) > c) outside.push_back(k);
    return select_columns(normalize_phases(a.eigenvectors()), outside);
}

HermOp density_surgery(const HermOp& a, double c, const HermOp& b) {
    const WindowProjection w = window_projection(a, -c, c);
    const CMat q = surgery_complement_basis(a, c);
    require_same_dims(b.dim(), q.cols(), "density_surgery: B must act on the complement of the window");
    if (b.dim() > 0) {
        const RVec& mu = b.eigenvalues();
        for (Index k = 0; k < mu.size(); ++k) {
            if (std::abs(mu(k)) <= c) {
                std::ostringstream os;
                os << "density_surgery: eigenvalue " << mu(k) << " of B lies in [-" << c << ", " << c << "]";
                throw SurgeryViolationError(os.str());
            }
        }
    }
    CMat m = a.matrix() * w.projection;
    if (b.dim() > 0) m += q * b.matrix() * q.adjoint();
    return HermOp(CMat(0.5 * (m + m.adjoint())));
}

Index negative_count(const HermOp& a, double threshold) {
    const RVec& lambda = a.eigenvalues();
    Index count = 0;
    for (Index k = 0; k < lambda.size(); ++k)
        if (lambda(k) < threshold) ++count;
    return count;
}

}  // namespace opflow
