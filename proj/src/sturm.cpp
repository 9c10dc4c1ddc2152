#include "opflow/sturm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

#include "parallel.hpp"

namespace opflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRootTolerance = 1e-12;

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

// Solves (T - sigma) y = rhs for symmetric tridiagonal T (Thomas algorithm).
RVec solve_shifted_tridiagonal(const RVec& d, const RVec& e, double sigma, const RVec& rhs) {
    const Index n = d.size();
    RVec c(n), y(n);
    double denom = d(0) - sigma;
    c(0) = n > 1 ? e(0) / denom : 0.0;
    y(0) = rhs(0) / denom;
    for (Index i = 1; i < n; ++i) {
        denom = (d(i) - sigma) - e(i - 1) * c(i - 1);
        if (i + 1 < n) c(i) = e(i) / denom;
        y(i) = (rhs(i) - e(i - 1) * y(i - 1)) / denom;
    }
    for (Index i = n - 2; i >= 0; --i) y(i) -= c(i) * y(i + 1);
    return y;
}

}  // namespace

ProjectivePoint::ProjectivePoint(double x0, double x1) {
    const double r = std::hypot(x0, x1);
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("projective point needs a finite non-zero pair");
    x0 /= r;
    x1 /= r;
    if (x0 < 0.0 || (x0 == 0.0 && x1 < 0.0)) {
        x0 = -x0;
        x1 = -x1;
    }
    x0_ = x0 == 0.0 ? 0.0 : x0;
    x1_ = x1 == 0.0 ? 0.0 : x1;
}

ProjectivePoint ProjectivePoint::from_angle(double theta) { return ProjectivePoint(std::cos(theta), std::sin(theta)); }

double ProjectivePoint::angle() const {
    double a = std::atan2(x1_, x0_);
    if (a < 0.0) a += kPi;
    return a >= kPi ? 0.0 : a;
}

RobinOperator assemble_robin_operator(const ProjectivePoint& x, Index grid_n) {
    if (grid_n < 16) throw ParameterError("assemble_robin_operator: grid must have at least 16 points");
    const double h = 1.0 / static_cast<double>(grid_n);
    const double h2 = h * h;
    RVec d = RVec::Constant(grid_n, 2.0 / h2);
    RVec e = RVec::Constant(grid_n - 1, -1.0 / h2);
    if (x.x1() == 0.0) {
        d(grid_n - 1) = 2.0 / (h2 * h);
        e(grid_n - 2) = 0.0;
    } else {
        const double r = std::min(h * x.x0() / x.x1(), 1.0 / h + 1.0);
        d(grid_n - 1) = 2.0 * (1.0 - r) / h2;
        e(grid_n - 2) = -std::sqrt(2.0) / h2;
    }
    return RobinOperator{x, grid_n, HermOp::real_tridiagonal(std::move(d), std::move(e)),
                         "second-order central, ghost-point boundary"};
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream os;
        os << "bisect_root: no sign change on [" << lo << ", " << hi << "]";
        throw DomainError(os.str());
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> analytic_eigenvalues(const ProjectivePoint& x, Index count) {
    if (count < 1) throw ParameterError("analytic_eigenvalues: count must be at least 1");
    const double x0 = x.x0();
    const double x1 = x.x1();
    std::vector<double> out;
    const auto wanted = static_cast<std::size_t>(count);

    if (x1 == 0.0) {
        for (Index k = 1; k <= count; ++k) out.push_back(std::pow(kPi * static_cast<double>(k), 2));
        return out;
    }
    if (x0 == 0.0) {
        for (Index k = 0; k < count; ++k) out.push_back(std::pow(kPi * (static_cast<double>(k) + 0.5), 2));
        return out;
    }

    const double slope = x1 / x0;
    const bool zero_mode = std::abs(x0 - x1) < kRootTolerance;
    if (!zero_mode && slope > 0.0 && slope < 1.0) {
        // tanh(mu)/mu falls from 1 to 0; it meets the level slope once.
        const auto f = [&](double mu) { return x0 * std::tanh(mu) / mu - x1; };
        const double mu = bisect_root(f, 1e-300, 1.0 / slope + 1.0, kRootTolerance);
        out.push_back(-mu * mu);
    }
    if (zero_mode) out.push_back(0.0);

    const auto q = [&](double mu) {
        const double sinc = mu == 0.0 ? 1.0 : std::sin(mu) / mu;
        return x0 * sinc - x1 * std::cos(mu);
    };
    if (!zero_mode && slope > 1.0 && out.size() < wanted) {
        const double mu = bisect_root(q, 0.0, kPi / 2.0, kRootTolerance);
        out.push_back(mu * mu);
    }
    for (Index k = 1; out.size() < wanted; ++k) {
        const double c = kPi * static_cast<double>(k);
        const double mu = bisect_root(q, c - kPi / 2.0, c + kPi / 2.0, kRootTolerance);
        out.push_back(mu * mu);
    }
    out.resize(wanted);
    return out;
}

std::vector<GraphSample> spectral_graph(Index loop_samples, Index grid_n, double window) {
    if (loop_samples < 16) throw ParameterError("spectral_graph: at least 16 loop samples are required");
    if (!(window > 0.0)) throw ParameterError("spectral_graph: window must be positive");
    std::vector<GraphSample> graph(static_cast<std::size_t>(loop_samples));
    detail::parallel_for(graph.size(), [&](std::size_t k) {
        const double theta = kPi * static_cast<double>(k) / static_cast<double>(loop_samples);
        const ProjectivePoint x = ProjectivePoint::from_angle(theta);
        const RobinOperator op = assemble_robin_operator(x, grid_n);
        const RVec& lambda = op.matrix.eigenvalues();
        const Index shift = x.x1() == 0.0 ? 1 : 0;
        GraphSample s{theta, {}};
        for (Index j = 0; j < lambda.size(); ++j)
            if (std::abs(lambda(j)) <= window) s.points.push_back({j + shift, lambda(j)});
        graph[k] = std::move(s);
    });
    return graph;
}

void write_spectral_graph_csv(std::ostream& os, const std::vector<GraphSample>& graph) {
    os << "theta,branch_index,lambda\n";
    for (const GraphSample& s : graph)
        for (const GraphPoint& p : s.points)
            os << format_double(s.theta) << ',' << p.branch_index << ',' << format_double(p.lambda) << '\n';
}

std::vector<double> zero_crossing_angles(const std::vector<GraphSample>& graph) {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < graph.size(); ++k) {
        for (const GraphPoint& a : graph[k].points) {
            for (const GraphPoint& b : graph[k + 1].points) {
                if (a.branch_index != b.branch_index) continue;
                if (a.lambda == 0.0) {
                    out.push_back(graph[k].theta);
                } else if ((a.lambda < 0.0) != (b.lambda < 0.0) && b.lambda != 0.0) {
                    const double w = a.lambda / (a.lambda - b.lambda);
                    out.push_back(graph[k].theta + w * (graph[k + 1].theta - graph[k].theta));
                }
            }
        }
    }
    return out;
}

Concentration eigenfunction_concentration(const ProjectivePoint& x, Index grid_n, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("eigenfunction_concentration: delta must lie in (0, 1)");
    const RobinOperator op = assemble_robin_operator(x, grid_n);
    const double lambda = op.matrix.min_eigenvalue();
    if (!(lambda < 0.0)) {
        std::ostringstream os;
        os << "eigenfunction_concentration: no negative eigenvalue (lowest is " << lambda << ")";
        throw DomainError(os.str());
    }
    const RVec& d = op.matrix.tridiagonal_diagonal();
    const RVec& e = op.matrix.tridiagonal_off_diagonal();
    // Shifting just below the lowest eigenvalue keeps T - sigma positive definite.
    const double sigma = lambda - 1e-6 * std::max(1.0, std::abs(lambda));
    RVec y = RVec::Ones(grid_n);
    for (int it = 0; it < 8; ++it) {
        y = solve_shifted_tridiagonal(d, e, sigma, y);
        y /= y.norm();
    }
    const double h = 1.0 / static_cast<double>(grid_n);
    double left = 0.0;
    for (Index j = 0; j < grid_n; ++j)
        if (static_cast<double>(j + 1) * h <= 1.0 - delta + 1e-12) left += y(j) * y(j);
    return {std::sqrt(-lambda), left / y.squaredNorm()};
}

std::function<HermOp(double)> robin_loop(Index grid_n) {
    return [grid_n](double theta) { return assemble_robin_operator(ProjectivePoint::from_angle(theta), grid_n).matrix; };
}

}  // namespace opflow
