#include "opflow/specflow.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "parallel.hpp"

namespace opflow {

namespace {

double min_abs_eigenvalue(const HermOp& op) {
    return op.dim() == 0 ? INFINITY : op.eigenvalues().cwiseAbs().minCoeff();
}

double max_abs(const RVec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Largest entrywise difference relative to the larger operator's largest entry.
double relative_mismatch(const HermOp& a, const HermOp& b) {
    if (a.dim() != b.dim()) return INFINITY;
    if (a.is_tridiagonal() && b.is_tridiagonal()) {
        const double diff = std::max(max_abs(a.tridiagonal_diagonal() - b.tridiagonal_diagonal()),
                                     max_abs(a.tridiagonal_off_diagonal() - b.tridiagonal_off_diagonal()));
        const double scale = std::max({1.0, max_abs(a.tridiagonal_diagonal()), max_abs(a.tridiagonal_off_diagonal())});
        return diff / scale;
    }
    const double diff = (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
    return diff / std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
}

struct Window {
    double a;
    double margin;
};

double distance_to_spectra(double a, const RVec& l, const RVec& r) {
    double d = a;
    for (const RVec* v : {&l, &r})
        for (Index k = 0; k < v->size(); ++k) d = std::min(d, std::abs(std::abs((*v)(k)) - a));
    return d;
}

Window choose_window(const RVec& l, const RVec& r, double window0, double theta_lo, double theta_hi) {
    std::vector<double> pts{0.0, window0};
    for (const RVec* v : {&l, &r})
        for (Index k = 0; k < v->size(); ++k)
            if (std::abs((*v)(k)) <= window0) pts.push_back(std::abs((*v)(k)));
    std::sort(pts.begin(), pts.end());
    double best_lo = 0.0, best_width = -1.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double w = pts[k + 1] - pts[k];
        if (w > best_width) {
            best_width = w;
            best_lo = pts[k];
        }
    }
    Window win{best_lo + 0.5 * best_width, 0.5 * best_width};
    if (win.margin >= kZeroEigenvalueGuard) return win;
    for (double f : {0.9, 1.1}) {
        const double a = win.a * f;
        const double m = distance_to_spectra(a, l, r);
        if (m >= kZeroEigenvalueGuard) return {a, m};
    }
    std::ostringstream os;
    os << "spectral_flow: no counting level separates the spectra on [" << theta_lo << ", " << theta_hi
       << "] (eigenvalue pinned near a = " << win.a << ")";
    throw ConditioningError(os.str());
}

Index count_in(const RVec& v, double lo, double hi) {
    Index c = 0;
    for (Index k = 0; k < v.size(); ++k)
        if (v(k) >= lo && v(k) < hi) ++c;
    return c;
}

std::vector<double> inside(const RVec& v, double a) {
    std::vector<double> out;
    for (Index k = 0; k < v.size(); ++k)
        if (std::abs(v(k)) < a) out.push_back(v(k));
    return out;
}

struct Node {
    double theta;
    RVec lambda;
};

class FlowSolver {
  public:
    FlowSolver(const OperatorPath& path, double window0, Index max_depth)
        : path_(path), window0_(window0), max_depth_(max_depth) {}

    SpecFlowReport run() {
        const auto& ps = path_.parameters();
        const auto& ops = path_.operators();
        report_.partition.push_back(ps.front());
        for (std::size_t k = 0; k + 1 < ps.size(); ++k)
            refine(Node{ps[k], ops[k].eigenvalues()}, Node{ps[k + 1], ops[k + 1].eigenvalues()}, 0);
        return std::move(report_);
    }

  private:
    void refine(const Node& l, const Node& r, Index depth) {
        const Window w = choose_window(l.lambda, r.lambda, window0_, l.theta, r.theta);
        const std::vector<double> in_l = inside(l.lambda, w.a);
        const std::vector<double> in_r = inside(r.lambda, w.a);
        bool converged = in_l.size() == in_r.size();
        if (converged) {
            double motion = 0.0;
            for (std::size_t k = 0; k < in_l.size(); ++k) motion = std::max(motion, std::abs(in_l[k] - in_r[k]));
            converged = motion < std::min(0.5 * w.a, w.margin);
        }
        if (converged) {
            const long c = static_cast<long>(count_in(r.lambda, 0.0, w.a)) - static_cast<long>(count_in(l.lambda, 0.0, w.a));
            report_.flow += c;
            report_.partition.push_back(r.theta);
            report_.window_radii.push_back(w.a);
            for (long k = 0; k < std::abs(c); ++k) report_.crossings.push_back({l.theta, r.theta, c > 0 ? 1 : -1});
            return;
        }
        if (depth >= max_depth_) {
            std::ostringstream os;
            os << "spectral_flow: refinement budget exhausted on [" << l.theta << ", " << r.theta << "]";
            throw NonConvergenceError(os.str());
        }
        const double width = r.theta - l.theta;
        double mid = l.theta + 0.5 * width;
        HermOp op = path_.at(mid);
        for (int tries = 0; min_abs_eigenvalue(op) < kZeroEigenvalueGuard; ++tries) {
            if (tries == 16) {
                std::ostringstream os;
                os << "spectral_flow: zero eigenvalue persists near " << mid;
                throw ConditioningError(os.str());
            }
            mid += width * std::ldexp(1.0, -6);
            op = path_.at(mid);
        }
        const Node m{mid, op.eigenvalues()};
        refine(l, m, depth + 1);
        refine(m, r, depth + 1);
    }

    const OperatorPath& path_;
    double window0_;
    Index max_depth_;
    SpecFlowReport report_;
};

}  // namespace

OperatorPath OperatorPath::sample(Generator generator, double lo, double hi, Index samples, bool closed) {
    if (samples < 1) throw ParameterError("OperatorPath: need at least one subinterval");
    if (!(hi > lo)) throw ParameterError("OperatorPath: domain must satisfy lo < hi");
    const double step = (hi - lo) / static_cast<double>(samples);
    HermOp base = generator(lo);
    if (min_abs_eigenvalue(base) < kZeroEigenvalueGuard) {
        if (!closed) {
            std::ostringstream os;
            os << "OperatorPath: operator at the endpoint " << lo << " has an eigenvalue within "
               << kZeroEigenvalueGuard << " of 0";
            throw ParameterError(os.str());
        }
        lo += 0.5 * step;
        hi += 0.5 * step;
    }

    OperatorPath p;
    p.lo_ = lo;
    p.hi_ = hi;
    p.closed_ = closed;
    if (closed) {
        p.generator_ = [g = std::move(generator), lo, hi](double theta) { return theta >= hi ? g(lo) : g(theta); };
    } else {
        p.generator_ = std::move(generator);
    }

    const auto count = static_cast<std::size_t>(samples) + 1;
    p.parameters_.resize(count);
    p.operators_.resize(count);
    detail::parallel_for(count, [&](std::size_t k) {
        double theta = k + 1 == count ? hi : lo + step * static_cast<double>(k);
        HermOp op = p.generator_(theta);
        const bool interior = k > 0 && k + 1 < count;
        for (int tries = 0; min_abs_eigenvalue(op) < kZeroEigenvalueGuard; ++tries) {
            if (!interior || tries == 16) {
                std::ostringstream os;
                os << "OperatorPath: eigenvalue within " << kZeroEigenvalueGuard << " of 0 at parameter " << theta;
                if (interior) throw ConditioningError(os.str());
                throw ParameterError(os.str());
            }
            theta += step * std::ldexp(1.0, -10);
            op = p.generator_(theta);
        }
        p.parameters_[k] = theta;
        p.operators_[k] = std::move(op);
    });
    for (const HermOp& op : p.operators_)
        require_same_dims(op.dim(), p.operators_.front().dim(), "OperatorPath: operators must share one dimension");
    return p;
}

std::pair<OperatorPath, OperatorPath> OperatorPath::split(double at, Index left_samples, Index right_samples) const {
    if (!(at > lo_ && at < hi_)) throw ParameterError("OperatorPath::split: split point must be interior");
    return {sample(generator_, lo_, at, left_samples, false), sample(generator_, at, hi_, right_samples, false)};
}

OperatorPath concat(const OperatorPath& path1, const OperatorPath& path2) {
    const double mismatch = relative_mismatch(path1.operators().back(), path2.operators().front());
    if (mismatch > kEndpointMatchTolerance) {
        std::ostringstream os;
        os << "concat: endpoint operators differ (relative mismatch " << mismatch << ")";
        throw EndpointMismatchError(os.str());
    }
    const double shift = path1.hi() - path2.lo();
    OperatorPath p;
    p.lo_ = path1.lo();
    p.hi_ = path2.hi() + shift;
    p.closed_ = false;
    p.generator_ = [g1 = path1.generator(), g2 = path2.generator(), split = path1.hi(), shift](double theta) {
        return theta <= split ? g1(theta) : g2(theta - shift);
    };
    p.parameters_ = path1.parameters();
    p.operators_ = path1.operators();
    for (std::size_t k = 1; k < path2.parameters().size(); ++k) {
        p.parameters_.push_back(path2.parameters()[k] + shift);
        p.operators_.push_back(path2.operators()[k]);
    }
    return p;
}

OperatorPath reverse(const OperatorPath& path) {
    OperatorPath p;
    p.lo_ = path.lo();
    p.hi_ = path.hi();
    p.closed_ = path.closed();
    const double sum = path.lo() + path.hi();
    p.generator_ = [g = path.generator(), sum](double theta) { return g(sum - theta); };
    p.parameters_.assign(path.parameters().rbegin(), path.parameters().rend());
    for (double& t : p.parameters_) t = sum - t;
    p.operators_.assign(path.operators().rbegin(), path.operators().rend());
    return p;
}

std::string SpecFlowReport::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["flow"] = flow;
    j["partition"] = partition;
    j["window_radii"] = window_radii;
    j["crossings"] = nlohmann::ordered_json::array();
    for (const Crossing& c : crossings)
        j["crossings"].push_back({{"theta_lo", c.theta_lo}, {"theta_hi", c.theta_hi}, {"direction", c.direction}});
    return j.dump(indent);
}

SpecFlowReport spectral_flow(const OperatorPath& path, double window0, Index max_depth) {
    if (!(window0 > 0.0)) throw ParameterError("spectral_flow: window0 must be positive");
    if (max_depth < 0) throw ParameterError("spectral_flow: max_depth must be non-negative");
    return FlowSolver(path, window0, max_depth).run();
}

}  // namespace opflow
