#pragma once

// Integer spectral flow along sampled paths of Hermitian operators.
//
// Each subinterval [l, r] of the partition gets a counting level a > 0 placed
// in the middle of the widest gap of {|lambda|} (both endpoint spectra, clipped
// to [0, window0]); its margin is half that gap. The subinterval contributes
// #{lambda in [0, a)}(r) - #{lambda in [0, a)}(l) once the number of eigenvalues
// with |lambda| < a agrees at both ends and the eigenvalues inside [-a, a] move by
// less than min(a/2, margin). Otherwise it is bisected.
//
// Closed paths identify the right endpoint with the left one: the operator at
// the right end is generator(left). A closed path whose base point has an
// eigenvalue within 1e-9 of 0 is rotated by half a sample step. Interior
// parameters landing within 1e-9 of a zero eigenvalue are nudged forward.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "opflow/linalg.hpp"

namespace opflow {

inline constexpr double kZeroEigenvalueGuard = 1e-9;
inline constexpr double kEndpointMatchTolerance = 1e-9;

class OperatorPath {
  public:
    using Generator = std::function<HermOp(double)>;

    /// Evaluates generator at samples + 1 equally spaced parameters on [lo, hi] (in parallel).
    static OperatorPath sample(Generator generator, double lo, double hi, Index samples, bool closed = false);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool closed() const { return closed_; }
    Index dim() const { return operators_.front().dim(); }
    const std::vector<double>& parameters() const { return parameters_; }
    const std::vector<HermOp>& operators() const { return operators_; }

    /// Operator at theta, honouring the endpoint identification of closed paths.
    HermOp at(double theta) const { return generator_(theta); }
    const Generator& generator() const { return generator_; }

    /// Open sub-paths on [lo, at] and [at, hi], resampled with the given counts.
    std::pair<OperatorPath, OperatorPath> split(double at, Index left_samples, Index right_samples) const;

  private:
    OperatorPath() = default;
    double lo_ = 0.0;
    double hi_ = 1.0;
    bool closed_ = false;
    Generator generator_;
    std::vector<double> parameters_;
    std::vector<HermOp> operators_;

    friend OperatorPath concat(const OperatorPath&, const OperatorPath&);
    friend OperatorPath reverse(const OperatorPath&);
};

/// path1 then path2, with path2's parameter shifted to start at path1.hi().
/// Throws EndpointMismatchError if the joining operators differ by more than 1e-9.
OperatorPath concat(const OperatorPath& path1, const OperatorPath& path2);

/// theta -> path(lo + hi - theta) on the same domain.
OperatorPath reverse(const OperatorPath& path);

struct Crossing {
    double theta_lo;
    double theta_hi;
    int direction;
};

struct SpecFlowReport {
    long flow = 0;
    std::vector<double> partition;
    std::vector<double> window_radii;
    std::vector<Crossing> crossings;

    /// {"flow", "partition", "window_radii", "crossings": [{"theta_lo", "theta_hi", "direction"}]}.
    std::string to_json(int indent = 2) const;
};

inline constexpr double kDefaultFlowWindow = 50.0;
inline constexpr Index kDefaultFlowDepth = 40;

SpecFlowReport spectral_flow(const OperatorPath& path, double window0 = kDefaultFlowWindow,
                             Index max_depth = kDefaultFlowDepth);

}  // namespace opflow
