#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <numbers>
#include <sstream>

#include "opflow/classify.hpp"
#include "opflow/cli.hpp"
#include "opflow/metrics.hpp"
#include "opflow/specflow.hpp"
#include "opflow/sturm.hpp"
#include "opflow/suites.hpp"
#include "opflow/transforms.hpp"

namespace py = pybind11;
using namespace opflow;

namespace {

HermOp herm(const CMat& m) { return HermOp(m); }

py::dict report_dict(const SpecFlowReport& r) {
    py::list crossings;
    for (const Crossing& c : r.crossings)
        crossings.append(py::dict(py::arg("theta_lo") = c.theta_lo, py::arg("theta_hi") = c.theta_hi,
                                  py::arg("direction") = c.direction));
    return py::dict(py::arg("flow") = r.flow, py::arg("partition") = r.partition,
                    py::arg("window_radii") = r.window_radii, py::arg("crossings") = crossings);
}

}  // namespace

PYBIND11_MODULE(_opflow, m) {
    m.doc() = "Operator transforms, metrics and spectral flow on finite-dimensional Hermitian operators.";

    auto base = py::register_exception<Error>(m, "OpflowError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<OutOfBallError>(m, "OutOfBallError", base.ptr());
    py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError", base.ptr());
    py::register_exception<BoundaryCollisionError>(m, "BoundaryCollisionError", base.ptr());
    py::register_exception<NotInCoveringError>(m, "NotInCoveringError", base.ptr());
    py::register_exception<SurgeryViolationError>(m, "SurgeryViolationError", base.ptr());
    py::register_exception<DegeneracyError>(m, "DegeneracyError", base.ptr());
    py::register_exception<BranchCutError>(m, "BranchCutError", base.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());
    py::register_exception<ConditioningError>(m, "ConditioningError", base.ptr());
    py::register_exception<EndpointMismatchError>(m, "EndpointMismatchError", base.ptr());

    m.def("eigenvalues", [](const CMat& a) { return RVec(herm(a).eigenvalues()); }, py::arg("a"),
          "Ascending eigenvalues of a Hermitian matrix.");
    m.def("op_norm", py::overload_cast<const CMat&>(&op_norm), py::arg("a"));

    m.def("bounded_transform", py::overload_cast<const CMat&>(&bounded_transform), py::arg("a"));
    m.def("inverse_bounded_transform", &inverse_bounded_transform, py::arg("a"));
    m.def("graph_projection", [](const CMat& a) { return graph_projection(a).matrix(); }, py::arg("a"));
    m.def("ball_projection", [](const CMat& a) { return ball_projection(a).matrix(); }, py::arg("a"));
    m.def("cayley", [](const CMat& a) { return cayley(herm(a)); }, py::arg("a"));
    m.def("cayley_ball", [](const CMat& a) { return cayley_ball(herm(a)); }, py::arg("a"));
    m.def("lagrangian_defect", [](const CMat& p) { return lagrangian_defect(GraphProjection::from_matrix(p)); },
          py::arg("p"));
    m.def("odd_embedding", [](const CMat& a) { return odd_embedding(a).matrix(); }, py::arg("a"));
    m.def("fredholm_factor_check", &fredholm_factor_check, py::arg("a"));

    m.def("riesz_dist", py::overload_cast<const CMat&, const CMat&>(&riesz_dist), py::arg("a"), py::arg("b"));
    m.def("gap_dist", py::overload_cast<const CMat&, const CMat&>(&gap_dist), py::arg("a"), py::arg("b"));
    m.def("weyl_gap", [](const CMat& a, const CMat& b) { return weyl_gap(herm(a), herm(b)); }, py::arg("a"),
          py::arg("b"));

    m.def("window_projection",
          [](const CMat& a, double lo, double hi) {
              const WindowProjection w = window_projection(herm(a), lo, hi);
              return py::make_tuple(w.projection, w.rank);
          },
          py::arg("a"), py::arg("lo"), py::arg("hi"), "Spectral projection onto [lo, hi] and its rank.");
    m.def("covering_membership",
          [](const CMat& a, std::vector<double> tau, double gap) {
              return covering_membership(herm(a), SymmetricTuple(std::move(tau)), gap);
          },
          py::arg("a"), py::arg("tau"), py::arg("gap") = kCoveringGap);
    m.def("density_surgery", [](const CMat& a, double c, const CMat& b) { return density_surgery(herm(a), c, herm(b)).matrix(); },
          py::arg("a"), py::arg("c"), py::arg("b"));
    m.def("negative_count", [](const CMat& a, double threshold) { return negative_count(herm(a), threshold); },
          py::arg("a"), py::arg("threshold") = 0.0);

    m.def("robin_operator",
          [](double x0, double x1, Index grid_n) { return assemble_robin_operator(ProjectivePoint(x0, x1), grid_n).matrix.matrix(); },
          py::arg("x0"), py::arg("x1"), py::arg("grid_n"), "Dense discretization of the Robin operator at [x0 : x1].");
    m.def("robin_eigenvalues",
          [](double x0, double x1, Index grid_n) {
              return RVec(assemble_robin_operator(ProjectivePoint(x0, x1), grid_n).matrix.eigenvalues());
          },
          py::arg("x0"), py::arg("x1"), py::arg("grid_n"));
    m.def("analytic_eigenvalues",
          [](double x0, double x1, Index count) { return analytic_eigenvalues(ProjectivePoint(x0, x1), count); },
          py::arg("x0"), py::arg("x1"), py::arg("count"));
    m.def("spectral_graph",
          [](Index samples, Index grid_n, double window) {
              std::vector<std::tuple<double, Index, double>> rows;
              for (const GraphSample& s : spectral_graph(samples, grid_n, window))
                  for (const GraphPoint& p : s.points) rows.emplace_back(s.theta, p.branch_index, p.lambda);
              return rows;
          },
          py::arg("samples") = 128, py::arg("grid_n") = 800, py::arg("window") = kDefaultSpectralWindow,
          "Rows (theta, branch_index, lambda) of the spectral graph of the Robin loop.");

    m.def("spectral_flow",
          [](py::function path, double lo, double hi, Index samples, bool closed, double window, Index max_depth) {
              std::shared_ptr<py::function> fn(new py::function(std::move(path)), [](py::function* f) {
                  py::gil_scoped_acquire gil;
                  delete f;
              });
              OperatorPath::Generator gen = [fn](double t) {
                  py::gil_scoped_acquire gil;
                  return HermOp((*fn)(t).cast<CMat>());
              };
              SpecFlowReport r;
              {
                  py::gil_scoped_release release;
                  r = spectral_flow(OperatorPath::sample(gen, lo, hi, samples, closed), window, max_depth);
              }
              return report_dict(r);
          },
          py::arg("path"), py::arg("lo"), py::arg("hi"), py::arg("samples") = 32, py::arg("closed") = false,
          py::arg("window") = kDefaultFlowWindow, py::arg("max_depth") = kDefaultFlowDepth,
          "Spectral flow of theta -> path(theta), a callable returning Hermitian matrices.");
    m.def("robin_spectral_flow",
          [](Index samples, Index grid_n) {
              SpecFlowReport r;
              {
                  py::gil_scoped_release release;
                  r = spectral_flow(OperatorPath::sample(robin_loop(grid_n), 0.0, std::numbers::pi, samples, true));
              }
              return report_dict(r);
          },
          py::arg("samples") = 64, py::arg("grid_n") = 800);

    m.def("identity_suite",
          [](std::uint64_t seed, Index trials, Index max_dim) {
              py::dict d;
              for (const Deviation& dev : run_identity_suite(seed, trials, max_dim).deviations)
                  d[py::str(dev.name)] = dev.max_deviation;
              return d;
          },
          py::arg("seed") = 20240611, py::arg("trials") = 500, py::arg("max_dim") = 16,
          "Largest deviation of each transform identity over random instances.");

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code;
              {
                  py::gil_scoped_release release;
                  code = run_cli(args, out, err);
              }
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs the command-line tool; returns (exit_code, stdout, stderr).");
}
