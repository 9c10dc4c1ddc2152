#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "generators.hpp"
#include "opflow/classify.hpp"
#include "opflow/sturm.hpp"
#include "opflow/suites.hpp"

using namespace opflow;
using opflow::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

double lowest(const ProjectivePoint& x, Index n) { return assemble_robin_operator(x, n).matrix.min_eigenvalue(); }

}  // namespace

TEST_CASE("projective points are normalized") {
    const ProjectivePoint a(2.0, 1.0), b(-4.0, -2.0);
    CHECK(a == b);
    CHECK(a.x0() * a.x0() + a.x1() * a.x1() == doctest::Approx(1.0));
    CHECK(ProjectivePoint(0.0, -3.0) == ProjectivePoint(0.0, 1.0));
    CHECK(ProjectivePoint::from_angle(kPi / 4).angle() == doctest::Approx(kPi / 4));
    CHECK(ProjectivePoint::from_angle(kPi).angle() == doctest::Approx(0.0));
    CHECK_THROWS_AS(ProjectivePoint(0.0, 0.0), ValidationError);
}

TEST_CASE("assembly validates the grid") {
    CHECK_THROWS_AS(assemble_robin_operator(ProjectivePoint(1.0, 0.0), 8), ParameterError);
    const RobinOperator r = assemble_robin_operator(ProjectivePoint(1.0, 1.0), 100);
    CHECK(r.grid_n == 100);
    CHECK(r.matrix.dim() == 100);
    CHECK(r.matrix.is_tridiagonal());
}

TEST_CASE("dirichlet, neumann and [1:1] at n = 2000") {
    CHECK(lowest(ProjectivePoint(1.0, 0.0), 2000) == doctest::Approx(kPi2).epsilon(1e-3));
    CHECK(lowest(ProjectivePoint(0.0, 1.0), 2000) == doctest::Approx(kPi2 / 4).epsilon(1e-3));
    const RVec ev = assemble_robin_operator(ProjectivePoint(1.0, 1.0), 2000).matrix.eigenvalues();
    CHECK(ev.cwiseAbs().minCoeff() < 1e-4);
}

TEST_CASE("fibers over dirichlet and neumann") {
    const RVec d = assemble_robin_operator(ProjectivePoint(1.0, 0.0), 2000).matrix.eigenvalues();
    const RVec n = assemble_robin_operator(ProjectivePoint(0.0, 1.0), 2000).matrix.eigenvalues();
    const auto da = analytic_eigenvalues(ProjectivePoint(1.0, 0.0), 4);
    const auto na = analytic_eigenvalues(ProjectivePoint(0.0, 1.0), 4);
    for (int k = 1; k <= 4; ++k) {
        const double dir = kPi2 * k * k;
        const double neu = kPi2 * (k - 0.5) * (k - 0.5);
        CHECK(d(k - 1) == doctest::Approx(dir).epsilon(1e-3));
        CHECK(n(k - 1) == doctest::Approx(neu).epsilon(1e-3));
        CHECK(da[static_cast<std::size_t>(k - 1)] == doctest::Approx(dir).epsilon(1e-12));
        CHECK(na[static_cast<std::size_t>(k - 1)] == doctest::Approx(neu).epsilon(1e-12));
    }
}

TEST_CASE("negative branch at [1:1/2]") {
    const auto an = analytic_eigenvalues(ProjectivePoint(1.0, 0.5), 1);
    const double mu = std::sqrt(-an[0]);
    CHECK(std::tanh(mu) == doctest::Approx(mu / 2).epsilon(1e-10));
    CHECK(mu == doctest::Approx(1.9150).epsilon(1e-4));
    CHECK(an[0] == doctest::Approx(-3.667).epsilon(1e-3));
    CHECK(std::abs(lowest(ProjectivePoint(1.0, 0.5), 2000) - an[0]) < 1e-2);
}

TEST_CASE("bisection") {
    CHECK(bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), DomainError);
}

TEST_CASE("negative eigenvalues exactly for x = [1:x] with x in (0, 1)") {
    for (int k = 1; k < 40; ++k) {
        if (k == 10) continue;  // theta = pi/4 carries the zero eigenvalue
        const double theta = k * kPi / 40;
        const Index neg = negative_count(assemble_robin_operator(ProjectivePoint::from_angle(theta), 800).matrix);
        CHECK(neg == (theta < kPi / 4 ? 1 : 0));
    }
    CHECK(negative_count(assemble_robin_operator(ProjectivePoint(1.0, 0.0), 800).matrix) == 0);
}

TEST_CASE("spectral graph crosses zero once, at pi/4") {
    const auto graph = spectral_graph(128, 800);
    REQUIRE(graph.size() == 128);
    const auto crossings = zero_crossing_angles(graph);
    REQUIRE(crossings.size() == 1);
    CHECK(std::abs(crossings[0] - kPi / 4) < 2 * kPi / 128);
    for (const GraphSample& s : graph)
        for (const GraphPoint& p : s.points) CHECK(std::abs(p.lambda) <= kDefaultSpectralWindow);
}

TEST_CASE("spectral graph branches are monotone in theta") {
    const auto graph = spectral_graph(64, 400);
    for (std::size_t s = 2; s < graph.size(); ++s) {
        for (const GraphPoint& p : graph[s].points) {
            for (const GraphPoint& q : graph[s - 1].points)
                if (q.branch_index == p.branch_index) CHECK(p.lambda >= q.lambda - 1e-9);
        }
    }
}

TEST_CASE("spectral graph at theta = pi/2 is the neumann fiber") {
    const auto graph = spectral_graph(64, 2000);
    const GraphSample& s = graph[32];
    CHECK(s.theta == doctest::Approx(kPi / 2));
    for (std::size_t k = 0; k < s.points.size(); ++k) {
        const double j = static_cast<double>(k) + 0.5;
        CHECK(s.points[k].lambda == doctest::Approx(kPi2 * j * j).epsilon(1e-3));
    }
}

TEST_CASE("spectral graph csv") {
    const auto graph = spectral_graph(16, 100);
    std::ostringstream os;
    write_spectral_graph_csv(os, graph);
    const std::string csv = os.str();
    CHECK(csv.rfind("theta,branch_index,lambda\n", 0) == 0);
    std::ostringstream again;
    write_spectral_graph_csv(again, spectral_graph(16, 100));
    CHECK(again.str() == csv);
}

TEST_CASE("eigenfunction concentration") {
    const Concentration half = eigenfunction_concentration(ProjectivePoint(1.0, 0.5), 2000);
    CHECK(half.mu == doctest::Approx(1.915).epsilon(1e-3));
    const Concentration sharp = eigenfunction_concentration(ProjectivePoint(1.0, 0.01), 2000);
    const Concentration blunt = eigenfunction_concentration(ProjectivePoint(1.0, 0.3), 2000);
    CHECK(sharp.mass_left < blunt.mass_left);
    for (double x1 : {0.1, 0.05, 0.02}) {
        const Concentration c = eigenfunction_concentration(ProjectivePoint(1.0, x1), 2000);
        REQUIRE(c.mu >= 5.0);
        const double asymptotic = std::exp(-2.0 * c.mu * kConcentrationMargin);
        CHECK(c.mass_left > asymptotic / 2);
        CHECK(c.mass_left < asymptotic * 2);
    }
    CHECK_THROWS_AS(eigenfunction_concentration(ProjectivePoint(0.0, 1.0), 200), DomainError);
}

TEST_CASE("dichotomy certificates") {
    const auto rows = dichotomy_sweep({1e-2, 1e-3, 1e-4}, 400);
    REQUIRE(rows.size() == 3);
    for (const DichotomyRow& r : rows) CHECK(r.riesz_lower_bound >= 0.9);
    CHECK(rows[2].gap_dist <= 0.2);
    CHECK(rows[0].gap_dist > rows[2].gap_dist);
}

TEST_CASE("property: discretized and analytic spectra agree") {
    Gen g(601);
    for (int trial = 0; trial < 10; ++trial) {
        const ProjectivePoint x = ProjectivePoint::from_angle(g.real(0.02 * kPi, kPi));
        const auto analytic = analytic_eigenvalues(x, 5);
        const RVec ev = assemble_robin_operator(x, 2000).matrix.eigenvalues();
        for (std::size_t k = 0; k < 5; ++k) {
            const double a = analytic[k], d = ev(static_cast<Index>(k));
            if (std::abs(a) < 1.0) {
                CHECK(std::abs(d - a) < 1e-2);
            } else {
                CHECK(std::abs(d - a) < 1e-3 * std::abs(a));
            }
        }
    }
}

TEST_CASE("property: dirichlet error is second order") {
    const double ns[] = {250, 500, 1000, 2000};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double n : ns) {
        const double err = std::abs(lowest(ProjectivePoint(1.0, 0.0), static_cast<Index>(n)) - kPi2);
        const double x = std::log(n), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.15));
}
