#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "generators.hpp"
#include "opflow/specflow.hpp"
#include "opflow/sturm.hpp"

using namespace opflow;
using opflow::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

HermOp crossing(double t) { return HermOp::diagonal(RVec{{t - 0.5, 2.0}}); }

// Two eigenvalues going up through 0 and one coming down.
HermOp three_crossings(double t) { return HermOp::diagonal(RVec{{t - 0.3, 0.6 - t, t - 0.8, 1.5}}); }

OperatorPath robin(Index samples, Index grid) { return OperatorPath::sample(robin_loop(grid), 0.0, kPi, samples, true); }

}  // namespace

TEST_CASE("single upward crossing") {
    const SpecFlowReport r = spectral_flow(OperatorPath::sample(crossing, 0.0, 1.0, 8));
    CHECK(r.flow == 1);
    REQUIRE(r.crossings.size() == 1);
    CHECK(r.crossings[0].direction == 1);
    CHECK(r.crossings[0].theta_lo <= 0.5);
    CHECK(r.crossings[0].theta_hi >= 0.5);
}

TEST_CASE("constant path has no flow") {
    const HermOp a = HermOp::diagonal(RVec{{-1.0, 0.5, 3.0}});
    const SpecFlowReport r = spectral_flow(OperatorPath::sample([&](double) { return a; }, 0.0, 1.0, 8));
    CHECK(r.flow == 0);
    CHECK(r.crossings.empty());
}

TEST_CASE("several crossings add up with signs") {
    const SpecFlowReport r = spectral_flow(OperatorPath::sample(three_crossings, 0.0, 1.0, 16));
    CHECK(r.flow == 1);
    CHECK(r.crossings.size() == 3);
}

TEST_CASE("split crossing path") {
    const OperatorPath p = OperatorPath::sample(crossing, 0.0, 1.0, 16);
    for (double eps : {-0.1, -1e-3, 1e-3, 0.1}) {
        const auto [l, r] = p.split(0.5 + eps, 8, 8);
        CHECK(spectral_flow(l).flow + spectral_flow(r).flow == 1);
    }
}

TEST_CASE("path followed by its reversal") {
    const OperatorPath p = OperatorPath::sample(crossing, 0.0, 1.0, 16);
    const OperatorPath back = reverse(p);
    CHECK(spectral_flow(back).flow == -1);
    CHECK(spectral_flow(concat(p, back)).flow == 0);
}

TEST_CASE("concatenation requires matching endpoints") {
    const OperatorPath p = OperatorPath::sample(crossing, 0.0, 1.0, 8);
    CHECK_THROWS_AS(concat(p, p), EndpointMismatchError);
    const OperatorPath q = OperatorPath::sample([](double t) { return crossing(t + 1.0); }, 0.0, 1.0, 8);
    const OperatorPath pq = concat(p, q);
    CHECK(pq.lo() == 0.0);
    CHECK(pq.hi() == doctest::Approx(2.0));
    CHECK(spectral_flow(pq).flow == 1);
}

TEST_CASE("Robin loop has flow one") {
    const SpecFlowReport r = spectral_flow(robin(64, 800));
    CHECK(r.flow == 1);
    REQUIRE(r.crossings.size() == 1);
    CHECK(r.crossings[0].theta_lo <= kPi / 4);
    CHECK(r.crossings[0].theta_hi >= kPi / 4);
}

TEST_CASE("Robin loop split at pi/2") {
    const auto [l, r] = robin(64, 400).split(kPi / 2, 32, 32);
    CHECK(!l.closed());
    CHECK(spectral_flow(l).flow + spectral_flow(r).flow == 1);
}

TEST_CASE("report json") {
    const SpecFlowReport r = spectral_flow(OperatorPath::sample(crossing, 0.0, 1.0, 8));
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j.at("flow") == 1);
    CHECK(j.at("partition").size() == r.partition.size());
    CHECK(j.at("window_radii").size() + 1 == r.partition.size());
    CHECK(j.at("crossings").at(0).at("direction") == 1);
    CHECK(j.at("crossings").at(0).contains("theta_lo"));
    CHECK(j.at("crossings").at(0).contains("theta_hi"));
}

TEST_CASE("sampling validates its arguments") {
    CHECK_THROWS_AS(OperatorPath::sample(crossing, 1.0, 0.0, 8), ParameterError);
    CHECK_THROWS_AS(OperatorPath::sample(crossing, 0.0, 1.0, 0), ParameterError);
}

TEST_CASE("property: refinement stability") {
    for (Index samples : {16, 32, 64, 128}) {
        CHECK(spectral_flow(OperatorPath::sample(crossing, 0.0, 1.0, samples)).flow == 1);
        CHECK(spectral_flow(OperatorPath::sample(three_crossings, 0.0, 1.0, samples)).flow == 1);
    }
    for (Index samples : {32, 64, 128}) CHECK(spectral_flow(robin(samples, 400)).flow == 1);
    CHECK(spectral_flow(robin(64, 1600)).flow == 1);
}

TEST_CASE("property: additivity over splits") {
    Gen g(701);
    const OperatorPath p = OperatorPath::sample(three_crossings, 0.0, 1.0, 16);
    const long whole = spectral_flow(p).flow;
    for (int trial = 0; trial < 20; ++trial) {
        const double at = g.real(0.05, 0.95);
        const auto [l, r] = p.split(at, 8, 8);
        CHECK(spectral_flow(l).flow + spectral_flow(r).flow == whole);
    }
}

TEST_CASE("property: reversal negates the flow") {
    Gen g(702);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = g.dim(2, 6);
        const HermOp a(g.hermitian(n)), b(g.hermitian(n));
        const auto gen = [a, b](double t) { return HermOp(CMat((1.0 - t) * a.matrix() + t * b.matrix())); };
        const OperatorPath p = OperatorPath::sample(gen, 0.0, 1.0, 16);
        const long f = spectral_flow(p).flow;
        CHECK(spectral_flow(reverse(p)).flow == -f);
    }
}

TEST_CASE("property: random linear paths count the change in negative eigenvalues") {
    Gen g(703);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = g.dim(2, 6);
        const HermOp a(g.hermitian(n)), b(g.hermitian(n));
        const auto gen = [a, b](double t) { return HermOp(CMat((1.0 - t) * a.matrix() + t * b.matrix())); };
        const auto negatives = [](const HermOp& m) { return (m.eigenvalues().array() < 0.0).count(); };
        CHECK(spectral_flow(OperatorPath::sample(gen, 0.0, 1.0, 16)).flow == negatives(a) - negatives(b));
    }
}

TEST_CASE("property: small perturbations leave the flow unchanged") {
    Gen g(704);
    const OperatorPath base = robin(64, 200);
    const SpecFlowReport r = spectral_flow(base);
    const double a_min = *std::min_element(r.window_radii.begin(), r.window_radii.end());
    for (int trial = 0; trial < 5; ++trial) {
        CMat e = g.hermitian(200);
        e *= g.real(0.1, 0.99) * (a_min / 10.0) / op_norm(e);
        const auto gen = [e](double theta) {
            return HermOp(CMat(assemble_robin_operator(ProjectivePoint::from_angle(theta), 200).matrix.matrix() + e));
        };
        CHECK(spectral_flow(OperatorPath::sample(gen, 0.0, kPi, 64, true)).flow == r.flow);
    }
}
