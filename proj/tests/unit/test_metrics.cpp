#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "opflow/metrics.hpp"
#include "opflow/transforms.hpp"

using namespace opflow;
using opflow::testing::Gen;

namespace {

CMat random_operator(Gen& g, Index n) { return g.matrix(n) * g.real(0.1, 10.0); }

}  // namespace

TEST_CASE("riesz distance examples") {
    Gen g(41);
    const CMat a = g.matrix(4);
    CHECK(riesz_dist(a, a) == 0.0);
    CHECK(riesz_dist(CMat::Zero(1, 1), CMat::Ones(1, 1)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    const HermOp h(g.hermitian(5));
    CHECK(riesz_dist(h, h) == 0.0);
    for (int trial = 0; trial < 50; ++trial) {
        const CMat x = random_operator(g, 5), y = random_operator(g, 5);
        CHECK(riesz_dist(x, y) == doctest::Approx(riesz_dist(y, x)).epsilon(1e-12));
    }
}

TEST_CASE("gap distance examples") {
    Gen g(42);
    const CMat a = g.matrix(4);
    CHECK(gap_dist(a, a) < 1e-15);
    const CMat u = g.unitary(3);
    CHECK(op_norm(CMat(ball_projection(CMat::Zero(3, 3)).matrix() - ball_projection(u).matrix())) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gap_dist(CMat::Zero(3, 3), CMat(1e12 * u)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gap_dist(CMat::Zero(3, 3), u) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = g.dim(1, 8);
        CHECK(gap_dist(random_operator(g, n), random_operator(g, n)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("weyl gap examples") {
    Gen g(43);
    const HermOp a(g.hermitian(5));
    CHECK(weyl_gap(a, a) == 0.0);
    CHECK(weyl_gap(HermOp::diagonal(RVec{{0.0}}), HermOp::diagonal(RVec{{1.0}})) == 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = g.dim();
        const HermOp x(g.hermitian(n)), y(g.hermitian(n));
        CHECK(weyl_gap(x, y) <= op_norm(CMat(x.matrix() - y.matrix())) + 1e-12);
    }
}

TEST_CASE("hermitian and matrix forms agree") {
    Gen g(44);
    for (int trial = 0; trial < 50; ++trial) {
        const Index n = g.dim(1, 8);
        const HermOp x(CMat(g.hermitian(n) * 5.0)), y(CMat(g.hermitian(n) * 5.0));
        CHECK(std::abs(riesz_dist(x, y) - riesz_dist(x.matrix(), y.matrix())) < 1e-12);
        CHECK(std::abs(gap_dist(x, y) - gap_dist(x.matrix(), y.matrix())) < 1e-10);
    }
}

TEST_CASE("property: triangle inequalities") {
    Gen g(401);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = g.dim(1, 8);
        const CMat a = random_operator(g, n), b = random_operator(g, n), c = random_operator(g, n);
        CHECK(riesz_dist(a, c) <= riesz_dist(a, b) + riesz_dist(b, c) + 1e-9);
        CHECK(gap_dist(a, c) <= gap_dist(a, b) + gap_dist(b, c) + 1e-9);
    }
}

TEST_CASE("property: gap distance computed through the ball") {
    Gen g(402);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = g.dim(1, 8);
        const CMat a = random_operator(g, n), b = random_operator(g, n);
        CHECK(std::abs(gap_dist(a, b) - gap_dist_via_ball(a, b)) < 1e-9);
    }
}

TEST_CASE("property: weyl gap of the bounded transforms bounds the riesz distance") {
    Gen g(403);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = g.dim();
        const HermOp a(CMat(g.hermitian(n) * g.real(0.1, 10.0))), b(CMat(g.hermitian(n) * g.real(0.1, 10.0)));
        CHECK(weyl_gap(bounded_transform(a), bounded_transform(b)) <= riesz_dist(a, b) + 1e-12);
    }
}
