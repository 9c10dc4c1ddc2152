#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "generators.hpp"
#include "opflow/linalg.hpp"

using namespace opflow;
using opflow::testing::Gen;

TEST_CASE("diagonal eigenvalues come back sorted") {
    const HermOp m = HermOp::diagonal(RVec{{3.0, 1.0, 2.0}});
    const RVec& ev = m.eigenvalues();
    CHECK(ev(0) == doctest::Approx(1.0));
    CHECK(ev(1) == doctest::Approx(2.0));
    CHECK(ev(2) == doctest::Approx(3.0));
}

TEST_CASE("pauli x has eigenvalues -1 and 1") {
    CMat x(2, 2);
    x << 0, 1, 1, 0;
    const HermOp m(x);
    CHECK(m.min_eigenvalue() == doctest::Approx(-1.0));
    CHECK(m.max_eigenvalue() == doctest::Approx(1.0));
}

TEST_CASE("eigendecomposition reconstructs a random hermitian") {
    Gen g(11);
    const HermOp m(g.hermitian(8));
    const Eigendecomposition e = herm_eig(m);
    const CMat back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK(op_norm(CMat(back - m.matrix())) < 1e-10);
    CHECK(unitarity_defect(e.vectors) < 1e-12);
}

TEST_CASE("construction rejects non-hermitian input") {
    CMat a(2, 2);
    a << 0, 1, 0, 0;
    CHECK_THROWS_AS(HermOp{a}, ValidationError);
}

TEST_CASE("construction symmetrizes rounding noise") {
    CMat a(2, 2);
    a << 1, Complex(2, 1e-14), Complex(2, -1e-14 + 1e-15), 3;
    const HermOp m(a);
    CHECK(hermiticity_defect(m.matrix()) == 0.0);
}

TEST_CASE("functional calculus examples") {
    Gen g(12);
    const HermOp m(g.hermitian(5));
    CHECK(op_norm(CMat(func_calc(m, [](double x) { return Complex(x, 0); }) - m.matrix())) < 1e-12);
    CHECK(op_norm(CMat(func_calc(m, [](double) { return Complex(1, 0); }) - identity(5))) < 1e-12);

    CMat x(2, 2);
    x << 0, 1, 1, 0;
    const CMat sq = func_calc(HermOp(x), [](double l) { return Complex(l * l, 0); });
    CHECK(op_norm(CMat(sq - identity(2))) < 1e-14);
}

TEST_CASE("functional calculus rejects undefined values") {
    const HermOp m = HermOp::diagonal(RVec{{0.0, 1.0}});
    CHECK_THROWS_AS(func_calc(m, [](double x) { return Complex(1.0 / x, 0); }), DomainError);
}

TEST_CASE("operator norm examples") {
    Gen g(13);
    CHECK(op_norm(CMat::Zero(3, 3)) == 0.0);
    CHECK(op_norm(g.unitary(4)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(op_norm(HermOp::diagonal(RVec{{-3.0, 2.0}})) == doctest::Approx(3.0));
    CHECK(op_norm(CMat(HermOp::diagonal(RVec{{-3.0, 2.0}}).matrix())) == doctest::Approx(3.0));
}

TEST_CASE("tridiagonal operators match their dense form") {
    const RVec d{{2.0, 2.0, 2.0, 2.0}};
    const RVec e{{-1.0, -1.0, -1.0}};
    const HermOp t = HermOp::real_tridiagonal(d, e);
    CHECK(t.is_tridiagonal());
    const HermOp dense(CMat(t.matrix()));
    CHECK((t.eigenvalues() - dense.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    for (Index k = 0; k < 4; ++k) {
        const double exact = 2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(k + 1) / 5.0);
        CHECK(t.eigenvalues()(k) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("block helpers") {
    const CMat a = CMat::Constant(2, 2, 1.0);
    const CMat z = CMat::Zero(2, 2);
    const CMat b = block2(a, z, z, a);
    CHECK(op_norm(CMat(b - block_diag(a, a))) == 0.0);
    CHECK_THROWS_AS(block2(a, z, z, CMat::Zero(3, 3)), DimensionMismatchError);
}

TEST_CASE("normal eigendecomposition of a unitary") {
    Gen g(14);
    const CMat u = g.unitary(6);
    const NormalEigendecomposition e = normal_eig(u);
    CHECK(unitarity_defect(e.vectors) < 1e-12);
    CHECK(op_norm(CMat(e.vectors * e.values.asDiagonal() * e.vectors.adjoint() - u)) < 1e-12);
    for (Index k = 0; k < 6; ++k) CHECK(std::abs(e.values(k)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: functional calculus agrees with matrix polynomials") {
    Gen g(101);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = g.dim(1, 12);
        const HermOp m(g.hermitian(n));
        std::vector<double> c(static_cast<std::size_t>(g.dim(1, 5)));
        for (double& ck : c) ck = g.real(-2.0, 2.0);
        CMat poly = CMat::Zero(n, n);
        CMat power = identity(n);
        for (double ck : c) {
            poly += ck * power;
            power = power * m.matrix();
        }
        const CMat fc = func_calc(m, [&](double x) {
            double acc = 0.0, p = 1.0;
            for (double ck : c) {
                acc += ck * p;
                p *= x;
            }
            return Complex(acc, 0.0);
        });
        CHECK(op_norm(CMat(fc - poly)) <= 1e-9 * std::max(1.0, op_norm(poly)));
    }
}

TEST_CASE("property: operator norm of a hermitian is its largest |eigenvalue|") {
    Gen g(102);
    for (int trial = 0; trial < 200; ++trial) {
        const HermOp m(g.hermitian(g.dim()));
        const double lam = m.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(std::abs(op_norm(CMat(m.matrix())) - lam) < 1e-10);
        CHECK(std::abs(hermitian_op_norm(m.matrix()) - lam) < 1e-10);
    }
}

TEST_CASE("property: operator norm is submultiplicative and subadditive") {
    Gen g(103);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = g.dim();
        const CMat a = g.matrix(n), b = g.matrix(n);
        CHECK(op_norm(CMat(a * b)) <= op_norm(a) * op_norm(b) + 1e-10);
        CHECK(op_norm(CMat(a + b)) <= op_norm(a) + op_norm(b) + 1e-10);
    }
}

TEST_CASE("memoized eigendecomposition is safe under concurrent reads") {
    Gen g(104);
    const HermOp m(g.hermitian(60));
    std::atomic<int> mismatches{0};
    std::vector<std::thread> threads;
    std::vector<const RVec*> seen(8);
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&, t] {
            const HermOp copy = m;
            seen[static_cast<std::size_t>(t)] = &copy.eigenvalues();
            if (copy.eigenvectors().cols() != 60) ++mismatches;
        });
    for (auto& th : threads) th.join();
    CHECK(mismatches == 0);
    for (const RVec* p : seen) CHECK(p == seen.front());
}
