#include "opflow/suites.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "opflow/classify.hpp"
#include "opflow/homotopy.hpp"
#include "opflow/metrics.hpp"
#include "opflow/sampling.hpp"
#include "opflow/sturm.hpp"
#include "opflow/transforms.hpp"

namespace opflow {

namespace {

constexpr Complex kI(0.0, 1.0);

bool same_bits(const CMat& a, const CMat& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

RVec uniform_vector(Rng& rng, Index n, double lo, double hi) {
    RVec v(n);
    for (Index k = 0; k < n; ++k) v(k) = uniform(rng, lo, hi);
    return v;
}

// Orthonormal cosine basis on the cell centres of an n-cell grid.
RMat cosine_basis(Index n) {
    RMat c(n, n);
    for (Index m = 0; m < n; ++m) {
        const double scale = std::sqrt((m == 0 ? 1.0 : 2.0) / static_cast<double>(n));
        for (Index j = 0; j < n; ++j)
            c(j, m) = scale * std::cos(std::numbers::pi * static_cast<double>(m) * (static_cast<double>(j) + 0.5) /
                                       static_cast<double>(n));
    }
    return c;
}

CMat with_spectrum(const RMat& basis, const RVec& values) {
    const RMat m = basis * values.asDiagonal() * basis.transpose();
    return (0.5 * (m + m.transpose())).cast<Complex>();
}

}  // namespace

double IdentitySuiteResult::worst() const {
    double w = 0.0;
    for (const Deviation& d : deviations) w = std::max(w, d.max_deviation);
    return w;
}

IdentitySuiteResult run_identity_suite(std::uint64_t seed, Index trials, Index max_dim) {
    if (trials < 1 || max_dim < 1) throw ParameterError("identity suite: trials and max_dim must be positive");
    Rng rng(seed);
    IdentitySuiteResult r;
    r.trials = trials;
    r.deviations = {
        {"ball projection of phi(A) equals graph projection of A", 0.0},
        {"cayley_ball of phi(A) equals cayley of A", 0.0},
        {"(1 + A*A)^-1 equals 1 - a*a", 0.0},
        {"Fredholm factorization of p~(a) - p0", 0.0},
        {"graph projection of Hermitian A is Lagrangian", 0.0},
        {"psi_v of p~(a) equals kappa~(a)", 0.0},
        {"iota_Proj of p~(a) equals kappa~ of the odd embedding", 0.0},
        {"1 - kappa~(a) = 2(1 - a^2) + 2ia sqrt(1 - a^2)", 0.0},
        {"kappa~(a) + 1 = 2a(a - i sqrt(1 - a^2))", 0.0},
    };
    auto record = [&](std::size_t k, double v) { r.deviations[k].max_deviation = std::max(r.deviations[k].max_deviation, v); };

    for (Index trial = 0; trial < trials; ++trial) {
        const Index n = uniform_index(rng, 1, max_dim);
        const CMat one = identity(n);

        const CMat a_general = random_with_norm(rng, n, uniform(rng, 0.05, 10.0));
        const HermOp a_herm(random_hermitian_with_spectrum(rng, uniform_vector(rng, n, -10.0, 10.0)));
        const CMat contraction = trial % 10 == 0 ? random_unitary(rng, n) : random_with_norm(rng, n, uniform(rng, 0.0, 1.0));
        const CMat strict_contraction = random_with_norm(rng, n, uniform(rng, 0.0, 0.999));
        const HermOp herm_contraction(random_hermitian_with_spectrum(rng, uniform_vector(rng, n, -1.0, 1.0)));

        const CMat phi = bounded_transform(a_general);
        record(0, hermitian_op_norm(ball_projection(phi).matrix() - graph_projection(a_general).matrix()));

        const HermOp phi_herm = bounded_transform(a_herm);
        record(1, op_norm(CMat(cayley_ball(phi_herm) - cayley(a_herm))));

        const CMat resolvent = Eigen::LLT<CMat>(one + a_general.adjoint() * a_general).solve(one);
        record(2, hermitian_op_norm(resolvent - (one - phi.adjoint() * phi)));

        record(3, fredholm_factor_check(contraction));

        record(4, lagrangian_defect(graph_projection(a_herm.matrix())));

        const CMat kt = cayley_ball(herm_contraction);
        record(5, op_norm(CMat(lagrangian_to_unitary(ball_projection(herm_contraction.matrix())) - kt)));

        record(6, op_norm(CMat(proj_to_unitary(ball_projection(strict_contraction)) -
                              cayley_ball(odd_embedding(strict_contraction)))));

        const CMat& h = herm_contraction.matrix();
        const CMat root = func_calc(herm_contraction, [](double x) { return Complex(std::sqrt(std::max(0.0, 1.0 - x * x)), 0.0); });
        record(7, op_norm(CMat((one - kt) - (2.0 * (one - h * h) + 2.0 * kI * h * root))));
        record(8, op_norm(CMat((kt + one) - 2.0 * h * (h - kI * root))));
    }
    return r;
}

double surgery_threshold(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 4.0)) throw ParameterError("surgery_threshold: epsilon must lie in (0, 4)");
    return std::sqrt(16.0 / (epsilon * epsilon) - 1.0);
}

SurgerySuiteResult run_surgery_suite(std::uint64_t seed, const std::vector<double>& epsilons, Index trials_per_epsilon,
                                     Index max_dim) {
    if (max_dim < 2) throw ParameterError("surgery suite: max_dim must be at least 2");
    Rng rng(seed);
    SurgerySuiteResult r;
    for (double eps : epsilons) {
        const double c_min = surgery_threshold(eps);
        for (Index trial = 0; trial < trials_per_epsilon; ++trial) {
            const double c = c_min * (1.0 + uniform(rng, 0.01, 1.0));
            const Index n = uniform_index(rng, 2, max_dim);
            RVec diag(n);
            for (Index k = 0; k < n; ++k) {
                do {
                    diag(k) = k == 0 ? (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uniform(rng, 1.01 * c, 3.0 * c)
                                     : uniform(rng, -3.0 * c, 3.0 * c);
                } while (std::abs(std::abs(diag(k)) - c) < 1e-6 * c);
            }
            const HermOp a = HermOp::diagonal(diag);
            Index outside = 0;
            for (Index k = 0; k < n; ++k)
                if (std::abs(diag(k)) > c) ++outside;
            RVec mu(outside);
            for (Index k = 0; k < outside; ++k)
                mu(k) = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uniform(rng, 1.001 * c, 3.0 * c);
            const HermOp b(random_hermitian_with_spectrum(rng, mu));
            const HermOp a_new = density_surgery(a, c, b);
            const double change = op_norm(CMat(cayley(a_new) - cayley(a)));
            r.instances.push_back({eps, c, change});
            if (!(change < eps)) ++r.violations;
        }
    }
    return r;
}

CoveringSuiteResult run_covering_suite(std::uint64_t seed, Index instances) {
    Rng rng(seed);
    CoveringSuiteResult r;
    const double gap = kCoveringGap;
    auto random_tuple = [&] {
        std::vector<double> mags;
        const Index m = uniform_index(rng, 1, 3);
        for (Index k = 0; k < m; ++k) mags.push_back(uniform(rng, 0.1, 5.0));
        return SymmetricTuple::from_magnitudes(mags);
    };
    for (Index i = 0; i < instances; ++i) {
        const SymmetricTuple tau = random_tuple();
        const SymmetricTuple tau2 = random_tuple();
        const Index n = uniform_index(rng, 1, 10);
        RVec spec(n);
        for (Index k = 0; k < n; ++k) {
            if (uniform(rng, 0.0, 1.0) < 0.3) {
                const auto& pts = (uniform(rng, 0.0, 1.0) < 0.5 ? tau : tau2).points();
                const double p = pts[static_cast<std::size_t>(uniform_index(rng, 0, static_cast<Index>(pts.size()) - 1))];
                const double offset = (uniform(rng, 0.0, 1.0) < 0.5 ? 0.5 : 2.0) * gap;
                spec(k) = p + (uniform(rng, 0.0, 1.0) < 0.5 ? -offset : offset);
            } else {
                spec(k) = uniform(rng, -6.0, 6.0);
            }
        }
        const HermOp a(random_hermitian_with_spectrum(rng, spec));
        const bool joint = covering_membership(a, tau.unite(tau2), gap);
        const bool separate = covering_membership(a, tau, gap) && covering_membership(a, tau2, gap);
        ++r.instances;
        if (joint != separate) ++r.counterexamples;
        if (joint) ++r.members;
    }
    return r;
}

bool HomotopySuiteResult::delta_decreasing() const {
    for (std::size_t k = 1; k < delta.size(); ++k)
        if (!(delta[k] < delta[k - 1])) return false;
    return !delta.empty();
}

HomotopySuiteResult run_homotopy_suite(std::uint64_t seed, const std::vector<Index>& grids) {
    Rng rng(seed);
    HomotopySuiteResult r;
    r.min_singular_value = INFINITY;

    for (Index n : grids) {
        const GridSpace grid(n);
        const RMat cos_basis = cosine_basis(n);
        RVec decay(n), decay2(n);
        for (Index m = 0; m < n; ++m) {
            decay(m) = 1.0 / static_cast<double>(m + 1);
            decay2(m) = 2.0 / static_cast<double>(m + 2);
        }
        const CMat a = with_spectrum(cos_basis, decay);
        const CMat q = random_unitary(rng, n);
        CMat b = q * decay2.cast<Complex>().asDiagonal() * q.adjoint();
        b = (0.5 * (b + b.adjoint())).eval();

        const double delta = discretization_tolerance(grid);
        r.grids.push_back(n);
        r.delta.push_back(delta);

        r.endpoints_exact = r.endpoints_exact && same_bits(zk_contraction(0.0, a, b, grid), a) &&
                            same_bits(zk_contraction(1.0, a, b, grid), b) &&
                            same_bits(shrink_isometry(1.0, grid), identity(n)) &&
                            same_bits(stretch_isometry(0.0, grid), identity(n));

        const ZkContraction zk(a, b, grid);
        for (int k = 1; k <= 9; ++k) {
            const HermOp h(zk(0.1 * k));
            r.min_singular_value = std::min(r.min_singular_value, h.eigenvalues().cwiseAbs().minCoeff());
        }

        r.lipschitz_zk.push_back(
            sampled_lipschitz([&](double t) { return zk(t); }, 0.0, 1.0, 32));

        RVec grow(n), grow_b(n);
        for (Index m = 0; m < n; ++m) {
            grow(m) = std::numbers::pi * static_cast<double>(m + 1);
            grow_b(m) = -2.0 * std::numbers::pi * static_cast<double>(m + 1);
        }
        const HermOp big_a(with_spectrum(cos_basis, grow));
        const HermOp big_b(with_spectrum(cos_basis, grow_b));
        r.endpoints_exact = r.endpoints_exact && same_bits(rk_contraction(0.0, big_a, big_b, grid).matrix(), big_a.matrix()) &&
                            same_bits(rk_contraction(1.0, big_a, big_b, grid).matrix(), big_b.matrix());
        const CMat big_h = rk_contraction(0.5, big_a, big_b, grid).matrix();
        const CMat inv_a = with_spectrum(cos_basis, grow.cwiseInverse());
        const CMat inv_b = with_spectrum(cos_basis, grow_b.cwiseInverse());
        const CMat small_h = zk_contraction(0.5, inv_a, inv_b, grid);
        const CMat big_h_inv = big_h.inverse();
        r.rk_consistency.push_back(op_norm(CMat(big_h_inv - small_h)) / op_norm(small_h));
    }

    // Graded contraction endpoints on a small grid.
    {
        const GridSpace grid(16);
        const CMat a = random_hermitian_with_spectrum(rng, uniform_vector(rng, 32, 0.5, 2.0));
        const CMat b = random_hermitian_with_spectrum(rng, uniform_vector(rng, 32, 0.5, 2.0));
        r.endpoints_exact = r.endpoints_exact && same_bits(zk_contraction_graded(0.0, a, b, grid), a) &&
                            same_bits(zk_contraction_graded(1.0, a, b, grid), b);
    }

    // Compactification keeps ||H'^{-1}|| below 1/lambda.
    const double lambda = 0.5;
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = 6;
        RVec spec(n);
        for (Index k = 0; k < n; ++k)
            spec(k) = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uniform(rng, lambda * 1.001, 5.0);
        const HermOp a(random_hermitian_with_spectrum(rng, spec));
        const HermOp k = default_compact_weight(n);
        r.endpoints_exact = r.endpoints_exact && same_bits(compactify_homotopy(0.0, a, k).matrix(), a.matrix());
        for (int s = 0; s <= 10; ++s) {
            const HermOp h = compactify_homotopy(0.1 * s, a, k);
            const double inv_norm = 1.0 / h.eigenvalues().cwiseAbs().minCoeff();
            r.compact_gap_violation = std::max(r.compact_gap_violation, inv_norm - 1.0 / lambda);
        }
    }
    r.compact_gap_violation = std::max(0.0, r.compact_gap_violation);

    // exp(t log u) on U^1 = {u : JuJ = u*}.
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 4;
        const CMat left = random_unitary(rng, n);
        const CMat right = random_unitary(rng, n);
        const RVec sv = uniform_vector(rng, n, 0.2, 0.95);
        const CMat a = left * sv.cast<Complex>().asDiagonal() * right.adjoint();
        const CMat u = proj_to_unitary(ball_projection(a));
        const Symplectics sym = Symplectics::make(n);
        r.endpoints_exact = r.endpoints_exact && same_bits(unitary_log_retraction(0.0, u), identity(2 * n)) &&
                            same_bits(unitary_log_retraction(1.0, u), u);
        for (int s = 1; s <= 9; ++s) {
            const CMat h = unitary_log_retraction(0.1 * s, u);
            r.u1_defect = std::max(r.u1_defect, op_norm(CMat(sym.J * h * sym.J - h.adjoint())));
        }
    }
    return r;
}

std::vector<double> log_spaced(double lo, double hi, Index n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw ParameterError("log_spaced: need 0 < lo < hi and n >= 2");
    std::vector<double> out;
    const double llo = std::log(lo), lhi = std::log(hi);
    for (Index k = 0; k < n; ++k) {
        if (k == 0) out.push_back(lo);
        else if (k == n - 1) out.push_back(hi);
        else out.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(k) / static_cast<double>(n - 1)));
    }
    return out;
}

std::vector<DichotomyRow> dichotomy_sweep(const std::vector<double>& x1_values, Index grid_n) {
    const HermOp dirichlet = assemble_robin_operator(ProjectivePoint(1.0, 0.0), grid_n).matrix;
    const HermOp phi_dirichlet = bounded_transform(dirichlet);
    const bool positive_base = phi_dirichlet.min_eigenvalue() >= 0.0;
    std::vector<DichotomyRow> rows;
    for (double x1 : x1_values) {
        const HermOp a = assemble_robin_operator(ProjectivePoint(1.0, x1), grid_n).matrix;
        const HermOp phi = bounded_transform(a);
        const double bound = positive_base ? std::max(0.0, -phi.min_eigenvalue()) : weyl_gap(phi, phi_dirichlet);
        rows.push_back({x1, bound, gap_dist(a, dirichlet)});
    }
    return rows;
}

}  // namespace opflow
