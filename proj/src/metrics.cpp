#include "opflow/metrics.hpp"

#include "opflow/transforms.hpp"

namespace opflow {

double riesz_dist(const CMat& a, const CMat& b) {
    require_square(a, "riesz_dist");
    require_square(b, "riesz_dist");
    require_same_dims(a.rows(), b.rows(), "riesz_dist");
    return op_norm(CMat(bounded_transform(a) - bounded_transform(b)));
}

double riesz_dist(const HermOp& a, const HermOp& b) {
    require_same_dims(a.dim(), b.dim(), "riesz_dist");
    return hermitian_op_norm(bounded_transform(a).matrix() - bounded_transform(b).matrix());
}

double gap_dist(const CMat& a, const CMat& b) {
    require_square(a, "gap_dist");
    require_square(b, "gap_dist");
    require_same_dims(a.rows(), b.rows(), "gap_dist");
    return hermitian_op_norm(graph_projection(a).matrix() - graph_projection(b).matrix());
}

double gap_dist(const HermOp& a, const HermOp& b) {
    require_same_dims(a.dim(), b.dim(), "gap_dist");
    return hermitian_op_norm(graph_projection(a).matrix() - graph_projection(b).matrix());
}

double gap_dist_via_ball(const CMat& a, const CMat& b) {
    require_square(a, "gap_dist");
    require_square(b, "gap_dist");
    require_same_dims(a.rows(), b.rows(), "gap_dist");
    return hermitian_op_norm(ball_projection(bounded_transform(a)).matrix() -
                             ball_projection(bounded_transform(b)).matrix());
}

double weyl_gap(const HermOp& a, const HermOp& b) {
    require_same_dims(a.dim(), b.dim(), "weyl_gap");
    if (a.dim() == 0) return 0.0;
    return (a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff();
}

}  // namespace opflow
