#pragma once

// Riesz and gap distances in the operator norm.

#include "opflow/linalg.hpp"

namespace opflow {

/// ||phi(A) - phi(B)||.
double riesz_dist(const CMat& a, const CMat& b);
double riesz_dist(const HermOp& a, const HermOp& b);

/// ||p(A) - p(B)|| between graph projections; at most 1.
double gap_dist(const CMat& a, const CMat& b);
double gap_dist(const HermOp& a, const HermOp& b);

/// Same distance computed as ||p~(phi(A)) - p~(phi(B))||.
double gap_dist_via_ball(const CMat& a, const CMat& b);

/// max_k |lambda_k(A) - lambda_k(B)| over sorted spectra; a lower bound for ||A - B||.
double weyl_gap(const HermOp& a, const HermOp& b);

}  // namespace opflow
