#pragma once

// Seeded random operators used by the randomized identity suites and tests.

#include <cstdint>
#include <random>

#include "opflow/linalg.hpp"

namespace opflow {

using Rng = std::mt19937_64;

/// Entries i.i.d. complex standard normal.
CMat random_gaussian(Rng& rng, Index rows, Index cols);

CMat random_hermitian(Rng& rng, Index n);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
CMat random_unitary(Rng& rng, Index n);

/// Random matrix rescaled to the given operator norm.
CMat random_with_norm(Rng& rng, Index n, double norm);

/// Hermitian with prescribed eigenvalues in a random eigenbasis.
CMat random_hermitian_with_spectrum(Rng& rng, const RVec& eigenvalues);

/// Unit vector, uniformly distributed on the complex sphere.
CVec random_unit_vector(Rng& rng, Index n);

double uniform(Rng& rng, double lo, double hi);
Index uniform_index(Rng& rng, Index lo, Index hi);

}  // namespace opflow
