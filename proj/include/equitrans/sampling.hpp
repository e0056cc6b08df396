#pragma once

#include "equitrans/group_reps.hpp"

#include <cstdint>
#include <random>

namespace equitrans::sampling {

using Rng = std::mt19937_64;

/// Rational orthogonal matrix: a random signed permutation followed by a few
/// Givens rotations with rational cosine and sine (1-t², 2t)/(1+t²).
MatQ random_rational_orthogonal(int dim, Rng& rng, int rotations = 3);

/// Haar-like orthogonal matrix from the QR factorization of a Gaussian matrix.
MatD random_orthogonal(int dim, Rng& rng);

/// Random isotypic mix of irreducibles (the trivial one included) of total
/// dimension at most `max_dim`, conjugated by a random orthogonal matrix.
template <class S>
reps::Representation<S> random_representation(const reps::GroupPtr& group, int max_dim, Rng& rng);

/// Random element of the span of `basis` with integer coefficients in [-range, range].
template <class S>
Mat<S> random_combination(const std::vector<Mat<S>>& basis, Rng& rng, int range = 3);

}  // namespace equitrans::sampling
