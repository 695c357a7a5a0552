#pragma once

#include <random>
#include <vector>

#include "pickspace/beurling.hpp"
#include "pickspace/pick.hpp"

namespace pickspace::fixtures {

/// The four closed-form families, in the order randomized suites cycle through them.
const std::vector<rkhs::KernelFamily>& families();

/// Random sample of the family (3 to 6 points unless n > 0) with its Pick
/// decomposition at index 0; when `normalized`, the kernel is first replaced
/// by its normalization so that delta == 1.
pick::PickDecomposition random_pick(rkhs::KernelFamily family, std::mt19937_64& rng, bool normalized = false,
                                    int n = 0, const Tolerances& tol = {});

/// Orthonormal basis of span{k_lambda_i (x) G : i in indices}.
CMatrix kernel_span_basis(const pick::PickDecomposition& p, const std::vector<int>& indices, int coeff_dim,
                          const Tolerances& tol = {});

/// A closed B-invariant subspace presented isometrically: either the closed
/// range of a random multiplier into H(K) (x) C^2, or the scalar functions
/// vanishing on a random nonempty proper subset of the sample.
beurling::InvariantSubspaceInput random_closed_invariant(const pick::PickDecomposition& p, std::mt19937_64& rng,
                                                         const Tolerances& tol = {});

/// Random nonempty proper subset of {0, ..., n-1}, sorted.
std::vector<int> random_subset(int n, std::mt19937_64& rng);

} // namespace pickspace::fixtures
