#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pickspace/rkhs.hpp"

namespace pickspace::random {

/// Every randomized routine draws from an explicitly passed engine, so a seed
/// determines all generated content.
std::mt19937_64 make_rng(std::uint64_t seed);

/// Derives an independent stream for case `index` of a run seeded with `seed`.
std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t index);

double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0);
int uniform_int(std::mt19937_64& rng, int lo, int hi);  // inclusive

/// Entries (x + i y) / sqrt(2) with x, y standard normal.
CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
CVector gaussian_vector(Eigen::Index size, std::mt19937_64& rng);

/// Haar-like matrix with orthonormal columns (rows >= cols).
CMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

/// Gaussian matrix rescaled to operator norm `norm`.
CMatrix random_contraction(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double norm = 0.95);

/// Random Hermitian matrix with Gaussian entries.
CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng);

/// n points of dimension `dim` in the ball of the given radius, pairwise at
/// least `min_sep` apart.
std::vector<rkhs::Point> ball_points(int n, int dim, std::mt19937_64& rng, double radius = 0.7,
                                     double min_sep = 0.25);

/// All-ones coefficient list truncated at 64 terms, i.e. 1 / (1 - z) to double
/// precision on |z| <= 0.36.
std::vector<double> geometric_coeffs();

/// Random sample for one of the closed-form families: scalar points for
/// szego / example52 / power_series, points in the 2-ball for drury_arveson.
rkhs::KernelData random_kernel(rkhs::KernelFamily family, int n, std::mt19937_64& rng,
                               const Tolerances& tol = {});

} // namespace pickspace::random
