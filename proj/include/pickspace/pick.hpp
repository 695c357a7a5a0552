#pragma once

#include <vector>

#include "pickspace/mult.hpp"
#include "pickspace/rkhs.hpp"

namespace pickspace::pick {

using rkhs::KernelData;
using rkhs::OperatorData;

/// K(mu, lambda) = delta(mu) conj(delta(lambda)) / (1 - <beta(lambda), beta(mu)>)
/// materialized on the sample.
///
/// `beta` holds beta(lambda_i) as column i, in a fixed orthonormal basis of the
/// auxiliary space. The minimal decomposition spans exactly dim_b dimensions;
/// an explicitly supplied beta may be larger.
struct PickDecomposition {
    KernelData kernel;
    int base_index = 0;
    CVector delta;      // delta(lambda_i) = K(lambda_i, lambda_0) / sqrt(K(lambda_0, lambda_0))
    CMatrix beta_gram;  // F(i, j) = <beta(lambda_j), beta(lambda_i)>
    CMatrix beta;       // dim_b x n
    int dim_b = 0;
    double f_min_eig = 0.0;
    bool explicit_beta = false;

    int size() const { return kernel.size(); }
    bool is_normalized(double tol) const;
};

struct PickVerdict {
    bool ok = false;
    double min_eig = 0.0;
    double max_diag = 0.0;  // max_i ||beta(lambda_i)||^2
    CMatrix beta_gram;
};

/// One-minus-ratio test at the given base point. Throws ZeroKernelEntry if
/// some K(lambda_i, lambda_j) vanishes.
PickVerdict check_pick(const KernelData& k, int base_index = 0, const Tolerances& tol = {});

struct AllBasesReport {
    std::vector<PickVerdict> per_base;
    bool consistent = true;  // every base gives the same verdict
};
AllBasesReport check_pick_all_bases(const KernelData& k, const Tolerances& tol = {});

/// Minimal decomposition. Throws NotPick if the test fails.
PickDecomposition decompose(const KernelData& k, int base_index = 0, const Tolerances& tol = {});

/// Replaces beta by a caller-supplied (possibly non-minimal) family after
/// checking <beta_j, beta_i> = F(i, j). Throws BetaMismatch otherwise.
PickDecomposition with_beta(const PickDecomposition& p, const CMatrix& beta, const Tolerances& tol = {});

/// Pads beta with `extra` zero coordinates.
PickDecomposition enlarge(const PickDecomposition& p, int extra);

/// B(lambda) xi = <xi, beta(lambda)>, as a 1 x dim_b multiplier.
mult::MultiplierData b_multiplier(const PickDecomposition& p);

/// The operator B (x) I_G : B (x) H(K) (x) G -> H(K) (x) G.
OperatorData b_operator(const PickDecomposition& p, int coeff_dim = 1);

/// Orthonormal coordinates of delta.
CVector delta_onb(const PickDecomposition& p);

/// pi f = <f, delta> delta, in orthonormal coordinates (n x n).
CMatrix delta_projection(const PickDecomposition& p);

/// ||(I - B B^*) - pi||.
double delta_projection_check(const PickDecomposition& p);

/// max_{i,j} |(1 - B(lambda_i) B(lambda_j)^*) K(lambda_i, lambda_j) - delta_i conj(delta_j)|.
double factorization_residual(const PickDecomposition& p);

/// K'(mu, lambda) = K(mu, lambda) / (delta(mu) conj(delta(lambda))), the only
/// placement of the conjugate that keeps K' Hermitian.
struct NormalizedKernel {
    KernelData kprime;
    CVector delta;  // Omega(f) = f / delta in value coordinates
};

/// Throws ZeroDelta if delta vanishes somewhere.
NormalizedKernel normalize(const PickDecomposition& p, const Tolerances& tol = {});

/// Decomposition of K' sharing beta with p (beta and B are the same for both spaces).
PickDecomposition normalized_decomposition(const PickDecomposition& p, const Tolerances& tol = {});

/// Omega (x) I_G : H(K) (x) G -> H(K') (x) G in orthonormal coordinates.
OperatorData omega_operator(const PickDecomposition& p, const NormalizedKernel& nk, int coeff_dim = 1);

} // namespace pickspace::pick
