#pragma once

#include <random>
#include <vector>

#include "pickspace/rkhs.hpp"
#include "pickspace/subspace.hpp"

namespace pickspace::mult {

using rkhs::KernelData;
using rkhs::OperatorData;

/// lambda_i -> G(lambda_i) : C^dim_in -> C^dim_out.
///
/// On a finite strictly positive definite sample every pointwise family is a
/// bounded multiplier; contractivity is the only real condition.
struct MultiplierData {
    int dim_out = 1;
    int dim_in = 1;
    std::vector<CMatrix> values;

    /// Throws DimMismatch / NotFinite on malformed data.
    void validate(int n_points) const;
};

MultiplierData constant_multiplier(int n_points, const CMatrix& value);

/// m_G : G' (x) H(K) -> G (x) H(K), acting by pointwise multiplication.
OperatorData multiplier_operator(const KernelData& k, const MultiplierData& g);

/// Block matrix with (i, j) block (I - G(lambda_i) G(lambda_j)^*) K(lambda_i, lambda_j).
CMatrix contractivity_kernel(const KernelData& k, const MultiplierData& g);

struct ContractivityVerdict {
    bool ok = false;        // kernel test
    double min_eig = 0.0;
    double op_norm = 0.0;   // ||m_G||
    bool norm_ok = false;   // ||m_G|| <= 1 + residual_tol
};

ContractivityVerdict is_contractive_multiplier(const KernelData& k, const MultiplierData& g,
                                               const Tolerances& tol = {});

/// I_{left} (x) m_G (x) I_{right}. The left factors stay auxiliary, the right
/// ones are merged into the coefficient slot.
OperatorData ampliate(const KernelData& k, const MultiplierData& g, const std::vector<int>& left_aux,
                      const std::vector<int>& right_aux);

/// Pointwise product G1 G2.
MultiplierData compose(const MultiplierData& g1, const MultiplierData& g2);

/// M_G with its range norm. Throws NotContraction.
subspace::RangeSpace range_space(const KernelData& k, const MultiplierData& g, const Tolerances& tol = {});

/// Gaussian pointwise entries rescaled so that ||m_G|| = target_norm.
MultiplierData random_multiplier(const KernelData& k, int dim_out, int dim_in, std::mt19937_64& rng,
                                 double target_norm = 0.95);

/// Gaussian pointwise entries with no rescaling.
MultiplierData random_raw_multiplier(int n_points, int dim_out, int dim_in, std::mt19937_64& rng,
                                     double scale = 1.0);

} // namespace pickspace::mult
