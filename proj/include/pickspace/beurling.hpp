#pragma once

#include <vector>

#include "pickspace/mult.hpp"
#include "pickspace/pick.hpp"
#include "pickspace/subspace.hpp"

namespace pickspace::beurling {

/// M = R_C inside H(K) (x) G, presented by a contraction C in orthonormal
/// coordinates (rows: n * coeff_dim). A closed subspace is presented by an
/// isometric C.
struct InvariantSubspaceInput {
    pick::PickDecomposition pick;
    int coeff_dim = 1;
    CMatrix c;
};

InvariantSubspaceInput from_multiplier(const pick::PickDecomposition& p, const mult::MultiplierData& f);

struct InvarianceVerdict {
    bool ok = false;
    double min_eig = 0.0;  // of the defect C C^* - (B (x) I)(I (x) C C^*)(B^* (x) I)
};

/// The defect C C^* - (B (x) I)(I_B (x) C C^*)(B^* (x) I) in orthonormal coordinates.
CMatrix invariance_defect(const InvariantSubspaceInput& inp);

/// (B (x) I_G)(B (x) M) is contained in M, contractively.
InvarianceVerdict check_b_invariance(const InvariantSubspaceInput& inp, const Tolerances& tol = {});

struct BeurlingResult {
    CMatrix x;                // X with X X^* equal to the invariance defect
    mult::MultiplierData g;   // G(lambda_i) : G' -> G
    int dim_g_prime = 0;
    double min_eig = 0.0;
    double residual = 0.0;    // ||m_G m_G^* - C C^*||
    std::vector<int> zero_delta_points;  // G vanishes there by convention
    bool contractive = false;
    // Filled by inner_from_closed.
    bool inner = false;
    double projection_residual = 0.0;  // max(||P^2 - P||, ||P - P^*||), P = m_G m_G^*
    int projection_rank = 0;
};

/// Throws NotInvariant if the defect is not positive.
BeurlingResult construct_g(const InvariantSubspaceInput& inp, const Tolerances& tol = {});

/// Throws NotIsometric unless C^* C = I; NotInvariant as construct_g.
BeurlingResult inner_from_closed(const InvariantSubspaceInput& inp, const Tolerances& tol = {});

struct FactorizationVerdict {
    bool ok = false;
    bool gamma_contractive = false;
    double gamma_min_eig = 0.0;
    double max_residual = 0.0;  // max_i ||G1(lambda_i) - G2(lambda_i) Gamma(lambda_i)||
};

/// Checks G1 = G2 Gamma with Gamma a contractive multiplier. Throws DimMismatch.
FactorizationVerdict verify_factorization(const rkhs::KernelData& k, const mult::MultiplierData& g1,
                                          const mult::MultiplierData& g2, const mult::MultiplierData& gamma,
                                          const Tolerances& tol = {});

/// Douglas test that I_G (x) m_F maps M (x) F' contractively into M (x) F
/// between range norms, for a multiplier F : F' -> F.
subspace::DouglasResult multiplier_action(const InvariantSubspaceInput& inp, const mult::MultiplierData& f,
                                          const Tolerances& tol = {});

} // namespace pickspace::beurling
