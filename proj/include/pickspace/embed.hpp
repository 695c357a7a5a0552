#pragma once

#include <cstdint>
#include <vector>

#include "pickspace/pick.hpp"
#include "pickspace/realize.hpp"

namespace pickspace::embed {

/// D(eta, xi) = 1 / (1 - <eta, xi>), the Drury-Arveson kernel.
cdouble da_kernel(const CVector& eta, const CVector& xi);

/// Feature vectors J beta(lambda_i), with J the entrywise conjugation in the
/// fixed basis of B, and their Drury-Arveson Gram matrix.
struct EmbeddingData {
    CMatrix beta_bar;  // dim_b x n
    CMatrix da_gram;   // (i, j) -> D(beta_bar_i, beta_bar_j)
    double residual = 0.0;  // max |K_ij - delta_i conj(delta_j) D(beta_bar_i, beta_bar_j)|
};

/// k_lambda -> conj(delta(lambda)) d_{J beta(lambda)} is isometric.
EmbeddingData embedding_check(const pick::PickDecomposition& p);

/// M_phi^* E = E M_{phi o beta_bar}^* for phi(eta) = <eta, xi>, paired against
/// kernel functions on both sides. The left side is pure Drury-Arveson Gram
/// arithmetic; the right side goes through the multiplier operator on H(K).
double intertwining_check(const pick::PickDecomposition& p, const CVector& xi);

/// a_xi = (L_xi)^* a with L_xi x = xi (x) x.
CMatrix a_xi(const CMatrix& a, const CVector& xi, int dim_x);

/// max over pairs of ||a_xi a_eta - a_eta a_xi||.
double a_xi_commutation(const CMatrix& a, int dim_x, const std::vector<CVector>& xis);

/// a = (B^* (x) I)|N for N with orthonormal basis q (columns, ONB coordinates
/// of H(K) (x) G), expressed in that basis. Throws NotInvariant when
/// (B^* (x) I) N is not inside B (x) N.
struct InvariantA {
    CMatrix a;
    double invariance_residual = 0.0;
};
InvariantA invariant_a(const pick::PickDecomposition& p, const CMatrix& q, int coeff_dim,
                       const Tolerances& tol = {});

struct CounterexampleReport {
    CVector xi;
    CVector f0_values;
    double distance_to_span = 0.0;
    double invariance_defect = 0.0;   // ||v - (I (x) u u^*) v||, v = (B^* (x) I) u, u = f0 / ||f0||
    double max_commutator = 0.0;
    double gamma_residual = 0.0;      // ||gamma - f0|| in ONB coordinates
    double coisometry_residual = 0.0;
    double identity_residual = 0.0;   // m_G m_G^* + gamma gamma^* = I
    int attempts = 0;
    realize::Realization realization;
};

/// Distance of d_{J xi} from span{d_{beta_bar(lambda_i)}} in the Drury-Arveson space.
double distance_to_span(const pick::PickDecomposition& p, const CVector& xi);

/// The report for one candidate xi (no acceptance decision).
CounterexampleReport evaluate_candidate(const pick::PickDecomposition& p, const CVector& xi,
                                        const Tolerances& tol = {});

/// Seeded search over xi with ||xi|| = 1/2 in B enlarged by `extra_dims`.
/// A candidate is accepted when both the span distance and the invariance
/// defect exceed `floor`. Throws NotNormalized or SearchFailed.
CounterexampleReport build_counterexample(const pick::PickDecomposition& p, std::uint64_t seed, int extra_dims = 1,
                                          double floor = 1e-6, int budget = 200, const Tolerances& tol = {});

struct Example52Report {
    double k_half = 0.0;           // K(1/2, 1/2)
    double k_half_expected = 32.0 / 27.0;
    double k_half_rel_error = 0.0;
    CVector gamma1, gamma2;        // values on {0, 1/2}
    CVector gamma_printed;         // (1/sqrt 2)(1 - lambda/8)^{-1}
    double gamma_equality = 0.0;   // max_i |gamma1 - gamma2|
    double gram_equality = 0.0;    // ||gamma1 gamma1^* - gamma2 gamma2^*||
    double kappa_min = 0.0;        // min over the unimodular grid of ||kappa a1 - a2 kappa||
    double a_difference = 0.0;     // ||a1 - a2||
    double embedding_residual = 0.0;
    double tilde_b_norm = 0.0;     // ||tilde B|| for the first realization
    bool g_contractive = false;    // completed first realization
    int grid_size = 10000;
};

Example52Report example52_report(const Tolerances& tol = {});

} // namespace pickspace::embed
