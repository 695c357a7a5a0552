#pragma once

#include <random>
#include <vector>

#include "pickspace/mult.hpp"
#include "pickspace/pick.hpp"
#include "pickspace/subspace.hpp"

namespace pickspace::realize {

/// U = [[a, b], [c, d]] : X (+) G' -> (B (x) X) (+) G with
///   a : dim_b * dim_x x dim_x,  b : dim_b * dim_x x dim_in,
///   c : dim_out x dim_x,        d : dim_out x dim_in.
/// B (x) X is laid out B-major: index = beta_index * dim_x + x_index.
struct Realization {
    pick::PickDecomposition pick;
    int dim_x = 0;
    CMatrix a, b, c, d;

    int dim_out() const { return static_cast<int>(c.rows()); }
    int dim_in() const { return static_cast<int>(d.cols()); }
    CMatrix u() const;
    double coisometry_residual() const;  // ||U U^* - I||

    /// Throws DimMismatch for inconsistent block shapes.
    void validate() const;
};

/// Z_X(lambda_i) = B(lambda_i) (x) I_X : B (x) X -> X.
CMatrix z_of(const pick::PickDecomposition& p, int i, int dim_x);

/// (I - Z_X(lambda_i) a)^{-1}. Throws SingularResolvent when the smallest
/// singular value of I - Z a is below rank_tol.
CMatrix resolvent(const pick::PickDecomposition& p, const CMatrix& a, int i, const Tolerances& tol = {},
                  double* condition = nullptr);

/// G(lambda_i) = d + c (I - Z a)^{-1} Z b.
mult::MultiplierData transfer_eval(const Realization& r, const Tolerances& tol = {});

/// Largest condition number of I - Z(lambda_i) a over the sample.
double resolvent_condition(const Realization& r, const Tolerances& tol = {});

/// gamma : X -> H(K) (x) G, (gamma x)(lambda) = delta(lambda) c (I - Z a)^{-1} x.
struct GammaMap {
    std::vector<CMatrix> values;  // dim_out x dim_x per point
    rkhs::OperatorData op;
};

/// gamma built from (a, c) alone; no coisometry is assumed.
GammaMap gamma_from(const pick::PickDecomposition& p, const CMatrix& a, const CMatrix& c,
                    const Tolerances& tol = {});

struct GammaReport {
    GammaMap gamma;
    mult::MultiplierData g;
    double identity_residual = 0.0;  // ||m_G m_G^* + gamma gamma^* - I||
    subspace::SameRange complement_match;  // M_G^sharp against R_gamma
};

GammaReport gamma_map(const Realization& r, const Tolerances& tol = {});

/// O(lambda_i) = (I - a^* Z(lambda_i)^*)^{-1} c^*.
CMatrix observability(const Realization& r, int i, const Tolerances& tol = {});

/// The replacement operator on R_gamma in minimal-preimage coordinates:
/// gamma restricted to (ker gamma)^perp is unitary onto R_gamma, with basis vq.
struct TildeB {
    CMatrix vq;   // dim_x x q, orthonormal basis of (ker gamma)^perp
    CMatrix tb;   // dim_b * q x q
    int q = 0;
    double norm = 0.0;
    double defining_residual = 0.0;  // ||tilde B gamma - (I (x) gamma) a||
};

/// Throws NotNormalized unless delta == 1 on the sample.
TildeB tilde_b(const Realization& r, const GammaMap& gamma, const Tolerances& tol = {});

struct GleasonReport {
    double identity_residual = 0.0;  // ||xi - (B (x) I) tilde B xi - (pi (x) I) xi|| over R_gamma
    double inequality_slack = 0.0;   // inf over unit xi of ||xi||^2 - ||(pi (x) I) xi||^2 - ||tilde B xi||^2
};

/// Throws NotNormalized.
GleasonReport gleason_check(const pick::PickDecomposition& p, const CMatrix& range_basis_image,
                            const CMatrix& tb, int coeff_dim, const Tolerances& tol = {});
GleasonReport gleason_check(const Realization& r, const GammaMap& gamma, const TildeB& tb,
                            const Tolerances& tol = {});

/// The same two quantities on the whole space with tilde B = B^* (x) I.
GleasonReport whole_space_gleason(const pick::PickDecomposition& p, int coeff_dim);

struct ComplementResult {
    Realization realization;       // (q, tilde B, b, pi~ C vq, d)
    mult::MultiplierData g;
    int dim_g_prime = 0;
    double gleason_residual = 0.0;
    double inequality_slack = 0.0;
    double column_norm = 0.0;
    double gamma_residual = 0.0;       // ||gamma_realization - C vq||
    double isometric_residual = 0.0;   // ||(I (x) C vq) tilde B - (B^* (x) I) C vq||
    subspace::SameRange same;          // N against M_G^sharp
};

/// Builds G with M_G^sharp = N from an operator on N satisfying the Gleason
/// identity and the difference-quotient inequality. `lifted` acts on the
/// source of C (dim_b * m x m) and is compressed to (ker C)^perp. Throws
/// NotNormalized, ConditionsViolated or NotContraction.
ComplementResult complementary_from_conditions(const pick::PickDecomposition& p, const subspace::RangeSpace& n,
                                               const CMatrix& lifted, const Tolerances& tol = {});

/// The same for a kernel with delta != 1: the problem is moved to the
/// normalized kernel through Omega and the result is checked in the original
/// space. Throws ZeroDelta.
ComplementResult complementary_general(const pick::PickDecomposition& p, const subspace::RangeSpace& n,
                                       const CMatrix& lifted, const Tolerances& tol = {});

/// Coisometric realization with Gaussian-random U. dim_in is raised to
/// dim_b * dim_x + dim_out - dim_x when needed, the least value that admits
/// a coisometry.
Realization random_realization(const pick::PickDecomposition& p, int dim_x, int dim_out, int dim_in,
                               std::mt19937_64& rng);

} // namespace pickspace::realize
