#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pickspace/error.hpp"

namespace pickspace {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Numerical thresholds shared by every check in the library.
///
/// psd_tol   relative floor below which a negative eigenvalue counts as a
///           genuine violation of positivity.
/// rank_tol  relative singular value / eigenvalue cutoff for numerical rank.
/// residual_tol  relative operator-norm bound for identities.
struct Tolerances {
    double psd_tol = 1e-10;
    double rank_tol = 1e-10;
    double residual_tol = 1e-8;

    /// Throws InvalidInput unless every field lies in (0, 1).
    void validate() const;
};

namespace numlin {

struct HermitianEig {
    RVector values;   // descending
    CMatrix vectors;  // columns, unitary
};

struct PsdVerdict {
    bool ok = false;
    double min_eig = 0.0;
    CVector witness;  // eigenvector of min_eig
};

struct PsdFactor {
    CMatrix factor;  // r x n, factor^* factor ~ m
    int rank = 0;
};

struct Completion {
    CMatrix completion;  // [t | b]
    int added_cols = 0;
};

bool all_finite(const CMatrix& m);

/// Largest singular value. Zero for empty matrices.
double op_norm(const CMatrix& m);

/// Relative asymmetry ||m - m^*||_F / ||m||_F (zero for the zero matrix).
double asymmetry(const CMatrix& m);

/// Eigendecomposition of a Hermitian matrix with descending eigenvalues and a
/// fixed phase: the first component of each eigenvector whose modulus exceeds
/// 1e-12 is real positive. The input is symmetrized before solving.
HermitianEig hermitian_eig(const CMatrix& m, const Tolerances& tol = {});

/// min eigenvalue >= -psd_tol * max(1, ||m||).
PsdVerdict is_psd(const CMatrix& m, const Tolerances& tol = {});

/// Eigen-route factorization m ~ F^* F, keeping eigenvalues above
/// rank_tol * (largest eigenvalue). Rows of F are sqrt(w_k) v_k^*.
PsdFactor psd_factor(const CMatrix& m, const Tolerances& tol = {});

/// Hermitian square root of a PSD matrix; small negative eigenvalues are
/// clipped to zero.
CMatrix psd_sqrt(const CMatrix& m, const Tolerances& tol = {});

/// Moore-Penrose pseudo-inverse with singular values below
/// rank_tol * sigma_max treated as zero.
CMatrix pinv(const CMatrix& m, const Tolerances& tol = {});

/// Numerical rank under rank_tol * sigma_max.
int numerical_rank(const CMatrix& m, const Tolerances& tol = {});

/// Orthonormal basis (columns) of the column space of m.
CMatrix range_basis(const CMatrix& m, const Tolerances& tol = {});

/// Extends a contraction t (k x h) to [t | b] with [t | b][t | b]^* = I_k,
/// where b has the minimal number of columns, rank(I - t t^*).
Completion complete_to_coisometry(const CMatrix& t, const Tolerances& tol = {});

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix identity(Eigen::Index n);

} // namespace numlin
} // namespace pickspace
