#include "pickspace/numlin.hpp"

#include <algorithm>
#include <cmath>

namespace pickspace {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::SingularKernel: return "SingularKernel";
    case ErrorKind::ZeroKernelEntry: return "ZeroKernelEntry";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::NotPick: return "NotPick";
    case ErrorKind::BetaMismatch: return "BetaMismatch";
    case ErrorKind::ZeroDelta: return "ZeroDelta";
    case ErrorKind::NotInRange: return "NotInRange";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::SingularResolvent: return "SingularResolvent";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ConditionsViolated: return "ConditionsViolated";
    case ErrorKind::SearchFailed: return "SearchFailed";
    case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

void Tolerances::validate() const {
    auto ok = [](double v) { return v > 0.0 && v < 1.0; };
    if (!ok(psd_tol) || !ok(rank_tol) || !ok(residual_tol))
        throw Error(ErrorKind::InvalidInput, "tolerances must lie in (0, 1)");
}

namespace numlin {

bool all_finite(const CMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

double op_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double asymmetry(const CMatrix& m) {
    const double scale = m.norm();
    if (scale == 0.0) return 0.0;
    return (m - m.adjoint()).norm() / scale;
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

HermitianEig hermitian_eig(const CMatrix& m, const Tolerances& tol) {
    if (m.rows() != m.cols())
        throw Error(ErrorKind::NotHermitian, "matrix is not square");
    if (!all_finite(m))
        throw Error(ErrorKind::NotFinite, "matrix has NaN or Inf entries");
    const double asym = asymmetry(m);
    if (asym > tol.residual_tol)
        throw Error(ErrorKind::NotHermitian, "relative asymmetry too large", asym);

    const Eigen::Index n = m.rows();
    HermitianEig out;
    if (n == 0) return out;

    const CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    out.values = es.eigenvalues().reverse();
    out.vectors = es.eigenvectors().rowwise().reverse();

    for (Eigen::Index k = 0; k < n; ++k) {
        auto col = out.vectors.col(k);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mag = std::abs(col(i));
            if (mag > 1e-12) {
                col *= std::conj(col(i)) / mag;
                col(i) = cdouble(std::abs(col(i)), 0.0);
                break;
            }
        }
    }
    return out;
}

PsdVerdict is_psd(const CMatrix& m, const Tolerances& tol) {
    PsdVerdict out;
    if (m.size() == 0) {
        out.ok = true;
        return out;
    }
    const HermitianEig eig = hermitian_eig(m, tol);
    const Eigen::Index last = eig.values.size() - 1;
    const double scale = std::max(std::abs(eig.values(0)), std::abs(eig.values(last)));
    out.min_eig = eig.values(last);
    out.witness = eig.vectors.col(last);
    out.ok = out.min_eig >= -tol.psd_tol * std::max(1.0, scale);
    return out;
}

PsdFactor psd_factor(const CMatrix& m, const Tolerances& tol) {
    PsdFactor out;
    const Eigen::Index n = m.rows();
    if (n == 0) {
        out.factor = CMatrix(0, 0);
        return out;
    }
    const HermitianEig eig = hermitian_eig(m, tol);
    const double top = eig.values(0);
    const double scale = std::max(std::abs(top), std::abs(eig.values(n - 1)));
    if (eig.values(n - 1) < -tol.psd_tol * std::max(1.0, scale))
        throw Error(ErrorKind::NotPSD, "matrix has a negative eigenvalue", eig.values(n - 1));

    int r = 0;
    if (top > 0.0)
        while (r < n && eig.values(r) > tol.rank_tol * top) ++r;
    out.rank = r;
    out.factor = CMatrix(r, n);
    for (int k = 0; k < r; ++k)
        out.factor.row(k) = std::sqrt(eig.values(k)) * eig.vectors.col(k).adjoint();
    return out;
}

CMatrix psd_sqrt(const CMatrix& m, const Tolerances& tol) {
    if (m.size() == 0) return m;
    const HermitianEig eig = hermitian_eig(m, tol);
    RVector w = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * w.cast<cdouble>().asDiagonal() * eig.vectors.adjoint();
}

CMatrix pinv(const CMatrix& m, const Tolerances& tol) {
    if (!all_finite(m))
        throw Error(ErrorKind::NotFinite, "matrix has NaN or Inf entries");
    if (m.size() == 0) return CMatrix::Zero(m.cols(), m.rows());
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& s = svd.singularValues();
    const double cutoff = tol.rank_tol * s(0);
    RVector inv = RVector::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.cast<cdouble>().asDiagonal() * svd.matrixU().adjoint();
}

int numerical_rank(const CMatrix& m, const Tolerances& tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const RVector& s = svd.singularValues();
    if (s(0) == 0.0) return 0;
    int r = 0;
    while (r < s.size() && s(r) > tol.rank_tol * s(0)) ++r;
    return r;
}

CMatrix range_basis(const CMatrix& m, const Tolerances& tol) {
    if (m.size() == 0) return CMatrix(m.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
    const int r = numerical_rank(m, tol);
    return svd.matrixU().leftCols(r);
}

Completion complete_to_coisometry(const CMatrix& t, const Tolerances& tol) {
    const double norm = op_norm(t);
    if (norm > 1.0 + tol.residual_tol)
        throw Error(ErrorKind::NotContraction, "operator norm exceeds one", norm);

    const Eigen::Index k = t.rows();
    Completion out;
    if (k == 0) {
        out.completion = t;
        return out;
    }
    const CMatrix defect = identity(k) - t * t.adjoint();
    const HermitianEig eig = hermitian_eig(defect, tol);
    // The defect has spectrum in [0, 1], so the cutoff is absolute.
    int g = 0;
    while (g < k && eig.values(g) > tol.rank_tol) ++g;
    out.added_cols = g;
    out.completion = CMatrix(k, t.cols() + g);
    out.completion.leftCols(t.cols()) = t;
    for (int j = 0; j < g; ++j)
        out.completion.col(t.cols() + j) = std::sqrt(eig.values(j)) * eig.vectors.col(j);
    return out;
}

} // namespace numlin
} // namespace pickspace
