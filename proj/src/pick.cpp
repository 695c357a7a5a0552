#include "pickspace/pick.hpp"

#include <algorithm>
#include <cmath>

namespace pickspace::pick {
namespace {

CVector base_delta(const KernelData& k, int base) {
    const double k00 = k.gram(base, base).real();
    return k.gram.col(base) / std::sqrt(k00);
}

void check_base(const KernelData& k, int base) {
    if (base < 0 || base >= k.size()) throw Error(ErrorKind::InvalidInput, "base point index out of range");
}

void check_no_zero_entries(const KernelData& k, const Tolerances& tol) {
    const double scale = k.gram.cwiseAbs().maxCoeff();
    for (int i = 0; i < k.size(); ++i)
        for (int j = 0; j < k.size(); ++j)
            if (std::abs(k.gram(i, j)) <= tol.rank_tol * scale)
                throw Error(ErrorKind::ZeroKernelEntry,
                            "K(lambda_" + std::to_string(i) + ", lambda_" + std::to_string(j) + ") vanishes");
}

} // namespace

bool PickDecomposition::is_normalized(double tol) const {
    return (delta - CVector::Ones(delta.size())).cwiseAbs().maxCoeff() <= tol;
}

PickVerdict check_pick(const KernelData& k, int base_index, const Tolerances& tol) {
    check_base(k, base_index);
    check_no_zero_entries(k, tol);
    const int n = k.size();
    const CVector delta = base_delta(k, base_index);
    PickVerdict out;
    out.beta_gram.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.beta_gram(i, j) = 1.0 - delta(i) * std::conj(delta(j)) / k.gram(i, j);
    const numlin::PsdVerdict v = numlin::is_psd(out.beta_gram, tol);
    out.min_eig = v.min_eig;
    out.max_diag = out.beta_gram.diagonal().real().maxCoeff();
    out.ok = v.ok && out.max_diag < 1.0;
    return out;
}

AllBasesReport check_pick_all_bases(const KernelData& k, const Tolerances& tol) {
    AllBasesReport out;
    for (int b = 0; b < k.size(); ++b) out.per_base.push_back(check_pick(k, b, tol));
    for (const auto& v : out.per_base)
        if (v.ok != out.per_base.front().ok) out.consistent = false;
    return out;
}

PickDecomposition decompose(const KernelData& k, int base_index, const Tolerances& tol) {
    const PickVerdict v = check_pick(k, base_index, tol);
    if (!v.ok) throw Error(ErrorKind::NotPick, "one-minus-ratio kernel is not positive", v.min_eig);
    PickDecomposition p;
    p.kernel = k;
    p.base_index = base_index;
    p.delta = base_delta(k, base_index);
    p.beta_gram = v.beta_gram;
    p.f_min_eig = v.min_eig;
    const numlin::PsdFactor f = numlin::psd_factor(v.beta_gram, tol);
    p.beta = f.factor;
    p.dim_b = f.rank;
    return p;
}

PickDecomposition with_beta(const PickDecomposition& p, const CMatrix& beta, const Tolerances& tol) {
    if (beta.cols() != p.size()) throw Error(ErrorKind::DimMismatch, "beta needs one column per point");
    const double residual = numlin::op_norm(beta.adjoint() * beta - p.beta_gram);
    if (residual > tol.residual_tol * std::max(1.0, numlin::op_norm(p.beta_gram)))
        throw Error(ErrorKind::BetaMismatch, "supplied beta does not reproduce the kernel", residual);
    PickDecomposition out = p;
    out.beta = beta;
    out.dim_b = static_cast<int>(beta.rows());
    out.explicit_beta = true;
    return out;
}

PickDecomposition enlarge(const PickDecomposition& p, int extra) {
    if (extra < 0) throw Error(ErrorKind::InvalidInput, "cannot enlarge by a negative dimension");
    PickDecomposition out = p;
    out.beta = CMatrix::Zero(p.dim_b + extra, p.size());
    out.beta.topRows(p.dim_b) = p.beta;
    out.dim_b = p.dim_b + extra;
    out.explicit_beta = true;
    return out;
}

mult::MultiplierData b_multiplier(const PickDecomposition& p) {
    mult::MultiplierData b;
    b.dim_out = 1;
    b.dim_in = p.dim_b;
    for (int i = 0; i < p.size(); ++i) b.values.push_back(p.beta.col(i).adjoint());
    return b;
}

OperatorData b_operator(const PickDecomposition& p, int coeff_dim) {
    std::vector<CMatrix> per_point;
    for (int i = 0; i < p.size(); ++i)
        per_point.push_back(numlin::kron(p.beta.col(i).adjoint(), numlin::identity(coeff_dim)));
    return rkhs::pointwise_operator(p.kernel, rkhs::function_space(p.kernel, coeff_dim, {p.dim_b}),
                                    rkhs::function_space(p.kernel, coeff_dim), per_point);
}

CVector delta_onb(const PickDecomposition& p) {
    return rkhs::to_onb(rkhs::VecElement{rkhs::function_space(p.kernel), p.delta}, p.kernel);
}

CMatrix delta_projection(const PickDecomposition& p) {
    const CVector u = delta_onb(p);
    return u * u.adjoint() / u.squaredNorm();
}

double delta_projection_check(const PickDecomposition& p) {
    const CMatrix b = b_operator(p).onb;
    return numlin::op_norm(numlin::identity(p.size()) - b * b.adjoint() - delta_projection(p));
}

double factorization_residual(const PickDecomposition& p) {
    double worst = 0.0;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) {
            const cdouble bb = p.beta.col(i).dot(p.beta.col(j));  // B(lambda_i) B(lambda_j)^*
            const cdouble lhs = (1.0 - bb) * p.kernel.gram(i, j);
            worst = std::max(worst, std::abs(lhs - p.delta(i) * std::conj(p.delta(j))));
        }
    return worst;
}

NormalizedKernel normalize(const PickDecomposition& p, const Tolerances& tol) {
    const double scale = p.delta.cwiseAbs().maxCoeff();
    for (int i = 0; i < p.size(); ++i)
        if (std::abs(p.delta(i)) <= tol.rank_tol * scale)
            throw Error(ErrorKind::ZeroDelta, "delta vanishes at lambda_" + std::to_string(i));
    const int n = p.size();
    CMatrix kp(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) kp(i, j) = p.kernel.gram(i, j) / (p.delta(i) * std::conj(p.delta(j)));
    std::vector<std::string> labels;
    for (const auto& pt : p.kernel.points) labels.push_back(pt.label);
    NormalizedKernel out;
    out.kprime = rkhs::make_explicit_kernel(kp, labels, tol);
    for (int i = 0; i < n; ++i) out.kprime.points[i].coords = p.kernel.points[i].coords;
    out.delta = p.delta;
    return out;
}

PickDecomposition normalized_decomposition(const PickDecomposition& p, const Tolerances& tol) {
    const NormalizedKernel nk = normalize(p, tol);
    return with_beta(decompose(nk.kprime, p.base_index, tol), p.beta, tol);
}

OperatorData omega_operator(const PickDecomposition& p, const NormalizedKernel& nk, int coeff_dim) {
    const rkhs::SpaceDescriptor dom = rkhs::function_space(p.kernel, coeff_dim);
    const rkhs::SpaceDescriptor cod = rkhs::function_space(nk.kprime, coeff_dim);
    CMatrix diag = CMatrix::Zero(dom.total(), dom.total());
    for (int i = 0; i < p.size(); ++i)
        for (int s = 0; s < coeff_dim; ++s) diag(i * coeff_dim + s, i * coeff_dim + s) = 1.0 / nk.delta(i);
    return OperatorData{dom, cod,
                        rkhs::value_to_onb_matrix(cod, nk.kprime) * diag * rkhs::onb_to_value_matrix(dom, p.kernel)};
}

} // namespace pickspace::pick
