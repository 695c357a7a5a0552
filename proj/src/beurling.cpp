#include "pickspace/beurling.hpp"

#include <algorithm>
#include <cmath>

namespace pickspace::beurling {
namespace {

void check_input(const InvariantSubspaceInput& inp, const Tolerances& tol) {
    if (inp.coeff_dim < 1) throw Error(ErrorKind::DimMismatch, "coefficient dimension must be positive");
    if (inp.c.rows() != inp.pick.size() * inp.coeff_dim)
        throw Error(ErrorKind::SpaceMismatch, "C does not map into H(K) (x) G");
    const double norm = numlin::op_norm(inp.c);
    if (norm > 1.0 + tol.residual_tol) throw Error(ErrorKind::NotContraction, "C is not a contraction", norm);
}

} // namespace

InvariantSubspaceInput from_multiplier(const pick::PickDecomposition& p, const mult::MultiplierData& f) {
    return InvariantSubspaceInput{p, f.dim_out, mult::multiplier_operator(p.kernel, f).onb};
}

CMatrix invariance_defect(const InvariantSubspaceInput& inp) {
    const CMatrix cc = inp.c * inp.c.adjoint();
    const CMatrix bt = pick::b_operator(inp.pick, inp.coeff_dim).onb;
    return cc - bt * numlin::kron(numlin::identity(inp.pick.dim_b), cc) * bt.adjoint();
}

InvarianceVerdict check_b_invariance(const InvariantSubspaceInput& inp, const Tolerances& tol) {
    check_input(inp, tol);
    const numlin::PsdVerdict v = numlin::is_psd(invariance_defect(inp), tol);
    return InvarianceVerdict{v.ok, v.min_eig};
}

BeurlingResult construct_g(const InvariantSubspaceInput& inp, const Tolerances& tol) {
    check_input(inp, tol);
    const CMatrix defect = invariance_defect(inp);
    const numlin::PsdVerdict v = numlin::is_psd(defect, tol);
    if (!v.ok) throw Error(ErrorKind::NotInvariant, "subspace is not B-invariant", v.min_eig);

    BeurlingResult out;
    out.min_eig = v.min_eig;
    const numlin::PsdFactor f = numlin::psd_factor(defect, tol);
    out.x = f.factor.adjoint();
    out.dim_g_prime = f.rank;

    const auto& k = inp.pick.kernel;
    const int n = inp.pick.size(), gdim = inp.coeff_dim;
    const double delta_scale = inp.pick.delta.cwiseAbs().maxCoeff();
    out.g.dim_out = gdim;
    out.g.dim_in = f.rank;
    for (int j = 0; j < n; ++j) {
        CMatrix gstar = CMatrix::Zero(f.rank, gdim);
        const cdouble dj = inp.pick.delta(j);
        if (std::abs(dj) <= tol.rank_tol * delta_scale) {
            out.zero_delta_points.push_back(j);
        } else {
            for (int s = 0; s < gdim; ++s)
                gstar.col(s) = f.factor * rkhs::kernel_section_onb(k, j, gdim, s) / std::conj(dj);
        }
        out.g.values.push_back(gstar.adjoint());
    }

    const CMatrix m = mult::multiplier_operator(k, out.g).onb;
    out.residual = numlin::op_norm(m * m.adjoint() - inp.c * inp.c.adjoint());
    out.contractive = mult::is_contractive_multiplier(k, out.g, tol).ok;
    return out;
}

BeurlingResult inner_from_closed(const InvariantSubspaceInput& inp, const Tolerances& tol) {
    check_input(inp, tol);
    const double iso = numlin::op_norm(inp.c.adjoint() * inp.c - numlin::identity(inp.c.cols()));
    if (iso > tol.residual_tol) throw Error(ErrorKind::NotIsometric, "C^* C differs from the identity", iso);
    BeurlingResult out = construct_g(inp, tol);
    const CMatrix m = mult::multiplier_operator(inp.pick.kernel, out.g).onb;
    const CMatrix proj = m * m.adjoint();
    out.projection_residual =
        std::max(numlin::op_norm(proj * proj - proj), numlin::op_norm(proj - proj.adjoint()));
    out.projection_rank = numlin::numerical_rank(proj, tol);
    out.inner = out.projection_residual <= tol.residual_tol;
    return out;
}

FactorizationVerdict verify_factorization(const rkhs::KernelData& k, const mult::MultiplierData& g1,
                                          const mult::MultiplierData& g2, const mult::MultiplierData& gamma,
                                          const Tolerances& tol) {
    g1.validate(k.size());
    g2.validate(k.size());
    gamma.validate(k.size());
    if (g2.dim_in != gamma.dim_out || g1.dim_out != g2.dim_out || g1.dim_in != gamma.dim_in)
        throw Error(ErrorKind::DimMismatch, "G1 = G2 Gamma is not dimensionally consistent");
    FactorizationVerdict out;
    const mult::ContractivityVerdict cv = mult::is_contractive_multiplier(k, gamma, tol);
    out.gamma_contractive = cv.ok;
    out.gamma_min_eig = cv.min_eig;
    for (int i = 0; i < k.size(); ++i)
        out.max_residual =
            std::max(out.max_residual, numlin::op_norm(g1.values[i] - g2.values[i] * gamma.values[i]));
    out.ok = out.gamma_contractive && out.max_residual <= tol.residual_tol;
    return out;
}

subspace::DouglasResult multiplier_action(const InvariantSubspaceInput& inp, const mult::MultiplierData& f,
                                          const Tolerances& tol) {
    check_input(inp, tol);
    const auto& k = inp.pick.kernel;
    f.validate(k.size());
    std::vector<CMatrix> per_point;
    for (const auto& v : f.values) per_point.push_back(numlin::kron(numlin::identity(inp.coeff_dim), v));
    const CMatrix t = rkhs::pointwise_operator(k, rkhs::function_space(k, inp.coeff_dim * f.dim_in),
                                               rkhs::function_space(k, inp.coeff_dim * f.dim_out), per_point)
                          .onb;
    const auto rs1 = subspace::make_range_space(rkhs::function_space(k, inp.coeff_dim * f.dim_in),
                                                numlin::kron(inp.c, numlin::identity(f.dim_in)), tol);
    const auto rs2 = subspace::make_range_space(rkhs::function_space(k, inp.coeff_dim * f.dim_out),
                                                numlin::kron(inp.c, numlin::identity(f.dim_out)), tol);
    return subspace::douglas_solve(t, rs1, rs2, tol);
}

} // namespace pickspace::beurling
