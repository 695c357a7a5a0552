#include "pickspace/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pickspace/random.hpp"

namespace pickspace::embed {

cdouble da_kernel(const CVector& eta, const CVector& xi) { return 1.0 / (1.0 - xi.dot(eta)); }

EmbeddingData embedding_check(const pick::PickDecomposition& p) {
    const int n = p.size();
    EmbeddingData out;
    out.beta_bar = p.beta.conjugate();
    out.da_gram.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.da_gram(i, j) = da_kernel(out.beta_bar.col(i), out.beta_bar.col(j));
            const cdouble lifted = p.delta(i) * std::conj(p.delta(j)) * out.da_gram(i, j);
            out.residual = std::max(out.residual, std::abs(p.kernel.gram(i, j) - lifted));
        }
    return out;
}

double intertwining_check(const pick::PickDecomposition& p, const CVector& xi) {
    if (xi.size() != p.dim_b) throw Error(ErrorKind::DimMismatch, "xi must live in B");
    const int n = p.size();
    const EmbeddingData e = embedding_check(p);
    mult::MultiplierData phi;
    phi.dim_out = phi.dim_in = 1;
    CVector phi_vals(n);
    for (int j = 0; j < n; ++j) {
        phi_vals(j) = xi.dot(e.beta_bar.col(j));
        phi.values.push_back(CMatrix::Constant(1, 1, phi_vals(j)));
    }
    // Columns are the orthonormal coordinates of k_{lambda_j}.
    const CMatrix sections = p.kernel.onb_factor.adjoint();
    const CMatrix rhs = sections.adjoint() * mult::multiplier_operator(p.kernel, phi).onb.adjoint() * sections;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // <M_phi^* E k_j, E k_i> with M_phi^* d_eta = conj(phi(eta)) d_eta.
            const cdouble lhs = p.delta(i) * std::conj(p.delta(j)) * std::conj(phi_vals(j)) * e.da_gram(i, j);
            worst = std::max(worst, std::abs(lhs - rhs(i, j)));
        }
    return worst;
}

CMatrix a_xi(const CMatrix& a, const CVector& xi, int dim_x) {
    return numlin::kron(xi.adjoint(), numlin::identity(dim_x)) * a;
}

double a_xi_commutation(const CMatrix& a, int dim_x, const std::vector<CVector>& xis) {
    double worst = 0.0;
    std::vector<CMatrix> ops;
    for (const auto& xi : xis) ops.push_back(a_xi(a, xi, dim_x));
    for (size_t s = 0; s < ops.size(); ++s)
        for (size_t t = s + 1; t < ops.size(); ++t)
            worst = std::max(worst, numlin::op_norm(ops[s] * ops[t] - ops[t] * ops[s]));
    return worst;
}

InvariantA invariant_a(const pick::PickDecomposition& p, const CMatrix& q, int coeff_dim, const Tolerances& tol) {
    const CMatrix bt = pick::b_operator(p, coeff_dim).onb;
    const CMatrix ir = numlin::identity(p.dim_b);
    const CMatrix image = bt.adjoint() * q;
    InvariantA out;
    out.invariance_residual = numlin::op_norm(image - numlin::kron(ir, q * q.adjoint()) * image);
    if (out.invariance_residual > tol.residual_tol)
        throw Error(ErrorKind::NotInvariant, "N is not invariant under B^*", out.invariance_residual);
    out.a = numlin::kron(ir, q.adjoint()) * image;
    return out;
}

double distance_to_span(const pick::PickDecomposition& p, const CVector& xi) {
    const int n = p.size();
    const CMatrix beta_bar = p.beta.conjugate();
    const CVector jxi = xi.conjugate();
    CMatrix gram(n, n);
    CVector h(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) gram(i, j) = da_kernel(beta_bar.col(i), beta_bar.col(j));
        h(i) = da_kernel(beta_bar.col(i), jxi);  // <d_{J xi}, d_{beta_bar_i}>
    }
    const double self = 1.0 / (1.0 - xi.squaredNorm());
    const double proj = std::real(h.dot(gram.ldlt().solve(h)));
    return std::sqrt(std::max(0.0, self - proj));
}

CounterexampleReport evaluate_candidate(const pick::PickDecomposition& p, const CVector& xi, const Tolerances& tol) {
    if (xi.size() != p.dim_b) throw Error(ErrorKind::DimMismatch, "xi must live in B");
    const double xn2 = xi.squaredNorm();
    if (!(xn2 < 1.0)) throw Error(ErrorKind::DomainViolation, "xi must lie in the open unit ball");
    const int n = p.size(), rb = p.dim_b;
    const auto& k = p.kernel;
    CounterexampleReport out;
    out.xi = xi;
    out.f0_values.resize(n);
    const double scale = std::sqrt(1.0 - xn2);
    for (int i = 0; i < n; ++i) out.f0_values(i) = scale / (1.0 - p.beta.col(i).dot(xi));
    out.distance_to_span = distance_to_span(p, xi);

    const CVector f0 = rkhs::to_onb(rkhs::VecElement{rkhs::function_space(k), out.f0_values}, k);
    const CVector u = f0 / f0.norm();
    const CVector v = pick::b_operator(p).onb.adjoint() * u;
    out.invariance_defect = (v - numlin::kron(numlin::identity(rb), u * u.adjoint()) * v).norm();

    realize::Realization& r = out.realization;
    r.pick = p;
    r.dim_x = 1;
    CMatrix column(rb + 1, 1);
    column << xi, CMatrix::Constant(1, 1, scale);
    const numlin::Completion comp = numlin::complete_to_coisometry(column, tol);
    const CMatrix extra = comp.completion.rightCols(comp.added_cols);
    r.a = column.topRows(rb);
    r.c = column.bottomRows(1);
    r.b = extra.topRows(rb);
    r.d = extra.bottomRows(1);
    out.coisometry_residual = r.coisometry_residual();

    const realize::GammaReport gr = realize::gamma_map(r, tol);
    out.identity_residual = gr.identity_residual;
    out.gamma_residual = (gr.gamma.op.onb.col(0) - f0).norm();
    std::vector<CVector> basis;
    for (int s = 0; s < rb; ++s) basis.push_back(CVector::Unit(rb, s));
    basis.push_back(xi);
    out.max_commutator = a_xi_commutation(r.a, 1, basis);
    return out;
}

CounterexampleReport build_counterexample(const pick::PickDecomposition& p, std::uint64_t seed, int extra_dims,
                                          double floor, int budget, const Tolerances& tol) {
    if (!p.is_normalized(tol.residual_tol))
        throw Error(ErrorKind::NotNormalized, "counterexample search needs delta == 1");
    const pick::PickDecomposition pe = extra_dims > 0 ? pick::enlarge(p, extra_dims) : p;
    std::mt19937_64 rng = random::make_rng(seed);
    double best = 0.0;
    for (int attempt = 1; attempt <= budget; ++attempt) {
        CVector xi = random::gaussian_vector(pe.dim_b, rng);
        if (xi.norm() == 0.0) continue;
        xi *= 0.5 / xi.norm();
        CounterexampleReport rep = evaluate_candidate(pe, xi, tol);
        rep.attempts = attempt;
        best = std::max(best, std::min(rep.distance_to_span, rep.invariance_defect));
        if (rep.distance_to_span > floor && rep.invariance_defect > floor) return rep;
    }
    throw Error(ErrorKind::SearchFailed, "no candidate cleared the positivity floor", best);
}

Example52Report example52_report(const Tolerances& tol) {
    Example52Report out;
    const std::vector<cdouble> pts{0.0, 0.5};
    const rkhs::KernelData k = rkhs::make_kernel(rkhs::KernelFamily::Example52, rkhs::scalar_points(pts), {}, tol);
    out.k_half = k.gram(1, 1).real();
    out.k_half_rel_error = std::abs(out.k_half - out.k_half_expected) / out.k_half_expected;

    CMatrix beta(2, 2);
    for (int i = 0; i < 2; ++i) {
        const cdouble lb = std::conj(pts[i]);
        beta(0, i) = lb / std::numbers::sqrt2;
        beta(1, i) = lb * lb / std::numbers::sqrt2;
    }
    const pick::PickDecomposition p = pick::with_beta(pick::decompose(k, 0, tol), beta, tol);
    out.embedding_residual = embedding_check(p).residual;

    CMatrix a1(2, 1), a2(2, 1);
    a1 << 1.0 / 8.0, 0.0;
    a2 << 0.0, 1.0 / 4.0;
    const CMatrix c = CMatrix::Identity(1, 1);
    const realize::GammaMap g1 = realize::gamma_from(p, a1, c, tol);
    const realize::GammaMap g2 = realize::gamma_from(p, a2, c, tol);
    out.gamma1.resize(2);
    out.gamma2.resize(2);
    out.gamma_printed.resize(2);
    for (int i = 0; i < 2; ++i) {
        out.gamma1(i) = g1.values[i](0, 0);
        out.gamma2(i) = g2.values[i](0, 0);
        out.gamma_printed(i) = 1.0 / (std::numbers::sqrt2 * (1.0 - pts[i] / 8.0));
    }
    out.gamma_equality = (out.gamma1 - out.gamma2).cwiseAbs().maxCoeff();
    out.gram_equality =
        numlin::op_norm(g1.op.onb * g1.op.onb.adjoint() - g2.op.onb * g2.op.onb.adjoint());

    out.a_difference = numlin::op_norm(a1 - a2);
    out.kappa_min = INFINITY;
    for (int t = 0; t < out.grid_size; ++t) {
        const cdouble kappa = std::polar(1.0, 2.0 * std::numbers::pi * t / out.grid_size);
        // X is one-dimensional, so kappa acts by the same scalar on both sides.
        out.kappa_min = std::min(out.kappa_min, numlin::op_norm(kappa * a1 - a2 * kappa));
    }

    // The first realization with c scaled so that [a; c] is a unit column.
    realize::Realization r;
    r.pick = p;
    r.dim_x = 1;
    CMatrix column(3, 1);
    column << a1, CMatrix::Constant(1, 1, std::sqrt(1.0 - a1.squaredNorm()));
    const numlin::Completion comp = numlin::complete_to_coisometry(column, tol);
    r.a = a1;
    r.c = column.bottomRows(1);
    r.b = comp.completion.rightCols(comp.added_cols).topRows(2);
    r.d = comp.completion.rightCols(comp.added_cols).bottomRows(1);
    out.g_contractive = mult::is_contractive_multiplier(k, realize::transfer_eval(r, tol), tol).ok;
    out.tilde_b_norm = realize::tilde_b(r, realize::gamma_from(p, r.a, r.c, tol), tol).norm;
    return out;
}

} // namespace pickspace::embed
