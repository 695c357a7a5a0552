#include "pickspace/realize.hpp"

#include <algorithm>
#include <cmath>

#include "pickspace/random.hpp"

namespace pickspace::realize {
namespace {

void require_normalized(const pick::PickDecomposition& p, const Tolerances& tol) {
    if (!p.is_normalized(tol.residual_tol))
        throw Error(ErrorKind::NotNormalized, "kernel is not normalized at the base point");
}

struct RangeCoords {
    CMatrix vq;
    int q = 0;
};

// Orthonormal basis of (ker m)^perp from the right singular vectors.
RangeCoords corange(const CMatrix& m, const Tolerances& tol) {
    RangeCoords out;
    if (m.cols() == 0) {
        out.vq = CMatrix(0, 0);
        return out;
    }
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double top = s.size() > 0 ? s(0) : 0.0;
    int q = 0;
    while (q < s.size() && top > 0.0 && s(q) > tol.rank_tol * top) ++q;
    out.q = q;
    out.vq = svd.matrixV().leftCols(q);
    return out;
}

} // namespace

CMatrix Realization::u() const {
    CMatrix out(a.rows() + c.rows(), a.cols() + b.cols());
    out << a, b, c, d;
    return out;
}

double Realization::coisometry_residual() const {
    const CMatrix m = u();
    return numlin::op_norm(m * m.adjoint() - numlin::identity(m.rows()));
}

void Realization::validate() const {
    const int r = pick.dim_b;
    if (dim_x < 0 || a.rows() != r * dim_x || a.cols() != dim_x || b.rows() != r * dim_x ||
        c.cols() != dim_x || d.rows() != c.rows() || d.cols() != b.cols())
        throw Error(ErrorKind::DimMismatch, "realization blocks have inconsistent shapes");
    if (!numlin::all_finite(u())) throw Error(ErrorKind::NotFinite, "realization has non-finite entries");
}

CMatrix z_of(const pick::PickDecomposition& p, int i, int dim_x) {
    return numlin::kron(p.beta.col(i).adjoint(), numlin::identity(dim_x));
}

CMatrix resolvent(const pick::PickDecomposition& p, const CMatrix& a, int i, const Tolerances& tol,
                  double* condition) {
    const int dim_x = static_cast<int>(a.cols());
    const CMatrix m = numlin::identity(dim_x) - z_of(p, i, dim_x) * a;
    if (dim_x == 0) {
        if (condition) *condition = 1.0;
        return m;
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (condition) *condition = smin > 0.0 ? s(0) / smin : INFINITY;
    if (smin <= tol.rank_tol)
        throw Error(ErrorKind::SingularResolvent, "I - Z(lambda) a is singular at lambda_" + std::to_string(i), smin);
    return m.partialPivLu().solve(numlin::identity(dim_x));
}

mult::MultiplierData transfer_eval(const Realization& r, const Tolerances& tol) {
    r.validate();
    mult::MultiplierData g;
    g.dim_out = r.dim_out();
    g.dim_in = r.dim_in();
    for (int i = 0; i < r.pick.size(); ++i)
        g.values.push_back(r.d + r.c * resolvent(r.pick, r.a, i, tol) * z_of(r.pick, i, r.dim_x) * r.b);
    return g;
}

double resolvent_condition(const Realization& r, const Tolerances& tol) {
    double worst = 1.0;
    for (int i = 0; i < r.pick.size(); ++i) {
        double c = 1.0;
        resolvent(r.pick, r.a, i, tol, &c);
        worst = std::max(worst, c);
    }
    return worst;
}

GammaMap gamma_from(const pick::PickDecomposition& p, const CMatrix& a, const CMatrix& c, const Tolerances& tol) {
    const auto& k = p.kernel;
    const int n = p.size(), g = static_cast<int>(c.rows()), dim_x = static_cast<int>(c.cols());
    if (a.cols() != dim_x || a.rows() != p.dim_b * dim_x)
        throw Error(ErrorKind::DimMismatch, "a does not match c and the auxiliary dimension");
    GammaMap out;
    CMatrix stacked(n * g, dim_x);
    for (int i = 0; i < n; ++i) {
        out.values.push_back(p.delta(i) * c * resolvent(p, a, i, tol));
        stacked.middleRows(i * g, g) = out.values.back();
    }
    const rkhs::SpaceDescriptor cod = rkhs::function_space(k, g);
    out.op = rkhs::OperatorData{rkhs::plain_space(dim_x), cod, rkhs::value_to_onb_matrix(cod, k) * stacked};
    return out;
}

GammaReport gamma_map(const Realization& r, const Tolerances& tol) {
    r.validate();
    GammaReport out;
    out.g = transfer_eval(r, tol);
    out.gamma = gamma_from(r.pick, r.a, r.c, tol);
    const CMatrix m = mult::multiplier_operator(r.pick.kernel, out.g).onb;
    const CMatrix& gam = out.gamma.op.onb;
    out.identity_residual = numlin::op_norm(m * m.adjoint() + gam * gam.adjoint() - numlin::identity(m.rows()));
    const auto sharp = subspace::complementary(mult::range_space(r.pick.kernel, out.g, tol), tol);
    out.complement_match = subspace::same_range(sharp, subspace::make_range_space(out.gamma.op, tol), tol);
    return out;
}

CMatrix observability(const Realization& r, int i, const Tolerances& tol) {
    return resolvent(r.pick, r.a, i, tol).adjoint() * r.c.adjoint();
}

TildeB tilde_b(const Realization& r, const GammaMap& gamma, const Tolerances& tol) {
    require_normalized(r.pick, tol);
    const int rb = r.pick.dim_b;
    const CMatrix& gam = gamma.op.onb;
    const RangeCoords rc = corange(gam, tol);
    TildeB out;
    out.vq = rc.vq;
    out.q = rc.q;
    const CMatrix ir = numlin::identity(rb);
    out.tb = numlin::kron(ir, rc.vq.adjoint()) * r.a * rc.vq;
    out.norm = numlin::op_norm(out.tb);
    out.defining_residual = numlin::op_norm(numlin::kron(ir, gam * rc.vq) * out.tb * rc.vq.adjoint() -
                                            numlin::kron(ir, gam) * r.a);
    return out;
}

GleasonReport gleason_check(const pick::PickDecomposition& p, const CMatrix& w, const CMatrix& tb, int coeff_dim,
                            const Tolerances& tol) {
    require_normalized(p, tol);
    const Eigen::Index q = w.cols();
    if (tb.rows() != p.dim_b * q || tb.cols() != q)
        throw Error(ErrorKind::DimMismatch, "difference-quotient operator has the wrong shape");
    const CMatrix bt = pick::b_operator(p, coeff_dim).onb;
    const CMatrix proj = numlin::kron(pick::delta_projection(p), numlin::identity(coeff_dim));
    GleasonReport out;
    out.identity_residual =
        numlin::op_norm(w - bt * numlin::kron(numlin::identity(p.dim_b), w) * tb - proj * w);
    if (q > 0) {
        const CMatrix form = numlin::identity(q) - tb.adjoint() * tb - w.adjoint() * proj * w;
        const numlin::HermitianEig eig = numlin::hermitian_eig(0.5 * (form + form.adjoint()), tol);
        out.inequality_slack = eig.values(q - 1);
    }
    return out;
}

GleasonReport gleason_check(const Realization& r, const GammaMap& gamma, const TildeB& tb, const Tolerances& tol) {
    return gleason_check(r.pick, gamma.op.onb * tb.vq, tb.tb, r.dim_out(), tol);
}

GleasonReport whole_space_gleason(const pick::PickDecomposition& p, int coeff_dim) {
    const CMatrix bt = pick::b_operator(p, coeff_dim).onb;
    const CMatrix proj = numlin::kron(pick::delta_projection(p), numlin::identity(coeff_dim));
    const CMatrix form = numlin::identity(bt.rows()) - bt * bt.adjoint() - proj;
    GleasonReport out;
    out.identity_residual = numlin::op_norm(form);
    // The quadratic form vanishes identically, so its extreme eigenvalues bound the slack both ways.
    const numlin::HermitianEig eig = numlin::hermitian_eig(0.5 * (form + form.adjoint()));
    out.inequality_slack = eig.values(eig.values.size() - 1);
    return out;
}

ComplementResult complementary_from_conditions(const pick::PickDecomposition& p, const subspace::RangeSpace& n,
                                               const CMatrix& lifted, const Tolerances& tol) {
    require_normalized(p, tol);
    const auto& k = p.kernel;
    const int g = n.ambient.coeff_dim, rb = p.dim_b;
    if (!(n.ambient == rkhs::function_space(k, g)))
        throw Error(ErrorKind::SpaceMismatch, "N must live in H(K) (x) G");
    const Eigen::Index m = n.c.cols();
    if (lifted.rows() != rb * m || lifted.cols() != m)
        throw Error(ErrorKind::DimMismatch, "difference-quotient operator has the wrong shape");

    const RangeCoords rc = corange(n.c, tol);
    const int q = rc.q;
    const CMatrix w = n.c * rc.vq;
    const CMatrix tb = numlin::kron(numlin::identity(rb), rc.vq.adjoint()) * lifted * rc.vq;

    ComplementResult out;
    const GleasonReport gl = gleason_check(p, w, tb, g, tol);
    out.gleason_residual = gl.identity_residual;
    out.inequality_slack = gl.inequality_slack;
    if (gl.identity_residual > tol.residual_tol)
        throw Error(ErrorKind::ConditionsViolated, "Gleason identity fails", gl.identity_residual);
    if (gl.inequality_slack < -tol.residual_tol)
        throw Error(ErrorKind::ConditionsViolated, "difference-quotient inequality fails", gl.inequality_slack);

    const CMatrix pi_tilde = numlin::kron(pick::delta_onb(p).adjoint(), numlin::identity(g));
    const CMatrix cq = pi_tilde * w;
    CMatrix column(rb * q + g, q);
    column << tb, cq;
    out.column_norm = numlin::op_norm(column);
    const numlin::Completion comp = numlin::complete_to_coisometry(column, tol);
    out.dim_g_prime = comp.added_cols;
    const CMatrix extra = comp.completion.rightCols(comp.added_cols);

    Realization& r = out.realization;
    r.pick = p;
    r.dim_x = q;
    r.a = tb;
    r.b = extra.topRows(rb * q);
    r.c = cq;
    r.d = extra.bottomRows(g);
    out.g = transfer_eval(r, tol);

    out.gamma_residual = numlin::op_norm(gamma_from(p, r.a, r.c, tol).op.onb - w);
    const CMatrix bt = pick::b_operator(p, g).onb;
    out.isometric_residual = numlin::op_norm(numlin::kron(numlin::identity(rb), w) * tb - bt.adjoint() * w);
    out.same = subspace::same_range(n, subspace::complementary(mult::range_space(k, out.g, tol), tol), tol);
    return out;
}

ComplementResult complementary_general(const pick::PickDecomposition& p, const subspace::RangeSpace& n,
                                       const CMatrix& lifted, const Tolerances& tol) {
    const pick::NormalizedKernel nk = pick::normalize(p, tol);
    const pick::PickDecomposition pn = pick::normalized_decomposition(p, tol);
    const int g = n.ambient.coeff_dim;
    const CMatrix omega = pick::omega_operator(p, nk, g).onb;
    const auto moved = subspace::make_range_space(rkhs::function_space(nk.kprime, g), omega * n.c, tol);
    ComplementResult out = complementary_from_conditions(pn, moved, lifted, tol);
    out.same = subspace::same_range(n, subspace::complementary(mult::range_space(p.kernel, out.g, tol), tol), tol);
    return out;
}

Realization random_realization(const pick::PickDecomposition& p, int dim_x, int dim_out, int dim_in,
                               std::mt19937_64& rng) {
    const int rb = p.dim_b;
    const int rows = rb * dim_x + dim_out;
    const int g_in = std::max(dim_in, rows - dim_x);
    const CMatrix u = random::random_isometry(dim_x + g_in, rows, rng).adjoint();
    Realization r;
    r.pick = p;
    r.dim_x = dim_x;
    r.a = u.topLeftCorner(rb * dim_x, dim_x);
    r.b = u.topRightCorner(rb * dim_x, g_in);
    r.c = u.bottomLeftCorner(dim_out, dim_x);
    r.d = u.bottomRightCorner(dim_out, g_in);
    return r;
}

} // namespace pickspace::realize
