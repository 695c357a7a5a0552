#include "pickspace/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace pickspace::subspace {
namespace {

// (I - C C^*)^{1/2}. The defect lies between 0 and I, so eigenvalues below
// rank_tol are rounding noise; left in, their square roots would reach 1e-8
// and register as rank.
CMatrix defect_root(const RangeSpace& rs, const Tolerances& tol) {
    const Eigen::Index n = rs.ambient.total();
    if (n == 0) return CMatrix::Zero(0, 0);
    const numlin::HermitianEig eig = numlin::hermitian_eig(numlin::identity(n) - rs.gram, tol);
    RVector w(eig.values.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = eig.values(i) > tol.rank_tol ? std::sqrt(eig.values(i)) : 0.0;
    return eig.vectors * w.cast<cdouble>().asDiagonal() * eig.vectors.adjoint();
}

} // namespace

RangeSpace make_range_space(const SpaceDescriptor& ambient, const CMatrix& c, const Tolerances& tol) {
    if (c.rows() != ambient.total())
        throw Error(ErrorKind::SpaceMismatch, "contraction does not map into the ambient space");
    const double norm = numlin::op_norm(c);
    if (norm > 1.0 + tol.residual_tol)
        throw Error(ErrorKind::NotContraction, "range space needs a contraction", norm);
    RangeSpace rs;
    rs.ambient = ambient;
    rs.c = c;
    rs.gram = c * c.adjoint();
    rs.c_pinv = numlin::pinv(c, tol);
    rs.preimage_projector = rs.c_pinv * c;
    rs.rank = numlin::numerical_rank(c, tol);
    return rs;
}

RangeSpace make_range_space(const OperatorData& c, const Tolerances& tol) {
    return make_range_space(c.codomain, c.onb, tol);
}

double range_norm(const RangeSpace& rs, const CVector& x, const Tolerances& tol) {
    if (x.size() != rs.ambient.total()) throw Error(ErrorKind::SpaceMismatch, "vector not in the ambient space");
    const double xn = x.norm();
    if (xn == 0.0) return 0.0;
    const CVector y = rs.c_pinv * x;
    const double residual = (rs.c * y - x).norm() / xn;
    if (residual > tol.residual_tol)
        throw Error(ErrorKind::NotInRange, "vector is not in the range", residual);
    return y.norm();
}

double range_norm(const RangeSpace& rs, const VecElement& x, const KernelData& k, const Tolerances& tol) {
    if (!(x.space == rs.ambient)) throw Error(ErrorKind::SpaceMismatch, "element not in the ambient space");
    return range_norm(rs, rkhs::to_onb(x, k), tol);
}

SameRange same_range(const RangeSpace& a, const RangeSpace& b, const Tolerances& tol) {
    if (!(a.ambient == b.ambient)) throw Error(ErrorKind::SpaceMismatch, "range spaces in different ambients");
    SameRange out;
    out.residual = numlin::op_norm(a.gram - b.gram);
    const double scale = std::max(numlin::op_norm(a.gram), numlin::op_norm(b.gram));
    out.same = out.residual <= tol.residual_tol * scale || out.residual == 0.0;
    return out;
}

DouglasResult douglas_solve(const CMatrix& t, const RangeSpace& rs1, const RangeSpace& rs2, const Tolerances& tol) {
    if (t.cols() != rs1.ambient.total() || t.rows() != rs2.ambient.total())
        throw Error(ErrorKind::SpaceMismatch, "T does not map between the two ambients");
    DouglasResult out;
    const CMatrix gap = rs2.gram - t * rs1.gram * t.adjoint();
    const numlin::PsdVerdict v = numlin::is_psd(gap, tol);
    out.min_eig = v.min_eig;
    out.witness = v.witness;
    if (!v.ok) return out;
    out.d = rs2.c_pinv * t * rs1.c;
    out.factor_residual = numlin::op_norm(t * rs1.c - rs2.c * out.d);
    out.d_norm = numlin::op_norm(out.d);
    out.ok = out.d_norm <= 1.0 + tol.residual_tol && out.factor_residual <= tol.residual_tol;
    return out;
}

RangeSpace complementary(const RangeSpace& rs, const Tolerances& tol) {
    return make_range_space(rs.ambient, defect_root(rs, tol), tol);
}

ComplementSplit complement_decompose(const RangeSpace& rs, const CVector& x, const Tolerances& tol) {
    if (x.size() != rs.ambient.total()) throw Error(ErrorKind::SpaceMismatch, "vector not in the ambient space");
    ComplementSplit out;
    out.x_range = rs.gram * x;
    out.x_complement = x - out.x_range;
    out.norm_range = (rs.c.adjoint() * x).norm();
    out.norm_complement = (defect_root(rs, tol) * x).norm();
    out.pythagoras_residual = std::abs(x.squaredNorm() - out.norm_range * out.norm_range -
                                       out.norm_complement * out.norm_complement);
    return out;
}

ComplementSplit complement_decompose(const RangeSpace& rs, const VecElement& x, const KernelData& k,
                                     const Tolerances& tol) {
    if (!(x.space == rs.ambient)) throw Error(ErrorKind::SpaceMismatch, "element not in the ambient space");
    return complement_decompose(rs, rkhs::to_onb(x, k), tol);
}

} // namespace pickspace::subspace
