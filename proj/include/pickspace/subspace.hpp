#pragma once

#include "pickspace/rkhs.hpp"

namespace pickspace::subspace {

using rkhs::KernelData;
using rkhs::OperatorData;
using rkhs::SpaceDescriptor;
using rkhs::VecElement;

/// The range R_C of a contraction C into an ambient space, normed by
/// ||x||_C = inf { ||y|| : C y = x }. Everything is in orthonormal
/// coordinates of the ambient space.
struct RangeSpace {
    SpaceDescriptor ambient;
    CMatrix c;          // ambient.total() x dim(source)
    CMatrix gram;       // C C^*
    CMatrix c_pinv;     // C^+, maps onto (ker C)^perp
    CMatrix preimage_projector;  // C^+ C
    int rank = 0;
};

/// Throws NotContraction if ||C|| > 1 + residual_tol.
RangeSpace make_range_space(const SpaceDescriptor& ambient, const CMatrix& c, const Tolerances& tol = {});
RangeSpace make_range_space(const OperatorData& c, const Tolerances& tol = {});

/// Minimal preimage norm. Throws NotInRange (witness = relative residual)
/// when ||C C^+ x - x|| > residual_tol ||x||.
double range_norm(const RangeSpace& rs, const CVector& x_onb, const Tolerances& tol = {});
double range_norm(const RangeSpace& rs, const VecElement& x, const KernelData& k, const Tolerances& tol = {});

struct SameRange {
    bool same = false;
    double residual = 0.0;  // ||C1 C1^* - C2 C2^*||
};

/// Equality of range spaces with norms, decided by C1 C1^* = C2 C2^*.
SameRange same_range(const RangeSpace& a, const RangeSpace& b, const Tolerances& tol = {});

struct DouglasResult {
    bool ok = false;
    CMatrix d;              // minimal-norm D with T C1 = C2 D
    double min_eig = 0.0;   // of C2 C2^* - T C1 C1^* T^*
    CVector witness;        // eigenvector of min_eig
    double factor_residual = 0.0;  // ||T C1 - C2 D||
    double d_norm = 0.0;
};

/// Tests T C1 C1^* T^* <= C2 C2^*; on success returns D = C2^+ T C1, which
/// certifies that T maps R_{C1} contractively into R_{C2}.
DouglasResult douglas_solve(const CMatrix& t, const RangeSpace& rs1, const RangeSpace& rs2,
                            const Tolerances& tol = {});

/// The complementary space: range of (I - C C^*)^{1/2}.
RangeSpace complementary(const RangeSpace& rs, const Tolerances& tol = {});

struct ComplementSplit {
    CVector x_range;        // C C^* x
    CVector x_complement;   // (I - C C^*) x
    double norm_range = 0.0;        // ||C^* x||
    double norm_complement = 0.0;   // ||(I - C C^*)^{1/2} x||
    double pythagoras_residual = 0.0;  // | ||x||^2 - norm_range^2 - norm_complement^2 |
};

ComplementSplit complement_decompose(const RangeSpace& rs, const CVector& x_onb, const Tolerances& tol = {});
ComplementSplit complement_decompose(const RangeSpace& rs, const VecElement& x, const KernelData& k,
                                     const Tolerances& tol = {});

} // namespace pickspace::subspace
