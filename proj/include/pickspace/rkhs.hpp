#pragma once

#include <span>
#include <string>
#include <vector>

#include "pickspace/numlin.hpp"

namespace pickspace::rkhs {

enum class KernelFamily { Explicit, Szego, DruryArveson, PowerSeries, Example52 };

KernelFamily family_from_string(const std::string& name);
std::string to_string(KernelFamily family);

/// A point of the sample set. Explicit kernels may leave `coords` empty and
/// carry only a label.
struct Point {
    CVector coords;
    std::string label;
};

/// Finite sample {lambda_i} with its Gram matrix gram(i, j) = K(lambda_i, lambda_j).
///
/// The Gram matrix is strictly positive definite. A fixed factorization
/// gram = R R^* (R = V diag(sqrt w) from the descending eigendecomposition)
/// defines the orthonormal coordinates used for every operator.
struct KernelData {
    KernelFamily family = KernelFamily::Explicit;
    std::vector<Point> points;
    std::vector<double> coeffs;  // power series only
    CMatrix gram;
    CMatrix onb_factor;      // R
    CMatrix onb_factor_inv;  // R^{-1}

    int size() const { return static_cast<int>(gram.rows()); }
};

/// Builds a kernel from one of the closed-form families. Throws
/// DomainViolation for points outside the unit ball or repeated points,
/// ZeroKernelEntry if an entry vanishes, SingularKernel if the Gram matrix is
/// not strictly positive definite.
KernelData make_kernel(KernelFamily family, std::vector<Point> points,
                       std::vector<double> coeffs = {}, const Tolerances& tol = {});

/// Explicit Gram matrix. Zero entries are accepted here; the Pick routines
/// reject them.
KernelData make_explicit_kernel(const CMatrix& gram, std::vector<std::string> labels = {},
                                const Tolerances& tol = {});

/// Convenience: scalar points in the disc.
std::vector<Point> scalar_points(std::span<const cdouble> values);

/// Layout of aux_1 (x) ... (x) aux_k (x) H(K) (x) coeff.
/// n_points == 0 denotes a plain Hilbert space with no function factor.
struct SpaceDescriptor {
    std::vector<int> aux_dims;
    int coeff_dim = 1;
    int n_points = 0;

    int aux_total() const;
    int inner_dim() const { return aux_total() * coeff_dim; }
    int total() const;
    bool is_function_space() const { return n_points > 0; }
    bool operator==(const SpaceDescriptor&) const = default;
};

SpaceDescriptor function_space(const KernelData& k, int coeff_dim = 1, std::vector<int> aux = {});
SpaceDescriptor plain_space(int dim);

/// An element in value coordinates: point-major blocks, each block holding the
/// value at lambda_i with aux indices first and the coefficient index last.
struct VecElement {
    SpaceDescriptor space;
    CVector values;
};

/// An operator stored in orthonormal coordinates of both spaces. Orthonormal
/// coordinates order the tensor factors as written: aux, then the H(K)
/// orthonormal index, then coefficients. The adjoint is the conjugate transpose.
struct OperatorData {
    SpaceDescriptor domain;
    SpaceDescriptor codomain;
    CMatrix onb;

    OperatorData adjoint() const { return {codomain, domain, onb.adjoint()}; }
};

/// <f, g> = sum_{i,j} (K^{-1})_{ij} <f(lambda_j), g(lambda_i)>.
cdouble inner_product(const VecElement& f, const VecElement& g, const KernelData& k);

CVector to_onb(const VecElement& v, const KernelData& k);
VecElement from_onb(const CVector& u, const SpaceDescriptor& space, const KernelData& k);

/// Matrix of the value -> orthonormal coordinate change for a whole space.
CMatrix value_to_onb_matrix(const SpaceDescriptor& space, const KernelData& k);
CMatrix onb_to_value_matrix(const SpaceDescriptor& space, const KernelData& k);

/// Operator acting pointwise in value coordinates: (T f)(lambda_i) = M_i f(lambda_i),
/// with M_i of size codomain.inner_dim() x domain.inner_dim().
OperatorData pointwise_operator(const KernelData& k, const SpaceDescriptor& domain,
                                const SpaceDescriptor& codomain,
                                std::span<const CMatrix> per_point);

/// Value vector of k_{lambda_j} (x) e_s in H(K) (x) C^coeff.
VecElement kernel_section(const KernelData& k, int j, int coeff_dim = 1, int s = 0);

/// Orthonormal coordinates of k_{lambda_j} (x) e_s; equals (R^* e_j) (x) e_s.
CVector kernel_section_onb(const KernelData& k, int j, int coeff_dim = 1, int s = 0);

} // namespace pickspace::rkhs
