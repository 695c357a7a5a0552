#pragma once

// Oracles that recompute quantities along routes independent of the library
// (direct Gram arithmetic in the kernel-function basis, plain Eigen solvers),
// plus a seeded loop for property tests.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pickspace/fixtures.hpp"
#include "pickspace/mult.hpp"
#include "pickspace/pick.hpp"
#include "pickspace/random.hpp"
#include "pickspace/rkhs.hpp"

namespace oracle {

using pickspace::cdouble;
using pickspace::CMatrix;
using pickspace::CVector;

inline double min_eig(const CMatrix& m) {
    const CMatrix h = 0.5 * (m + m.adjoint());
    return Eigen::SelfAdjointEigenSolver<CMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

inline double max_eig(const CMatrix& m) {
    const CMatrix h = 0.5 * (m + m.adjoint());
    return Eigen::SelfAdjointEigenSolver<CMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

inline double norm2(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline CMatrix eye(Eigen::Index n) { return CMatrix::Identity(n, n); }

/// 1 / (1 - <eta, xi>) evaluated at (mu, lambda) for vector points.
inline CMatrix ball_gram(const std::vector<CVector>& pts) {
    const auto n = static_cast<Eigen::Index>(pts.size());
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = 1.0 / (1.0 - pts[j].dot(pts[i]));
    return g;
}

/// F(i, j) = 1 - delta_i conj(delta_j) / K_ij at the given base point.
inline CMatrix one_minus_ratio(const CMatrix& k, int base) {
    const Eigen::Index n = k.rows();
    CMatrix f(n, n);
    const double k00 = k(base, base).real();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            f(i, j) = 1.0 - k(i, base) * std::conj(k(j, base)) / (k00 * k(i, j));
    return f;
}

/// Sesquilinear form (i, j) -> <T (k_j (x) e_t), k_i (x) e_s> of an operator
/// given in orthonormal coordinates of H(K) (x) C^c, no auxiliary factors.
/// k_j (x) e_t has orthonormal coordinates (R^* e_j) (x) e_t.
inline CMatrix kernel_form(const CMatrix& t_onb, const pickspace::rkhs::KernelData& k, int coeff_dim) {
    const CMatrix r = kron(k.onb_factor, eye(coeff_dim));
    return r * t_onb * r.adjoint();
}

/// The block kernel with (i, j) block (I - G_i G_j^*) K_ij, built directly.
inline CMatrix complement_kernel(const CMatrix& k, const std::vector<CMatrix>& g) {
    const Eigen::Index n = k.rows(), d = g.front().rows();
    CMatrix out(n * d, n * d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out.block(i * d, j * d, d, d) = (eye(d) - g[i] * g[j].adjoint()) * k(i, j);
    return out;
}

/// Block kernel (i, j) -> G_i G_j^* K_ij, the form of m_G m_G^*.
inline CMatrix range_kernel(const CMatrix& k, const std::vector<CMatrix>& g) {
    const Eigen::Index n = k.rows(), d = g.front().rows();
    CMatrix out(n * d, n * d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out.block(i * d, j * d, d, d) = g[i] * g[j].adjoint() * k(i, j);
    return out;
}

} // namespace oracle

namespace prop {

/// Runs `body` on `cases` independent generators derived from `seed`.
/// The body receives the case index for CAPTURE.
inline void forall(std::uint64_t seed, int cases, const std::function<void(int, std::mt19937_64&)>& body) {
    for (int c = 0; c < cases; ++c) {
        auto rng = pickspace::random::case_rng(seed, static_cast<std::uint64_t>(c));
        body(c, rng);
    }
}

inline pickspace::rkhs::KernelFamily family_of(int c) {
    const auto& fams = pickspace::fixtures::families();
    return fams[static_cast<std::size_t>(c) % fams.size()];
}

} // namespace prop
