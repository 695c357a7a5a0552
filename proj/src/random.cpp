#include "pickspace/random.hpp"

#include <cmath>

namespace pickspace::random {

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    CMatrix m(rows, cols);
    // Fill in a fixed order so the stream consumption never depends on Eigen internals.
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = cdouble(re, im) / std::sqrt(2.0);
        }
    return m;
}

CVector gaussian_vector(Eigen::Index size, std::mt19937_64& rng) { return gaussian_matrix(size, 1, rng).col(0); }

CMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    if (rows < cols) throw Error(ErrorKind::DimMismatch, "an isometry needs rows >= cols");
    const CMatrix g = gaussian_matrix(rows, cols, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
    // Fix the phases against R's diagonal so the result is a deterministic function of g.
    const CMatrix r = qr.matrixQR();
    for (Eigen::Index j = 0; j < cols; ++j) {
        const cdouble d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

CMatrix random_contraction(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double norm) {
    CMatrix g = gaussian_matrix(rows, cols, rng);
    const double s = numlin::op_norm(g);
    if (s > 0.0) g *= norm / s;
    return g;
}

CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
    const CMatrix g = gaussian_matrix(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

std::vector<rkhs::Point> ball_points(int n, int dim, std::mt19937_64& rng, double radius, double min_sep) {
    std::vector<rkhs::Point> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < n) {
        if (++attempts > 100000) throw Error(ErrorKind::SearchFailed, "could not place separated points");
        CVector z = gaussian_vector(dim, rng);
        const double r = radius * std::pow(uniform(rng), 1.0 / (2.0 * dim));
        z *= r / z.norm();
        bool far = true;
        for (const auto& p : out)
            if ((p.coords - z).norm() < min_sep) far = false;
        if (far) out.push_back(rkhs::Point{z, std::to_string(out.size())});
    }
    return out;
}

std::vector<double> geometric_coeffs() { return std::vector<double>(64, 1.0); }

rkhs::KernelData random_kernel(rkhs::KernelFamily family, int n, std::mt19937_64& rng, const Tolerances& tol) {
    using rkhs::KernelFamily;
    switch (family) {
    case KernelFamily::Szego:
    case KernelFamily::Example52:
        return rkhs::make_kernel(family, ball_points(n, 1, rng), {}, tol);
    case KernelFamily::DruryArveson:
        return rkhs::make_kernel(family, ball_points(n, 2, rng), {}, tol);
    case KernelFamily::PowerSeries:
        return rkhs::make_kernel(family, ball_points(n, 1, rng, 0.6, 0.2), geometric_coeffs(), tol);
    case KernelFamily::Explicit:
        break;
    }
    throw Error(ErrorKind::InvalidInput, "random kernels need a closed-form family");
}

} // namespace pickspace::random
