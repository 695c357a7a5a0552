#include "pickspace/fixtures.hpp"

#include <algorithm>

#include "pickspace/random.hpp"

namespace pickspace::fixtures {

const std::vector<rkhs::KernelFamily>& families() {
    static const std::vector<rkhs::KernelFamily> all{rkhs::KernelFamily::Szego, rkhs::KernelFamily::DruryArveson,
                                                     rkhs::KernelFamily::PowerSeries, rkhs::KernelFamily::Example52};
    return all;
}

pick::PickDecomposition random_pick(rkhs::KernelFamily family, std::mt19937_64& rng, bool normalized, int n,
                                    const Tolerances& tol) {
    if (n <= 0) n = random::uniform_int(rng, 3, 6);
    const pick::PickDecomposition p = pick::decompose(random::random_kernel(family, n, rng, tol), 0, tol);
    if (!normalized) return p;
    return pick::normalized_decomposition(p, tol);
}

CMatrix kernel_span_basis(const pick::PickDecomposition& p, const std::vector<int>& indices, int coeff_dim,
                          const Tolerances& tol) {
    const int total = p.size() * coeff_dim;
    if (indices.empty()) return CMatrix(total, 0);
    CMatrix cols(total, static_cast<Eigen::Index>(indices.size()) * coeff_dim);
    Eigen::Index c = 0;
    for (int i : indices)
        for (int s = 0; s < coeff_dim; ++s) cols.col(c++) = rkhs::kernel_section_onb(p.kernel, i, coeff_dim, s);
    return numlin::range_basis(cols, tol);
}

std::vector<int> random_subset(int n, std::mt19937_64& rng) {
    std::vector<int> out;
    while (out.empty() || static_cast<int>(out.size()) == n) {
        out.clear();
        for (int i = 0; i < n; ++i)
            if (random::uniform(rng) < 0.5) out.push_back(i);
    }
    return out;
}

beurling::InvariantSubspaceInput random_closed_invariant(const pick::PickDecomposition& p, std::mt19937_64& rng,
                                                         const Tolerances& tol) {
    const int n = p.size();
    if (random::uniform(rng) < 0.5) {
        const mult::MultiplierData f = mult::random_multiplier(p.kernel, 2, 1, rng);
        const CMatrix m = mult::multiplier_operator(p.kernel, f).onb;
        return {p, 2, numlin::range_basis(m, tol)};
    }
    // Functions vanishing on S form the orthogonal complement of span{k_lambda : lambda in S}.
    const CMatrix span = kernel_span_basis(p, random_subset(n, rng), 1, tol);
    const CMatrix proj = numlin::identity(n) - span * span.adjoint();
    return {p, 1, numlin::range_basis(proj, tol)};
}

} // namespace pickspace::fixtures
