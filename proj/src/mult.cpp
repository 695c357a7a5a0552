#include "pickspace/mult.hpp"

#include "pickspace/random.hpp"

namespace pickspace::mult {

void MultiplierData::validate(int n_points) const {
    if (dim_out < 0 || dim_in < 0) throw Error(ErrorKind::DimMismatch, "negative multiplier dimension");
    if (static_cast<int>(values.size()) != n_points)
        throw Error(ErrorKind::DimMismatch, "multiplier needs one matrix per point");
    for (const auto& v : values) {
        if (v.rows() != dim_out || v.cols() != dim_in)
            throw Error(ErrorKind::DimMismatch, "multiplier value has the wrong shape");
        if (!numlin::all_finite(v)) throw Error(ErrorKind::NotFinite, "multiplier value is not finite");
    }
}

MultiplierData constant_multiplier(int n_points, const CMatrix& value) {
    MultiplierData g;
    g.dim_out = static_cast<int>(value.rows());
    g.dim_in = static_cast<int>(value.cols());
    g.values.assign(n_points, value);
    return g;
}

OperatorData multiplier_operator(const KernelData& k, const MultiplierData& g) {
    g.validate(k.size());
    return rkhs::pointwise_operator(k, rkhs::function_space(k, g.dim_in), rkhs::function_space(k, g.dim_out),
                                    g.values);
}

CMatrix contractivity_kernel(const KernelData& k, const MultiplierData& g) {
    g.validate(k.size());
    const int n = k.size(), d = g.dim_out;
    CMatrix out(n * d, n * d);
    const CMatrix id = numlin::identity(d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.block(i * d, j * d, d, d) = (id - g.values[i] * g.values[j].adjoint()) * k.gram(i, j);
    return out;
}

ContractivityVerdict is_contractive_multiplier(const KernelData& k, const MultiplierData& g,
                                               const Tolerances& tol) {
    ContractivityVerdict out;
    const numlin::PsdVerdict v = numlin::is_psd(contractivity_kernel(k, g), tol);
    out.ok = v.ok;
    out.min_eig = v.min_eig;
    out.op_norm = numlin::op_norm(multiplier_operator(k, g).onb);
    out.norm_ok = out.op_norm <= 1.0 + tol.residual_tol;
    return out;
}

OperatorData ampliate(const KernelData& k, const MultiplierData& g, const std::vector<int>& left_aux,
                      const std::vector<int>& right_aux) {
    g.validate(k.size());
    int left = 1, right = 1;
    for (int d : left_aux) left *= d;
    for (int d : right_aux) right *= d;
    std::vector<CMatrix> inner;
    inner.reserve(g.values.size());
    for (const auto& v : g.values)
        inner.push_back(numlin::kron(numlin::identity(left), numlin::kron(v, numlin::identity(right))));
    return rkhs::pointwise_operator(k, rkhs::function_space(k, g.dim_in * right, left_aux),
                                    rkhs::function_space(k, g.dim_out * right, left_aux), inner);
}

MultiplierData compose(const MultiplierData& g1, const MultiplierData& g2) {
    if (g1.dim_in != g2.dim_out || g1.values.size() != g2.values.size())
        throw Error(ErrorKind::DimMismatch, "multipliers do not compose");
    MultiplierData out;
    out.dim_out = g1.dim_out;
    out.dim_in = g2.dim_in;
    for (size_t i = 0; i < g1.values.size(); ++i) out.values.push_back(g1.values[i] * g2.values[i]);
    return out;
}

subspace::RangeSpace range_space(const KernelData& k, const MultiplierData& g, const Tolerances& tol) {
    return subspace::make_range_space(multiplier_operator(k, g), tol);
}

MultiplierData random_raw_multiplier(int n_points, int dim_out, int dim_in, std::mt19937_64& rng, double scale) {
    MultiplierData g;
    g.dim_out = dim_out;
    g.dim_in = dim_in;
    for (int i = 0; i < n_points; ++i) g.values.push_back(scale * random::gaussian_matrix(dim_out, dim_in, rng));
    return g;
}

MultiplierData random_multiplier(const KernelData& k, int dim_out, int dim_in, std::mt19937_64& rng,
                                 double target_norm) {
    MultiplierData g = random_raw_multiplier(k.size(), dim_out, dim_in, rng);
    const double norm = numlin::op_norm(multiplier_operator(k, g).onb);
    if (norm > 0.0)
        for (auto& v : g.values) v *= target_norm / norm;
    return g;
}

} // namespace pickspace::mult
