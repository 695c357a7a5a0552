#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pickspace/beurling.hpp"
#include "pickspace/mult.hpp"
#include "pickspace/pick.hpp"
#include "pickspace/realize.hpp"
#include "pickspace/rkhs.hpp"

namespace pickspace::io {

using nlohmann::json;

/// Reads a JSON document. Syntax errors become InvalidInput with the line and
/// column of the offending byte.
json parse_text(const std::string& text, const std::string& source = "<input>");
json load_file(const std::string& path);

/// Complex numbers are [re, im]; a bare number is read as real.
cdouble complex_from(const json& j);
json to_json(cdouble z);
CMatrix matrix_from(const json& j);
CVector vector_from(const json& j);
json to_json(const CMatrix& m);
json to_json(const CVector& v);
json to_json(const Tolerances& tol);

struct KernelSpec {
    rkhs::KernelData kernel;
    int base_point = 0;
    std::optional<CMatrix> beta;  // explicit, possibly non-minimal beta (dim_b x n)
};

/// {"family", "points", "coeffs", "matrix", "base_point", "beta"}.
KernelSpec kernel_from(const json& j, const Tolerances& tol = {});

/// Pick decomposition at the spec's base point, with the explicit beta if one is given.
pick::PickDecomposition decomposition_from(const KernelSpec& spec, const Tolerances& tol = {});

/// {"dim_out", "dim_in", "values"}.
mult::MultiplierData multiplier_from(const json& j, int n_points);
json to_json(const mult::MultiplierData& g);

/// {"dim_x", "a", "b", "c", "d"}.
realize::Realization realization_from(const json& j, const pick::PickDecomposition& p);
json to_json(const realize::Realization& r);

/// A subspace of H(K) (x) G given by one of
///   {"coeff_dim", "c": matrix}                 a contraction in orthonormal coordinates,
///   {"multiplier": {...}}                      the range of m_F with its range norm,
///   {"coeff_dim", "generators": [vectors]}     the closed span of value-coordinate vectors,
///   {"coeff_dim", "kernel_points": [indices]}  the closed span of k_lambda (x) G.
/// Closed spans are presented isometrically.
beurling::InvariantSubspaceInput subspace_from(const json& j, const pick::PickDecomposition& p,
                                               const Tolerances& tol = {});

json to_json(const pick::PickDecomposition& p);

} // namespace pickspace::io
