#include "pickspace/io.hpp"

#include <fstream>
#include <sstream>

namespace pickspace::io {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

CMatrix closed_span_basis(const CMatrix& columns_onb, const Tolerances& tol) {
    if (columns_onb.cols() == 0) return CMatrix(columns_onb.rows(), 0);
    return numlin::range_basis(columns_onb, tol);
}

} // namespace

json parse_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        std::size_t line = 1, column = 1;
        const std::size_t stop = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream msg;
        msg << source << ":" << line << ":" << column << ": malformed JSON (" << e.what() << ")";
        bad(msg.str());
    }
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

cdouble complex_from(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    bad("expected a complex number [re, im], got " + j.dump());
}

json to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

CMatrix matrix_from(const json& j) {
    if (!j.is_array()) bad("expected a matrix (array of rows)");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return CMatrix(0, 0);
    if (!j[0].is_array()) bad("matrix rows must be arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) bad("ragged matrix");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from(j[i][k]);
    }
    return m;
}

CVector vector_from(const json& j) {
    if (!j.is_array()) bad("expected a vector");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_from(j[i]);
    return v;
}

json to_json(const CMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        out.push_back(row);
    }
    return out;
}

json to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

json to_json(const Tolerances& tol) {
    return json{{"psd", tol.psd_tol}, {"rank", tol.rank_tol}, {"residual", tol.residual_tol}};
}

KernelSpec kernel_from(const json& j, const Tolerances& tol) {
    if (!j.is_object()) bad("kernel spec must be an object");
    const auto family = rkhs::family_from_string(field(j, "family").get<std::string>());
    KernelSpec out;
    if (j.contains("base_point")) out.base_point = int_field(j, "base_point");
    if (family == rkhs::KernelFamily::Explicit) {
        std::vector<std::string> labels;
        if (j.contains("labels"))
            for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
        out.kernel = rkhs::make_explicit_kernel(matrix_from(field(j, "matrix")), labels, tol);
    } else {
        std::vector<rkhs::Point> points;
        for (const auto& p : field(j, "points")) {
            rkhs::Point pt;
            // Drury-Arveson points are coordinate vectors; the other families take a
            // scalar unless the entries are themselves [re, im] pairs.
            if (family == rkhs::KernelFamily::DruryArveson && p.is_array())
                pt.coords = vector_from(p);
            else if (p.is_array() && !p.empty() && p[0].is_array())
                pt.coords = vector_from(p);
            else
                pt.coords = CVector::Constant(1, complex_from(p));
            pt.label = std::to_string(points.size());
            points.push_back(std::move(pt));
        }
        std::vector<double> coeffs;
        if (j.contains("coeffs"))
            for (const auto& c : j.at("coeffs")) coeffs.push_back(c.get<double>());
        out.kernel = rkhs::make_kernel(family, std::move(points), std::move(coeffs), tol);
    }
    if (out.base_point < 0 || out.base_point >= out.kernel.size()) bad("base_point out of range");
    if (j.contains("beta")) out.beta = matrix_from(j.at("beta"));
    return out;
}

pick::PickDecomposition decomposition_from(const KernelSpec& spec, const Tolerances& tol) {
    const pick::PickDecomposition p = pick::decompose(spec.kernel, spec.base_point, tol);
    return spec.beta ? pick::with_beta(p, *spec.beta, tol) : p;
}

mult::MultiplierData multiplier_from(const json& j, int n_points) {
    mult::MultiplierData g;
    g.dim_out = int_field(j, "dim_out");
    g.dim_in = int_field(j, "dim_in");
    for (const auto& v : field(j, "values")) {
        // Scalar multipliers may list plain complex numbers.
        const bool scalar = v.is_number() || (v.is_array() && !v.empty() && v[0].is_number());
        if (g.dim_out == 1 && g.dim_in == 1 && scalar) {
            g.values.push_back(CMatrix::Constant(1, 1, complex_from(v)));
            continue;
        }
        CMatrix m = matrix_from(v);
        if (m.size() == 0) m.resize(g.dim_out, g.dim_in);
        g.values.push_back(m);
    }
    g.validate(n_points);
    return g;
}

json to_json(const mult::MultiplierData& g) {
    json values = json::array();
    for (const auto& v : g.values) values.push_back(to_json(v));
    return json{{"dim_out", g.dim_out}, {"dim_in", g.dim_in}, {"values", values}};
}

realize::Realization realization_from(const json& j, const pick::PickDecomposition& p) {
    realize::Realization r;
    r.pick = p;
    r.dim_x = int_field(j, "dim_x");
    r.a = matrix_from(field(j, "a"));
    r.b = matrix_from(field(j, "b"));
    r.c = matrix_from(field(j, "c"));
    r.d = matrix_from(field(j, "d"));
    r.validate();
    return r;
}

json to_json(const realize::Realization& r) {
    return json{{"dim_x", r.dim_x}, {"a", to_json(r.a)}, {"b", to_json(r.b)}, {"c", to_json(r.c)},
                {"d", to_json(r.d)}};
}

beurling::InvariantSubspaceInput subspace_from(const json& j, const pick::PickDecomposition& p,
                                               const Tolerances& tol) {
    if (!j.is_object()) bad("subspace spec must be an object");
    const auto& k = p.kernel;
    if (j.contains("multiplier")) return beurling::from_multiplier(p, multiplier_from(j.at("multiplier"), k.size()));
    const int g = j.contains("coeff_dim") ? int_field(j, "coeff_dim") : 1;
    if (g < 1) bad("coeff_dim must be positive");
    const rkhs::SpaceDescriptor space = rkhs::function_space(k, g);
    if (j.contains("c")) {
        const CMatrix c = matrix_from(j.at("c"));
        return {p, g, c.size() == 0 ? CMatrix(space.total(), 0) : c};
    }
    if (j.contains("generators")) {
        const json& gens = j.at("generators");
        CMatrix cols(space.total(), static_cast<Eigen::Index>(gens.size()));
        for (std::size_t s = 0; s < gens.size(); ++s) {
            const CVector v = vector_from(gens[s]);
            if (v.size() != space.total()) bad("generator has the wrong length");
            cols.col(static_cast<Eigen::Index>(s)) = rkhs::to_onb(rkhs::VecElement{space, v}, k);
        }
        return {p, g, closed_span_basis(cols, tol)};
    }
    if (j.contains("kernel_points")) {
        std::vector<CVector> sections;
        for (const auto& idx : j.at("kernel_points")) {
            const int i = idx.get<int>();
            if (i < 0 || i >= k.size()) bad("kernel point index out of range");
            for (int s = 0; s < g; ++s) sections.push_back(rkhs::kernel_section_onb(k, i, g, s));
        }
        CMatrix cols(space.total(), static_cast<Eigen::Index>(sections.size()));
        for (std::size_t s = 0; s < sections.size(); ++s) cols.col(static_cast<Eigen::Index>(s)) = sections[s];
        return {p, g, closed_span_basis(cols, tol)};
    }
    bad("subspace spec needs one of 'c', 'multiplier', 'generators', 'kernel_points'");
}

json to_json(const pick::PickDecomposition& p) {
    return json{{"base_point", p.base_index}, {"delta", to_json(p.delta)}, {"dim_b", p.dim_b},
                {"beta", to_json(p.beta)},       {"f_min_eig", p.f_min_eig}, {"explicit_beta", p.explicit_beta}};
}

} // namespace pickspace::io
