#include "pickspace/rkhs.hpp"

#include <cmath>
#include <numeric>

namespace pickspace::rkhs {

namespace {

cdouble dot(const CVector& x, const CVector& y) {
    // <x, y>, linear in x
    cdouble s = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) s += x(k) * std::conj(y(k));
    return s;
}

void check_ball(const std::vector<Point>& points, bool scalar_only) {
    if (points.empty()) throw Error(ErrorKind::InvalidInput, "empty point set");
    const Eigen::Index dim = points.front().coords.size();
    if (dim < 1) throw Error(ErrorKind::InvalidInput, "points need coordinates for this family");
    for (const auto& p : points) {
        if (p.coords.size() != dim)
            throw Error(ErrorKind::InvalidInput, "points have inconsistent dimensions");
        if (scalar_only && dim != 1)
            throw Error(ErrorKind::DomainViolation, "family requires scalar points");
        if (!(p.coords.norm() < 1.0))
            throw Error(ErrorKind::DomainViolation, "point outside the open unit ball", p.coords.norm());
    }
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if ((points[i].coords - points[j].coords).norm() == 0.0)
                throw Error(ErrorKind::DomainViolation, "repeated point");
}

void finish(KernelData& k, const Tolerances& tol) {
    if (!numlin::all_finite(k.gram)) throw Error(ErrorKind::NotFinite, "kernel has non-finite entries");
    const numlin::HermitianEig eig = numlin::hermitian_eig(k.gram, tol);
    const Eigen::Index n = eig.values.size();
    const double top = eig.values(0);
    if (!(eig.values(n - 1) > tol.psd_tol * std::abs(top)))
        throw Error(ErrorKind::SingularKernel, "Gram matrix is not strictly positive definite",
                    eig.values(n - 1));
    k.gram = 0.5 * (k.gram + k.gram.adjoint());
    const RVector root = eig.values.cwiseSqrt();
    k.onb_factor = eig.vectors * root.cast<cdouble>().asDiagonal();
    k.onb_factor_inv = root.cwiseInverse().cast<cdouble>().asDiagonal() * eig.vectors.adjoint();
}

} // namespace

KernelFamily family_from_string(const std::string& name) {
    if (name == "explicit") return KernelFamily::Explicit;
    if (name == "szego") return KernelFamily::Szego;
    if (name == "drury_arveson") return KernelFamily::DruryArveson;
    if (name == "power_series") return KernelFamily::PowerSeries;
    if (name == "example52") return KernelFamily::Example52;
    throw Error(ErrorKind::InvalidInput, "unknown kernel family '" + name + "'");
}

std::string to_string(KernelFamily family) {
    switch (family) {
    case KernelFamily::Explicit: return "explicit";
    case KernelFamily::Szego: return "szego";
    case KernelFamily::DruryArveson: return "drury_arveson";
    case KernelFamily::PowerSeries: return "power_series";
    case KernelFamily::Example52: return "example52";
    }
    return "explicit";
}

std::vector<Point> scalar_points(std::span<const cdouble> values) {
    std::vector<Point> out;
    out.reserve(values.size());
    for (const cdouble& v : values) {
        Point p;
        p.coords = CVector::Constant(1, v);
        out.push_back(std::move(p));
    }
    return out;
}

KernelData make_kernel(KernelFamily family, std::vector<Point> points, std::vector<double> coeffs,
                       const Tolerances& tol) {
    if (family == KernelFamily::Explicit)
        throw Error(ErrorKind::InvalidInput, "explicit kernels are built from a Gram matrix");
    check_ball(points, family == KernelFamily::Szego || family == KernelFamily::Example52);
    if (family == KernelFamily::PowerSeries) {
        if (coeffs.empty() || !(coeffs.front() > 0.0))
            throw Error(ErrorKind::InvalidInput, "power series needs a_0 > 0");
        for (double a : coeffs)
            if (!(a > 0.0)) throw Error(ErrorKind::InvalidInput, "power series coefficients must be positive");
    }

    KernelData k;
    k.family = family;
    k.points = std::move(points);
    k.coeffs = std::move(coeffs);
    const auto n = static_cast<Eigen::Index>(k.points.size());
    k.gram.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const cdouble z = dot(k.points[i].coords, k.points[j].coords);
            cdouble v;
            switch (family) {
            case KernelFamily::Szego:
            case KernelFamily::DruryArveson:
                v = 1.0 / (1.0 - z);
                break;
            case KernelFamily::PowerSeries: {
                v = 0.0;
                for (auto it = k.coeffs.rbegin(); it != k.coeffs.rend(); ++it) v = v * z + *it;
                break;
            }
            case KernelFamily::Example52:
                v = 1.0 / (1.0 - 0.5 * (z + z * z));
                break;
            case KernelFamily::Explicit:
                break;
            }
            if (v == 0.0) throw Error(ErrorKind::ZeroKernelEntry, "kernel vanishes on a pair of points");
            k.gram(i, j) = v;
        }
    }
    finish(k, tol);
    return k;
}

KernelData make_explicit_kernel(const CMatrix& gram, std::vector<std::string> labels,
                                const Tolerances& tol) {
    if (gram.rows() != gram.cols() || gram.rows() == 0)
        throw Error(ErrorKind::InvalidInput, "Gram matrix must be square and nonempty");
    KernelData k;
    k.family = KernelFamily::Explicit;
    k.gram = gram;
    k.points.resize(gram.rows());
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        k.points[i].label = static_cast<size_t>(i) < labels.size() ? labels[i] : std::to_string(i);
    finish(k, tol);
    return k;
}

int SpaceDescriptor::aux_total() const {
    return std::accumulate(aux_dims.begin(), aux_dims.end(), 1, std::multiplies<int>());
}

int SpaceDescriptor::total() const {
    return inner_dim() * (n_points > 0 ? n_points : 1);
}

SpaceDescriptor function_space(const KernelData& k, int coeff_dim, std::vector<int> aux) {
    return SpaceDescriptor{std::move(aux), coeff_dim, k.size()};
}

SpaceDescriptor plain_space(int dim) { return SpaceDescriptor{{}, dim, 0}; }

CMatrix value_to_onb_matrix(const SpaceDescriptor& space, const KernelData& k) {
    const int total = space.total();
    if (!space.is_function_space()) return numlin::identity(total);
    if (space.n_points != k.size()) throw Error(ErrorKind::SpaceMismatch, "space built over another kernel");
    const int n = space.n_points, na = space.aux_total(), c = space.coeff_dim;
    CMatrix q = CMatrix::Zero(total, total);
    for (int a = 0; a < na; ++a)
        for (int ip = 0; ip < n; ++ip)
            for (int s = 0; s < c; ++s)
                for (int i = 0; i < n; ++i)
                    q((a * n + ip) * c + s, (i * na + a) * c + s) = k.onb_factor_inv(ip, i);
    return q;
}

CMatrix onb_to_value_matrix(const SpaceDescriptor& space, const KernelData& k) {
    const int total = space.total();
    if (!space.is_function_space()) return numlin::identity(total);
    if (space.n_points != k.size()) throw Error(ErrorKind::SpaceMismatch, "space built over another kernel");
    const int n = space.n_points, na = space.aux_total(), c = space.coeff_dim;
    CMatrix q = CMatrix::Zero(total, total);
    for (int a = 0; a < na; ++a)
        for (int ip = 0; ip < n; ++ip)
            for (int s = 0; s < c; ++s)
                for (int i = 0; i < n; ++i)
                    q((i * na + a) * c + s, (a * n + ip) * c + s) = k.onb_factor(i, ip);
    return q;
}

CVector to_onb(const VecElement& v, const KernelData& k) {
    if (v.values.size() != v.space.total())
        throw Error(ErrorKind::SpaceMismatch, "element length does not match its space");
    return value_to_onb_matrix(v.space, k) * v.values;
}

VecElement from_onb(const CVector& u, const SpaceDescriptor& space, const KernelData& k) {
    if (u.size() != space.total())
        throw Error(ErrorKind::SpaceMismatch, "coordinate length does not match the space");
    return VecElement{space, onb_to_value_matrix(space, k) * u};
}

cdouble inner_product(const VecElement& f, const VecElement& g, const KernelData& k) {
    if (!(f.space == g.space)) throw Error(ErrorKind::SpaceMismatch, "elements live in different spaces");
    if (f.values.size() != f.space.total() || g.values.size() != g.space.total())
        throw Error(ErrorKind::SpaceMismatch, "element length does not match its space");
    if (!f.space.is_function_space()) return g.values.dot(f.values);
    if (f.space.n_points != k.size()) throw Error(ErrorKind::SpaceMismatch, "space built over another kernel");

    const int n = f.space.n_points, d = f.space.inner_dim();
    // Column i of fm holds f(lambda_i).
    Eigen::Map<const CMatrix> fm(f.values.data(), d, n);
    Eigen::Map<const CMatrix> gm(g.values.data(), d, n);
    const CMatrix y = k.gram.ldlt().solve(fm.transpose());  // K^{-1} f^T, n x d
    return (gm.transpose().conjugate().cwiseProduct(y)).sum();
}

OperatorData pointwise_operator(const KernelData& k, const SpaceDescriptor& domain,
                                const SpaceDescriptor& codomain, std::span<const CMatrix> per_point) {
    const int n = k.size();
    if (domain.n_points != n || codomain.n_points != n || static_cast<int>(per_point.size()) != n)
        throw Error(ErrorKind::SpaceMismatch, "pointwise operator needs one matrix per point");
    const int din = domain.inner_dim(), dout = codomain.inner_dim();
    CMatrix block = CMatrix::Zero(codomain.total(), domain.total());
    for (int i = 0; i < n; ++i) {
        if (per_point[i].rows() != dout || per_point[i].cols() != din)
            throw Error(ErrorKind::DimMismatch, "pointwise matrix has the wrong shape");
        block.block(i * dout, i * din, dout, din) = per_point[i];
    }
    return OperatorData{domain, codomain,
                        value_to_onb_matrix(codomain, k) * block * onb_to_value_matrix(domain, k)};
}

VecElement kernel_section(const KernelData& k, int j, int coeff_dim, int s) {
    const int n = k.size();
    VecElement v{function_space(k, coeff_dim), CVector::Zero(n * coeff_dim)};
    for (int i = 0; i < n; ++i) v.values(i * coeff_dim + s) = k.gram(i, j);
    return v;
}

CVector kernel_section_onb(const KernelData& k, int j, int coeff_dim, int s) {
    const int n = k.size();
    CVector u = CVector::Zero(n * coeff_dim);
    for (int ip = 0; ip < n; ++ip) u(ip * coeff_dim + s) = std::conj(k.onb_factor(j, ip));
    return u;
}

} // namespace pickspace::rkhs
