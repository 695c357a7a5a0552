#include <doctest.h>

#include <numbers>

#include "support.hpp"

#include "pickspace/embed.hpp"
#include "pickspace/realize.hpp"

using namespace pickspace;
using rkhs::KernelFamily;

namespace {

pick::PickDecomposition szego(std::vector<cdouble> pts) {
    return pick::decompose(rkhs::make_kernel(KernelFamily::Szego, rkhs::scalar_points(pts)));
}

// The two-point example kernel with the ambient beta(lambda) = (conj(lambda), conj(lambda)^2) / sqrt 2.
pick::PickDecomposition example_pick() {
    const std::vector<cdouble> pts{0.0, 0.5};
    const auto k = rkhs::make_kernel(KernelFamily::Example52, rkhs::scalar_points(pts));
    CMatrix beta(2, 2);
    for (int i = 0; i < 2; ++i) {
        beta(0, i) = std::conj(pts[i]) / std::numbers::sqrt2;
        beta(1, i) = std::conj(pts[i] * pts[i]) / std::numbers::sqrt2;
    }
    return pick::with_beta(pick::decompose(k), beta);
}

// dim_x = 1 realization whose first column is [a; sqrt(1 - |a|^2)], completed to a unitary.
realize::Realization unit_column(const pick::PickDecomposition& p, const CMatrix& a) {
    realize::Realization r;
    r.pick = p;
    r.dim_x = 1;
    CMatrix column(a.rows() + 1, 1);
    column << a, CMatrix::Constant(1, 1, std::sqrt(1.0 - a.squaredNorm()));
    const auto comp = numlin::complete_to_coisometry(column);
    r.a = a;
    r.c = column.bottomRows(1);
    r.b = comp.completion.rightCols(comp.added_cols).topRows(a.rows());
    r.d = comp.completion.rightCols(comp.added_cols).bottomRows(1);
    return r;
}

realize::Realization random_case(const pick::PickDecomposition& p, std::mt19937_64& rng) {
    return realize::random_realization(p, random::uniform_int(rng, 1, 3), random::uniform_int(rng, 1, 2),
                                       random::uniform_int(rng, 1, 3), rng);
}

} // namespace

TEST_CASE("a = 0 gives G(lambda) = d + c Z(lambda) b") {
    auto rng = random::make_rng(81);
    const auto p = fixtures::random_pick(KernelFamily::DruryArveson, rng, false, 4);
    auto r = realize::random_realization(p, 2, 1, 2, rng);
    r.a.setZero();
    const auto g = realize::transfer_eval(r);
    for (int i = 0; i < p.size(); ++i) {
        const CMatrix z = oracle::kron(p.beta.col(i).adjoint(), oracle::eye(2));
        CHECK(oracle::norm2(g.values[i] - (r.d + r.c * z * r.b)) < 1e-14);
    }
}

TEST_CASE("random coisometric realizations give contractive multipliers") {
    prop::forall(82, 40, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const auto p = fixtures::random_pick(prop::family_of(c), rng);
        const auto r = random_case(p, rng);
        CHECK(r.coisometry_residual() < 1e-12);
        CHECK(mult::is_contractive_multiplier(p.kernel, realize::transfer_eval(r)).ok);
    });
    auto rng = random::make_rng(83);
    const auto p = szego({0.0, 0.5, cdouble(0.2, 0.3), cdouble(-0.4, 0.1), cdouble(0.1, -0.6)});
    const auto r = realize::random_realization(p, 3, 1, 1, rng);
    CHECK(r.dim_in() >= p.dim_b * 3 + 1 - 3);
    CHECK(mult::is_contractive_multiplier(p.kernel, realize::transfer_eval(r)).ok);
}

TEST_CASE("the example realization with a unit first column is contractive") {
    CMatrix a(2, 1);
    a << 1.0 / 8.0, 0.0;
    const auto r = unit_column(example_pick(), a);
    CHECK(r.coisometry_residual() < 1e-14);
    CHECK(mult::is_contractive_multiplier(r.pick.kernel, realize::transfer_eval(r)).ok);
}

TEST_CASE("gamma on the example: both realizations agree") {
    const auto p = example_pick();
    CMatrix a1(2, 1), a2(2, 1);
    a1 << 1.0 / 8.0, 0.0;
    a2 << 0.0, 1.0 / 4.0;
    const CMatrix c = oracle::eye(1);
    const auto g1 = realize::gamma_from(p, a1, c), g2 = realize::gamma_from(p, a2, c);
    CHECK(std::abs(g1.values[0](0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(g2.values[0](0, 0) - 1.0) < 1e-15);
    const double expected = 1.0 / (1.0 - 1.0 / (16.0 * std::numbers::sqrt2));  // 1.0462368...
    CHECK(std::abs(g1.values[1](0, 0) - expected) < 1e-14);
    CHECK(std::abs(g2.values[1](0, 0) - expected) < 1e-14);
    CHECK(expected == doctest::Approx(1.046237).epsilon(1e-6));
}

TEST_CASE("gamma with b = c = 0 and unitary d") {
    auto rng = random::make_rng(84);
    const auto p = szego({0.0, 0.5, cdouble(0.2, 0.3)});
    realize::Realization r;
    r.pick = p;
    r.dim_x = 1;
    r.a = CMatrix::Constant(1, 1, cdouble(0.0, 1.0));
    r.b = CMatrix::Zero(1, 2);
    r.c = CMatrix::Zero(2, 1);
    r.d = random::random_isometry(2, 2, rng);
    CHECK(r.coisometry_residual() < 1e-14);
    const auto rep = realize::gamma_map(r);
    for (const auto& v : rep.gamma.values) CHECK(v.norm() == 0.0);
    const CMatrix m = mult::multiplier_operator(p.kernel, rep.g).onb;
    CHECK(oracle::norm2(m * m.adjoint() - oracle::eye(6)) < 1e-12);
}

TEST_CASE("m_G m_G^* + gamma gamma^* = I and the complement equals R_gamma") {
    prop::forall(85, 60, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const auto p = fixtures::random_pick(prop::family_of(c), rng, false, 4);
        const auto r = random_case(p, rng);
        const auto rep = realize::gamma_map(r);
        CHECK(rep.identity_residual < 1e-10);
        CHECK(rep.complement_match.same);

        // The same identity as kernels: G_i G_j^* K_ij + gamma_i gamma_j^* = K_ij I.
        const int d = r.dim_out();
        CMatrix lhs = oracle::range_kernel(p.kernel.gram, rep.g.values);
        for (int i = 0; i < p.size(); ++i)
            for (int j = 0; j < p.size(); ++j)
                lhs.block(i * d, j * d, d, d) += rep.gamma.values[i] * rep.gamma.values[j].adjoint();
        CMatrix rhs = oracle::kron(p.kernel.gram, oracle::eye(d));
        CHECK(oracle::norm2(lhs - rhs) < 1e-9 * oracle::norm2(p.kernel.gram));
    });
}

TEST_CASE("observability values match gamma") {
    prop::forall(86, 20, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const auto p = fixtures::random_pick(prop::family_of(c), rng);
        const auto r = random_case(p, rng);
        const auto gm = realize::gamma_from(p, r.a, r.c);
        for (int i = 0; i < p.size(); ++i)
            CHECK(oracle::norm2(p.delta(i) * realize::observability(r, i).adjoint() - gm.values[i]) < 1e-10);
    });
}

TEST_CASE("singular resolvent is reported") {
    const auto p = szego({0.0, 0.5});
    const CMatrix z = realize::z_of(p, 1, 1);
    const CMatrix a = CMatrix::Constant(1, 1, 1.0 / z(0, 0));
    try {
        realize::resolvent(p, a, 1);
        FAIL("singular resolvent accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularResolvent);
    }
}

TEST_CASE("tilde B: defining relation, injective gamma and the example") {
    prop::forall(87, 40, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const auto p = fixtures::random_pick(prop::family_of(c), rng, true);
        const auto r = random_case(p, rng);
        const auto gm = realize::gamma_from(p, r.a, r.c);
        const auto tb = realize::tilde_b(r, gm);
        CHECK(tb.defining_residual < 1e-10);
        if (tb.q == r.dim_x) {
            // gamma injective: tilde B is a conjugated by the unitary vq.
            const CMatrix back = oracle::kron(oracle::eye(p.dim_b), tb.vq) * tb.tb * tb.vq.adjoint();
            CHECK(oracle::norm2(back - r.a) < 1e-10);
        }
    });

    CMatrix a(2, 1);
    a << 1.0 / 8.0, 0.0;
    const auto r = unit_column(example_pick(), a);
    const auto tb = realize::tilde_b(r, realize::gamma_from(r.pick, r.a, r.c));
    CHECK(tb.q == 1);
    CHECK(tb.norm == doctest::Approx(1.0 / 8.0));

    auto rng = random::make_rng(88);
    const auto un = szego({0.25, 0.5, 0.1});
    const auto ur = realize::random_realization(un, 1, 1, 1, rng);
    CHECK_THROWS_AS(realize::tilde_b(ur, realize::gamma_from(un, ur.a, ur.c)), Error);
}

TEST_CASE("Gleason identity and the difference-quotient inequality") {
    prop::forall(89, 40, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const auto p = fixtures::random_pick(prop::family_of(c), rng, true);
        const auto r = random_case(p, rng);
        const auto gm = realize::gamma_from(p, r.a, r.c);
        const auto gl = realize::gleason_check(r, gm, realize::tilde_b(r, gm));
        CHECK(gl.identity_residual < 1e-10);
        CHECK(gl.inequality_slack >= -1e-10);
        const auto whole = realize::whole_space_gleason(p, r.dim_out());
        CHECK(whole.identity_residual < 1e-10);
        CHECK(std::abs(whole.inequality_slack) < 1e-10);
    });
}

TEST_CASE("Gleason identity for a constant function") {
    // With delta = 1 the constant function is k_{lambda_0}, so B^* 1 = beta(lambda_0) (x) 1 = 0
    // and pi 1 = 1: the tilde B term drops out of the identity.
    const auto p = szego({0.0, 0.5, cdouble(0.2, 0.3)});
    const CVector one = rkhs::to_onb(rkhs::VecElement{rkhs::function_space(p.kernel), CVector::Ones(3)}, p.kernel);
    CHECK((pick::delta_projection(p) * one - one).norm() < 1e-12);
    CHECK((pick::b_operator(p).onb.adjoint() * one).norm() < 1e-12);
}

TEST_CASE("complement round trip from a realization") {
    prop::forall(90, 40, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const auto p = fixtures::random_pick(prop::family_of(c), rng, true);
        const auto r = random_case(p, rng);
        const auto gm = realize::gamma_from(p, r.a, r.c);
        const auto n = subspace::make_range_space(gm.op);
        const auto res = realize::complementary_from_conditions(p, n, r.a);
        CHECK(res.same.same);
        CHECK(res.realization.coisometry_residual() < 1e-10);
        // m_G' m_G'^* = m_G m_G^*: both complements equal R_gamma.
        const auto g = realize::transfer_eval(r);
        CHECK(oracle::norm2(oracle::range_kernel(p.kernel.gram, res.g.values) -
                            oracle::range_kernel(p.kernel.gram, g.values)) < 1e-8 * oracle::norm2(p.kernel.gram));
    });
}

TEST_CASE("complement of the whole space") {
    auto rng = random::make_rng(91);
    const auto p = fixtures::random_pick(KernelFamily::Szego, rng, true, 4);
    const int g = 2;
    const auto n = subspace::make_range_space(rkhs::function_space(p.kernel, g), oracle::eye(4 * g));
    const CMatrix lifted = pick::b_operator(p, g).onb.adjoint();
    const auto res = realize::complementary_from_conditions(p, n, lifted);
    CHECK(res.same.same);
    const CMatrix m = mult::multiplier_operator(p.kernel, res.g).onb;
    CHECK(oracle::norm2(m * m.adjoint()) < 1e-10);
}

TEST_CASE("closed B^*-invariant N recovers tilde B = (B^* (x) I)|N") {
    prop::forall(92, 30, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const auto p = fixtures::random_pick(prop::family_of(c), rng, true);
        const int g = random::uniform_int(rng, 1, 2);
        const CMatrix q = fixtures::kernel_span_basis(p, fixtures::random_subset(p.size(), rng), g);
        const auto inv = embed::invariant_a(p, q, g);
        const auto res =
            realize::complementary_from_conditions(p, subspace::make_range_space(rkhs::function_space(p.kernel, g), q),
                                                   inv.a);
        CHECK(res.same.same);
        CHECK(res.isometric_residual < 1e-8);
    });
}

TEST_CASE("conditions that fail are rejected") {
    auto rng = random::make_rng(93);
    const auto p = fixtures::random_pick(KernelFamily::Szego, rng, true, 4);
    const auto r = realize::random_realization(p, 2, 1, 1, rng);
    const auto n = subspace::make_range_space(realize::gamma_from(p, r.a, r.c).op);
    try {
        realize::complementary_from_conditions(p, n, 3.0 * r.a);
        FAIL("violated conditions accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConditionsViolated);
    }
}

TEST_CASE("complement through the normalized kernel") {
    prop::forall(94, 30, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const auto p = fixtures::random_pick(prop::family_of(c), rng, false, 4);
        const auto r = random_case(p, rng);
        const auto n = subspace::make_range_space(realize::gamma_from(p, r.a, r.c).op);
        const auto res = realize::complementary_general(p, n, r.a);
        CHECK(res.same.same);
        CHECK(res.same.residual < 1e-8);
    });

    auto rng = random::make_rng(95);
    const auto p = szego({0.25, 0.5});
    const auto r = realize::random_realization(p, 1, 1, 1, rng);
    const auto res = realize::complementary_general(p, subspace::make_range_space(realize::gamma_from(p, r.a, r.c).op),
                                                    r.a);
    CHECK(res.same.residual < 1e-8);

    const auto q = pick::normalized_decomposition(p);
    const auto rq = realize::random_realization(q, 2, 1, 1, rng);
    const auto nq = subspace::make_range_space(realize::gamma_from(q, rq.a, rq.c).op);
    const auto direct = realize::complementary_from_conditions(q, nq, rq.a);
    const auto general = realize::complementary_general(q, nq, rq.a);
    for (int i = 0; i < q.size(); ++i) CHECK(oracle::norm2(direct.g.values[i] - general.g.values[i]) < 1e-10);
}
