#include "pickspace/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pickspace/beurling.hpp"
#include "pickspace/embed.hpp"
#include "pickspace/fixtures.hpp"
#include "pickspace/io.hpp"
#include "pickspace/random.hpp"
#include "pickspace/realize.hpp"

namespace pickspace::suite {
namespace {

using rkhs::KernelFamily;

// Accumulates the worst observation of one metric over many cases.
class Tracker {
public:
    Tracker(std::string id, std::string module, std::string metric, bool at_most, double threshold)
        : at_most_(at_most) {
        r_.id = std::move(id);
        r_.module = std::move(module);
        r_.metric = std::move(metric);
        r_.comparison = at_most ? "<=" : ">=";
        r_.threshold = threshold;
        r_.value = at_most ? 0.0 : INFINITY;
    }

    void observe(double v) {
        ++r_.cases;
        if (std::isnan(v)) {
            fail("metric is NaN");
            return;
        }
        r_.value = at_most_ ? std::max(r_.value, v) : std::min(r_.value, v);
    }

    void fail(const std::string& note) {
        failed_ = true;
        if (r_.note.empty()) r_.note = note;
    }

    template <class F>
    void guard(F&& body) {
        try {
            body();
        } catch (const Error& e) {
            ++r_.cases;
            fail(e.what());
        }
    }

    CheckResult finish() {
        if (r_.cases == 0) r_.value = 0.0;
        const bool ok = at_most_ ? r_.value <= r_.threshold : r_.value >= r_.threshold;
        r_.passed = ok && !failed_;
        return r_;
    }

private:
    CheckResult r_;
    bool at_most_;
    bool failed_ = false;
};

struct Ctx {
    const SuiteConfig& cfg;
    std::uint64_t check_no;
    std::mt19937_64 rng(int c) const { return random::case_rng(cfg.seed, check_no * 1000003ULL + c); }
    KernelFamily family(int c) const { return fixtures::families()[c % fixtures::families().size()]; }
    const Tolerances& tol() const { return cfg.tol; }
};

CheckResult pick_check(const Ctx& x) {
    Tracker t("pick.check", "pick", "min eigenvalue of F", false, -x.tol().psd_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto k = random::random_kernel(x.family(c), random::uniform_int(rng, 3, 6), rng, x.tol());
            const auto v = pick::check_pick(k, 0, x.tol());
            if (!v.ok) t.fail("kernel failed the Pick test");
            t.observe(v.min_eig);
        });
    return t.finish();
}

CheckResult pick_all_bases(const Ctx& x) {
    Tracker t("pick.all_bases", "pick", "bases disagreeing with base 0", true, 0.0);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto k = random::random_kernel(x.family(c), random::uniform_int(rng, 3, 6), rng, x.tol());
            const auto rep = pick::check_pick_all_bases(k, x.tol());
            double bad = 0;
            for (const auto& v : rep.per_base) bad += v.ok != rep.per_base.front().ok;
            t.observe(bad);
        });
    return t.finish();
}

CheckResult pick_delta_projection(const Ctx& x) {
    Tracker t("pick.delta_projection", "pick", "||(I - B B^*) - pi||", true, x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            t.observe(pick::delta_projection_check(fixtures::random_pick(x.family(c), rng, false, 0, x.tol())));
        });
    return t.finish();
}

CheckResult pick_factorization(const Ctx& x) {
    Tracker t("pick.factorization", "pick", "max |(1 - B B^*) K - delta delta^*|", true, x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            t.observe(pick::factorization_residual(fixtures::random_pick(x.family(c), rng, false, 0, x.tol())));
        });
    return t.finish();
}

CheckResult pick_normalize(const Ctx& x) {
    Tracker t("pick.normalize", "pick", "max(Omega isometry defect, |delta' - 1|, |beta(lambda_0)|)", true,
              x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const auto nk = pick::normalize(p, x.tol());
            const auto pn = pick::decompose(nk.kprime, 0, x.tol());
            const CMatrix omega = pick::omega_operator(p, nk).onb;
            double worst = numlin::op_norm(omega.adjoint() * omega - numlin::identity(p.size()));
            worst = std::max(worst, (pn.delta - CVector::Ones(p.size())).cwiseAbs().maxCoeff());
            worst = std::max(worst, pn.beta.col(0).norm());
            t.observe(worst);
        });
    return t.finish();
}

CheckResult mult_agreement(const Ctx& x) {
    Tracker t("mult.contractivity_agreement", "mult", "kernel test vs norm test disagreements", true, 0.0);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const double target = random::uniform(rng, 0.5, 1.5);
            const auto g = mult::random_multiplier(p.kernel, random::uniform_int(rng, 1, 3),
                                                   random::uniform_int(rng, 1, 3), rng, target);
            const auto v = mult::is_contractive_multiplier(p.kernel, g, x.tol());
            // Inside a thin band around norm one both answers are numerically legitimate.
            const bool band = std::abs(v.op_norm - 1.0) < 1e-6;
            t.observe(!band && v.ok != v.norm_ok ? 1.0 : 0.0);
        });
    return t.finish();
}

CheckResult mult_commutation(const Ctx& x) {
    Tracker t("mult.b_commutation", "mult", "||(B (x) I_G)(I_B (x) m_G) - m_G (B (x) I_G')||", true,
              x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const auto g = mult::random_multiplier(p.kernel, random::uniform_int(rng, 1, 3),
                                                   random::uniform_int(rng, 1, 3), rng);
            const CMatrix lhs = pick::b_operator(p, g.dim_out).onb * mult::ampliate(p.kernel, g, {p.dim_b}, {}).onb;
            const CMatrix rhs = mult::multiplier_operator(p.kernel, g).onb * pick::b_operator(p, g.dim_in).onb;
            t.observe(numlin::op_norm(lhs - rhs));
        });
    return t.finish();
}

CheckResult mult_complement_kernel(const Ctx& x) {
    Tracker t("mult.complement_kernel", "mult", "||kernel of M_G^sharp - (I - G G^*) K||", true, x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const auto g = mult::random_multiplier(p.kernel, random::uniform_int(rng, 1, 3),
                                                   random::uniform_int(rng, 1, 3), rng);
            const auto sharp = subspace::complementary(mult::range_space(p.kernel, g, x.tol()), x.tol());
            const auto space = rkhs::function_space(p.kernel, g.dim_out);
            CMatrix sections(space.total(), space.total());
            for (int j = 0; j < p.size(); ++j)
                for (int s = 0; s < g.dim_out; ++s)
                    sections.col(j * g.dim_out + s) = rkhs::kernel_section_onb(p.kernel, j, g.dim_out, s);
            const CMatrix kern = rkhs::onb_to_value_matrix(space, p.kernel) * sharp.gram * sections;
            t.observe(numlin::op_norm(kern - mult::contractivity_kernel(p.kernel, g)));
        });
    return t.finish();
}

CheckResult subspace_douglas(const Ctx& x) {
    Tracker t("subspace.douglas", "subspace", "cases where verdict and witness disagree", true, 0.0);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const int dim = random::uniform_int(rng, 2, 5);
            const auto amb = rkhs::plain_space(dim);
            const auto rs1 = subspace::make_range_space(amb, random::random_contraction(dim, dim, rng, 0.9), x.tol());
            const auto rs2 = subspace::make_range_space(amb, random::random_contraction(dim, dim, rng, 0.9), x.tol());
            const CMatrix tm = random::random_contraction(dim, dim, rng, random::uniform(rng, 0.05, 1.0));
            const auto d = subspace::douglas_solve(tm, rs1, rs2, x.tol());
            bool consistent = true;
            if (d.ok) {
                consistent = d.factor_residual <= x.tol().residual_tol && d.d_norm <= 1.0 + x.tol().residual_tol;
            } else if (d.min_eig < 0.0) {
                const CVector xv = rs1.gram * tm.adjoint() * d.witness;
                const double n1 = subspace::range_norm(rs1, xv, x.tol());
                try {
                    consistent = subspace::range_norm(rs2, CVector(tm * xv), x.tol()) > n1;
                } catch (const Error& e) {
                    consistent = e.kind() == ErrorKind::NotInRange;
                }
            }
            t.observe(consistent ? 0.0 : 1.0);
        });
    return t.finish();
}

CheckResult subspace_pythagoras(const Ctx& x) {
    Tracker t("subspace.complement_split", "subspace", "max(Pythagoras residual, minimality violation)", true,
              x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const int dim = random::uniform_int(rng, 2, 6);
            const auto rs = subspace::make_range_space(rkhs::plain_space(dim),
                                                       random::random_contraction(dim, dim, rng, 0.9), x.tol());
            const auto sharp = subspace::complementary(rs, x.tol());
            const CVector v = random::gaussian_vector(dim, rng);
            const auto split = subspace::complement_decompose(rs, v, x.tol());
            double worst = split.pythagoras_residual;
            for (int k = 0; k < 10; ++k) {
                const CVector y1 = rs.c * random::gaussian_vector(dim, rng);
                const double a = subspace::range_norm(rs, y1, x.tol());
                const double b = subspace::range_norm(sharp, CVector(v - y1), x.tol());
                worst = std::max(worst, v.squaredNorm() - a * a - b * b);
            }
            t.observe(worst);
        });
    return t.finish();
}

CheckResult beurling_roundtrip(const Ctx& x) {
    Tracker t("beurling.roundtrip", "beurling", "||m_G m_G^* - m_F m_F^*||", true, x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const auto f = mult::random_multiplier(p.kernel, random::uniform_int(rng, 1, 3),
                                                   random::uniform_int(rng, 1, 3), rng);
            const auto res = beurling::construct_g(beurling::from_multiplier(p, f), x.tol());
            if (!res.contractive) t.fail("constructed G is not contractive");
            t.observe(res.residual);
        });
    return t.finish();
}

CheckResult beurling_inner(const Ctx& x) {
    Tracker t("beurling.inner", "beurling", "||P^2 - P||, P = m_G m_G^*", true, x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const auto inp = fixtures::random_closed_invariant(p, rng, x.tol());
            const auto res = beurling::inner_from_closed(inp, x.tol());
            if (res.projection_rank != inp.c.cols()) t.fail("rank of m_G m_G^* differs from dim M");
            t.observe(res.projection_residual);
        });
    return t.finish();
}

CheckResult beurling_action(const Ctx& x) {
    Tracker t("beurling.multiplier_action", "beurling", "failures of (i) <=> (ii)", true, 0.0);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const auto inv = beurling::from_multiplier(
                p, mult::random_multiplier(p.kernel, random::uniform_int(rng, 1, 2), random::uniform_int(rng, 1, 2), rng));
            double bad = beurling::check_b_invariance(inv, x.tol()).ok ? 0.0 : 1.0;
            const auto f = mult::random_multiplier(p.kernel, random::uniform_int(rng, 1, 2), random::uniform_int(rng, 1, 2), rng);
            bad += beurling::multiplier_action(inv, f, x.tol()).ok ? 0.0 : 1.0;
            // span{k_lambda} with beta(lambda) != 0 is not invariant, and B itself witnesses it.
            const int j = random::uniform_int(rng, 1, p.size() - 1);
            const beurling::InvariantSubspaceInput single{p, 1, fixtures::kernel_span_basis(p, {j}, 1, x.tol())};
            bad += beurling::check_b_invariance(single, x.tol()).ok ? 1.0 : 0.0;
            bad += beurling::multiplier_action(single, pick::b_multiplier(p), x.tol()).ok ? 1.0 : 0.0;
            t.observe(bad);
        });
    return t.finish();
}

CheckResult beurling_factorization(const Ctx& x) {
    Tracker t("beurling.verify_factorization", "beurling", "wrong verdicts", true, 0.0);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const int a = random::uniform_int(rng, 1, 3), b = random::uniform_int(rng, 1, 3),
                      d = random::uniform_int(rng, 1, 3);
            const auto g2 = mult::random_multiplier(p.kernel, a, b, rng);
            auto gam = mult::random_multiplier(p.kernel, b, d, rng);
            const auto g1 = mult::compose(g2, gam);
            double bad = beurling::verify_factorization(p.kernel, g1, g2, gam, x.tol()).ok ? 0.0 : 1.0;
            for (auto& v : gam.values) v *= 2.0;
            bad += beurling::verify_factorization(p.kernel, mult::compose(g2, gam), g2, gam, x.tol()).ok ? 1.0 : 0.0;
            t.observe(bad);
        });
    return t.finish();
}

realize::Realization random_case_realization(const pick::PickDecomposition& p, std::mt19937_64& rng) {
    return realize::random_realization(p, random::uniform_int(rng, 1, 3), random::uniform_int(rng, 1, 2),
                                       random::uniform_int(rng, 1, 2), rng);
}

CheckResult realize_identity(const Ctx& x) {
    Tracker t("realize.identity", "realize", "||m_G m_G^* + gamma gamma^* - I||", true, x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const auto r = random_case_realization(p, rng);
            const auto rep = realize::gamma_map(r, x.tol());
            if (!rep.complement_match.same) t.fail("M_G^sharp differs from R_gamma");
            if (!mult::is_contractive_multiplier(p.kernel, rep.g, x.tol()).ok) t.fail("G is not contractive");
            t.observe(std::max(rep.identity_residual, r.coisometry_residual()));
        });
    return t.finish();
}

CheckResult realize_gleason(const Ctx& x) {
    Tracker t("realize.gleason", "realize", "max(identity residual, -slack, tilde B defect)", true,
              x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, true, 0, x.tol());
            const auto r = random_case_realization(p, rng);
            const auto gm = realize::gamma_from(p, r.a, r.c, x.tol());
            const auto tb = realize::tilde_b(r, gm, x.tol());
            const auto gl = realize::gleason_check(r, gm, tb, x.tol());
            const auto whole = realize::whole_space_gleason(p, r.dim_out());
            t.observe(std::max({gl.identity_residual, -gl.inequality_slack, tb.defining_residual,
                                tb.norm - 1.0, whole.identity_residual, std::abs(whole.inequality_slack)}));
        });
    return t.finish();
}

CheckResult realize_complement(const Ctx& x) {
    Tracker t("realize.complement", "realize", "max(||N gram - M_G^sharp gram||, isometric tilde B defect)", true,
              x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, true, 0, x.tol());
            const auto r = random_case_realization(p, rng);
            const auto gm = realize::gamma_from(p, r.a, r.c, x.tol());
            const auto res = realize::complementary_from_conditions(p, subspace::make_range_space(gm.op, x.tol()),
                                                                    r.a, x.tol());
            if (!res.same.same) t.fail("N differs from M_G^sharp");
            // Closed B^*-invariant N: span of kernel functions.
            const int g = r.dim_out();
            const CMatrix q = fixtures::kernel_span_basis(p, fixtures::random_subset(p.size(), rng), g, x.tol());
            const auto lifted = embed::invariant_a(p, q, g, x.tol());
            const auto closed = realize::complementary_from_conditions(
                p, subspace::make_range_space(rkhs::function_space(p.kernel, g), q, x.tol()), lifted.a, x.tol());
            if (!closed.same.same) t.fail("closed N differs from M_G^sharp");
            t.observe(std::max({res.same.residual, closed.same.residual, closed.isometric_residual}));
        });
    return t.finish();
}

CheckResult realize_complement_general(const Ctx& x) {
    Tracker t("realize.complement_general", "realize", "||N gram - M_G^sharp gram|| (delta != 1)", true,
              x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const auto r = random_case_realization(p, rng);
            const auto gm = realize::gamma_from(p, r.a, r.c, x.tol());
            const auto res =
                realize::complementary_general(p, subspace::make_range_space(gm.op, x.tol()), r.a, x.tol());
            if (!res.same.same) t.fail("N differs from M_G^sharp");
            t.observe(res.same.residual);
        });
    return t.finish();
}

CheckResult embed_embedding(const Ctx& x) {
    Tracker t("embed.embedding", "embed", "max |K - delta delta^* D(beta_bar, beta_bar)|", true, x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            t.observe(embed::embedding_check(fixtures::random_pick(x.family(c), rng, false, 0, x.tol())).residual);
        });
    return t.finish();
}

CheckResult embed_intertwining(const Ctx& x) {
    Tracker t("embed.intertwining", "embed", "max |<M_phi^* E k_j, E k_i> - <M_{phi o beta_bar}^* k_j, k_i>|", true,
              x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            CVector xi = random::gaussian_vector(p.dim_b, rng);
            if (xi.norm() > 0) xi *= random::uniform(rng) / xi.norm();
            t.observe(embed::intertwining_check(p, xi));
        });
    return t.finish();
}

CheckResult embed_commutators(const Ctx& x) {
    Tracker t("embed.commutators", "embed", "max ||a_xi a_eta - a_eta a_xi|| on B^*-invariant N", true,
              x.tol().residual_tol);
    for (int c = 0; c < x.cfg.cases; ++c)
        t.guard([&] {
            auto rng = x.rng(c);
            const auto p = fixtures::random_pick(x.family(c), rng, false, 0, x.tol());
            const CMatrix q = fixtures::kernel_span_basis(p, fixtures::random_subset(p.size(), rng), 1, x.tol());
            const auto inv = embed::invariant_a(p, q, 1, x.tol());
            std::vector<CVector> xis;
            for (int k = 0; k < 4; ++k) xis.push_back(random::gaussian_vector(p.dim_b, rng));
            t.observe(embed::a_xi_commutation(inv.a, static_cast<int>(q.cols()), xis));
        });
    return t.finish();
}

CheckResult embed_counterexample(const Ctx& x) {
    Tracker t("embed.counterexample", "embed", "min(distance to span, invariance defect)", false, 1e-6);
    t.guard([&] {
        const std::vector<cdouble> pts{0.0, 0.5};
        const auto k = rkhs::make_kernel(KernelFamily::Szego, rkhs::scalar_points(pts), {}, x.tol());
        const auto rep = embed::build_counterexample(pick::decompose(k, 0, x.tol()), x.cfg.seed, 1, 1e-6, 200, x.tol());
        if (rep.max_commutator > x.tol().residual_tol) t.fail("a_xi commutators do not vanish");
        if (rep.identity_residual > x.tol().residual_tol) t.fail("realization identity fails");
        t.observe(std::min(rep.distance_to_span, rep.invariance_defect));
    });
    return t.finish();
}

CheckResult embed_example52(const Ctx& x) {
    Tracker t("embed.example52", "embed", "max(K(1/2,1/2) rel. error, gamma equality, Gram equality)", true, 1e-12);
    t.guard([&] {
        const auto rep = embed::example52_report(x.tol());
        if (rep.kappa_min < 0.1) t.fail("some unimodular kappa nearly intertwines a_1 and a_2");
        if (!rep.g_contractive) t.fail("completed realization is not contractive");
        t.observe(std::max({rep.k_half_rel_error, rep.gamma_equality, rep.gram_equality}));
    });
    return t.finish();
}

} // namespace

std::vector<CheckResult> run(const SuiteConfig& cfg) {
    cfg.tol.validate();
    if (cfg.cases < 1) throw Error(ErrorKind::InvalidInput, "case count must be positive");
    const std::vector<std::function<CheckResult(const Ctx&)>> checks{
        pick_check,         pick_all_bases,      pick_delta_projection, pick_factorization,
        pick_normalize,     mult_agreement,      mult_commutation,      mult_complement_kernel,
        subspace_douglas,   subspace_pythagoras, beurling_roundtrip,    beurling_inner,
        beurling_action,    beurling_factorization, realize_identity,   realize_gleason,
        realize_complement, realize_complement_general, embed_embedding, embed_intertwining,
        embed_commutators,  embed_counterexample, embed_example52};
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < checks.size(); ++i) out.push_back(checks[i](Ctx{cfg, i + 1}));
    std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
    return out;
}

nlohmann::json to_json(const CheckResult& r) {
    nlohmann::json j{{"id", r.id},
                     {"module", r.module},
                     {"metric", r.metric},
                     {"value", r.value},
                     {"comparison", r.comparison},
                     {"threshold", r.threshold},
                     {"cases", r.cases},
                     {"passed", r.passed}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

nlohmann::json report(const SuiteConfig& cfg, const std::vector<CheckResult>& results) {
    nlohmann::json checks = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
        checks.push_back(to_json(r));
        all = all && r.passed;
    }
    return nlohmann::json{{"schema", 1},
                          {"command", "suite run"},
                          {"seed", cfg.seed},
                          {"cases", cfg.cases},
                          {"tolerances", io::to_json(cfg.tol)},
                          {"checks", checks},
                          {"passed", all}};
}

} // namespace pickspace::suite
