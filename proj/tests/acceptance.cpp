// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"

#include "pickspace/beurling.hpp"
#include "pickspace/embed.hpp"
#include "pickspace/realize.hpp"

using namespace pickspace;
using rkhs::KernelFamily;

namespace {

constexpr std::uint64_t kSeed = 20240601;

// Worst observed value of one metric plus any structural failure.
struct Outcome {
    double worst = 0.0;
    std::string failure;
    int cases = 0;

    void at_most(double v, double bound, const std::string& what) {
        ++cases;
        worst = std::max(worst, v);
        if (!(v <= bound) && failure.empty()) failure = what + " = " + std::to_string(v);
    }
    void require(bool ok, const std::string& what) {
        if (!ok && failure.empty()) failure = what;
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.failure = std::string("exception: ") + e.what();
    }
    const bool pass = o.failure.empty();
    if (!pass) ++failures;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << "  [cases " << o.cases
         << ", worst " << o.worst << "]";
    if (!pass) line << "  " << o.failure;
    std::cout << line.str() << std::endl;
}

const std::array<KernelFamily, 3> kPickFamilies{KernelFamily::Szego, KernelFamily::DruryArveson,
                                                KernelFamily::PowerSeries};

KernelFamily family(int c) { return fixtures::families()[c % fixtures::families().size()]; }

realize::Realization random_realization(const pick::PickDecomposition& p, std::mt19937_64& rng) {
    return realize::random_realization(p, random::uniform_int(rng, 1, 3), random::uniform_int(rng, 1, 2),
                                       random::uniform_int(rng, 1, 2), rng);
}

std::string capture(const std::string& cmd) {
    std::string out;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot run " + cmd);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    if (::pclose(pipe) != 0) throw std::runtime_error(cmd + " exited nonzero");
    return out;
}

std::string without_timestamp(const std::string& report) {
    std::istringstream in(report);
    std::string line, kept;
    while (std::getline(in, line))
        if (line.find("\"timestamp\":") == std::string::npos) kept += line + "\n";
    return kept;
}

} // namespace

int main() {
    std::cout.precision(3);

    criterion(1, "Pick verification on szego, drury_arveson, power_series", [](Outcome& o) {
        int c = 0;
        for (const auto fam : kPickFamilies)
            for (int s = 0; s < 5; ++s, ++c) {
                auto rng = random::case_rng(kSeed + 1, c);
                const auto k = random::random_kernel(fam, 5, rng);
                const auto v = pick::check_pick(k);
                const double direct = oracle::min_eig(oracle::one_minus_ratio(k.gram, 0));
                o.require(v.ok, "check_pick rejected a Pick kernel");
                o.require(std::abs(v.min_eig - direct) <= 1e-10, "min eigenvalue disagrees with the direct test");
                o.at_most(-direct, 1e-10, "-min_eig(F)");
            }
    });

    criterion(2, "delta projection identity", [](Outcome& o) {
        int c = 0;
        for (const auto fam : kPickFamilies)
            for (int s = 0; s < 5; ++s, ++c) {
                auto rng = random::case_rng(kSeed + 1, c);
                const auto p = pick::decompose(random::random_kernel(fam, 5, rng));
                o.at_most(pick::delta_projection_check(p), 1e-10, "||(I - B B^*) - pi||");
            }
    });

    criterion(3, "Beurling round trip over 200 contractive multipliers", [](Outcome& o) {
        for (int c = 0; c < 200; ++c) {
            auto rng = random::case_rng(kSeed + 3, c);
            const auto p = fixtures::random_pick(family(c), rng, false, 5);
            const auto f = mult::random_multiplier(p.kernel, random::uniform_int(rng, 1, 3),
                                                   random::uniform_int(rng, 1, 3), rng);
            const auto res = beurling::construct_g(beurling::from_multiplier(p, f));
            o.require(mult::is_contractive_multiplier(p.kernel, res.g).ok, "G fails the contractivity kernel test");
            o.at_most(res.residual, 1e-8, "||m_G m_G^* - m_F m_F^*||");
        }
    });

    criterion(4, "inner multipliers for 50 closed invariant subspaces", [](Outcome& o) {
        for (int c = 0; c < 50; ++c) {
            auto rng = random::case_rng(kSeed + 4, c);
            const auto p = fixtures::random_pick(family(c), rng, false, 5);
            const auto inp = fixtures::random_closed_invariant(p, rng);
            const auto res = beurling::inner_from_closed(inp);
            o.require(res.projection_rank == inp.c.cols(), "rank(m_G m_G^*) differs from dim M");
            o.at_most(res.projection_residual, 1e-8, "||P^2 - P||");
        }
    });

    criterion(5, "realization identity over 200 coisometric realizations", [](Outcome& o) {
        for (int c = 0; c < 200; ++c) {
            auto rng = random::case_rng(kSeed + 5, c);
            const auto p = fixtures::random_pick(family(c), rng, false, 5);
            const auto r = random_realization(p, rng);
            const auto rep = realize::gamma_map(r);
            o.require(rep.complement_match.same, "M_G^sharp differs from R_gamma");
            o.at_most(rep.identity_residual, 1e-10, "||m_G m_G^* + gamma gamma^* - I||");
        }
    });

    criterion(6, "Gleason identity and difference quotient inequality", [](Outcome& o) {
        for (int c = 0; c < 200; ++c) {
            auto rng = random::case_rng(kSeed + 6, c);
            const auto p = fixtures::random_pick(family(c), rng, true, 5);
            const auto r = random_realization(p, rng);
            const auto gm = realize::gamma_from(p, r.a, r.c);
            const auto tb = realize::tilde_b(r, gm);
            const auto gl = realize::gleason_check(r, gm, tb);
            o.at_most(gl.identity_residual, 1e-10, "Gleason identity residual");
            o.at_most(-gl.inequality_slack, 1e-10, "-(inequality slack)");
            const auto whole = realize::whole_space_gleason(p, r.dim_out());
            o.at_most(whole.identity_residual, 1e-10, "whole-space identity residual");
            o.at_most(std::abs(whole.inequality_slack), 1e-10, "whole-space equality residual");
        }
    });

    criterion(7, "complementary characterization round trip over 100 cases", [](Outcome& o) {
        double iso = 0.0;
        for (int c = 0; c < 100; ++c) {
            auto rng = random::case_rng(kSeed + 7, c);
            const auto p = fixtures::random_pick(family(c), rng, true, 5);
            const auto r = random_realization(p, rng);
            const auto gm = realize::gamma_from(p, r.a, r.c);
            const auto res = realize::complementary_from_conditions(p, subspace::make_range_space(gm.op), r.a);
            o.require(res.same.same, "same_range(N, M_G^sharp) false");
            o.at_most(res.same.residual, 1e-8, "||N gram - M_G^sharp gram||");

            const int g = r.dim_out();
            const CMatrix q = fixtures::kernel_span_basis(p, fixtures::random_subset(p.size(), rng), g);
            const auto lifted = embed::invariant_a(p, q, g);
            const auto closed = realize::complementary_from_conditions(
                p, subspace::make_range_space(rkhs::function_space(p.kernel, g), q), lifted.a);
            o.require(closed.same.same, "same_range(N, M_G^sharp) false for isometric N");
            iso = std::max(iso, closed.isometric_residual);
        }
        o.at_most(iso, 1e-8, "isometric tilde B defect");
    });

    criterion(8, "two-point example", [](Outcome& o) {
        const auto e = embed::example52_report();
        o.at_most(e.k_half_rel_error, 1e-12, "K(1/2,1/2) relative error");
        o.at_most(e.gamma_equality, 1e-12, "|gamma_1 - gamma_2|");
        o.at_most(e.gram_equality, 1e-12, "||gamma_1 gamma_1^* - gamma_2 gamma_2^*||");
        o.require(e.kappa_min >= 0.1, "min over kappa below 0.1");
        o.require(std::abs(e.k_half - 32.0 / 27.0) <= 1e-12 * 32.0 / 27.0, "K(1/2,1/2) != 32/27");
    });

    criterion(9, "counterexample on the two-point Szego sample", [](Outcome& o) {
        const std::vector<cdouble> pts{0.0, 0.5};
        const auto p = pick::decompose(rkhs::make_kernel(KernelFamily::Szego, rkhs::scalar_points(pts)));
        const auto r = embed::build_counterexample(p, 42);
        ++o.cases;
        o.require(r.distance_to_span >= 1e-6, "distance_to_span below 1e-6");
        o.require(r.invariance_defect >= 1e-6, "invariance_defect below 1e-6");
        o.require(r.realization.dim_x == 1, "dim_x != 1");
        o.require(r.max_commutator == 0.0, "a_xi commutator nonzero");
        o.worst = r.max_commutator;
    });

    criterion(10, "Drury-Arveson embedding and intertwining", [](Outcome& o) {
        for (int c = 0; c < 40; ++c) {
            auto rng = random::case_rng(kSeed + 10, c);
            const auto p = fixtures::random_pick(family(c), rng, c % 2 == 1, 5);
            o.at_most(embed::embedding_check(p).residual, 1e-12, "max |K - D(beta_bar)|");
            for (int s = 0; s < 20; ++s) {
                CVector xi = random::gaussian_vector(p.dim_b, rng);
                xi *= random::uniform(rng, 0.0, 0.99) / xi.norm();
                const double r = embed::intertwining_check(p, xi);
                if (!(r <= 1e-10)) o.require(false, "intertwining residual " + std::to_string(r));
            }
        }
        o.at_most(embed::example52_report().embedding_residual, 1e-12, "example embedding residual");
    });

    criterion(11, "suite run determinism", [](Outcome& o) {
        const std::string cmd = std::string(PICKSPACE_CLI) + " suite run --seed 42";
        const std::string a = without_timestamp(capture(cmd));
        const std::string b = without_timestamp(capture(cmd));
        ++o.cases;
        o.require(!a.empty(), "empty report");
        o.require(a == b, "reports differ");
    });

    return failures == 0 ? 0 : 1;
}
