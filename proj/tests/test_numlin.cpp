#include <doctest.h>

#include "support.hpp"

#include "pickspace/numlin.hpp"
#include "pickspace/random.hpp"

using namespace pickspace;
using oracle::eye;

TEST_CASE("hermitian_eig: identity and swap") {
    auto e = numlin::hermitian_eig(eye(3));
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(2) == doctest::Approx(1.0));

    CMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    e = numlin::hermitian_eig(swap);
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(1) == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eig: reconstruction, order and phase on random Hermitian input") {
    prop::forall(11, 25, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const CMatrix h = random::random_hermitian(6, rng);
        const auto e = numlin::hermitian_eig(h);
        const CMatrix back = e.vectors * e.values.cast<cdouble>().asDiagonal() * e.vectors.adjoint();
        CHECK(oracle::norm2(back - h) < 1e-12 * std::max(1.0, oracle::norm2(h)));
        CHECK(oracle::norm2(e.vectors.adjoint() * e.vectors - eye(6)) < 1e-12);
        for (int k = 0; k + 1 < 6; ++k) CHECK(e.values(k) >= e.values(k + 1));
        for (int k = 0; k < 6; ++k) {
            Eigen::Index first = 0;
            while (std::abs(e.vectors(first, k)) <= 1e-12) ++first;
            CHECK(std::abs(e.vectors(first, k).imag()) < 1e-14);
            CHECK(e.vectors(first, k).real() > 0.0);
        }
    });
}

TEST_CASE("hermitian_eig is deterministic") {
    auto rng1 = random::make_rng(5), rng2 = random::make_rng(5);
    const auto a = numlin::hermitian_eig(random::random_hermitian(5, rng1));
    const auto b = numlin::hermitian_eig(random::random_hermitian(5, rng2));
    CHECK(a.vectors == b.vectors);
    CHECK(a.values == b.values);
}

TEST_CASE("is_psd examples") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(1, 1) = 5.0 / 32.0;
    CHECK(numlin::is_psd(d).ok);

    CMatrix m(2, 2);
    m << 1, 2, 2, 1;
    const auto v = numlin::is_psd(m);
    CHECK_FALSE(v.ok);
    CHECK(v.min_eig == doctest::Approx(-1.0));
    CHECK(oracle::norm2(m * v.witness + v.witness) < 1e-12);

    CHECK(numlin::is_psd(CMatrix::Zero(3, 3)).ok);
}

TEST_CASE("is_psd tolerates rounding but not genuine negativity") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1e-13;
    CHECK(numlin::is_psd(m).ok);
    m(1, 1) = -1e-6;
    CHECK_FALSE(numlin::is_psd(m).ok);
}

TEST_CASE("psd_factor examples") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(1, 1) = 5.0 / 32.0;
    const auto f = numlin::psd_factor(d);
    REQUIRE(f.rank == 1);
    CHECK(std::abs(f.factor(0, 0)) < 1e-15);
    CHECK(std::abs(f.factor(0, 1)) == doctest::Approx(std::sqrt(5.0 / 32.0)));

    CHECK(numlin::psd_factor(eye(4)).rank == 4);

    auto rng = random::make_rng(3);
    const CVector v = random::gaussian_vector(5, rng);
    const auto g = numlin::psd_factor(v * v.adjoint());
    REQUIRE(g.rank == 1);
    CHECK(oracle::norm2(g.factor.adjoint() * g.factor - v * v.adjoint()) < 1e-12 * v.squaredNorm());
    const cdouble phase = g.factor(0, 0) / std::conj(v(0));
    CHECK(std::abs(phase) == doctest::Approx(1.0));
}

TEST_CASE("psd_factor reproduces random PSD matrices of deficient rank") {
    prop::forall(12, 25, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const int r = random::uniform_int(rng, 1, 4);
        const CMatrix x = random::gaussian_matrix(r, 6, rng);
        const CMatrix m = x.adjoint() * x;
        const auto f = numlin::psd_factor(m);
        CHECK(f.rank == r);
        CHECK(oracle::norm2(f.factor.adjoint() * f.factor - m) < 1e-11 * oracle::norm2(m));
    });
}

TEST_CASE("psd_sqrt squares back") {
    auto rng = random::make_rng(8);
    const CMatrix x = random::gaussian_matrix(4, 4, rng);
    const CMatrix m = x * x.adjoint();
    const CMatrix s = numlin::psd_sqrt(m);
    CHECK(oracle::norm2(s * s - m) < 1e-11 * oracle::norm2(m));
    CHECK(oracle::norm2(s - s.adjoint()) < 1e-12);
}

TEST_CASE("pinv examples and Penrose identities") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = 0.5;
    CHECK(oracle::norm2(numlin::pinv(d) - expected) < 1e-15);

    auto rng = random::make_rng(21);
    const CMatrix u = random::random_isometry(3, 3, rng);
    CHECK(oracle::norm2(numlin::pinv(u) - u.adjoint()) < 1e-12);

    prop::forall(13, 20, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const CMatrix a = random::gaussian_matrix(4, 6, rng);
        const CMatrix p = numlin::pinv(a);
        CHECK(oracle::norm2(a * p * a - a) < 1e-10);
        CHECK(oracle::norm2(p * a * p - p) < 1e-10);
        CHECK(oracle::norm2((a * p).adjoint() - a * p) < 1e-10);
        CHECK(oracle::norm2((p * a).adjoint() - p * a) < 1e-10);
    });
}

TEST_CASE("numerical_rank and range_basis") {
    auto rng = random::make_rng(4);
    const CMatrix x = random::gaussian_matrix(5, 2, rng) * random::gaussian_matrix(2, 4, rng);
    CHECK(numlin::numerical_rank(x) == 2);
    const CMatrix q = numlin::range_basis(x);
    REQUIRE(q.cols() == 2);
    CHECK(oracle::norm2(q.adjoint() * q - eye(2)) < 1e-12);
    CHECK(oracle::norm2(q * q.adjoint() * x - x) < 1e-12 * oracle::norm2(x));
    CHECK(numlin::numerical_rank(CMatrix::Zero(3, 3)) == 0);
}

TEST_CASE("complete_to_coisometry examples") {
    auto rng = random::make_rng(9);
    const CMatrix t = random::random_isometry(4, 2, rng).adjoint();  // 2 x 4 coisometry
    auto c = numlin::complete_to_coisometry(t);
    CHECK(c.added_cols == 0);
    CHECK(oracle::norm2(c.completion - t) < 1e-15);

    c = numlin::complete_to_coisometry(CMatrix::Zero(3, 2));
    CHECK(c.added_cols == 3);
    const CMatrix b = c.completion.rightCols(3);
    CHECK(oracle::norm2(b * b.adjoint() - eye(3)) < 1e-12);

    c = numlin::complete_to_coisometry(CMatrix::Constant(1, 1, 0.5));
    REQUIRE(c.added_cols == 1);
    CHECK(std::abs(c.completion(0, 1)) == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(oracle::norm2(c.completion * c.completion.adjoint() - eye(1)) < 1e-15);
}

TEST_CASE("complete_to_coisometry on random contractions") {
    prop::forall(14, 25, [](int c, std::mt19937_64& rng) {
        CAPTURE(c);
        const int k = random::uniform_int(rng, 1, 4), h = random::uniform_int(rng, 1, 4);
        const CMatrix t = random::random_contraction(k, h, rng, random::uniform(rng, 0.1, 1.0));
        const auto comp = numlin::complete_to_coisometry(t);
        CHECK(oracle::norm2(comp.completion.leftCols(h) - t) == 0.0);
        CHECK(oracle::norm2(comp.completion * comp.completion.adjoint() - eye(k)) < 1e-10);
        CHECK(comp.added_cols == numlin::numerical_rank(eye(k) - t * t.adjoint()));
    });
}

TEST_CASE("kron matches the direct construction") {
    auto rng = random::make_rng(2);
    const CMatrix a = random::gaussian_matrix(2, 3, rng), b = random::gaussian_matrix(3, 2, rng);
    CHECK(oracle::norm2(numlin::kron(a, b) - oracle::kron(a, b)) == 0.0);
}

TEST_CASE("Tolerances::validate") {
    CHECK_NOTHROW(Tolerances{}.validate());
    CHECK_THROWS_AS((Tolerances{0.0, 1e-10, 1e-8}.validate()), Error);
    CHECK_THROWS_AS((Tolerances{1e-10, 1e-10, 2.0}.validate()), Error);
}

TEST_CASE("non-Hermitian or non-finite input is rejected") {
    CMatrix m(2, 2);
    m << 1, 2, 0, 1;
    CHECK_THROWS_AS(numlin::hermitian_eig(m), Error);
    m << 1, std::nan(""), std::nan(""), 1;
    CHECK_THROWS_AS(numlin::is_psd(m), Error);
}
