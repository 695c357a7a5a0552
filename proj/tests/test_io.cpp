#include <doctest.h>

#include <string>

#include "support.hpp"

#include "pickspace/io.hpp"

using namespace pickspace;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidInput;
}

} // namespace

TEST_CASE("malformed JSON reports line and column") {
    try {
        io::parse_text("{\n  \"family\": \"szego\",\n  \"points\": [0, 0.5,]\n}", "k.json");
        FAIL("malformed JSON accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
        const std::string what = e.what();
        CHECK(what.find("k.json:3:") != std::string::npos);
    }
    CHECK(kind_of([] { io::load_file("/nonexistent/kernel.json"); }) == ErrorKind::InvalidInput);
}

TEST_CASE("complex numbers, vectors and matrices") {
    CHECK(io::complex_from(json(1.5)) == cdouble(1.5, 0.0));
    CHECK(io::complex_from(json::array({0.25, -2})) == cdouble(0.25, -2.0));
    CHECK(kind_of([] { io::complex_from(json("x")); }) == ErrorKind::InvalidInput);

    auto rng = random::make_rng(111);
    const CMatrix m = random::gaussian_matrix(2, 3, rng);
    CHECK(io::matrix_from(io::to_json(m)) == m);
    const CVector v = random::gaussian_vector(4, rng);
    CHECK(io::vector_from(io::to_json(v)) == v);
    CHECK(kind_of([] { io::matrix_from(json::parse("[[1, 2], [3]]")); }) == ErrorKind::InvalidInput);
}

TEST_CASE("kernel specs for each family") {
    auto spec = io::kernel_from(json::parse(R"({"family": "szego", "points": [0, 0.5]})"));
    CHECK(std::abs(spec.kernel.gram(1, 1) - 4.0 / 3.0) < 1e-15);
    CHECK(spec.base_point == 0);

    spec = io::kernel_from(
        json::parse(R"({"family": "drury_arveson", "points": [[0, 0], [[0.3, 0.1], 0.2]], "base_point": 1})"));
    CHECK(spec.kernel.points[1].coords(0) == cdouble(0.3, 0.1));
    CHECK(spec.base_point == 1);

    spec = io::kernel_from(json::parse(R"({"family": "power_series", "points": [0, 0.5], "coeffs": [1, 1, 1]})"));
    CHECK(std::abs(spec.kernel.gram(1, 1) - 1.3125) < 1e-15);

    spec = io::kernel_from(json::parse(R"({"family": "explicit", "matrix": [[1, 1], [1, 2]], "labels": ["a", "b"]})"));
    CHECK(spec.kernel.points[1].label == "b");

    spec = io::kernel_from(json::parse(
        R"({"family": "example52", "points": [0, 0.5], "beta": [[0, 0.35355339059327373], [0, 0.17677669529663687]]})"));
    const auto p = io::decomposition_from(spec);
    CHECK(p.dim_b == 2);
    CHECK(p.explicit_beta);

    CHECK(kind_of([] { io::kernel_from(json::parse(R"({"family": "szego", "points": [0, 1.5]})")); }) ==
          ErrorKind::DomainViolation);
    CHECK(kind_of([] { io::kernel_from(json::parse(R"({"points": [0]})")); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { io::kernel_from(json::parse(R"({"family": "szego", "points": [0], "base_point": 3})")); }) ==
          ErrorKind::InvalidInput);
    CHECK(kind_of([] {
              io::decomposition_from(io::kernel_from(
                  json::parse(R"({"family": "szego", "points": [0, 0.5], "beta": [[0, 0.9]]})")));
          }) == ErrorKind::BetaMismatch);
}

TEST_CASE("multipliers and realizations round trip") {
    auto rng = random::make_rng(112);
    const auto p = fixtures::random_pick(rkhs::KernelFamily::Szego, rng, false, 3);
    const auto g = mult::random_multiplier(p.kernel, 2, 1, rng);
    const auto back = io::multiplier_from(io::to_json(g), 3);
    for (int i = 0; i < 3; ++i) CHECK(back.values[i] == g.values[i]);

    const auto scalar = io::multiplier_from(json::parse(R"({"dim_out": 1, "dim_in": 1, "values": [0.5, [0, 1], 2]})"), 3);
    CHECK(scalar.values[1](0, 0) == cdouble(0.0, 1.0));
    CHECK(kind_of([] { io::multiplier_from(json::parse(R"({"dim_out": 1, "dim_in": 1, "values": [1]})"), 3); }) ==
          ErrorKind::DimMismatch);

    const auto r = realize::random_realization(p, 2, 1, 1, rng);
    const auto rr = io::realization_from(io::to_json(r), p);
    CHECK(rr.a == r.a);
    CHECK(rr.d == r.d);
    CHECK(kind_of([&] {
              io::realization_from(json::parse(R"({"dim_x": 2, "a": [[1]], "b": [[1]], "c": [[1]], "d": [[1]]})"), p);
          }) == ErrorKind::DimMismatch);
}

TEST_CASE("subspace specs") {
    const std::vector<cdouble> pts{0.0, 0.5, cdouble(0.2, 0.3)};
    const auto p = pick::decompose(rkhs::make_kernel(rkhs::KernelFamily::Szego, rkhs::scalar_points(pts)));

    auto s = io::subspace_from(json::parse(R"({"coeff_dim": 1, "kernel_points": [0, 2]})"), p);
    CHECK(s.c.cols() == 2);
    CHECK(oracle::norm2(s.c.adjoint() * s.c - oracle::eye(2)) < 1e-12);

    s = io::subspace_from(json::parse(R"({"coeff_dim": 1, "generators": [[1, 1, 1]]})"), p);
    CHECK(s.c.cols() == 1);

    s = io::subspace_from(json::parse(R"({"multiplier": {"dim_out": 1, "dim_in": 1, "values": [0, 0.5, [0.2, 0.3]]}})"), p);
    CHECK(s.coeff_dim == 1);
    CHECK(beurling::check_b_invariance(s).ok);

    s = io::subspace_from(json::parse(R"({"coeff_dim": 1, "c": [[0.5], [0], [0]]})"), p);
    CHECK(s.c.rows() == 3);

    CHECK(kind_of([&] { io::subspace_from(json::parse(R"({"coeff_dim": 1})"), p); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([&] { io::subspace_from(json::parse(R"({"kernel_points": [5]})"), p); }) ==
          ErrorKind::InvalidInput);
}

TEST_CASE("decomposition report fields") {
    const std::vector<cdouble> pts{0.0, 0.5};
    const auto p = pick::decompose(rkhs::make_kernel(rkhs::KernelFamily::Szego, rkhs::scalar_points(pts)));
    const json j = io::to_json(p);
    CHECK(j.at("dim_b") == 1);
    CHECK(j.at("delta").size() == 2);
    CHECK(j.contains("beta"));
    CHECK(j.contains("f_min_eig"));
}
