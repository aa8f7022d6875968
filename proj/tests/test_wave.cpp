#include "helpers.hpp"
#include "paramnet/devices.hpp"
#include "paramnet/mpijis.hpp"
#include "paramnet/wave.hpp"

#include <doctest.h>

using namespace paramnet;
using testutil::max_abs_diff;

namespace {

ScatterMatrix labeled(const Matrix& m, const std::string& el = "x") {
    std::vector<PortLabel> ports;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        ports.push_back({el, "p" + std::to_string(i), Channel::f1});
    return {ports, m};
}

}  // namespace

TEST_CASE("ScatterMatrix construction validates shape and port uniqueness") {
    Matrix m = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(ScatterMatrix({{"x", "p", Channel::f1}}, m), std::invalid_argument);
    CHECK_THROWS_AS(
        ScatterMatrix({{"x", "p", Channel::f1}, {"x", "p", Channel::f1}}, m),
        std::invalid_argument);
    Matrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(labeled(rect), std::invalid_argument);
}

TEST_CASE("is_unitary: identity, ideal isolator matrix, sub-unit diagonal") {
    CHECK(is_unitary(labeled(Matrix::Identity(4, 4))));

    const auto ideal = mpijis::full_smatrix(mpijis::MpijisParams{});
    CHECK(is_unitary(ideal));

    Matrix d = Matrix::Identity(4, 4);
    d(0, 0) = 0.5;
    CHECK_FALSE(is_unitary(labeled(d)));
}

TEST_CASE("db_power: unit, ideal forward amplitude, 0.1, zero sentinel") {
    CHECK(db_power(Complex{1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(db_power(Complex{0.0, 2.0 * std::numbers::sqrt2 / 3.0}) ==
          doctest::Approx(-0.51).epsilon(0.02));
    CHECK(db_power(Complex{0.1, 0.0}) == doctest::Approx(-20.0));
    CHECK(db_power(Complex{0.0, 0.0}) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("db_power is additive over products") {
    auto g = testutil::rng(101);
    for (int k = 0; k < 200; ++k) {
        const Complex x{testutil::uniform(g, -2, 2), testutil::uniform(g, -2, 2)};
        const Complex y{testutil::uniform(g, -2, 2), testutil::uniform(g, -2, 2)};
        if (std::abs(x) == 0.0 || std::abs(y) == 0.0) continue;
        CHECK(std::abs(db_power(x * y) - (db_power(x) + db_power(y))) < 1e-9);
    }
}

TEST_CASE("sub_block of the transparent-state matrix is the 2x2 antidiagonal i") {
    const auto S = mpijis::full_smatrix(mpijis::MpijisParams{0.0, 1.0 / std::numbers::sqrt2});
    const auto blk = sub_block(S, {S.ports[0], S.ports[1]}, {S.ports[0], S.ports[1]});
    Matrix want(2, 2);
    want << 0, Complex{0, 1}, Complex{0, 1}, 0;
    CHECK(max_abs_diff(blk.data, want) < 1e-15);
}

TEST_CASE("dagger is an involution; matmul with identity; associativity") {
    auto g = testutil::rng(202);
    for (int k = 0; k < 50; ++k) {
        Matrix a(3, 3), b(3, 3), c(3, 3);
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = 0; j < 3; ++j) {
                a(i, j) = {testutil::uniform(g, -1, 1), testutil::uniform(g, -1, 1)};
                b(i, j) = {testutil::uniform(g, -1, 1), testutil::uniform(g, -1, 1)};
                c(i, j) = {testutil::uniform(g, -1, 1), testutil::uniform(g, -1, 1)};
            }
        const auto A = labeled(a), B = labeled(b), C = labeled(c);
        CHECK(max_abs_diff(dagger(dagger(A)).data, A.data) == 0.0);
        CHECK(max_abs_diff(matmul(A, labeled(Matrix::Identity(3, 3))).data, A.data) == 0.0);
        CHECK(max_abs_diff(matmul(matmul(A, B), C).data, matmul(A, matmul(B, C)).data) < 1e-12);
    }
}

TEST_CASE("index_of and at reject unknown ports; sub_block preserves labels") {
    const auto h = hybrid90_smatrix();
    CHECK(h.index_of({"hybrid", "2p", Channel::f1}) == 3);
    CHECK_THROWS_AS(h.index_of({"hybrid", "nope", Channel::f1}), std::invalid_argument);
    CHECK(h.at({"hybrid", "1", Channel::f1}, {"hybrid", "1p", Channel::f1}) ==
          Complex{1.0 / std::numbers::sqrt2, 0.0});

    const auto blk = sub_block(h, {h.ports[0], h.ports[1]}, {h.ports[0], h.ports[1]});
    CHECK(blk.ports[0].port == "1");
    CHECK(blk.ports[1].port == "2");
}

TEST_CASE("Tolerance rejects non-positive bounds") {
    CHECK_THROWS_AS(Tolerance(0.0, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(Tolerance(1e-9, -1.0), std::invalid_argument);
}
