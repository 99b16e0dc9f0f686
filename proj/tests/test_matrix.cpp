#include <doctest.h>

#include "oracles.hpp"

using namespace gpsk;

namespace {

template <Field K>
void check_rnf(const Matrix<K>& a) {
    auto f = rank_normal_form(a);
    CHECK(equal(f.reconstruct(), a));
    CHECK(equal(f.f * f.f_inv, Matrix<K>::identity(a.field(), a.rows())));
    CHECK(equal(f.g * f.g_inv, Matrix<K>::identity(a.field(), a.cols())));
    CHECK(f.rank == rank(a));
}

} // namespace

TEST_CASE("products and adjoints") {
    PrimeField k(5);
    auto a = Matrix<PrimeField>::from_ints(k, {{1, 2}, {3, 4}});
    auto x = Matrix<PrimeField>::from_ints(k, {{1}, {1}});
    CHECK(a * x == Matrix<PrimeField>::from_ints(k, {{3}, {2}}));
    CHECK(a * Matrix<PrimeField>::identity(k, 2) == a);

    ComplexField c;
    Matrix<ComplexField> i1(c, 1, 1, {{0.0, 1.0}});
    CHECK(transpose_conj(i1)(0, 0) == std::complex<double>(0.0, -1.0));

    CHECK_THROWS_AS(a * Matrix<PrimeField>(k, 3, 1), Error);
    CHECK_THROWS_AS(a * Matrix<PrimeField>(PrimeField(7), 2, 1), Error);
}

TEST_CASE("rank against row-span counting over GF(2) and GF(3)") {
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t n = 1; n <= 3; ++n)
            for (const auto& a : oracle::all_matrices(PrimeField(2), m, n)) REQUIRE(rank(a) == oracle::span_rank(a));
    for (const auto& a : oracle::all_matrices(PrimeField(3), 2, 3)) REQUIRE(rank(a) == oracle::span_rank(a));
}

TEST_CASE("rank examples") {
    CHECK(rank(Matrix<PrimeField>(PrimeField(2), 3, 3)) == 0);
    CHECK(rank(Matrix<RationalField>::identity(RationalField{}, 4)) == 4);
    // Rows 2 and 3 are 2x and 3x row 1 mod 5.
    auto a = Matrix<PrimeField>::from_ints(PrimeField(5), {{1, 2, 3}, {2, 4, 1}, {3, 1, 4}});
    CHECK(oracle::span_rank(a) == 1);
    CHECK(rank(a) == 1);
}

TEST_CASE("rational rank against minors") {
    Rng rng(11);
    RationalField q;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = 1 + trial % 4, n = 1 + (trial / 4) % 4;
        std::size_t r = std::min(m, n) == 0 ? 0 : static_cast<std::size_t>(trial % (std::min(m, n) + 1));
        auto a = random_matrix_with_rank(q, m, n, r, rng);
        CHECK(oracle::minor_rank(a) == r);
        CHECK(rank(a) == r);
    }
}

TEST_CASE("real and complex rank against the SVD") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = trial % 4;
        auto a = random_matrix_with_rank(RealField(), 5, 6, r, rng);
        CHECK(oracle::svd_rank(oracle::to_eigen(a)) == r);
        auto c = random_matrix_with_rank(ComplexField(), 4, 6, r, rng);
        CHECK(oracle::svd_rank(oracle::to_eigen(c)) == r);
        CHECK(rank(c) == r);
    }
}

TEST_CASE("rank normal form reconstructs") {
    check_rnf(Matrix<RationalField>::identity(RationalField{}, 3));
    check_rnf(Matrix<RationalField>(RationalField{}, 2, 3));
    auto ones = Matrix<PrimeField>::from_ints(PrimeField(2), {{1, 1}, {1, 1}});
    auto f = rank_normal_form(ones);
    CHECK(f.rank == 1);
    check_rnf(ones);
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t n = 1; n <= 3; ++n)
            for (const auto& a : oracle::all_matrices(PrimeField(2), m, n)) check_rnf(a);
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        check_rnf(random_matrix_with_rank(PrimeField(7), 4, 5, t % 5, rng));
        check_rnf(random_matrix_with_rank(RationalField{}, 3, 5, t % 4, rng));
        check_rnf(random_matrix_with_rank(RealField(), 5, 4, t % 5, rng));
        check_rnf(random_matrix_with_rank(ComplexField(), 4, 4, t % 5, rng));
    }
}

TEST_CASE("inversion") {
    RationalField q;
    CHECK(invert(Matrix<RationalField>::identity(q, 3)) == Matrix<RationalField>::identity(q, 3));
    CHECK(invert(Matrix<PrimeField>::from_ints(PrimeField(5), {{2}})) ==
          Matrix<PrimeField>::from_ints(PrimeField(5), {{3}}));
    auto a = Matrix<RationalField>::from_ints(q, {{1, 1}, {0, 1}});
    CHECK(invert(a) == Matrix<RationalField>::from_ints(q, {{1, -1}, {0, 1}}));
    CHECK(a * invert(a) == Matrix<RationalField>::identity(q, 2));
    CHECK_THROWS_AS(invert(Matrix<RationalField>::from_ints(q, {{1, 2}, {2, 4}})), Error);
    CHECK_THROWS_AS(invert(Matrix<RationalField>(q, 2, 3)), Error);
}

TEST_CASE("submatrices") {
    auto a = Matrix<PrimeField>::from_ints(PrimeField(5), {{1, 2, 3}, {2, 4, 1}, {3, 1, 4}});
    auto s = submatrix(a, IndexSet::from_one_based({1}, 3), IndexSet::from_one_based({2, 3}, 3));
    CHECK(s == Matrix<PrimeField>::from_ints(PrimeField(5), {{2, 3}}));
    auto i3 = Matrix<RationalField>::identity(RationalField{}, 3);
    auto i12 = IndexSet::from_one_based({1, 2}, 3);
    CHECK(submatrix(i3, i12, i12) == Matrix<RationalField>::identity(RationalField{}, 2));
}

TEST_CASE("index sets") {
    auto s = IndexSet::from_one_based({3, 1}, 4);
    CHECK(s.indices() == std::vector<std::size_t>{0, 2});
    CHECK(s.one_based() == std::vector<std::size_t>{1, 3});
    CHECK(s.complement().indices() == std::vector<std::size_t>{1, 3});
    CHECK_THROWS_AS(IndexSet::from_one_based({0}, 3), Error);
    CHECK_THROWS_AS(IndexSet::from_one_based({4}, 3), Error);
    CHECK_THROWS_AS(IndexSet::from_one_based({1, 1}, 3), Error);
    CHECK_THROWS_AS(IndexSet({2, 1}, 3), Error);
}

TEST_CASE("kronecker products") {
    PrimeField k(3);
    auto b = Matrix<PrimeField>::from_ints(k, {{1, 2}, {0, 1}});
    auto kb = kron(Matrix<PrimeField>::identity(k, 2), b);
    Matrix<PrimeField> expect(k, 4, 4);
    set_block(expect, 0, 0, b);
    set_block(expect, 2, 2, b);
    CHECK(kb == expect);
    CHECK(kron(b, Matrix<PrimeField>::from_ints(k, {{1}})) == b);

    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        auto x = random_matrix(k, 2, 3, rng);
        auto y = random_matrix(k, 2, 3, rng);
        CHECK(rank(kron(x, y)) == rank(x) * rank(y));
    }
}

TEST_CASE("random matrices of prescribed rank") {
    Rng rng(3);
    for (std::size_t r = 0; r <= 3; ++r) CHECK(rank(random_matrix_with_rank(PrimeField(2), 3, 4, r, rng)) == r);
    CHECK_THROWS_AS(random_matrix_with_rank(PrimeField(5), 2, 3, 3, rng), Error);
}

TEST_CASE("powers") {
    auto n = Matrix<RationalField>::from_ints(RationalField{}, {{0, 1}, {0, 0}});
    CHECK(power(n, 0) == Matrix<RationalField>::identity(RationalField{}, 2));
    CHECK(is_zero(power(n, 2)));
    CHECK_THROWS_AS(power(Matrix<RationalField>(RationalField{}, 2, 3), 2), Error);
}
