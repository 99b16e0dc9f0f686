#include <doctest.h>

#include "oracles.hpp"

using namespace gpsk;

namespace {

Tensor<RationalField> iota_tensor(std::vector<std::size_t> shape) {
    Tensor<RationalField> t(RationalField{}, std::move(shape));
    long v = 0;
    for (auto& x : t.data()) x = v++;
    return t;
}

template <Field K>
Matrix<K> rows_of(const K& k, std::initializer_list<std::initializer_list<long long>> rows) {
    return Matrix<K>::from_ints(k, rows);
}

} // namespace

TEST_CASE("unfolding column order") {
    RationalField q;
    auto t = iota_tensor({2, 3, 2});
    CHECK(unfold(t, 0) == rows_of(q, {{0, 2, 4, 6, 8, 10}, {1, 3, 5, 7, 9, 11}}));
    CHECK(unfold(t, 1) == rows_of(q, {{0, 1, 6, 7}, {2, 3, 8, 9}, {4, 5, 10, 11}}));
    CHECK(unfold(t, 2) == rows_of(q, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}}));
    for (std::size_t mode = 0; mode < 3; ++mode) {
        CHECK(unfold(t, mode) == oracle::unfold_by_definition(t, mode));
        CHECK(fold(unfold(t, mode), mode, t.shape()) == t);
    }
    CHECK_THROWS_AS(unfold(t, 3), Error);
}

TEST_CASE("unfolding special cases") {
    RationalField q;
    auto m = iota_tensor({2, 3});
    CHECK(unfold(m, 0) == rows_of(q, {{0, 2, 4}, {1, 3, 5}}));
    CHECK(unfold(m, 1) == transpose(unfold(m, 0)));

    Tensor<RationalField> ones(q, {2, 2, 2});
    for (auto& x : ones.data()) x = 1;
    for (std::size_t mode = 0; mode < 3; ++mode) CHECK(unfold(ones, mode) == rows_of(q, {{1, 1, 1, 1}, {1, 1, 1, 1}}));

    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        Tensor<PrimeField> x(PrimeField(5), {2, 3, 1, 4});
        for (auto& v : x.data()) v = PrimeField(5).sample(rng);
        for (std::size_t mode = 0; mode < 4; ++mode) CHECK(unfold(x, mode) == oracle::unfold_by_definition(x, mode));
    }
}

TEST_CASE("mode products") {
    Rng rng(8);
    PrimeField k(3);
    for (int t = 0; t < 30; ++t) {
        Tensor<PrimeField> x(k, {2, 3, 2});
        for (auto& v : x.data()) v = k.sample(rng);
        auto a = random_matrix(k, 4, 2, rng);
        auto b = random_matrix(k, 2, 3, rng);
        CHECK(mode_product(x, a, 0) == oracle::mode_product_by_definition(x, a, 0));
        CHECK(mode_product(x, b, 1) == oracle::mode_product_by_definition(x, b, 1));
        CHECK(mode_product(mode_product(x, a, 0), b, 1) == mode_product(mode_product(x, b, 1), a, 0));
        CHECK(mode_product(x, Matrix<PrimeField>::identity(k, 2), 2) == x);
    }
    auto m = iota_tensor({2, 3});
    auto a = rows_of(RationalField{}, {{1, 2}, {0, 1}});
    Tensor<RationalField> prod = mode_product(m, a, 0);
    CHECK(unfold(prod, 0) == a * unfold(m, 0));
    CHECK_THROWS_AS(mode_product(m, a, 1), Error);
}

TEST_CASE("multilinear rank") {
    PrimeField k(7);
    CHECK(multilinear_rank(Tensor<PrimeField>(k, {2, 3, 4})) == std::vector<std::size_t>{0, 0, 0});

    Tensor<RationalField> outer(RationalField{}, {2, 3, 2});
    const long a[] = {1, 2}, b[] = {3, -1, 2}, c[] = {5, 7};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t l = 0; l < 2; ++l) outer({i, j, l}) = a[i] * b[j] * c[l];
    CHECK(multilinear_rank(outer) == std::vector<std::size_t>{1, 1, 1});

    Rng rng(6);
    for (int t = 0; t < 10; ++t) {
        auto x = random_low_mlrank_tensor(k, {4, 5, 6}, {2, 2, 2}, rng);
        CHECK(multilinear_rank(x) == std::vector<std::size_t>{2, 2, 2});
        std::vector<std::size_t> r;
        for (std::size_t mode = 0; mode < 3; ++mode) r.push_back(oracle::span_rank(unfold(x, mode)));
        CHECK(r == std::vector<std::size_t>{2, 2, 2});
    }
    auto full = random_low_mlrank_tensor(RationalField{}, {2, 3, 2}, {2, 3, 2}, rng);
    CHECK(multilinear_rank(full) == std::vector<std::size_t>{2, 3, 2});
    CHECK(multilinear_rank(random_low_mlrank_tensor(k, {3, 3, 3}, {1, 1, 1}, rng)) == std::vector<std::size_t>{1, 1, 1});
    CHECK_THROWS_AS(random_low_mlrank_tensor(k, {3, 3, 3}, {4, 1, 1}, rng), Error);
    CHECK_THROWS_AS(random_low_mlrank_tensor(k, {3, 3, 3}, {3, 1, 1}, rng), Error);
}

TEST_CASE("index maps into unfoldings") {
    std::vector<std::size_t> shape{2, 2, 2};
    std::vector<IndexSet> sets{IndexSet::full(2), IndexSet::from_one_based({1}, 2), IndexSet::from_one_based({1}, 2)};
    CHECK(kron_index_map(sets, shape, 0).one_based() == std::vector<std::size_t>{1});

    std::vector<std::size_t> s2{2, 3, 2};
    std::vector<IndexSet> sets2{IndexSet::from_one_based({2}, 2), IndexSet::full(3), IndexSet::from_one_based({1, 2}, 2)};
    auto j = kron_index_map(sets2, s2, 1);
    CHECK(j.one_based() == std::vector<std::size_t>{2, 4});

    // Subtensor-then-unfold equals unfold-then-select.
    auto t = iota_tensor(s2);
    std::vector<IndexSet> picks{IndexSet::from_one_based({2}, 2), IndexSet::from_one_based({1, 3}, 3),
                                IndexSet::from_one_based({1, 2}, 2)};
    for (std::size_t mode = 0; mode < 3; ++mode) {
        auto cols = kron_index_map(picks, s2, mode);
        CHECK(unfold(subtensor(t, picks), mode) == submatrix(unfold(t, mode), picks[mode], cols));
    }
    std::vector<IndexSet> all{IndexSet::full(2), IndexSet::full(3), IndexSet::full(2)};
    CHECK(kron_index_map(all, s2, 1) == IndexSet::full(4));
}

TEST_CASE("fiber CUR on low-rank GF(7) tensors") {
    Rng rng(10);
    PrimeField k(7);
    for (int t = 0; t < 10; ++t) {
        auto x = random_low_mlrank_tensor(k, {4, 5, 6}, {2, 2, 2}, rng);
        auto [rows, cols] = select_fiber_indices(x);
        auto rep = fiber_cur(x, rows, cols, {static_cast<std::uint64_t>(t), kTensorSamples, kDefaultEnumCap});
        CHECK(rep.consistent());
        for (const auto& f : rep.conditions) CHECK(f.value);
        CHECK(rep.moreover.value);

        auto small = rows;
        small[0] = IndexSet({rows[0][0]}, 4);
        auto bad = fiber_cur(x, small, cols);
        CHECK(bad.consistent());
        CHECK_FALSE(bad.conditions[0].value);
        CHECK_FALSE(bad.conditions[1].value);
    }
}

TEST_CASE("fiber CUR on a matrix matches the matrix checker") {
    Rng rng(3);
    RationalField q;
    auto a = random_matrix_with_rank(q, 3, 4, 2, rng);
    Tensor<RationalField> t(q, {3, 4});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) t({i, j}) = a(i, j);
    auto [rows, cols] = select_fiber_indices(t);
    auto rep = fiber_cur(t, rows, cols);
    CHECK(rep.consistent());
    CHECK(rep.conditions[1].value);
}

TEST_CASE("chidori CUR") {
    Rng rng(12);
    for (int t = 0; t < 10; ++t) {
        auto x = random_low_mlrank_tensor(PrimeField(5), {4, 4, 4}, {2, 2, 2}, rng);
        auto rows = select_chidori_indices(x);
        auto rep = chidori_cur(x, rows);
        CHECK(rep.consistent());
        for (const auto& f : rep.conditions) CHECK(f.value);
        CHECK_FALSE(rep.v_implies_i_tested);

        auto small = rows;
        small[1] = IndexSet({rows[1][0]}, 4);
        auto bad = chidori_cur(x, small);
        CHECK(bad.consistent());
        CHECK_FALSE(bad.conditions[0].value);
    }
    for (int t = 0; t < 10; ++t) {
        auto x = random_low_mlrank_tensor(RealField(), {4, 5, 3}, {2, 2, 2}, rng);
        auto rep = chidori_cur(x, select_chidori_indices(x));
        CHECK(rep.v_implies_i_tested);
        CHECK(rep.conditions[4].value);
        CHECK(rep.consistent());
        for (const auto& f : rep.conditions) CHECK(f.value);
    }
    auto x = random_low_mlrank_tensor(RationalField{}, {3, 3, 3}, {2, 2, 2}, rng);
    std::vector<IndexSet> full{IndexSet::full(3), IndexSet::full(3), IndexSet::full(3)};
    auto rep = chidori_cur(x, full);
    for (const auto& f : rep.conditions) CHECK(f.value);
}
