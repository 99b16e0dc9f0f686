#include <doctest.h>

#include "oracles.hpp"
#include "gpsk/cur.hpp"

using namespace gpsk;

namespace {

bool all_flags(const CurReport& r, bool value) {
    for (const auto& f : r.conditions)
        if (f.value != value) return false;
    return true;
}

} // namespace

TEST_CASE("extraction") {
    RationalField q;
    auto a = Matrix<RationalField>::from_ints(q, {{1, 2}, {2, 4}});
    auto one = IndexSet::from_one_based({1}, 2);
    auto inst = extract(a, one, one);
    CHECK(inst.c == Matrix<RationalField>::from_ints(q, {{1}, {2}}));
    CHECK(inst.r == Matrix<RationalField>::from_ints(q, {{1, 2}}));
    CHECK(inst.u == Matrix<RationalField>::from_ints(q, {{1}}));
    CHECK(select_rows(inst.c, one) == inst.u);
    CHECK(select_cols(inst.r, one) == inst.u);

    auto full = extract(a, IndexSet::full(2), IndexSet::full(2));
    CHECK(full.c == a);
    CHECK(full.u == a);
    CHECK(full.r == a);
}

TEST_CASE("pivot selection") {
    RationalField q;
    auto [i3, j3] = select_indices(Matrix<RationalField>::identity(q, 3));
    CHECK(i3 == IndexSet::full(3));
    CHECK(j3 == IndexSet::full(3));
    auto [i0, j0] = select_indices(Matrix<RationalField>(q, 2, 3));
    CHECK(i0.empty());
    CHECK(j0.empty());

    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        auto a = random_matrix_with_rank(PrimeField(5), 4, 5, t % 5, rng);
        auto [is, js] = select_indices(a);
        CHECK(rank(submatrix(a, is, js)) == rank(a));
        CHECK(is.size() == rank(a));
    }
}

TEST_CASE("reconstruction") {
    RationalField q;
    auto a = Matrix<RationalField>::from_ints(q, {{2, 1}, {1, 1}});
    CHECK(reconstruct(a, invert(a), a) == a);

    // rank(U) < rank(A) over GF(2) 2x2: no inverse of U reconstructs A.
    for (const auto& m : oracle::all_matrices(PrimeField(2), 2, 2)) {
        for (const auto& is : oracle::nonempty_sets(2)) {
            for (const auto& js : oracle::nonempty_sets(2)) {
                auto inst = extract(m, is, js);
                if (rank(inst.u) == rank(m)) continue;
                for (const auto& ui : enumerate_generalized_inverses(inst.u)) CHECK(reconstruct(inst.c, ui, inst.r) != m);
            }
        }
    }
}

TEST_CASE("Schur residuals") {
    RationalField q;
    auto one = IndexSet::from_one_based({1}, 2);
    auto i2 = Matrix<RationalField>::identity(q, 2);
    auto p = schur_parts(i2, one, one, Matrix<RationalField>::from_ints(q, {{1}}));
    CHECK(p.complement == Matrix<RationalField>::from_ints(q, {{1}}));
    CHECK_FALSE(p.vanishes(0.0));

    auto ones = Matrix<RationalField>::from_ints(q, {{1, 1}, {1, 1}});
    auto p1 = schur_parts(ones, one, one, Matrix<RationalField>::from_ints(q, {{1}}));
    CHECK(p1.vanishes(0.0));
    CHECK(is_zero(p1.complement));
    CHECK(is_zero(p1.left));
    CHECK(is_zero(p1.right));
}

TEST_CASE("CUR flags on small examples") {
    RationalField q;
    auto i2 = Matrix<RationalField>::identity(q, 2);
    auto one = IndexSet::from_one_based({1}, 2);
    auto rep = verify_cur(i2, one, one);
    CHECK(rep.consistent());
    CHECK(all_flags(rep, false));

    auto full = verify_cur(i2, IndexSet::full(2), IndexSet::full(2));
    CHECK(all_flags(full, true));
    CHECK(full.ranks.a == 2);
}

TEST_CASE("CUR flags over every GF(2) matrix up to 2x3") {
    SamplingBudget budget;
    for (std::size_t m = 1; m <= 2; ++m) {
        for (std::size_t n = 1; n <= 3; ++n) {
            for (const auto& a : oracle::all_matrices(PrimeField(2), m, n)) {
                for (const auto& is : oracle::nonempty_sets(m)) {
                    for (const auto& js : oracle::nonempty_sets(n)) {
                        auto rep = verify_cur(a, is, js, budget);
                        REQUIRE(rep.consistent());
                        bool expected = oracle::span_rank(submatrix(a, is, js)) == oracle::span_rank(a);
                        REQUIRE(rep.conditions[0].value == expected);
                        for (const auto& f : rep.conditions) REQUIRE(f.mode == Mode::exhaustive);
                    }
                }
            }
        }
    }
}

TEST_CASE("CUR flags on pivot-selected random instances") {
    Rng rng(17);
    SamplingBudget budget{3, 16, kDefaultEnumCap};
    for (int t = 0; t < 30; ++t) {
        auto a5 = random_matrix_with_rank(PrimeField(5), 4, 5, 1 + t % 3, rng);
        auto [i5, j5] = select_indices(a5);
        CHECK(all_flags(verify_cur(a5, i5, j5, budget), true));

        auto aq = random_matrix_with_rank(RationalField{}, 4, 4, 1 + t % 3, rng);
        auto [iq, jq] = select_indices(aq);
        auto repq = verify_cur(aq, iq, jq, budget);
        CHECK(all_flags(repq, true));
        CHECK(repq.conditions[3].mode == Mode::sampled);

        auto ac = random_matrix_with_rank(ComplexField(), 5, 4, 1 + t % 3, rng);
        auto [ic, jc] = select_indices(ac);
        CHECK(all_flags(verify_cur(ac, ic, jc, budget), true));
    }
}

TEST_CASE("undersized index sets fail as a block") {
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        auto a = random_matrix_with_rank(RationalField{}, 4, 5, 3, rng);
        auto [is, js] = select_indices(a);
        IndexSet small({is[0], is[1]}, 4);
        auto rep = verify_cur(a, small, js);
        CHECK(rep.consistent());
        CHECK_FALSE(rep.conditions[0].value);
    }
}

TEST_CASE("R A~ C = U for every inverse and every index pair") {
    for (const auto& a : oracle::all_matrices(PrimeField(2), 2, 3)) {
        for (const auto& ai : enumerate_generalized_inverses(a)) {
            for (const auto& is : oracle::nonempty_sets(2))
                for (const auto& js : oracle::nonempty_sets(3)) REQUIRE(core_identity_check(a, is, js, ai));
        }
    }
    RationalField q;
    Rng rng(2);
    auto i2 = Matrix<RationalField>::identity(q, 2);
    auto one = IndexSet::from_one_based({1}, 2);
    CHECK(core_identity_check(i2, one, one, sample_generalized_inverse(i2, rng)));
    CHECK_THROWS_AS(core_identity_check(i2, one, one, Matrix<RationalField>(q, 2, 2)), Error);
}

TEST_CASE("projection identities") {
    for (std::size_t m = 1; m <= 3; ++m) {
        for (std::size_t n = 1; n <= 3; ++n) {
            for (const auto& a : oracle::all_matrices(PrimeField(2), m, n)) {
                for (const auto& is : oracle::nonempty_sets(m)) {
                    for (const auto& js : oracle::nonempty_sets(n)) {
                        auto inst = extract(a, is, js);
                        if (rank(inst.u) != rank(a)) continue;
                        for (const auto& f : projection_identities(inst)) {
                            REQUIRE(f.value);
                            REQUIRE(f.mode == Mode::exhaustive);
                        }
                    }
                }
            }
        }
    }
    Rng rng(5);
    auto ac = random_matrix_with_rank(ComplexField(), 5, 4, 2, rng);
    auto [ic, jc] = select_indices(ac);
    for (const auto& f : projection_identities(extract(ac, ic, jc))) CHECK(f.value);

    auto i2 = Matrix<RationalField>::identity(RationalField{}, 2);
    auto one = IndexSet::from_one_based({1}, 2);
    CHECK_THROWS_AS(projection_identities(extract(i2, one, one)), Error);
}

TEST_CASE("Moore-Penrose conditions pass through R~ U C~") {
    Rng rng(31);
    RealField r;
    for (int t = 0; t < 30; ++t) {
        auto a = random_matrix_with_rank(r, 5, 4, 2, rng);
        auto [is, js] = select_indices(a);
        auto inst = extract(a, is, js);
        auto both = mp_inheritance_check(inst, moore_penrose(inst.c), moore_penrose(inst.r));
        CHECK(both.result.all());
        CHECK(both.holds());

        auto left = mp_inheritance_check(inst, moore_penrose(inst.c), sample_generalized_inverse(inst.r, rng));
        CHECK(left.result.c1);
        CHECK(left.result.c2);
        CHECK(left.result.c3);
        CHECK(left.holds());
    }
    for (int t = 0; t < 100; ++t) {
        auto a = random_matrix_with_rank(PrimeField(5), 4, 4, 1 + t % 3, rng);
        auto [is, js] = select_indices(a);
        auto inst = extract(a, is, js);
        auto s = mp_inheritance_check(inst, sample_generalized_inverse(inst.c, rng), sample_generalized_inverse(inst.r, rng));
        CHECK(s.result.c1);
        CHECK(s.result.c2);
    }
}

TEST_CASE("Drazin inverse cannot replace U~") {
    auto ev = drazin_counterexample();
    CHECK(ev.index == 2);
    CHECK(is_zero(ev.drazin));
    CHECK(is_zero(ev.reconstruction));
    CHECK_FALSE(ev.reconstructs);
    CHECK(ev.rank_u == ev.rank_a);

    RationalField q;
    auto inv = drazin_cur_check(Matrix<RationalField>::from_ints(q, {{2, 1}, {1, 1}}));
    CHECK(inv.reconstructs);
    auto e11 = drazin_cur_check(Matrix<RationalField>::from_ints(q, {{1, 0}, {0, 0}}));
    CHECK(e11.drazin == Matrix<RationalField>::from_ints(q, {{1, 0}, {0, 0}}));
    CHECK(e11.reconstructs);
}
