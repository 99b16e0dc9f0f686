#pragma once

// Matrix pseudoskeleton (CUR) machinery: index selection, extraction,
// reconstruction and checkers for the characterization of A = C U~ R with
// arbitrary generalized inverses.

#include <array>
#include <cstdint>
#include <utility>

#include "gpsk/geninv.hpp"
#include "gpsk/quantify.hpp"

namespace gpsk {

template <Field K>
struct CurInstance {
    Matrix<K> a;
    IndexSet rows;  // I
    IndexSet cols;  // J
    Matrix<K> c;    // A(:, J)
    Matrix<K> u;    // A(I, J)
    Matrix<K> r;    // A(I, :)
};

template <Field K>
CurInstance<K> extract(const Matrix<K>& a, const IndexSet& rows, const IndexSet& cols) {
    Matrix<K> c = select_cols(a, cols);
    Matrix<K> r = select_rows(a, rows);
    Matrix<K> u = submatrix(a, rows, cols);
    return {a, IndexSet(rows.indices(), a.rows()), IndexSet(cols.indices(), a.cols()), std::move(c), std::move(u),
            std::move(r)};
}

/// J = pivot columns of A, I = pivot rows of A(:, J); |I| = |J| = rank(A).
template <Field K>
std::pair<IndexSet, IndexSet> select_indices(const Matrix<K>& a, Rng* rng = nullptr) {
    IndexSet cols(pivot_columns(a, rng), a.cols());
    IndexSet rows(pivot_columns(transpose(select_cols(a, cols)), rng), a.rows());
    return {std::move(rows), std::move(cols)};
}

template <Field K>
Matrix<K> reconstruct(const Matrix<K>& c, const Matrix<K>& u_inv, const Matrix<K>& r) {
    if (c.cols() != u_inv.rows() || u_inv.cols() != r.rows()) {
        raise(ErrorCode::shape_mismatch, "C, U~, R are not conformable");
    }
    return c * u_inv * r;
}

/// ||x||_F <= tol * max(scale, 1) for floats, x == 0 for exact fields.
template <Field K>
bool negligible(const Matrix<K>& x, double scale) {
    if constexpr (K::is_exact) {
        (void)scale;
        return is_zero(x);
    } else {
        return frobenius_norm(x) <= x.field().eps() * std::max(scale, 1.0);
    }
}

/// Rows permuted I-first and columns J-first give A = [[U, B], [D, E]].
template <Field K>
struct SchurParts {
    Matrix<K> u;
    Matrix<K> b;
    Matrix<K> d;
    Matrix<K> e;
    Matrix<K> complement;  // A/U = E - D U~ B
    Matrix<K> left;        // D (I - U~ U)
    Matrix<K> right;       // (I - U U~) B

    bool vanishes(double scale) const {
        return negligible(complement, scale) && negligible(left, scale) && negligible(right, scale);
    }
};

template <Field K>
SchurParts<K> schur_parts(const Matrix<K>& a, const IndexSet& rows, const IndexSet& cols, const Matrix<K>& u_inv) {
    IndexSet row_rest = IndexSet(rows.indices(), a.rows()).complement();
    IndexSet col_rest = IndexSet(cols.indices(), a.cols()).complement();
    Matrix<K> u = submatrix(a, rows, cols);
    if (u_inv.rows() != u.cols() || u_inv.cols() != u.rows()) raise(ErrorCode::shape_mismatch, "U~ has the wrong shape");
    Matrix<K> b = submatrix(a, rows, col_rest);
    Matrix<K> d = submatrix(a, row_rest, cols);
    Matrix<K> e = submatrix(a, row_rest, col_rest);
    const K& k = a.field();
    Matrix<K> complement = e - d * u_inv * b;
    Matrix<K> left = d * (Matrix<K>::identity(k, u.cols()) - u_inv * u);
    Matrix<K> right = (Matrix<K>::identity(k, u.rows()) - u * u_inv) * b;
    return {std::move(u), std::move(b), std::move(d), std::move(e), std::move(complement), std::move(left), std::move(right)};
}

struct CurRanks {
    std::size_t a = 0;
    std::size_t c = 0;
    std::size_t u = 0;
    std::size_t r = 0;
};

/// Condition flags (i)..(x) of the matrix characterization, in order:
///   0 rank(U) = rank(A)            1 rank(C) = rank(R) = rank(A)
///   2/3 A = C U~ R  (some/all U~)  4/5 A = C C~ A R~ R (some/all C~, R~)
///   6/7 R~ U C~ is a generalized inverse of A (some/all)
///   8/9 Schur residuals vanish (some/all U~, one U~ shared by all three)
struct CurReport {
    FieldSpec field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    CurRanks ranks;
    IndexSet row_indices;
    IndexSet col_indices;
    std::array<Flag, 10> conditions{};
    std::uint64_t seed = 0;

    /// The ten flags must agree; anything else is a bug.
    bool consistent() const noexcept {
        for (const auto& f : conditions)
            if (f.value != conditions[0].value) return false;
        return true;
    }
};

template <Field K>
CurReport verify_cur(const Matrix<K>& a, const IndexSet& rows, const IndexSet& cols,
                    const SamplingBudget& budget = {}) {
    CurInstance<K> inst = extract(a, rows, cols);
    Rng rng(budget.seed);
    const double scale = K::is_exact ? 0.0 : frobenius_norm(a);

    CurReport rep;
    rep.field = a.field().spec();
    rep.rows = a.rows();
    rep.cols = a.cols();
    rep.ranks = {rank(a), rank(inst.c), rank(inst.u), rank(inst.r)};
    rep.row_indices = inst.rows;
    rep.col_indices = inst.cols;
    rep.seed = budget.seed;

    rep.conditions[0] = {rep.ranks.u == rep.ranks.a, Mode::exhaustive};
    rep.conditions[1] = {rep.ranks.c == rep.ranks.a && rep.ranks.r == rep.ranks.a, Mode::exhaustive};

    InverseFamily<K> fam_u(inst.u);
    InverseFamily<K> fam_c(inst.c);
    InverseFamily<K> fam_r(inst.r);

    auto cur = quantify(fam_u, budget, rng, [&](const Matrix<K>& ui) { return equal(inst.c * ui * inst.r, a); });
    rep.conditions[2] = cur.some_flag();
    rep.conditions[3] = cur.all_flag();

    auto ccarr = quantify_pairs(
        fam_c, fam_r, budget, rng, [&](const Matrix<K>& ci) { return inst.c * ci * a; },
        [&](const Matrix<K>& ri) { return ri * inst.r; },
        [&](const Matrix<K>& l, const Matrix<K>& r) { return equal(l * r, a); });
    rep.conditions[4] = ccarr.some_flag();
    rep.conditions[5] = ccarr.all_flag();

    // A (R~ U C~) A = A, split as (A R~ U)(C~ A).
    auto ruc = quantify_pairs(
        fam_r, fam_c, budget, rng, [&](const Matrix<K>& ri) { return a * ri * inst.u; },
        [&](const Matrix<K>& ci) { return ci * a; },
        [&](const Matrix<K>& l, const Matrix<K>& r) { return equal(l * r, a); });
    rep.conditions[6] = ruc.some_flag();
    rep.conditions[7] = ruc.all_flag();

    auto schur = quantify(fam_u, budget, rng, [&](const Matrix<K>& ui) {
        return schur_parts(a, inst.rows, inst.cols, ui).vanishes(scale);
    });
    rep.conditions[8] = schur.some_flag();
    rep.conditions[9] = schur.all_flag();
    return rep;
}

/// R A~ C = U for the given generalized inverse of A; holds with no rank
/// assumption on U.
template <Field K>
bool core_identity_check(const Matrix<K>& a, const IndexSet& rows, const IndexSet& cols, const Matrix<K>& a_inv) {
    if (!is_generalized_inverse(a, a_inv)) raise(ErrorCode::not_generalized_inverse, "A~ is not a generalized inverse of A");
    CurInstance<K> inst = extract(a, rows, cols);
    return equal(inst.r * a_inv * inst.c, inst.u);
}

/// The six projection identities, each quantified over every inverse of the
/// matrix it involves:
///   0 C C~ A = A     1 A R~ R = A     2 C U~ U = C
///   3 U U~ R = R     4 U C~ C = U     5 R R~ U = U
template <Field K>
std::array<Flag, 6> projection_identities(const CurInstance<K>& inst, const SamplingBudget& budget = {}) {
    std::size_t ra = rank(inst.a);
    if (rank(inst.u) != ra || rank(inst.c) != ra || rank(inst.r) != ra) {
        raise(ErrorCode::rank_hypothesis_violated, "projection identities need rank(U) = rank(C) = rank(R) = rank(A)");
    }
    Rng rng(budget.seed);
    InverseFamily<K> fam_u(inst.u);
    InverseFamily<K> fam_c(inst.c);
    InverseFamily<K> fam_r(inst.r);
    const auto& a = inst.a;
    const auto& c = inst.c;
    const auto& u = inst.u;
    const auto& r = inst.r;
    std::array<Flag, 6> out;
    out[0] = quantify(fam_c, budget, rng, [&](const Matrix<K>& ci) { return equal(c * ci * a, a); }).all_flag();
    out[1] = quantify(fam_r, budget, rng, [&](const Matrix<K>& ri) { return equal(a * ri * r, a); }).all_flag();
    out[2] = quantify(fam_u, budget, rng, [&](const Matrix<K>& ui) { return equal(c * ui * u, c); }).all_flag();
    out[3] = quantify(fam_u, budget, rng, [&](const Matrix<K>& ui) { return equal(u * ui * r, r); }).all_flag();
    out[4] = quantify(fam_c, budget, rng, [&](const Matrix<K>& ci) { return equal(u * ci * c, u); }).all_flag();
    out[5] = quantify(fam_r, budget, rng, [&](const Matrix<K>& ri) { return equal(r * ri * u, u); }).all_flag();
    return out;
}

/// Conditions met by R~ U C~ together with the hypotheses that force 3 and 4.
struct MpInheritance {
    MpConditionSet result;
    bool c_inv_has_c3 = false;  // C~ satisfies condition 3 w.r.t. C
    bool r_inv_has_c4 = false;  // R~ satisfies condition 4 w.r.t. R

    /// c1 and c2 always; c3 inherited from C~, c4 inherited from R~.
    bool holds() const noexcept {
        return result.c1 && result.c2 && (!c_inv_has_c3 || result.c3) && (!r_inv_has_c4 || result.c4);
    }
};

template <Field K>
MpInheritance mp_inheritance_check(const CurInstance<K>& inst, const Matrix<K>& c_inv, const Matrix<K>& r_inv) {
    if (rank(inst.u) != rank(inst.a)) raise(ErrorCode::rank_hypothesis_violated, "needs rank(U) = rank(A)");
    if (!is_generalized_inverse(inst.c, c_inv) || !is_generalized_inverse(inst.r, r_inv)) {
        raise(ErrorCode::not_generalized_inverse, "C~ and R~ must be generalized inverses of C and R");
    }
    MpInheritance out;
    out.result = mp_conditions(inst.a, r_inv * inst.u * c_inv);
    out.c_inv_has_c3 = mp_conditions(inst.c, c_inv).c3;
    out.r_inv_has_c4 = mp_conditions(inst.r, r_inv).c4;
    return out;
}

/// Evidence that a Drazin inverse can not stand in for U~ when C = R = U = A.
template <Field K>
struct DrazinCurEvidence {
    Matrix<K> a;
    Matrix<K> drazin;
    std::size_t index = 0;
    std::size_t rank_u = 0;
    std::size_t rank_a = 0;
    Matrix<K> reconstruction;  // C A^D R = A A^D A
    bool reconstructs = false;
};

template <Field K>
DrazinCurEvidence<K> drazin_cur_check(const Matrix<K>& a) {
    auto d = drazin_inverse(a);
    Matrix<K> rec = reconstruct(a, d.inverse, a);
    std::size_t ra = rank(a);
    bool same = equal(rec, a);
    return {a, std::move(d.inverse), d.index, ra, ra, std::move(rec), same};
}

/// A = [[0, 1], [0, 0]] over Q: rank(U) = rank(A) yet A A^D A = 0.
inline DrazinCurEvidence<RationalField> drazin_counterexample() {
    return drazin_cur_check(Matrix<RationalField>::from_ints(RationalField{}, {{0, 1}, {0, 0}}));
}

} // namespace gpsk
