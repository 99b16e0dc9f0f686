#pragma once

// n-mode tensors: unfoldings, mode products, multilinear rank and the fiber /
// chidori CUR checkers.
//
// Linearization is mode-1 fastest. The mode-i unfolding T_(i) is
// d_i x prod_{j != i} d_j and its column index lists the remaining modes with
// lower modes varying fastest. Modes are 0-based in this API.

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gpsk/cur.hpp"

namespace gpsk {

template <Field K>
class Tensor {
public:
    using value_type = typename K::value_type;

    Tensor(const K& field, std::vector<std::size_t> shape)
        : field_(field), shape_(std::move(shape)), data_(element_count(shape_), field.zero()) {}

    Tensor(const K& field, std::vector<std::size_t> shape, std::vector<value_type> data)
        : field_(field), shape_(std::move(shape)), data_(std::move(data)) {
        if (data_.size() != element_count(shape_)) raise(ErrorCode::shape_mismatch, "tensor data does not match its shape");
    }

    static std::size_t element_count(const std::vector<std::size_t>& shape) {
        if (shape.empty()) raise(ErrorCode::shape_mismatch, "tensors need at least one mode");
        return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>{});
    }

    const K& field() const noexcept { return field_; }
    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    std::size_t order() const noexcept { return shape_.size(); }
    std::size_t dim(std::size_t mode) const { return shape_.at(mode); }
    std::size_t size() const noexcept { return data_.size(); }

    std::size_t linear_index(std::span<const std::size_t> idx) const {
        std::size_t lin = 0;
        std::size_t stride = 1;
        for (std::size_t k = 0; k < shape_.size(); ++k) {
            lin += idx[k] * stride;
            stride *= shape_[k];
        }
        return lin;
    }

    value_type& operator()(std::span<const std::size_t> idx) { return data_[linear_index(idx)]; }
    const value_type& operator()(std::span<const std::size_t> idx) const { return data_[linear_index(idx)]; }
    value_type& operator()(std::initializer_list<std::size_t> idx) {
        return (*this)(std::span<const std::size_t>(idx.begin(), idx.size()));
    }
    const value_type& operator()(std::initializer_list<std::size_t> idx) const {
        return (*this)(std::span<const std::size_t>(idx.begin(), idx.size()));
    }

    std::span<const value_type> data() const noexcept { return data_; }
    std::span<value_type> data() noexcept { return data_; }

    friend bool operator==(const Tensor& a, const Tensor& b) { return a.shape_ == b.shape_ && a.data_ == b.data_; }

private:
    K field_;
    std::vector<std::size_t> shape_;
    std::vector<value_type> data_;
};

namespace detail {

inline void require_mode(std::size_t mode, std::size_t order) {
    if (mode >= order) {
        raise(ErrorCode::bad_mode, "mode " + std::to_string(mode + 1) + " outside [1, " + std::to_string(order) + "]");
    }
}

/// Advances a mixed-radix counter (first digit fastest); false after wrap.
inline bool next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& shape) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (++idx[k] < shape[k]) return true;
        idx[k] = 0;
    }
    return false;
}

/// Column of the mode-`mode` unfolding holding multi-index `idx`.
inline std::size_t unfold_column(std::span<const std::size_t> idx, const std::vector<std::size_t>& shape,
                                 std::size_t mode) {
    std::size_t col = 0;
    std::size_t stride = 1;
    for (std::size_t k = 0; k < shape.size(); ++k) {
        if (k == mode) continue;
        col += idx[k] * stride;
        stride *= shape[k];
    }
    return col;
}

} // namespace detail

template <Field K>
Matrix<K> unfold(const Tensor<K>& t, std::size_t mode) {
    detail::require_mode(mode, t.order());
    const auto& shape = t.shape();
    std::size_t others = 1;
    for (std::size_t k = 0; k < shape.size(); ++k)
        if (k != mode) others *= shape[k];
    Matrix<K> out(t.field(), shape[mode], others);
    if (t.size() == 0) return out;
    std::vector<std::size_t> idx(shape.size(), 0);
    std::size_t lin = 0;
    do {
        out(idx[mode], detail::unfold_column(idx, shape, mode)) = t.data()[lin++];
    } while (detail::next_index(idx, shape));
    return out;
}

template <Field K>
Tensor<K> fold(const Matrix<K>& m, std::size_t mode, std::vector<std::size_t> shape) {
    detail::require_mode(mode, shape.size());
    Tensor<K> out(m.field(), std::move(shape));
    const auto& s = out.shape();
    if (m.rows() != s[mode] || m.rows() * m.cols() != out.size()) {
        raise(ErrorCode::shape_mismatch, "matrix does not fold into the requested shape");
    }
    if (out.size() == 0) return out;
    std::vector<std::size_t> idx(s.size(), 0);
    std::size_t lin = 0;
    do {
        out.data()[lin++] = m(idx[mode], detail::unfold_column(idx, s, mode));
    } while (detail::next_index(idx, s));
    return out;
}

/// T x_mode M, defined by (T x_mode M)_(mode) = M T_(mode).
template <Field K>
Tensor<K> mode_product(const Tensor<K>& t, const Matrix<K>& m, std::size_t mode) {
    detail::require_mode(mode, t.order());
    if (m.cols() != t.dim(mode)) {
        raise(ErrorCode::shape_mismatch, "mode product needs " + std::to_string(t.dim(mode)) + " columns, got " +
                                             std::to_string(m.cols()));
    }
    auto shape = t.shape();
    shape[mode] = m.rows();
    return fold(m * unfold(t, mode), mode, std::move(shape));
}

/// T x_1 M_1 x_2 ... x_n M_n.
template <Field K>
Tensor<K> multi_mode_product(Tensor<K> t, const std::vector<Matrix<K>>& factors) {
    if (factors.size() != t.order()) raise(ErrorCode::shape_mismatch, "need one factor per mode");
    for (std::size_t i = 0; i < factors.size(); ++i) t = mode_product(t, factors[i], i);
    return t;
}

template <Field K>
std::vector<std::size_t> multilinear_rank(const Tensor<K>& t) {
    std::vector<std::size_t> r(t.order());
    for (std::size_t i = 0; i < t.order(); ++i) r[i] = rank(unfold(t, i));
    return r;
}

/// T(I_1, ..., I_n).
template <Field K>
Tensor<K> subtensor(const Tensor<K>& t, const std::vector<IndexSet>& sets) {
    if (sets.size() != t.order()) raise(ErrorCode::shape_mismatch, "need one index set per mode");
    std::vector<std::size_t> shape(t.order());
    for (std::size_t k = 0; k < t.order(); ++k) {
        for (auto i : sets[k])
            if (i >= t.dim(k)) raise(ErrorCode::index_out_of_range, "index " + std::to_string(i + 1) + " out of range in mode " + std::to_string(k + 1));
        shape[k] = sets[k].size();
    }
    Tensor<K> out(t.field(), shape);
    if (out.size() == 0) return out;
    std::vector<std::size_t> sub(t.order(), 0);
    std::vector<std::size_t> src(t.order());
    std::size_t lin = 0;
    do {
        for (std::size_t k = 0; k < t.order(); ++k) src[k] = sets[k][sub[k]];
        out.data()[lin++] = t(src);
    } while (detail::next_index(sub, shape));
    return out;
}

/// Columns of T_(mode) indexed by the Cartesian product of the sets of the
/// other modes, in unfolding order. `sets[mode]` is ignored.
inline IndexSet kron_index_map(const std::vector<IndexSet>& sets, const std::vector<std::size_t>& shape,
                               std::size_t mode) {
    detail::require_mode(mode, shape.size());
    if (sets.size() != shape.size()) raise(ErrorCode::shape_mismatch, "need one index set per mode");
    std::size_t bound = 1;
    std::vector<std::size_t> radix;
    std::vector<std::size_t> strides;
    std::vector<const IndexSet*> others;
    for (std::size_t k = 0; k < shape.size(); ++k) {
        if (k == mode) continue;
        for (auto i : sets[k])
            if (i >= shape[k]) raise(ErrorCode::index_out_of_range, "index " + std::to_string(i + 1) + " out of range in mode " + std::to_string(k + 1));
        radix.push_back(sets[k].size());
        strides.push_back(bound);
        others.push_back(&sets[k]);
        bound *= shape[k];
    }
    std::vector<std::size_t> cols;
    bool any_empty = std::any_of(radix.begin(), radix.end(), [](std::size_t r) { return r == 0; });
    if (!any_empty) {
        std::vector<std::size_t> pos(radix.size(), 0);
        do {
            std::size_t col = 0;
            for (std::size_t k = 0; k < pos.size(); ++k) col += (*others[k])[pos[k]] * strides[k];
            cols.push_back(col);
        } while (detail::next_index(pos, radix));
    }
    // Lower modes fastest over increasing sets already yields increasing columns.
    return IndexSet(std::move(cols), bound);
}

// ---------------------------------------------------------------------------
// Quantifying over tuples of generalized inverses, one per mode.

template <Field K, class Map, class Test>
Quantified quantify_tuples(const std::vector<InverseFamily<K>>& families, const SamplingBudget& budget, Rng& rng,
                           Map&& map, Test&& test) {
    Quantified q;
    auto record = [&](bool v) {
        q.some = q.some || v;
        q.all = q.all && v;
        ++q.checked;
        return q.some && !q.all;
    };
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 1;
    bool enumerable = true;
    for (const auto& f : families) {
        auto c = f.count(budget.enum_cap);
        if (!c || *c == 0 || total > budget.enum_cap / *c) {
            enumerable = false;
            break;
        }
        counts.push_back(*c);
        total *= *c;
    }
    const std::size_t n = families.size();
    std::vector<Matrix<K>> current;
    if (enumerable) {
        q.mode = Mode::exhaustive;
        std::vector<std::vector<Matrix<K>>> mapped(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint64_t t = 0; t < counts[i]; ++t) mapped[i].push_back(map(i, families[i].at(t)));
        std::vector<std::size_t> pos(n, 0);
        std::vector<std::size_t> radix(counts.begin(), counts.end());
        do {
            current.clear();
            for (std::size_t i = 0; i < n; ++i) current.push_back(mapped[i][pos[i]]);
            if (record(test(current))) break;
        } while (detail::next_index(pos, radix));
    } else {
        q.mode = Mode::sampled;
        for (std::size_t s = 0; s < budget.samples; ++s) {
            current.clear();
            for (std::size_t i = 0; i < n; ++i) current.push_back(map(i, families[i].sample(rng)));
            if (record(test(current))) break;
        }
    }
    return q;
}

template <Field K>
bool tensors_equal(const Tensor<K>& a, const Tensor<K>& b) {
    if (a.shape() != b.shape()) return false;
    Matrix<K> ma(a.field(), 1, a.size(), std::vector<typename K::value_type>(a.data().begin(), a.data().end()));
    Matrix<K> mb(b.field(), 1, b.size(), std::vector<typename K::value_type>(b.data().begin(), b.data().end()));
    return equal(ma, mb);
}

// ---------------------------------------------------------------------------
// Fiber and chidori CUR

inline constexpr std::size_t kTensorSamples = 8;

enum class TensorCurKind { fiber, chidori };

/// Flags for the fiber characterization (conditions i..iv) or the chidori one
/// (i..v). `moreover` is T = T x_i (C_i C_i~) for all tuples of C_i~.
struct TensorCurReport {
    TensorCurKind kind = TensorCurKind::fiber;
    FieldSpec field;
    std::vector<std::size_t> shape;
    std::vector<std::size_t> mlrank;
    std::vector<std::size_t> core_mlrank;
    std::vector<std::size_t> rank_u;
    std::vector<std::size_t> rank_c;
    std::vector<std::size_t> rank_row_slabs;  // rank(T_(i)(I_i, :)), chidori only
    std::vector<IndexSet> row_sets;           // I_i
    std::vector<IndexSet> col_sets;           // J_i (derived for chidori)
    std::vector<Flag> conditions;
    Flag moreover;
    bool v_implies_i_tested = false;
    std::uint64_t seed = 0;

    bool consistent() const noexcept {
        bool head = conditions.at(0).value;
        for (std::size_t k = 0; k < 4; ++k)
            if (conditions[k].value != head) return false;
        if (head && !moreover.value) return false;
        if (kind == TensorCurKind::chidori) {
            bool v = conditions.at(4).value;
            if (head && !v) return false;
            if (v_implies_i_tested && v && !head) return false;
        }
        return true;
    }
};

namespace detail {

/// Shared tail of both checkers: conditions (ii)/(iii) and the moreover identity.
template <Field K>
void evaluate_reconstructions(const Tensor<K>& t, const Tensor<K>& core, const std::vector<Matrix<K>>& cs,
                              const std::vector<Matrix<K>>& us, const SamplingBudget& budget, TensorCurReport& rep) {
    Rng rng(budget.seed);
    std::vector<InverseFamily<K>> fam_u;
    std::vector<InverseFamily<K>> fam_c;
    for (const auto& u : us) fam_u.emplace_back(u);
    for (const auto& c : cs) fam_c.emplace_back(c);

    auto rec = quantify_tuples(
        fam_u, budget, rng, [&](std::size_t i, const Matrix<K>& ui) { return cs[i] * ui; },
        [&](const std::vector<Matrix<K>>& factors) { return tensors_equal(multi_mode_product(core, factors), t); });
    rep.conditions.push_back(rec.some_flag());
    rep.conditions.push_back(rec.all_flag());

    auto proj = quantify_tuples(
        fam_c, budget, rng, [&](std::size_t i, const Matrix<K>& ci) { return cs[i] * ci; },
        [&](const std::vector<Matrix<K>>& factors) { return tensors_equal(multi_mode_product(t, factors), t); });
    rep.moreover = proj.all_flag();
}

} // namespace detail

template <Field K>
TensorCurReport fiber_cur(const Tensor<K>& t, const std::vector<IndexSet>& rows, const std::vector<IndexSet>& cols,
                          SamplingBudget budget = {0, kTensorSamples, kDefaultEnumCap}) {
    const std::size_t n = t.order();
    if (rows.size() != n || cols.size() != n) raise(ErrorCode::shape_mismatch, "need one I_i and one J_i per mode");
    TensorCurReport rep;
    rep.kind = TensorCurKind::fiber;
    rep.field = t.field().spec();
    rep.shape = t.shape();
    rep.seed = budget.seed;
    rep.mlrank = multilinear_rank(t);

    std::vector<Matrix<K>> cs;
    std::vector<Matrix<K>> us;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix<K> unf = unfold(t, i);
        IndexSet ii(rows[i].indices(), unf.rows());
        IndexSet ji(cols[i].indices(), unf.cols());
        cs.push_back(select_cols(unf, ji));
        us.push_back(select_rows(cs.back(), ii));
        rep.row_sets.push_back(std::move(ii));
        rep.col_sets.push_back(std::move(ji));
        rep.rank_u.push_back(rank(us.back()));
        rep.rank_c.push_back(rank(cs.back()));
    }
    Tensor<K> core = subtensor(t, rep.row_sets);
    rep.core_mlrank = multilinear_rank(core);

    rep.conditions.push_back({rep.rank_u == rep.mlrank, Mode::exhaustive});
    detail::evaluate_reconstructions(t, core, cs, us, budget, rep);
    rep.conditions.push_back({rep.rank_c == rep.mlrank && rep.core_mlrank == rep.mlrank, Mode::exhaustive});
    return rep;
}

template <Field K>
TensorCurReport chidori_cur(const Tensor<K>& t, const std::vector<IndexSet>& rows,
                            SamplingBudget budget = {0, kTensorSamples, kDefaultEnumCap}) {
    const std::size_t n = t.order();
    if (rows.size() != n) raise(ErrorCode::shape_mismatch, "need one I_i per mode");
    TensorCurReport rep;
    rep.kind = TensorCurKind::chidori;
    rep.field = t.field().spec();
    rep.shape = t.shape();
    rep.seed = budget.seed;
    rep.mlrank = multilinear_rank(t);
    for (std::size_t i = 0; i < n; ++i) rep.row_sets.emplace_back(rows[i].indices(), t.dim(i));

    std::vector<Matrix<K>> cs;
    std::vector<Matrix<K>> us;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix<K> unf = unfold(t, i);
        IndexSet ji = kron_index_map(rep.row_sets, t.shape(), i);
        cs.push_back(select_cols(unf, ji));
        us.push_back(select_rows(cs.back(), rep.row_sets[i]));
        rep.col_sets.push_back(std::move(ji));
        rep.rank_u.push_back(rank(us.back()));
        rep.rank_c.push_back(rank(cs.back()));
        rep.rank_row_slabs.push_back(rank(select_rows(unf, rep.row_sets[i])));
    }
    Tensor<K> core = subtensor(t, rep.row_sets);
    rep.core_mlrank = multilinear_rank(core);

    rep.conditions.push_back({rep.rank_u == rep.mlrank, Mode::exhaustive});
    detail::evaluate_reconstructions(t, core, cs, us, budget, rep);
    rep.conditions.push_back({rep.core_mlrank == rep.mlrank, Mode::exhaustive});
    rep.conditions.push_back({rep.rank_row_slabs == rep.mlrank, Mode::exhaustive});
    // Ranks over Q agree with ranks over R, so the real-field converse applies there too.
    rep.v_implies_i_tested = rep.field.kind != FieldKind::prime;
    return rep;
}

// ---------------------------------------------------------------------------
// Index selection and random instances

/// J_i = pivot columns of T_(i), I_i = pivot rows of T_(i)(:, J_i).
template <Field K>
std::pair<std::vector<IndexSet>, std::vector<IndexSet>> select_fiber_indices(const Tensor<K>& t) {
    std::vector<IndexSet> rows;
    std::vector<IndexSet> cols;
    for (std::size_t i = 0; i < t.order(); ++i) {
        auto [ii, ji] = select_indices(unfold(t, i));
        rows.push_back(std::move(ii));
        cols.push_back(std::move(ji));
    }
    return {std::move(rows), std::move(cols)};
}

/// I_i = pivot rows of T_(i), so rank(T_(i)(I_i, :)) = r_i.
template <Field K>
std::vector<IndexSet> select_chidori_indices(const Tensor<K>& t) {
    std::vector<IndexSet> rows;
    for (std::size_t i = 0; i < t.order(); ++i) rows.emplace_back(pivot_columns(transpose(unfold(t, i))), t.dim(i));
    return rows;
}

/// Random core of shape `mlrank` times random d_i x r_i factors, resampled
/// until the multilinear rank is exactly the target.
template <Field K>
Tensor<K> random_low_mlrank_tensor(const K& field, const std::vector<std::size_t>& shape,
                                   const std::vector<std::size_t>& mlrank, Rng& rng) {
    if (shape.size() != mlrank.size() || shape.empty()) raise(ErrorCode::infeasible_rank, "one target rank per mode is required");
    for (std::size_t i = 0; i < shape.size(); ++i) {
        std::size_t others = 1;
        for (std::size_t j = 0; j < shape.size(); ++j)
            if (j != i) others *= mlrank[j];
        if (mlrank[i] > shape[i] || (shape.size() > 1 && mlrank[i] > others)) {
            raise(ErrorCode::infeasible_rank, "multilinear rank target infeasible in mode " + std::to_string(i + 1));
        }
    }
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
        Tensor<K> core(field, mlrank);
        for (auto& v : core.data()) v = field.sample(rng);
        std::vector<Matrix<K>> factors;
        for (std::size_t i = 0; i < shape.size(); ++i) factors.push_back(random_matrix(field, shape[i], mlrank[i], rng));
        Tensor<K> t = multi_mode_product(core, factors);
        if (multilinear_rank(t) == mlrank) return t;
    }
    raise(ErrorCode::retries_exhausted, "could not sample a tensor with the requested multilinear rank");
}

} // namespace gpsk
