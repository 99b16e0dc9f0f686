#pragma once

// Generalized ({1}-) inverses and their restricted relatives.
//
// Every generalized inverse of A = F diag(I_r, 0) G^-1 has the form
//
//     A~ = G [[I_r, X], [Y, Z]] F^-1
//
// with X (r x (m-r)), Y ((n-r) x r) and Z ((n-r) x (m-r)) free. InverseFamily
// holds the rank normal form once and assembles members on demand, either
// from explicit blocks, from a random draw, or (over GF(p)) by index.

#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gpsk/matrix.hpp"

namespace gpsk {

inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t{1} << 20;

/// The free blocks of one member of the family.
template <Field K>
struct GenInverseParams {
    Matrix<K> x;
    Matrix<K> y;
    Matrix<K> z;
};

/// order^exponent if it is at most `cap`, otherwise nullopt.
inline std::optional<std::uint64_t> bounded_power(std::uint64_t order, std::size_t exponent, std::uint64_t cap) {
    std::uint64_t count = 1;
    for (std::size_t e = 0; e < exponent; ++e) {
        if (count > cap / order) return std::nullopt;
        count *= order;
    }
    if (count > cap) return std::nullopt;
    return count;
}

template <Field K>
class InverseFamily {
public:
    using value_type = typename K::value_type;

    explicit InverseFamily(const Matrix<K>& a) : base_(rank_normal_form(a)), m_(a.rows()), n_(a.cols()) {}

    const RankNormalForm<K>& base() const noexcept { return base_; }
    std::size_t rank() const noexcept { return base_.rank; }
    /// Number of free entries, mn - r^2.
    std::size_t free_entries() const noexcept { return m_ * n_ - base_.rank * base_.rank; }

    /// Size of the family when the field is finite and the size is <= cap.
    std::optional<std::uint64_t> count(std::uint64_t cap = kDefaultEnumCap) const {
        auto order = field().order();
        if (!order) return std::nullopt;
        return bounded_power(*order, free_entries(), cap);
    }

    Matrix<K> assemble(const GenInverseParams<K>& p) const {
        const std::size_t r = base_.rank;
        if (p.x.rows() != r || p.x.cols() != m_ - r || p.y.rows() != n_ - r || p.y.cols() != r ||
            p.z.rows() != n_ - r || p.z.cols() != m_ - r) {
            raise(ErrorCode::shape_mismatch, "generalized inverse blocks do not match the rank normal form");
        }
        Matrix<K> core(field(), n_, m_);
        for (std::size_t i = 0; i < r; ++i) core(i, i) = field().one();
        set_block(core, 0, r, p.x);
        set_block(core, r, 0, p.y);
        set_block(core, r, r, p.z);
        return base_.g * core * base_.f_inv;
    }

    /// Free entries in the order X (row-major), Y, Z.
    Matrix<K> assemble(const std::vector<value_type>& free) const {
        if (free.size() != free_entries()) raise(ErrorCode::shape_mismatch, "wrong number of free entries");
        const std::size_t r = base_.rank;
        Matrix<K> core(field(), n_, m_);
        for (std::size_t i = 0; i < r; ++i) core(i, i) = field().one();
        std::size_t t = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = r; j < m_; ++j) core(i, j) = free[t++];
        for (std::size_t i = r; i < n_; ++i)
            for (std::size_t j = 0; j < r; ++j) core(i, j) = free[t++];
        for (std::size_t i = r; i < n_; ++i)
            for (std::size_t j = r; j < m_; ++j) core(i, j) = free[t++];
        return base_.g * core * base_.f_inv;
    }

    /// X = Y = Z = 0.
    Matrix<K> canonical() const { return assemble(std::vector<value_type>(free_entries(), field().zero())); }

    /// Entrywise draw of X, Y, Z from the field's sampling distribution.
    Matrix<K> sample(Rng& rng) const {
        std::vector<value_type> free;
        free.reserve(free_entries());
        for (std::size_t t = 0; t < free_entries(); ++t) free.push_back(field().sample(rng));
        return assemble(free);
    }

    /// Member with the given index, reading the free entries as base-p digits
    /// (least significant first). Finite fields only.
    Matrix<K> at(std::uint64_t index) const {
        if constexpr (requires(const K& k) { k.element(std::uint64_t{}); }) {
            const std::uint64_t p = *field().order();
            std::vector<value_type> free;
            free.reserve(free_entries());
            for (std::size_t t = 0; t < free_entries(); ++t) {
                free.push_back(field().element(index % p));
                index /= p;
            }
            return assemble(free);
        } else {
            (void)index;
            raise(ErrorCode::not_finite_field, "indexed access needs a finite field");
        }
    }

    const K& field() const noexcept { return base_.f.field(); }

private:
    RankNormalForm<K> base_;
    std::size_t m_;
    std::size_t n_;
};

/// Lazily enumerated family over GF(p); iteration yields each generalized
/// inverse exactly once.
template <Field K>
class InverseRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Matrix<K>;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(const InverseFamily<K>* family, std::uint64_t index) : family_(family), index_(index) {}

        Matrix<K> operator*() const { return family_->at(index_); }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        iterator operator++(int) {
            auto copy = *this;
            ++index_;
            return copy;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

    private:
        const InverseFamily<K>* family_ = nullptr;
        std::uint64_t index_ = 0;
    };

    InverseRange(InverseFamily<K> family, std::uint64_t count) : family_(std::move(family)), count_(count) {}

    std::uint64_t size() const noexcept { return count_; }
    iterator begin() const { return iterator(&family_, 0); }
    iterator end() const { return iterator(&family_, count_); }
    const InverseFamily<K>& family() const noexcept { return family_; }

private:
    InverseFamily<K> family_;
    std::uint64_t count_;
};

template <Field K>
Matrix<K> sample_generalized_inverse(const Matrix<K>& a, Rng& rng) {
    return InverseFamily<K>(a).sample(rng);
}

/// All p^(mn - r^2) generalized inverses of a matrix over GF(p).
template <Field K>
InverseRange<K> enumerate_generalized_inverses(const Matrix<K>& a, std::uint64_t cap = kDefaultEnumCap) {
    if (!a.field().order()) raise(ErrorCode::not_finite_field, "enumeration needs a finite field");
    InverseFamily<K> family(a);
    auto count = family.count(cap);
    if (!count) {
        raise(ErrorCode::enumeration_too_large, "p^" + std::to_string(family.free_entries()) +
                                                    " generalized inverses exceed the enumeration cap " +
                                                    std::to_string(cap) + "; use sampling instead");
    }
    return InverseRange<K>(std::move(family), *count);
}

namespace detail {

template <Field K>
void require_inverse_shape(const Matrix<K>& a, const Matrix<K>& b) {
    detail::require_same_field(a, b);
    if (b.rows() != a.cols() || b.cols() != a.rows()) {
        raise(ErrorCode::shape_mismatch, "candidate inverse of a " + shape_str(a.rows(), a.cols()) + " matrix must be " +
                                             shape_str(a.cols(), a.rows()));
    }
}

} // namespace detail

/// A B A = A.
template <Field K>
bool is_generalized_inverse(const Matrix<K>& a, const Matrix<K>& b) {
    detail::require_inverse_shape(a, b);
    return equal(a * b * a, a);
}

/// B1 A B2 for generalized inverses B1, B2; always a {1,2}-inverse.
template <Field K>
Matrix<K> one_two_inverse(const Matrix<K>& a, const Matrix<K>& b1, const Matrix<K>& b2) {
    if (!is_generalized_inverse(a, b1) || !is_generalized_inverse(a, b2)) {
        raise(ErrorCode::not_generalized_inverse, "one_two_inverse needs two generalized inverses");
    }
    return b1 * a * b2;
}

struct MpConditionSet {
    bool c1 = false;  // A B A = A
    bool c2 = false;  // B A B = B
    bool c3 = false;  // (A B)* = A B
    bool c4 = false;  // (B A)* = B A

    bool all() const noexcept { return c1 && c2 && c3 && c4; }
    friend bool operator==(const MpConditionSet&, const MpConditionSet&) = default;
};

template <Field K>
MpConditionSet mp_conditions(const Matrix<K>& a, const Matrix<K>& b) {
    detail::require_inverse_shape(a, b);
    Matrix<K> ab = a * b;
    Matrix<K> ba = b * a;
    return {equal(ab * a, a), equal(ba * b, b), equal(transpose_conj(ab), ab), equal(transpose_conj(ba), ba)};
}

/// Moore-Penrose pseudoinverse over R or C from the full-rank factorization
/// A = B C read off the rank normal form: A+ = C*(C C*)^-1 (B* B)^-1 B*.
template <Field K>
Matrix<K> moore_penrose(const Matrix<K>& a) {
    if constexpr (K::is_exact) {
        raise(ErrorCode::unsupported_field, "the Moore-Penrose inverse is only computed over real or complex fields");
    } else {
        auto rnf = rank_normal_form(a);
        const std::size_t r = rnf.rank;
        if (r == 0) return Matrix<K>(a.field(), a.cols(), a.rows());
        Matrix<K> b = block(rnf.f, 0, 0, a.rows(), r);
        Matrix<K> c = block(rnf.g_inv, 0, 0, r, a.cols());
        Matrix<K> cs = transpose_conj(c);
        Matrix<K> bs = transpose_conj(b);
        return cs * invert(c * cs) * invert(bs * b) * bs;
    }
}

template <Field K>
struct DrazinResult {
    Matrix<K> inverse;
    std::size_t index = 0;
};

/// Smallest k >= 0 with rank(A^(k+1)) = rank(A^k).
template <Field K>
std::size_t drazin_index(const Matrix<K>& a) {
    if (a.rows() != a.cols()) raise(ErrorCode::not_square, "Drazin index of a non-square matrix");
    Matrix<K> pk = Matrix<K>::identity(a.field(), a.rows());
    std::size_t rk = a.rows();
    for (std::size_t k = 0;; ++k) {
        Matrix<K> next = pk * a;
        std::size_t rn = rank(next);
        if (rn == rk) return k;
        pk = std::move(next);
        rk = rn;
    }
}

/// A^D = A^k (A^(2k+1))~ A^k with k the index, followed by a check of the
/// three Drazin axioms. A {1}-inverse is sampled when `rng` is given,
/// otherwise the canonical member (X = Y = Z = 0) is used.
template <Field K>
DrazinResult<K> drazin_inverse(const Matrix<K>& a, Rng* rng = nullptr) {
    if (a.rows() != a.cols()) raise(ErrorCode::not_square, "Drazin inverse needs a square matrix");
    const std::size_t k = drazin_index(a);
    Matrix<K> ak = power(a, k);
    InverseFamily<K> family(power(a, 2 * k + 1));
    Matrix<K> inner = rng != nullptr ? family.sample(*rng) : family.canonical();
    Matrix<K> ad = ak * inner * ak;

    bool ok = equal(ad * a * ad, ad) && equal(a * ad, ad * a) && equal(ak * a * ad, ak);
    if (!ok) raise(ErrorCode::verification_failed, "Drazin construction failed its axiom check");
    return {std::move(ad), k};
}

} // namespace gpsk
