#pragma once

// Dense field-generic matrices and the elimination routines built on them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpsk/field.hpp"

namespace gpsk {

/// Row-major dense matrix over a field. Zero-sized dimensions are allowed so
/// that rank-0 selections (empty index sets) compose without special cases.
template <Field K>
class Matrix {
public:
    using field_type = K;
    using value_type = typename K::value_type;

    Matrix(const K& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    Matrix(const K& field, std::size_t rows, std::size_t cols, std::vector<value_type> data)
        : field_(field), rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            raise(ErrorCode::shape_mismatch, "matrix data size does not match " + std::to_string(rows_) + "x" +
                                                 std::to_string(cols_));
        }
    }

    static Matrix identity(const K& field, std::size_t n) {
        Matrix out(field, n, n);
        for (std::size_t i = 0; i < n; ++i) out(i, i) = field.one();
        return out;
    }

    /// Builds a matrix from integer literals mapped into the field.
    static Matrix from_ints(const K& field, std::initializer_list<std::initializer_list<long long>> rows) {
        std::size_t m = rows.size();
        std::size_t n = m == 0 ? 0 : rows.begin()->size();
        Matrix out(field, m, n);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != n) raise(ErrorCode::shape_mismatch, "ragged matrix literal");
            std::size_t j = 0;
            for (long long v : row) out(i, j++) = field.from_int(v);
            ++i;
        }
        return out;
    }

    const K& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const value_type> data() const noexcept { return data_; }
    std::span<value_type> data() noexcept { return data_; }

    std::span<const value_type> row(std::size_t i) const noexcept {
        return std::span<const value_type>(data_).subspan(i * cols_, cols_);
    }

    /// Entry-for-entry identity of the stored representation.
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    K field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> data_;
};

// ---------------------------------------------------------------------------
// Index sets

/// Strictly increasing 0-based indices below a declared bound. Text formats
/// and the C API use 1-based indices; conversion happens at those edges.
class IndexSet {
public:
    IndexSet() = default;

    IndexSet(std::vector<std::size_t> indices, std::size_t bound) : indices_(std::move(indices)), bound_(bound) {
        for (std::size_t k = 0; k < indices_.size(); ++k) {
            if (indices_[k] >= bound_) {
                raise(ErrorCode::index_out_of_range, "index " + std::to_string(indices_[k] + 1) +
                                                         " exceeds bound " + std::to_string(bound_));
            }
            if (k > 0 && indices_[k] <= indices_[k - 1]) {
                raise(ErrorCode::invalid_argument, "index set must be strictly increasing");
            }
        }
    }

    static IndexSet full(std::size_t bound) {
        std::vector<std::size_t> all(bound);
        std::iota(all.begin(), all.end(), std::size_t{0});
        return IndexSet(std::move(all), bound);
    }

    /// Sorts and validates 1-based input; duplicates are rejected.
    static IndexSet from_one_based(std::vector<std::size_t> indices, std::size_t bound) {
        std::sort(indices.begin(), indices.end());
        if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
            raise(ErrorCode::invalid_argument, "duplicate index in index set");
        }
        for (auto& i : indices) {
            if (i == 0 || i > bound) {
                raise(ErrorCode::index_out_of_range,
                      "index " + std::to_string(i) + " outside [1, " + std::to_string(bound) + "]");
            }
            --i;
        }
        return IndexSet(std::move(indices), bound);
    }

    std::vector<std::size_t> one_based() const {
        std::vector<std::size_t> out(indices_);
        for (auto& i : out) ++i;
        return out;
    }

    /// Indices in [0, bound) not in this set, increasing.
    IndexSet complement() const {
        std::vector<std::size_t> rest;
        std::size_t k = 0;
        for (std::size_t i = 0; i < bound_; ++i) {
            if (k < indices_.size() && indices_[k] == i) {
                ++k;
            } else {
                rest.push_back(i);
            }
        }
        return IndexSet(std::move(rest), bound_);
    }

    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    std::size_t bound() const noexcept { return bound_; }
    std::size_t operator[](std::size_t k) const { return indices_[k]; }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::vector<std::size_t> indices_;
    std::size_t bound_ = 0;
};

// ---------------------------------------------------------------------------
// Basic arithmetic

namespace detail {

template <Field K>
void require_same_field(const Matrix<K>& a, const Matrix<K>& b) {
    if (!(a.field() == b.field())) raise(ErrorCode::field_mismatch, "operands live in different fields");
}

inline std::string shape_str(std::size_t m, std::size_t n) {
    return std::to_string(m) + "x" + std::to_string(n);
}

} // namespace detail

template <Field K>
Matrix<K> operator*(const Matrix<K>& a, const Matrix<K>& b) {
    detail::require_same_field(a, b);
    if (a.cols() != b.rows()) {
        raise(ErrorCode::shape_mismatch, "cannot multiply " + detail::shape_str(a.rows(), a.cols()) + " by " +
                                             detail::shape_str(b.rows(), b.cols()));
    }
    const K& k = a.field();
    Matrix<K> out(k, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const auto& ait = a(i, t);
            if (k.is_zero(ait)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) = k.add(out(i, j), k.mul(ait, b(t, j)));
            }
        }
    }
    return out;
}

template <Field K>
Matrix<K> operator+(const Matrix<K>& a, const Matrix<K>& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) raise(ErrorCode::shape_mismatch, "cannot add differently shaped matrices");
    Matrix<K> out = a;
    const K& k = a.field();
    auto od = out.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < od.size(); ++i) od[i] = k.add(od[i], bd[i]);
    return out;
}

template <Field K>
Matrix<K> operator-(const Matrix<K>& a, const Matrix<K>& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) raise(ErrorCode::shape_mismatch, "cannot subtract differently shaped matrices");
    Matrix<K> out = a;
    const K& k = a.field();
    auto od = out.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < od.size(); ++i) od[i] = k.sub(od[i], bd[i]);
    return out;
}

template <Field K>
Matrix<K> scale(const Matrix<K>& a, const typename K::value_type& s) {
    Matrix<K> out = a;
    for (auto& v : out.data()) v = a.field().mul(s, v);
    return out;
}

template <Field K>
Matrix<K> transpose(const Matrix<K>& a) {
    Matrix<K> out(a.field(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

/// The `*` operator: transpose composed with the field involution.
template <Field K>
Matrix<K> transpose_conj(const Matrix<K>& a) {
    Matrix<K> out(a.field(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a.field().conj(a(i, j));
    return out;
}

template <Field K>
double frobenius_norm(const Matrix<K>& a) {
    double s = 0.0;
    for (const auto& v : a.data()) {
        double m = a.field().magnitude(v);
        s += m * m;
    }
    return std::sqrt(s);
}

template <Field K>
bool is_zero(const Matrix<K>& a) {
    return std::all_of(a.data().begin(), a.data().end(), [&](const auto& v) { return a.field().is_zero(v); });
}

/// Field-aware equality: exact for exact fields; for floating fields
/// ||a - b||_F <= tol * max(||a||_F, ||b||_F, 1).
template <Field K>
bool equal(const Matrix<K>& a, const Matrix<K>& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if constexpr (K::is_exact) {
        (void)tol;
        return a == b;
    } else {
        double scale_ab = std::max({frobenius_norm(a), frobenius_norm(b), 1.0});
        return frobenius_norm(a - b) <= tol * scale_ab;
    }
}

template <Field K>
bool equal(const Matrix<K>& a, const Matrix<K>& b) {
    return equal(a, b, tolerance(a.field()));
}

/// Relative Frobenius distance ||a - b|| / max(||b||, tiny); 0 or 1 style
/// answers for exact fields (0 iff equal).
template <Field K>
double relative_error(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) raise(ErrorCode::shape_mismatch, "relative_error shape mismatch");
    if constexpr (K::is_exact) {
        return a == b ? 0.0 : 1.0;
    } else {
        double denom = frobenius_norm(b);
        double num = frobenius_norm(a - b);
        return denom > 0.0 ? num / denom : num;
    }
}

// ---------------------------------------------------------------------------
// Extraction and assembly

template <Field K>
Matrix<K> submatrix(const Matrix<K>& a, const IndexSet& rows, const IndexSet& cols) {
    if (rows.bound() != a.rows() || cols.bound() != a.cols()) {
        for (auto i : rows)
            if (i >= a.rows()) raise(ErrorCode::index_out_of_range, "row index " + std::to_string(i + 1) + " out of range");
        for (auto j : cols)
            if (j >= a.cols()) raise(ErrorCode::index_out_of_range, "column index " + std::to_string(j + 1) + " out of range");
    }
    Matrix<K> out(a.field(), rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = a(rows[r], cols[c]);
    return out;
}

template <Field K>
Matrix<K> select_rows(const Matrix<K>& a, const IndexSet& rows) {
    return submatrix(a, rows, IndexSet::full(a.cols()));
}

template <Field K>
Matrix<K> select_cols(const Matrix<K>& a, const IndexSet& cols) {
    return submatrix(a, IndexSet::full(a.rows()), cols);
}

/// Contiguous block [r0, r0+m) x [c0, c0+n).
template <Field K>
Matrix<K> block(const Matrix<K>& a, std::size_t r0, std::size_t c0, std::size_t m, std::size_t n) {
    if (r0 + m > a.rows() || c0 + n > a.cols()) raise(ErrorCode::index_out_of_range, "block exceeds matrix");
    Matrix<K> out(a.field(), m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = a(r0 + i, c0 + j);
    return out;
}

template <Field K>
void set_block(Matrix<K>& a, std::size_t r0, std::size_t c0, const Matrix<K>& b) {
    if (r0 + b.rows() > a.rows() || c0 + b.cols() > a.cols()) raise(ErrorCode::index_out_of_range, "block exceeds matrix");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) a(r0 + i, c0 + j) = b(i, j);
}

template <Field K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
    detail::require_same_field(a, b);
    const K& k = a.field();
    Matrix<K> out(k, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t s = 0; s < b.rows(); ++s)
                for (std::size_t t = 0; t < b.cols(); ++t)
                    out(i * b.rows() + s, j * b.cols() + t) = k.mul(a(i, j), b(s, t));
    return out;
}

template <Field K>
Matrix<K> power(const Matrix<K>& a, std::size_t k) {
    if (a.rows() != a.cols()) raise(ErrorCode::not_square, "power of a non-square matrix");
    Matrix<K> out = Matrix<K>::identity(a.field(), a.rows());
    for (std::size_t t = 0; t < k; ++t) out = out * a;
    return out;
}

// ---------------------------------------------------------------------------
// Elimination

namespace detail {

/// Largest entry magnitude; the scale for float zero thresholds.
template <Field K>
double max_magnitude(const Matrix<K>& a) {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, a.field().magnitude(v));
    return m;
}

} // namespace detail

/// Pivot columns of row-echelon elimination, left to right. Exact fields take
/// the first nonzero entry in a column; floating fields take the largest
/// magnitude and treat |pivot| <= eps * max|a_ij| as zero. When `rng` is given
/// it breaks ties among exactly equal float magnitudes.
template <Field K>
std::vector<std::size_t> pivot_columns(const Matrix<K>& a, Rng* rng = nullptr) {
    const K& k = a.field();
    Matrix<K> w = a;
    std::vector<std::size_t> pivots;
    double threshold = 0.0;
    if constexpr (!K::is_exact) {
        threshold = k.eps() * detail::max_magnitude(a);
        if (threshold == 0.0) return pivots;  // zero matrix
    }
    std::size_t row = 0;
    for (std::size_t col = 0; col < w.cols() && row < w.rows(); ++col) {
        std::optional<std::size_t> piv;
        if constexpr (K::is_exact) {
            for (std::size_t i = row; i < w.rows(); ++i) {
                if (!k.is_zero(w(i, col))) {
                    piv = i;
                    break;
                }
            }
        } else {
            double best = threshold;
            std::vector<std::size_t> ties;
            for (std::size_t i = row; i < w.rows(); ++i) {
                double m = k.magnitude(w(i, col));
                if (m > best) {
                    best = m;
                    ties.assign(1, i);
                } else if (m == best && !ties.empty()) {
                    ties.push_back(i);
                }
            }
            if (!ties.empty()) {
                piv = ties.front();
                if (rng != nullptr && ties.size() > 1) {
                    piv = ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(*rng)];
                }
            }
        }
        if (!piv) continue;
        if (*piv != row) {
            for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w(row, j), w(*piv, j));
        }
        auto inv = k.inv(w(row, col));
        for (std::size_t i = row + 1; i < w.rows(); ++i) {
            if (k.is_zero(w(i, col))) continue;
            auto factor = k.mul(w(i, col), inv);
            for (std::size_t j = col; j < w.cols(); ++j) w(i, j) = k.sub(w(i, j), k.mul(factor, w(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <Field K>
std::size_t rank(const Matrix<K>& a) {
    return pivot_columns(a).size();
}

/// Invertible F, G and rank r with A = F * diag(I_r, 0) * G^-1. The inverses
/// F^-1 and G^-1 are accumulated alongside, so F^-1 * A * G = diag(I_r, 0).
template <Field K>
struct RankNormalForm {
    Matrix<K> f;
    Matrix<K> f_inv;
    Matrix<K> g;
    Matrix<K> g_inv;
    std::size_t rank = 0;

    /// F * diag(I_r, 0) * G^-1.
    Matrix<K> reconstruct() const {
        const K& k = f.field();
        Matrix<K> d(k, f.rows(), g.rows());
        for (std::size_t i = 0; i < rank; ++i) d(i, i) = k.one();
        return f * d * g_inv;
    }
};

/// Two-sided elimination. Row operations update F^-1 (and F through the
/// inverse elementary matrices); column operations update G and G^-1.
/// Exact fields pivot on the first nonzero (column-major scan of the trailing
/// block); floating fields pivot on the largest magnitude in the trailing block.
template <Field K>
RankNormalForm<K> rank_normal_form(const Matrix<K>& a) {
    const K& k = a.field();
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Matrix<K> w = a;
    RankNormalForm<K> out{Matrix<K>::identity(k, m), Matrix<K>::identity(k, m), Matrix<K>::identity(k, n),
                          Matrix<K>::identity(k, n), 0};
    double threshold = 0.0;
    if constexpr (!K::is_exact) threshold = k.eps() * detail::max_magnitude(a);

    auto swap_rows = [&](std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t j = 0; j < n; ++j) std::swap(w(r1, j), w(r2, j));
        for (std::size_t j = 0; j < m; ++j) std::swap(out.f_inv(r1, j), out.f_inv(r2, j));
        for (std::size_t i = 0; i < m; ++i) std::swap(out.f(i, r1), out.f(i, r2));
    };
    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        if (c1 == c2) return;
        for (std::size_t i = 0; i < m; ++i) std::swap(w(i, c1), w(i, c2));
        for (std::size_t i = 0; i < n; ++i) std::swap(out.g(i, c1), out.g(i, c2));
        for (std::size_t j = 0; j < n; ++j) std::swap(out.g_inv(c1, j), out.g_inv(c2, j));
    };

    std::size_t step = 0;
    for (; step < std::min(m, n); ++step) {
        std::optional<std::pair<std::size_t, std::size_t>> piv;
        if constexpr (K::is_exact) {
            for (std::size_t j = step; j < n && !piv; ++j)
                for (std::size_t i = step; i < m; ++i)
                    if (!k.is_zero(w(i, j))) {
                        piv = {i, j};
                        break;
                    }
        } else {
            double best = threshold;
            for (std::size_t j = step; j < n; ++j)
                for (std::size_t i = step; i < m; ++i) {
                    double mag = k.magnitude(w(i, j));
                    if (mag > best) {
                        best = mag;
                        piv = {i, j};
                    }
                }
        }
        if (!piv) break;
        swap_rows(step, piv->first);
        swap_cols(step, piv->second);

        // Scale the pivot row: row_step *= 1/p, so F's column step *= p.
        auto p = w(step, step);
        auto p_inv = k.inv(p);
        for (std::size_t j = 0; j < n; ++j) w(step, j) = k.mul(w(step, j), p_inv);
        for (std::size_t j = 0; j < m; ++j) out.f_inv(step, j) = k.mul(out.f_inv(step, j), p_inv);
        for (std::size_t i = 0; i < m; ++i) out.f(i, step) = k.mul(out.f(i, step), p);

        // row_i -= c * row_step for every other row; F gains c * column_i in column step.
        for (std::size_t i = 0; i < m; ++i) {
            if (i == step || k.is_zero(w(i, step))) continue;
            auto c = w(i, step);
            for (std::size_t j = 0; j < n; ++j) w(i, j) = k.sub(w(i, j), k.mul(c, w(step, j)));
            for (std::size_t j = 0; j < m; ++j) out.f_inv(i, j) = k.sub(out.f_inv(i, j), k.mul(c, out.f_inv(step, j)));
            for (std::size_t r = 0; r < m; ++r) out.f(r, step) = k.add(out.f(r, step), k.mul(c, out.f(r, i)));
        }
        // col_j -= c * col_step; only row step of w is affected since column step is now e_step.
        for (std::size_t j = step + 1; j < n; ++j) {
            if (k.is_zero(w(step, j))) continue;
            auto c = w(step, j);
            w(step, j) = k.zero();
            for (std::size_t r = 0; r < n; ++r) out.g(r, j) = k.sub(out.g(r, j), k.mul(c, out.g(r, step)));
            for (std::size_t t = 0; t < n; ++t) out.g_inv(step, t) = k.add(out.g_inv(step, t), k.mul(c, out.g_inv(j, t)));
        }
    }
    out.rank = step;
    return out;
}

/// Inverse of a square full-rank matrix via Gauss-Jordan.
template <Field K>
Matrix<K> invert(const Matrix<K>& a) {
    if (a.rows() != a.cols()) raise(ErrorCode::not_square, "cannot invert a non-square matrix");
    const K& k = a.field();
    const std::size_t n = a.rows();
    Matrix<K> w = a;
    Matrix<K> inv = Matrix<K>::identity(k, n);
    double threshold = 0.0;
    if constexpr (!K::is_exact) threshold = k.eps() * detail::max_magnitude(a);
    for (std::size_t col = 0; col < n; ++col) {
        std::optional<std::size_t> piv;
        if constexpr (K::is_exact) {
            for (std::size_t i = col; i < n; ++i)
                if (!k.is_zero(w(i, col))) {
                    piv = i;
                    break;
                }
        } else {
            double best = threshold;
            for (std::size_t i = col; i < n; ++i) {
                double mag = k.magnitude(w(i, col));
                if (mag > best) {
                    best = mag;
                    piv = i;
                }
            }
        }
        if (!piv) raise(ErrorCode::singular, "matrix is singular");
        if (*piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(col, j), w(*piv, j));
                std::swap(inv(col, j), inv(*piv, j));
            }
        }
        auto p_inv = k.inv(w(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            w(col, j) = k.mul(w(col, j), p_inv);
            inv(col, j) = k.mul(inv(col, j), p_inv);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || k.is_zero(w(i, col))) continue;
            auto c = w(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) = k.sub(w(i, j), k.mul(c, w(col, j)));
                inv(i, j) = k.sub(inv(i, j), k.mul(c, inv(col, j)));
            }
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Random instances

template <Field K>
Matrix<K> random_matrix(const K& field, std::size_t m, std::size_t n, Rng& rng) {
    Matrix<K> out(field, m, n);
    for (auto& v : out.data()) v = field.sample(rng);
    return out;
}

inline constexpr int kMaxResamples = 100;

/// Product of random m x r and r x n factors, resampled until the rank is
/// exactly r.
template <Field K>
Matrix<K> random_matrix_with_rank(const K& field, std::size_t m, std::size_t n, std::size_t r, Rng& rng) {
    if (r > std::min(m, n)) {
        raise(ErrorCode::infeasible_rank, "rank " + std::to_string(r) + " impossible for " + detail::shape_str(m, n));
    }
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
        Matrix<K> a = random_matrix(field, m, r, rng) * random_matrix(field, r, n, rng);
        if (rank(a) == r) return a;
    }
    raise(ErrorCode::retries_exhausted, "could not sample a rank-" + std::to_string(r) + " matrix");
}

} // namespace gpsk
