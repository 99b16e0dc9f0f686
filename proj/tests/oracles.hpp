#pragma once

// Slow, obviously-correct reference computations. Nothing here shares code
// with the library beyond the Matrix/Tensor containers.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "gpsk/tensor.hpp"
#include "gpsk/tprod.hpp"

namespace oracle {

using namespace gpsk;

// Every m x n matrix over GF(p), in base-p counting order.
inline std::vector<Matrix<PrimeField>> all_matrices(const PrimeField& k, std::size_t m, std::size_t n) {
    const std::uint32_t p = k.modulus();
    std::uint64_t total = 1;
    for (std::size_t e = 0; e < m * n; ++e) total *= p;
    std::vector<Matrix<PrimeField>> out;
    out.reserve(total);
    for (std::uint64_t code = 0; code < total; ++code) {
        Matrix<PrimeField> a(k, m, n);
        std::uint64_t c = code;
        for (auto& v : a.data()) {
            v = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        out.push_back(std::move(a));
    }
    return out;
}

// rank = log_p |row space|, counting the span by listing every combination.
inline std::size_t span_rank(const Matrix<PrimeField>& a) {
    const std::uint64_t p = a.field().modulus();
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < a.rows(); ++i) combos *= p;
    std::set<std::vector<std::uint64_t>> span;
    for (std::uint64_t code = 0; code < combos; ++code) {
        std::vector<std::uint64_t> v(a.cols(), 0);
        std::uint64_t c = code;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            std::uint64_t coef = c % p;
            c /= p;
            for (std::size_t j = 0; j < a.cols(); ++j) v[j] = (v[j] + coef * a(i, j)) % p;
        }
        span.insert(std::move(v));
    }
    std::size_t r = 0;
    for (std::uint64_t s = span.size(); s > 1; s /= p) ++r;
    return r;
}

// Every B with A B A = A, by trying all p^(mn) candidates with plain modular loops.
inline std::vector<Matrix<PrimeField>> brute_force_inverses(const Matrix<PrimeField>& a) {
    const std::uint64_t p = a.field().modulus();
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<Matrix<PrimeField>> out;
    for (const auto& b : all_matrices(a.field(), n, m)) {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            for (std::size_t j = 0; j < n && ok; ++j) {
                std::uint64_t s = 0;
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < m; ++l) s += std::uint64_t{a(i, k)} * b(k, l) % p * a(l, j);
                ok = s % p == a(i, j);
            }
        }
        if (ok) out.push_back(b);
    }
    return out;
}

inline std::vector<std::uint32_t> key(const Matrix<PrimeField>& a) {
    return {a.data().begin(), a.data().end()};
}

// Leibniz expansion; fine for n <= 5.
inline mpq_class determinant(const Matrix<RationalField>& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    mpq_class total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        mpq_class term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) s.push_back(i);
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// Largest k with a nonzero k x k minor.
inline std::size_t minor_rank(const Matrix<RationalField>& a) {
    for (std::size_t k = std::min(a.rows(), a.cols()); k > 0; --k) {
        for (const auto& rs : subsets(a.rows(), k)) {
            for (const auto& cs : subsets(a.cols(), k)) {
                if (determinant(submatrix(a, IndexSet(rs, a.rows()), IndexSet(cs, a.cols()))) != 0) return k;
            }
        }
    }
    return 0;
}

// Every nonempty subset of [0, n).
inline std::vector<IndexSet> nonempty_sets(std::size_t n) {
    std::vector<IndexSet> out;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        out.emplace_back(std::move(s), n);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Floating point references through Eigen

using EMat = Eigen::MatrixXd;
using CEMat = Eigen::MatrixXcd;

inline EMat to_eigen(const Matrix<RealField>& a) {
    EMat out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    return out;
}

inline CEMat to_eigen(const Matrix<ComplexField>& a) {
    CEMat out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    return out;
}

inline Matrix<RealField> from_eigen(const EMat& e, const RealField& k) {
    Matrix<RealField> out(k, e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) out(i, j) = e(i, j);
    return out;
}

inline Matrix<ComplexField> from_eigen(const CEMat& e, const ComplexField& k) {
    Matrix<ComplexField> out(k, e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) out(i, j) = e(i, j);
    return out;
}

// Pseudoinverse from the SVD with singular values below tol * s_max dropped.
template <class E>
E svd_pinv(const E& a, double tol = 1e-10) {
    Eigen::JacobiSVD<E> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = s.size() > 0 ? tol * s(0) : 0.0;
    E sinv = E::Zero(a.cols(), a.rows());
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > cut) sinv(k, k) = 1.0 / s(k);
    return svd.matrixV() * sinv * svd.matrixU().adjoint();
}

template <class E>
std::size_t svd_rank(const E& a, double tol = 1e-10) {
    Eigen::JacobiSVD<E> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > tol * s(0)) ++r;
    return r;
}

// ---------------------------------------------------------------------------
// Tensors

// T_(i) straight from the definition: row = i_mode, column = the remaining
// indices in increasing mode order, lowest mode fastest.
template <Field K>
Matrix<K> unfold_by_definition(const Tensor<K>& t, std::size_t mode) {
    const auto& s = t.shape();
    std::size_t cols = t.size() / std::max<std::size_t>(s[mode], 1);
    Matrix<K> out(t.field(), s[mode], cols);
    std::vector<std::size_t> idx(s.size(), 0);
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        std::size_t rem = lin;
        for (std::size_t k = 0; k < s.size(); ++k) {
            idx[k] = rem % s[k];
            rem /= s[k];
        }
        std::size_t col = 0, stride = 1;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (k == mode) continue;
            col += idx[k] * stride;
            stride *= s[k];
        }
        out(idx[mode], col) = t(idx);
    }
    return out;
}

// (T x_mode M) entrywise: sum_j M(a, j) T(..., j, ...).
template <Field K>
Tensor<K> mode_product_by_definition(const Tensor<K>& t, const Matrix<K>& m, std::size_t mode) {
    auto shape = t.shape();
    shape[mode] = m.rows();
    Tensor<K> out(t.field(), shape);
    const K& k = t.field();
    std::vector<std::size_t> idx(shape.size(), 0);
    for (std::size_t lin = 0; lin < out.size(); ++lin) {
        std::size_t rem = lin;
        for (std::size_t q = 0; q < shape.size(); ++q) {
            idx[q] = rem % shape[q];
            rem /= shape[q];
        }
        auto src = idx;
        auto acc = k.zero();
        for (std::size_t j = 0; j < t.dim(mode); ++j) {
            src[mode] = j;
            acc = k.add(acc, k.mul(m(idx[mode], j), t(src)));
        }
        out(idx) = acc;
    }
    return out;
}

// Circular convolution along the tube: H_k = sum_j T_((k - j) mod l) S_j.
inline Tensor3 convolve(const Tensor3& t, const Tensor3& s) {
    const std::size_t l = t.depth();
    std::vector<CMatrix> faces;
    for (std::size_t k = 0; k < l; ++k) {
        CMatrix acc(t.field(), t.rows(), s.cols());
        for (std::size_t j = 0; j < l; ++j) acc = acc + t.face((k + l - j) % l) * s.face(j);
        faces.push_back(std::move(acc));
    }
    return Tensor3::from_faces(std::move(faces), t.is_real() && s.is_real());
}

inline Tensor3 random_tensor3(std::size_t m, std::size_t n, std::size_t l, bool real, Rng& rng) {
    ComplexField k(1e-10);
    std::vector<CMatrix> faces;
    std::normal_distribution<double> normal;
    for (std::size_t f = 0; f < l; ++f) {
        CMatrix face(k, m, n);
        for (auto& v : face.data()) v = real ? std::complex<double>(normal(rng), 0.0) : k.sample(rng);
        faces.push_back(std::move(face));
    }
    return Tensor3::from_faces(std::move(faces), real);
}

} // namespace oracle
