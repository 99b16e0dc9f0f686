#pragma once

// t-product algebra for 3-mode real or complex tensors.
//
// A tensor is held as its frontal faces T_1..T_l (m x n each). The facewise
// DFT T^_k = sum_j w^(k j) T_j with w = exp(-2 pi i / l) block-diagonalizes
// bcirc(T) under the unitary DFT, and the t-product is the facewise matrix
// product in that domain.

#include <array>
#include <cstdint>
#include <vector>

#include "gpsk/tensor.hpp"

namespace gpsk {

using CMatrix = Matrix<ComplexField>;

inline constexpr double kReconstructionTol = 1e-8;
inline constexpr double kTransformTol = 1e-12;

class Tensor3 {
public:
    Tensor3(const ComplexField& field, std::size_t rows, std::size_t cols, std::size_t depth, bool real);

    /// Faces must share one shape; `real` asserts every entry is real.
    static Tensor3 from_faces(std::vector<CMatrix> faces, bool real);
    static Tensor3 from_tensor(const Tensor<RealField>& t);
    static Tensor3 from_tensor(const Tensor<ComplexField>& t);

    Tensor<ComplexField> to_tensor() const;
    /// Drops imaginary parts; throws NonConjugateSymmetric when the tensor is
    /// not flagged real.
    Tensor<RealField> to_real_tensor() const;

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t depth() const noexcept { return faces_.size(); }
    bool is_real() const noexcept { return real_; }
    const ComplexField& field() const noexcept { return field_; }

    const CMatrix& face(std::size_t k) const { return faces_.at(k); }
    const std::vector<CMatrix>& faces() const noexcept { return faces_; }

private:
    ComplexField field_;
    std::size_t rows_;
    std::size_t cols_;
    bool real_;
    std::vector<CMatrix> faces_;
};

/// Faces of the block diagonal obtained from bcirc(T) by the unitary DFT.
struct FaceTransform {
    std::vector<CMatrix> faces;

    /// diag(T^_1, ..., T^_l).
    CMatrix block_diagonal() const;
};

/// ml x nl block circulant with first block column T_1..T_l.
CMatrix bcirc(const Tensor3& t);

/// ml x n stack of the faces T_1 over ... over T_l.
CMatrix unfold_vertical(const Tensor3& t);
Tensor3 fold_vertical(const CMatrix& m, std::size_t depth, bool real);

/// Unitary l x l DFT matrix with entries w^(jk) / sqrt(l).
CMatrix dft_matrix(const ComplexField& field, std::size_t l);

FaceTransform dft_faces(const Tensor3& t);
/// Inverse transform. With `realify` the faces must be conjugate symmetric
/// (T^_(l-k) = conj(T^_k)) within kTransformTol; imaginary parts are dropped.
Tensor3 idft_faces(const FaceTransform& f, const ComplexField& field, bool realify);

/// T * S for T m x n x l and S n x k x l.
Tensor3 t_product(const Tensor3& t, const Tensor3& s);

/// m x m x l identity: I on the first face, zeros elsewhere.
Tensor3 t_identity(const ComplexField& field, std::size_t m, std::size_t depth);

/// Inner inverse T~ (T * T~ * T = T) assembled from facewise generalized
/// inverses. For real input faces 1..floor(l/2)+1 are sampled (self-conjugate
/// faces from real blocks) and the rest mirrored, so T~ is real.
Tensor3 t_generalized_inverse(const Tensor3& t, Rng& rng);

/// T(I, J, :) with either set possibly covering the full range.
Tensor3 slice(const Tensor3& t, const IndexSet& rows, const IndexSet& cols);

/// Per Fourier face k: T^_k == C^_k W^_k R^_k.
std::vector<bool> facewise_cwr(const Tensor3& t, const Tensor3& c, const Tensor3& w, const Tensor3& r);

bool approx_equal(const Tensor3& a, const Tensor3& b, double tol);
double relative_error(const Tensor3& a, const Tensor3& b);

/// Conditions (i)..(viii) of the t-CUR characterization, in order:
///   0 face ranks rank(U^_k) = rank(T^_k)   1 rank(C^_k) = rank(R^_k) = rank(T^_k)
///   2/3 T = C * U~ * R                     4/5 T = C * C~ * T * R~ * R
///   6/7 R~ * U * C~ is an inner inverse of T
/// Rank conditions are read on Fourier faces; the "for all" claims are
/// always sampled.
struct TcurReport {
    FieldSpec field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t depth = 0;
    IndexSet row_indices;
    IndexSet col_indices;
    std::vector<std::size_t> face_rank_t;
    std::vector<std::size_t> face_rank_c;
    std::vector<std::size_t> face_rank_r;
    std::vector<std::size_t> face_rank_u;
    std::vector<std::size_t> spatial_rank_t;
    std::vector<std::size_t> spatial_rank_u;
    std::array<Flag, 8> conditions{};
    double max_reconstruction_error = 0.0;  // over the C * U~ * R samples
    std::uint64_t seed = 0;

    bool consistent() const noexcept {
        for (const auto& f : conditions)
            if (f.value != conditions[0].value) return false;
        return true;
    }
};

TcurReport verify_tcur(const Tensor3& t, const IndexSet& rows, const IndexSet& cols, const SamplingBudget& budget = {});

/// Union over Fourier faces of per-face pivot columns, then of pivot rows of
/// T^_k(:, J); every face keeps its rank in U.
std::pair<IndexSet, IndexSet> select_tcur_indices(const Tensor3& t);

/// A * B with A m x r x l and B r x n x l random.
Tensor3 random_tproduct_tensor(const ComplexField& field, std::size_t rows, std::size_t cols, std::size_t depth,
                               std::size_t inner, bool real, Rng& rng);

} // namespace gpsk
