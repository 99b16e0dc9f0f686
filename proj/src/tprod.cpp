#include "gpsk/tprod.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace gpsk {

namespace {

using cplx = std::complex<double>;

// w^e with w = exp(-2 pi i / l); the exponent is reduced first so large
// products k*j do not lose accuracy.
cplx twiddle(std::size_t e, std::size_t l) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(e % l) / static_cast<double>(l);
    return std::polar(1.0, angle);
}

void require_same_depth(const Tensor3& a, const Tensor3& b) {
    if (a.depth() != b.depth()) {
        raise(ErrorCode::shape_mismatch,
              "tube lengths differ: " + std::to_string(a.depth()) + " vs " + std::to_string(b.depth()));
    }
}

double faces_norm(const std::vector<CMatrix>& faces) {
    double s = 0.0;
    for (const auto& f : faces) {
        double n = frobenius_norm(f);
        s += n * n;
    }
    return std::sqrt(s);
}

Matrix<RealField> real_part(const CMatrix& m) {
    Matrix<RealField> out(RealField(m.field().eps()), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).real();
    return out;
}

CMatrix complexify(const Matrix<RealField>& m, const ComplexField& field) {
    CMatrix out(field, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = {m(i, j), 0.0};
    return out;
}

CMatrix conj_entries(const CMatrix& m) {
    CMatrix out = m;
    for (auto& v : out.data()) v = std::conj(v);
    return out;
}

std::vector<std::size_t> face_ranks(const std::vector<CMatrix>& faces) {
    std::vector<std::size_t> out;
    out.reserve(faces.size());
    for (const auto& f : faces) out.push_back(rank(f));
    return out;
}

} // namespace

Tensor3::Tensor3(const ComplexField& field, std::size_t rows, std::size_t cols, std::size_t depth, bool real)
    : field_(field), rows_(rows), cols_(cols), real_(real), faces_(depth, CMatrix(field, rows, cols)) {
    if (depth == 0) raise(ErrorCode::invalid_argument, "tube length must be positive");
}

Tensor3 Tensor3::from_faces(std::vector<CMatrix> faces, bool real) {
    if (faces.empty()) raise(ErrorCode::invalid_argument, "tube length must be positive");
    Tensor3 t(faces.front().field(), faces.front().rows(), faces.front().cols(), faces.size(), real);
    for (const auto& f : faces) {
        if (f.rows() != t.rows_ || f.cols() != t.cols_) raise(ErrorCode::shape_mismatch, "faces differ in shape");
    }
    t.faces_ = std::move(faces);
    return t;
}

Tensor3 Tensor3::from_tensor(const Tensor<ComplexField>& t) {
    if (t.order() != 3) raise(ErrorCode::bad_mode, "t-product tensors have exactly three modes");
    const auto& s = t.shape();
    Tensor3 out(t.field(), s[0], s[1], s[2], false);
    for (std::size_t k = 0; k < s[2]; ++k)
        for (std::size_t j = 0; j < s[1]; ++j)
            for (std::size_t i = 0; i < s[0]; ++i) out.faces_[k](i, j) = t({i, j, k});
    return out;
}

Tensor3 Tensor3::from_tensor(const Tensor<RealField>& t) {
    if (t.order() != 3) raise(ErrorCode::bad_mode, "t-product tensors have exactly three modes");
    const auto& s = t.shape();
    Tensor3 out(ComplexField(t.field().eps()), s[0], s[1], s[2], true);
    for (std::size_t k = 0; k < s[2]; ++k)
        for (std::size_t j = 0; j < s[1]; ++j)
            for (std::size_t i = 0; i < s[0]; ++i) out.faces_[k](i, j) = {t({i, j, k}), 0.0};
    return out;
}

Tensor<ComplexField> Tensor3::to_tensor() const {
    Tensor<ComplexField> out(field_, {rows_, cols_, depth()});
    for (std::size_t k = 0; k < depth(); ++k)
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = 0; i < rows_; ++i) out({i, j, k}) = faces_[k](i, j);
    return out;
}

Tensor<RealField> Tensor3::to_real_tensor() const {
    if (!real_) raise(ErrorCode::non_conjugate_symmetric, "tensor is not real");
    Tensor<RealField> out(RealField(field_.eps()), {rows_, cols_, depth()});
    for (std::size_t k = 0; k < depth(); ++k)
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = 0; i < rows_; ++i) out({i, j, k}) = faces_[k](i, j).real();
    return out;
}

CMatrix FaceTransform::block_diagonal() const {
    if (faces.empty()) raise(ErrorCode::invalid_argument, "empty transform");
    const std::size_t m = faces.front().rows();
    const std::size_t n = faces.front().cols();
    CMatrix out(faces.front().field(), m * faces.size(), n * faces.size());
    for (std::size_t k = 0; k < faces.size(); ++k) set_block(out, k * m, k * n, faces[k]);
    return out;
}

CMatrix bcirc(const Tensor3& t) {
    const std::size_t m = t.rows(), n = t.cols(), l = t.depth();
    CMatrix out(t.field(), m * l, n * l);
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t b = 0; b < l; ++b) set_block(out, a * m, b * n, t.face((a + l - b) % l));
    return out;
}

CMatrix unfold_vertical(const Tensor3& t) {
    CMatrix out(t.field(), t.rows() * t.depth(), t.cols());
    for (std::size_t k = 0; k < t.depth(); ++k) set_block(out, k * t.rows(), 0, t.face(k));
    return out;
}

Tensor3 fold_vertical(const CMatrix& m, std::size_t depth, bool real) {
    if (depth == 0 || m.rows() % depth != 0) {
        raise(ErrorCode::shape_mismatch, std::to_string(m.rows()) + " rows do not split into " + std::to_string(depth) +
                                             " faces");
    }
    const std::size_t rows = m.rows() / depth;
    std::vector<CMatrix> faces;
    faces.reserve(depth);
    for (std::size_t k = 0; k < depth; ++k) faces.push_back(block(m, k * rows, 0, rows, m.cols()));
    return Tensor3::from_faces(std::move(faces), real);
}

CMatrix dft_matrix(const ComplexField& field, std::size_t l) {
    CMatrix out(field, l, l);
    const double s = 1.0 / std::sqrt(static_cast<double>(l));
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t k = 0; k < l; ++k) out(j, k) = s * twiddle(j * k, l);
    return out;
}

FaceTransform dft_faces(const Tensor3& t) {
    const std::size_t l = t.depth();
    FaceTransform out;
    out.faces.assign(l, CMatrix(t.field(), t.rows(), t.cols()));
    for (std::size_t k = 0; k < l; ++k) {
        auto dst = out.faces[k].data();
        for (std::size_t j = 0; j < l; ++j) {
            const cplx w = twiddle(k * j, l);
            auto src = t.face(j).data();
            for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += w * src[e];
        }
    }
    return out;
}

Tensor3 idft_faces(const FaceTransform& f, const ComplexField& field, bool realify) {
    const std::size_t l = f.faces.size();
    if (l == 0) raise(ErrorCode::invalid_argument, "empty transform");
    const std::size_t m = f.faces.front().rows();
    const std::size_t n = f.faces.front().cols();
    if (realify) {
        const double tol = kTransformTol * std::max(faces_norm(f.faces), 1.0);
        for (std::size_t k = 0; k < l; ++k) {
            if (frobenius_norm(f.faces[(l - k) % l] - conj_entries(f.faces[k])) > tol) {
                raise(ErrorCode::non_conjugate_symmetric,
                      "Fourier face " + std::to_string(k + 1) + " is not the conjugate of its mirror");
            }
        }
    }
    std::vector<CMatrix> faces(l, CMatrix(field, m, n));
    const double s = 1.0 / static_cast<double>(l);
    for (std::size_t j = 0; j < l; ++j) {
        auto dst = faces[j].data();
        for (std::size_t k = 0; k < l; ++k) {
            const cplx w = std::conj(twiddle(k * j, l));
            auto src = f.faces[k].data();
            for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += w * src[e];
        }
        for (auto& v : dst) v = realify ? cplx(v.real() * s, 0.0) : v * s;
    }
    return Tensor3::from_faces(std::move(faces), realify);
}

namespace {

Tensor3 facewise_product(const FaceTransform& a, const FaceTransform& b, const ComplexField& field, bool real) {
    FaceTransform out;
    out.faces.reserve(a.faces.size());
    for (std::size_t k = 0; k < a.faces.size(); ++k) out.faces.push_back(a.faces[k] * b.faces[k]);
    return idft_faces(out, field, real);
}

} // namespace

Tensor3 t_product(const Tensor3& t, const Tensor3& s) {
    require_same_depth(t, s);
    if (t.cols() != s.rows()) {
        raise(ErrorCode::shape_mismatch, "t-product of " + detail::shape_str(t.rows(), t.cols()) + " and " +
                                             detail::shape_str(s.rows(), s.cols()) + " faces");
    }
    return facewise_product(dft_faces(t), dft_faces(s), t.field(), t.is_real() && s.is_real());
}

Tensor3 t_identity(const ComplexField& field, std::size_t m, std::size_t depth) {
    Tensor3 out(field, m, m, depth, true);
    std::vector<CMatrix> faces = out.faces();
    faces[0] = CMatrix::identity(field, m);
    return Tensor3::from_faces(std::move(faces), true);
}

Tensor3 t_generalized_inverse(const Tensor3& t, Rng& rng) {
    const std::size_t l = t.depth();
    FaceTransform hat = dft_faces(t);
    FaceTransform inv;
    inv.faces.assign(l, CMatrix(t.field(), t.cols(), t.rows()));
    if (!t.is_real()) {
        for (std::size_t k = 0; k < l; ++k) inv.faces[k] = InverseFamily<ComplexField>(hat.faces[k]).sample(rng);
        return idft_faces(inv, t.field(), false);
    }
    for (std::size_t k = 0; k <= l / 2; ++k) {
        const bool self_conjugate = k == 0 || 2 * k == l;
        if (self_conjugate) {
            auto face = real_part(hat.faces[k]);
            inv.faces[k] = complexify(InverseFamily<RealField>(face).sample(rng), t.field());
        } else {
            inv.faces[k] = InverseFamily<ComplexField>(hat.faces[k]).sample(rng);
            inv.faces[l - k] = conj_entries(inv.faces[k]);
        }
    }
    return idft_faces(inv, t.field(), true);
}

Tensor3 slice(const Tensor3& t, const IndexSet& rows, const IndexSet& cols) {
    if (rows.bound() != t.rows() || cols.bound() != t.cols()) {
        raise(ErrorCode::index_out_of_range, "index sets do not match a " + detail::shape_str(t.rows(), t.cols()) +
                                                 " face");
    }
    std::vector<CMatrix> faces;
    faces.reserve(t.depth());
    for (const auto& f : t.faces()) faces.push_back(submatrix(f, rows, cols));
    return Tensor3::from_faces(std::move(faces), t.is_real());
}

std::vector<bool> facewise_cwr(const Tensor3& t, const Tensor3& c, const Tensor3& w, const Tensor3& r) {
    require_same_depth(t, c);
    require_same_depth(t, w);
    require_same_depth(t, r);
    auto th = dft_faces(t), ch = dft_faces(c), wh = dft_faces(w), rh = dft_faces(r);
    std::vector<bool> out;
    out.reserve(t.depth());
    for (std::size_t k = 0; k < t.depth(); ++k) {
        out.push_back(equal(ch.faces[k] * wh.faces[k] * rh.faces[k], th.faces[k], kReconstructionTol));
    }
    return out;
}

double relative_error(const Tensor3& a, const Tensor3& b) {
    require_same_depth(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) raise(ErrorCode::shape_mismatch, "tensor shapes differ");
    double diff = 0.0;
    for (std::size_t k = 0; k < a.depth(); ++k) {
        double d = frobenius_norm(a.face(k) - b.face(k));
        diff += d * d;
    }
    const double scale = std::max({faces_norm(a.faces()), faces_norm(b.faces()), 1.0});
    return std::sqrt(diff) / scale;
}

bool approx_equal(const Tensor3& a, const Tensor3& b, double tol) { return relative_error(a, b) <= tol; }

TcurReport verify_tcur(const Tensor3& t, const IndexSet& rows, const IndexSet& cols, const SamplingBudget& budget) {
    if (rows.empty() || cols.empty()) raise(ErrorCode::invalid_argument, "row and column sets must be nonempty");
    Rng rng(budget.seed);
    const Tensor3 c = slice(t, IndexSet::full(t.rows()), cols);
    const Tensor3 r = slice(t, rows, IndexSet::full(t.cols()));
    const Tensor3 u = slice(t, rows, cols);

    TcurReport rep;
    rep.field = t.is_real() ? FieldSpec::real(t.field().eps()) : FieldSpec::complex(t.field().eps());
    rep.rows = t.rows();
    rep.cols = t.cols();
    rep.depth = t.depth();
    rep.row_indices = rows;
    rep.col_indices = cols;
    rep.seed = budget.seed;
    rep.face_rank_t = face_ranks(dft_faces(t).faces);
    rep.face_rank_c = face_ranks(dft_faces(c).faces);
    rep.face_rank_r = face_ranks(dft_faces(r).faces);
    rep.face_rank_u = face_ranks(dft_faces(u).faces);
    rep.spatial_rank_t = face_ranks(t.faces());
    rep.spatial_rank_u = face_ranks(u.faces());

    rep.conditions[0] = {rep.face_rank_u == rep.face_rank_t, Mode::exhaustive};
    rep.conditions[1] = {rep.face_rank_c == rep.face_rank_t && rep.face_rank_r == rep.face_rank_t, Mode::exhaustive};

    auto run = [&](std::size_t slot, auto&& trial) {
        bool some = false, all = true;
        for (std::size_t s = 0; s < budget.samples; ++s) {
            bool v = trial();
            some = some || v;
            all = all && v;
            if (some && !all) break;
        }
        rep.conditions[slot] = {some, Mode::sampled};
        rep.conditions[slot + 1] = {all, Mode::sampled};
    };

    run(2, [&] {
        Tensor3 rec = t_product(t_product(c, t_generalized_inverse(u, rng)), r);
        double err = relative_error(rec, t);
        rep.max_reconstruction_error = std::max(rep.max_reconstruction_error, err);
        return err <= kReconstructionTol;
    });
    run(4, [&] {
        Tensor3 left = t_product(c, t_generalized_inverse(c, rng));
        Tensor3 right = t_product(t_generalized_inverse(r, rng), r);
        return approx_equal(t_product(t_product(left, t), right), t, kReconstructionTol);
    });
    run(6, [&] {
        Tensor3 x = t_product(t_product(t_generalized_inverse(r, rng), u), t_generalized_inverse(c, rng));
        return approx_equal(t_product(t_product(t, x), t), t, kReconstructionTol);
    });
    return rep;
}

std::pair<IndexSet, IndexSet> select_tcur_indices(const Tensor3& t) {
    auto hat = dft_faces(t);
    std::set<std::size_t> cols;
    for (const auto& f : hat.faces)
        for (auto j : pivot_columns(f)) cols.insert(j);
    IndexSet jset(std::vector<std::size_t>(cols.begin(), cols.end()), t.cols());
    std::set<std::size_t> rows;
    for (const auto& f : hat.faces)
        for (auto i : pivot_columns(transpose(select_cols(f, jset)))) rows.insert(i);
    return {IndexSet(std::vector<std::size_t>(rows.begin(), rows.end()), t.rows()), jset};
}

Tensor3 random_tproduct_tensor(const ComplexField& field, std::size_t rows, std::size_t cols, std::size_t depth,
                               std::size_t inner, bool real, Rng& rng) {
    auto draw = [&](std::size_t m, std::size_t n) {
        std::vector<CMatrix> faces;
        faces.reserve(depth);
        for (std::size_t k = 0; k < depth; ++k) {
            if (real) {
                faces.push_back(complexify(random_matrix(RealField(field.eps()), m, n, rng), field));
            } else {
                faces.push_back(random_matrix(field, m, n, rng));
            }
        }
        return Tensor3::from_faces(std::move(faces), real);
    };
    Tensor3 a = draw(rows, inner);
    Tensor3 b = draw(inner, cols);
    return t_product(a, b);
}

} // namespace gpsk
