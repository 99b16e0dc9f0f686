#include "gpsk.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "gpsk/report.hpp"
#include "gpsk/textio.hpp"

struct gpsk_matrix {
    gpsk::AnyMatrix value;
};

struct gpsk_tensor {
    gpsk::AnyTensor value;
};

namespace {

thread_local std::string last_error;

gpsk_status status_of(gpsk::ErrorCode code) {
    using gpsk::ErrorCode;
    switch (code) {
    case ErrorCode::zero_inverse: return GPSK_ERR_ZERO_INVERSE;
    case ErrorCode::index_out_of_range: return GPSK_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::field_mismatch: return GPSK_ERR_FIELD_MISMATCH;
    case ErrorCode::shape_mismatch: return GPSK_ERR_SHAPE_MISMATCH;
    case ErrorCode::singular: return GPSK_ERR_SINGULAR;
    case ErrorCode::not_finite_field: return GPSK_ERR_NOT_FINITE_FIELD;
    case ErrorCode::enumeration_too_large: return GPSK_ERR_ENUMERATION_TOO_LARGE;
    case ErrorCode::not_generalized_inverse: return GPSK_ERR_NOT_GENERALIZED_INVERSE;
    case ErrorCode::unsupported_field: return GPSK_ERR_UNSUPPORTED_FIELD;
    case ErrorCode::not_square: return GPSK_ERR_NOT_SQUARE;
    case ErrorCode::verification_failed: return GPSK_ERR_VERIFICATION_FAILED;
    case ErrorCode::rank_hypothesis_violated: return GPSK_ERR_RANK_HYPOTHESIS_VIOLATED;
    case ErrorCode::bad_mode: return GPSK_ERR_BAD_MODE;
    case ErrorCode::infeasible_rank: return GPSK_ERR_INFEASIBLE_RANK;
    case ErrorCode::retries_exhausted: return GPSK_ERR_RETRIES_EXHAUSTED;
    case ErrorCode::non_conjugate_symmetric: return GPSK_ERR_NON_CONJUGATE_SYMMETRIC;
    case ErrorCode::parse_error: return GPSK_ERR_PARSE;
    case ErrorCode::io_error: return GPSK_ERR_IO;
    case ErrorCode::invalid_argument: return GPSK_ERR_INVALID_ARGUMENT;
    }
    return GPSK_ERR_INTERNAL;
}

template <class Fn>
gpsk_status guarded(Fn&& fn) {
    try {
        last_error.clear();
        fn();
        return GPSK_OK;
    } catch (const gpsk::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown failure";
    }
    return GPSK_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
    if (p == nullptr) gpsk::raise(gpsk::ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

double eps_or_default(double eps) { return eps == 0.0 ? gpsk::kDefaultEps : eps; }

gpsk::SamplingBudget budget_of(const gpsk_budget* b, std::size_t default_samples) {
    gpsk::SamplingBudget out;
    out.samples = default_samples;
    if (b != nullptr) {
        out.seed = b->seed;
        out.samples = b->samples;
        out.enum_cap = b->enum_cap;
    }
    if (out.samples == 0) gpsk::raise(gpsk::ErrorCode::invalid_argument, "sample budget must be at least 1");
    if (out.enum_cap == 0) gpsk::raise(gpsk::ErrorCode::invalid_argument, "enumeration cap must be at least 1");
    return out;
}

gpsk::ReportFormat format_of(gpsk_format f) {
    switch (f) {
    case GPSK_FORMAT_JSON: return gpsk::ReportFormat::json;
    case GPSK_FORMAT_TEXT: return gpsk::ReportFormat::text;
    }
    gpsk::raise(gpsk::ErrorCode::invalid_argument, "unknown report format");
}

gpsk::IndexSet index_set(const size_t* idx, size_t n, std::size_t bound) {
    if (n > 0) require(idx, "index array");
    return gpsk::IndexSet::from_one_based(std::vector<std::size_t>(idx, idx + n), bound);
}

template <class Report>
void emit(const Report& rep, gpsk_format format, char** report, int* consistent) {
    *report = copy_string(gpsk::render(rep, format_of(format)));
    if (consistent != nullptr) *consistent = rep.consistent() ? 1 : 0;
}

std::size_t product_except(const std::vector<std::size_t>& shape, std::size_t mode) {
    std::size_t p = 1;
    for (std::size_t k = 0; k < shape.size(); ++k)
        if (k != mode) p *= shape[k];
    return p;
}

gpsk::Tensor3 as_tensor3(const gpsk::AnyTensor& t) {
    return std::visit(
        [](const auto& x) -> gpsk::Tensor3 {
            using K = std::decay_t<decltype(x.field())>;
            if constexpr (std::is_same_v<K, gpsk::RealField> || std::is_same_v<K, gpsk::ComplexField>) {
                return gpsk::Tensor3::from_tensor(x);
            } else {
                gpsk::raise(gpsk::ErrorCode::unsupported_field, "t-product tensors must be real or complex");
            }
        },
        t);
}

} // namespace

extern "C" {

const char* gpsk_version(void) { return "0.1.0"; }

const char* gpsk_status_string(gpsk_status status) {
    switch (status) {
    case GPSK_OK: return "ok";
    case GPSK_ERR_ZERO_INVERSE: return "ZeroInverse";
    case GPSK_ERR_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case GPSK_ERR_FIELD_MISMATCH: return "FieldMismatch";
    case GPSK_ERR_SHAPE_MISMATCH: return "ShapeMismatch";
    case GPSK_ERR_SINGULAR: return "Singular";
    case GPSK_ERR_NOT_FINITE_FIELD: return "NotFiniteField";
    case GPSK_ERR_ENUMERATION_TOO_LARGE: return "EnumerationTooLarge";
    case GPSK_ERR_NOT_GENERALIZED_INVERSE: return "NotGeneralizedInverse";
    case GPSK_ERR_UNSUPPORTED_FIELD: return "UnsupportedField";
    case GPSK_ERR_NOT_SQUARE: return "NotSquare";
    case GPSK_ERR_VERIFICATION_FAILED: return "VerificationFailed";
    case GPSK_ERR_RANK_HYPOTHESIS_VIOLATED: return "RankHypothesisViolated";
    case GPSK_ERR_BAD_MODE: return "BadMode";
    case GPSK_ERR_INFEASIBLE_RANK: return "InfeasibleRank";
    case GPSK_ERR_RETRIES_EXHAUSTED: return "RetriesExhausted";
    case GPSK_ERR_NON_CONJUGATE_SYMMETRIC: return "NonConjugateSymmetric";
    case GPSK_ERR_PARSE: return "ParseError";
    case GPSK_ERR_IO: return "IOError";
    case GPSK_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case GPSK_ERR_INTERNAL: return "Internal";
    }
    return "unknown";
}

const char* gpsk_last_error(void) { return last_error.c_str(); }

void gpsk_string_free(char* s) { std::free(s); }

void gpsk_budget_default(gpsk_budget* budget) {
    if (budget == nullptr) return;
    budget->seed = 0;
    budget->samples = 16;
    budget->enum_cap = gpsk::kDefaultEnumCap;
}

gpsk_status gpsk_matrix_parse(const char* text, double eps, gpsk_matrix** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new gpsk_matrix{gpsk::parse_matrix(text, eps_or_default(eps))};
    });
}

gpsk_status gpsk_matrix_load(const char* path, double eps, gpsk_matrix** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new gpsk_matrix{gpsk::parse_matrix(gpsk::read_text_file(path), eps_or_default(eps))};
    });
}

gpsk_status gpsk_matrix_generate(const char* field, double eps, size_t rows, size_t cols, size_t rank, uint64_t seed,
                                 gpsk_matrix** out) {
    return guarded([&] {
        require(field, "field");
        require(out, "out");
        auto spec = gpsk::FieldSpec::parse(field, eps_or_default(eps));
        gpsk::Rng rng(seed);
        *out = gpsk::visit_field(spec, [&](const auto& k) {
            return new gpsk_matrix{gpsk::random_matrix_with_rank(k, rows, cols, rank, rng)};
        });
    });
}

void gpsk_matrix_free(gpsk_matrix* m) { delete m; }

gpsk_status gpsk_matrix_format(const gpsk_matrix* m, char** out) {
    return guarded([&] {
        require(m, "matrix");
        require(out, "out");
        *out = copy_string(gpsk::format_matrix(m->value));
    });
}

gpsk_status gpsk_matrix_field(const gpsk_matrix* m, char** out) {
    return guarded([&] {
        require(m, "matrix");
        require(out, "out");
        *out = copy_string(gpsk::field_of(m->value).name());
    });
}

gpsk_status gpsk_matrix_shape(const gpsk_matrix* m, size_t* rows, size_t* cols) {
    return guarded([&] {
        require(m, "matrix");
        std::visit(
            [&](const auto& a) {
                if (rows != nullptr) *rows = a.rows();
                if (cols != nullptr) *cols = a.cols();
            },
            m->value);
    });
}

gpsk_status gpsk_matrix_rank(const gpsk_matrix* m, size_t* rank) {
    return guarded([&] {
        require(m, "matrix");
        require(rank, "rank");
        *rank = std::visit([](const auto& a) { return gpsk::rank(a); }, m->value);
    });
}

gpsk_status gpsk_tensor_parse(const char* text, double eps, gpsk_tensor** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new gpsk_tensor{gpsk::parse_tensor(text, eps_or_default(eps))};
    });
}

gpsk_status gpsk_tensor_load(const char* path, double eps, gpsk_tensor** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new gpsk_tensor{gpsk::parse_tensor(gpsk::read_text_file(path), eps_or_default(eps))};
    });
}

gpsk_status gpsk_tensor_generate(const char* field, double eps, size_t order, const size_t* shape,
                                 const size_t* mlrank, uint64_t seed, gpsk_tensor** out) {
    return guarded([&] {
        require(field, "field");
        require(shape, "shape");
        require(mlrank, "mlrank");
        require(out, "out");
        auto spec = gpsk::FieldSpec::parse(field, eps_or_default(eps));
        std::vector<std::size_t> s(shape, shape + order), r(mlrank, mlrank + order);
        gpsk::Rng rng(seed);
        *out = gpsk::visit_field(
            spec, [&](const auto& k) { return new gpsk_tensor{gpsk::random_low_mlrank_tensor(k, s, r, rng)}; });
    });
}

gpsk_status gpsk_tensor_generate_tproduct(const char* field, double eps, size_t rows, size_t cols, size_t depth,
                                          size_t inner, uint64_t seed, gpsk_tensor** out) {
    return guarded([&] {
        require(field, "field");
        require(out, "out");
        auto spec = gpsk::FieldSpec::parse(field, eps_or_default(eps));
        if (spec.is_exact()) gpsk::raise(gpsk::ErrorCode::unsupported_field, "t-product tensors must be real or complex");
        const bool real = spec.kind == gpsk::FieldKind::real;
        gpsk::Rng rng(seed);
        auto t = gpsk::random_tproduct_tensor(gpsk::ComplexField(spec.eps), rows, cols, depth, inner, real, rng);
        if (real) {
            *out = new gpsk_tensor{t.to_real_tensor()};
        } else {
            *out = new gpsk_tensor{t.to_tensor()};
        }
    });
}

void gpsk_tensor_free(gpsk_tensor* t) { delete t; }

gpsk_status gpsk_tensor_format(const gpsk_tensor* t, char** out) {
    return guarded([&] {
        require(t, "tensor");
        require(out, "out");
        *out = copy_string(gpsk::format_tensor(t->value));
    });
}

gpsk_status gpsk_tensor_field(const gpsk_tensor* t, char** out) {
    return guarded([&] {
        require(t, "tensor");
        require(out, "out");
        *out = copy_string(gpsk::field_of(t->value).name());
    });
}

gpsk_status gpsk_tensor_order(const gpsk_tensor* t, size_t* order) {
    return guarded([&] {
        require(t, "tensor");
        require(order, "order");
        *order = std::visit([](const auto& x) { return x.order(); }, t->value);
    });
}

gpsk_status gpsk_tensor_shape(const gpsk_tensor* t, size_t* shape) {
    return guarded([&] {
        require(t, "tensor");
        require(shape, "shape");
        const auto& s = std::visit([](const auto& x) -> const std::vector<std::size_t>& { return x.shape(); }, t->value);
        std::copy(s.begin(), s.end(), shape);
    });
}

gpsk_status gpsk_tensor_multilinear_rank(const gpsk_tensor* t, size_t* ranks) {
    return guarded([&] {
        require(t, "tensor");
        require(ranks, "ranks");
        auto r = std::visit([](const auto& x) { return gpsk::multilinear_rank(x); }, t->value);
        std::copy(r.begin(), r.end(), ranks);
    });
}

gpsk_status gpsk_verify_cur(const gpsk_matrix* a, const size_t* rows, size_t nrows, const size_t* cols, size_t ncols,
                            const gpsk_budget* budget, gpsk_format format, char** report, int* consistent) {
    return guarded([&] {
        require(a, "matrix");
        require(report, "report");
        auto b = budget_of(budget, 16);
        std::visit(
            [&](const auto& m) {
                gpsk::IndexSet is, js;
                if (rows == nullptr && cols == nullptr) {
                    std::tie(is, js) = gpsk::select_indices(m);
                } else {
                    is = index_set(rows, nrows, m.rows());
                    js = index_set(cols, ncols, m.cols());
                }
                emit(gpsk::verify_cur(m, is, js, b), format, report, consistent);
            },
            a->value);
    });
}

gpsk_status gpsk_verify_fiber(const gpsk_tensor* t, const gpsk_index_set* rows, const gpsk_index_set* cols,
                              const gpsk_budget* budget, gpsk_format format, char** report, int* consistent) {
    return guarded([&] {
        require(t, "tensor");
        require(report, "report");
        auto b = budget_of(budget, gpsk::kTensorSamples);
        std::visit(
            [&](const auto& x) {
                std::vector<gpsk::IndexSet> is, js;
                if (rows == nullptr && cols == nullptr) {
                    std::tie(is, js) = gpsk::select_fiber_indices(x);
                } else {
                    require(rows, "row sets");
                    require(cols, "column sets");
                    for (std::size_t k = 0; k < x.order(); ++k) {
                        is.push_back(index_set(rows[k].indices, rows[k].count, x.dim(k)));
                        js.push_back(index_set(cols[k].indices, cols[k].count, product_except(x.shape(), k)));
                    }
                }
                emit(gpsk::fiber_cur(x, is, js, b), format, report, consistent);
            },
            t->value);
    });
}

gpsk_status gpsk_verify_chidori(const gpsk_tensor* t, const gpsk_index_set* rows, const gpsk_budget* budget,
                                gpsk_format format, char** report, int* consistent) {
    return guarded([&] {
        require(t, "tensor");
        require(report, "report");
        auto b = budget_of(budget, gpsk::kTensorSamples);
        std::visit(
            [&](const auto& x) {
                std::vector<gpsk::IndexSet> is;
                if (rows == nullptr) {
                    is = gpsk::select_chidori_indices(x);
                } else {
                    for (std::size_t k = 0; k < x.order(); ++k)
                        is.push_back(index_set(rows[k].indices, rows[k].count, x.dim(k)));
                }
                emit(gpsk::chidori_cur(x, is, b), format, report, consistent);
            },
            t->value);
    });
}

gpsk_status gpsk_verify_tcur(const gpsk_tensor* t, const size_t* rows, size_t nrows, const size_t* cols, size_t ncols,
                             const gpsk_budget* budget, gpsk_format format, char** report, int* consistent) {
    return guarded([&] {
        require(t, "tensor");
        require(report, "report");
        auto b = budget_of(budget, 16);
        gpsk::Tensor3 x = as_tensor3(t->value);
        gpsk::IndexSet is, js;
        if (rows == nullptr && cols == nullptr) {
            std::tie(is, js) = gpsk::select_tcur_indices(x);
        } else {
            is = index_set(rows, nrows, x.rows());
            js = index_set(cols, ncols, x.cols());
        }
        emit(gpsk::verify_tcur(x, is, js, b), format, report, consistent);
    });
}

gpsk_status gpsk_geninv_report(const gpsk_matrix* a, const gpsk_geninv_options* options, const gpsk_budget* budget,
                               gpsk_format format, char** report, int* consistent) {
    return guarded([&] {
        require(a, "matrix");
        require(report, "report");
        gpsk::GenInvOptions opts;
        if (options != nullptr) {
            opts.enumerate = options->enumerate != 0;
            opts.mp = options->moore_penrose != 0;
            opts.drazin = options->drazin != 0;
        }
        auto b = budget_of(budget, 16);
        std::visit([&](const auto& m) { emit(gpsk::geninv_report(m, opts, b), format, report, consistent); },
                   a->value);
    });
}

} // extern "C"
