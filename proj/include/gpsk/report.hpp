#pragma once

// Serialized verification reports. JSON output is versioned ("schema": 1),
// keys appear in a fixed order, and the same report always renders to the
// same bytes.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpsk/cur.hpp"
#include "gpsk/tensor.hpp"
#include "gpsk/tprod.hpp"

namespace gpsk {

inline constexpr int kReportSchema = 1;

enum class ReportFormat { json, text };

ReportFormat parse_report_format(std::string_view text);

using TextMatrix = std::vector<std::vector<std::string>>;

template <Field K>
TextMatrix to_text(const Matrix<K>& a) {
    TextMatrix out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i].push_back(a.field().format(a(i, j)));
    return out;
}

/// "{1}", "{1,2}", ..., "{}" when no condition holds.
std::string mp_set_name(const MpConditionSet& s);

struct GenInvOptions {
    bool enumerate = false;
    bool mp = false;
    bool drazin = false;
};

struct GenInvReport {
    FieldSpec field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t rank = 0;
    std::size_t free_entries = 0;
    std::optional<std::uint64_t> count;  // finite fields, when within the cap
    Mode mode = Mode::sampled;
    std::uint64_t checked = 0;
    bool all_inner = true;                        // every member checked satisfied A B A = A
    std::map<std::string, std::uint64_t> mp_sets;  // condition set -> members observed
    TextMatrix canonical;
    std::optional<TextMatrix> moore_penrose;
    std::string moore_penrose_set;
    std::optional<TextMatrix> drazin;
    std::size_t drazin_index = 0;
    std::uint64_t seed = 0;

    bool consistent() const noexcept {
        return all_inner && (!moore_penrose || moore_penrose_set == "{1,2,3,4}");
    }
};

/// Enumerates (finite fields, `enumerate`) or samples the generalized
/// inverses of `a` and tallies which Moore-Penrose conditions each satisfies.
template <Field K>
GenInvReport geninv_report(const Matrix<K>& a, const GenInvOptions& opts, const SamplingBudget& budget = {}) {
    InverseFamily<K> family(a);
    GenInvReport rep;
    rep.field = a.field().spec();
    rep.rows = a.rows();
    rep.cols = a.cols();
    rep.rank = family.rank();
    rep.free_entries = family.free_entries();
    rep.count = family.count(budget.enum_cap);
    rep.seed = budget.seed;
    rep.canonical = to_text(family.canonical());

    auto tally = [&](const Matrix<K>& b) {
        auto s = mp_conditions(a, b);
        rep.all_inner = rep.all_inner && s.c1;
        ++rep.mp_sets[mp_set_name(s)];
        ++rep.checked;
    };
    if (opts.enumerate) {
        rep.mode = Mode::exhaustive;
        for (const auto& b : enumerate_generalized_inverses(a, budget.enum_cap)) tally(b);
    } else {
        rep.mode = Mode::sampled;
        Rng rng(budget.seed);
        for (std::size_t s = 0; s < budget.samples; ++s) tally(family.sample(rng));
    }
    if (opts.mp) {
        Matrix<K> p = moore_penrose(a);
        rep.moore_penrose = to_text(p);
        rep.moore_penrose_set = mp_set_name(mp_conditions(a, p));
    }
    if (opts.drazin) {
        auto d = drazin_inverse(a);
        rep.drazin = to_text(d.inverse);
        rep.drazin_index = d.index;
    }
    return rep;
}

std::string render(const CurReport& r, ReportFormat format);
std::string render(const TensorCurReport& r, ReportFormat format);
std::string render(const TcurReport& r, ReportFormat format);
std::string render(const GenInvReport& r, ReportFormat format);

} // namespace gpsk
