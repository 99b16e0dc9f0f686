#pragma once

// Deciding "for some" / "for all generalized inverses" claims.
//
// Over GF(p) with a family small enough to enumerate (at most the cap), both
// quantifiers are decided exactly. Otherwise a fixed number of independent
// draws stands in for the family and the verdict is labelled `sampled`.

#include <cstdint>
#include <vector>

#include "gpsk/geninv.hpp"

namespace gpsk {

enum class Mode { exhaustive, sampled };

inline const char* to_string(Mode mode) noexcept { return mode == Mode::exhaustive ? "exhaustive" : "sampled"; }

struct SamplingBudget {
    std::uint64_t seed = 0;
    std::size_t samples = 16;
    std::uint64_t enum_cap = kDefaultEnumCap;
};

/// A decided condition and how it was decided.
struct Flag {
    bool value = false;
    Mode mode = Mode::exhaustive;
};

struct Quantified {
    bool some = false;
    bool all = true;
    Mode mode = Mode::exhaustive;
    std::uint64_t checked = 0;

    Flag some_flag() const noexcept { return {some, mode}; }
    Flag all_flag() const noexcept { return {all, mode}; }
};

template <Field K, class Pred>
Quantified quantify(const InverseFamily<K>& family, const SamplingBudget& budget, Rng& rng, Pred&& pred) {
    Quantified q;
    auto record = [&](bool v) {
        q.some = q.some || v;
        q.all = q.all && v;
        ++q.checked;
        return q.some && !q.all;  // both quantifiers settled
    };
    if (auto count = family.count(budget.enum_cap)) {
        q.mode = Mode::exhaustive;
        for (std::uint64_t i = 0; i < *count; ++i) {
            if (record(pred(family.at(i)))) break;
        }
    } else {
        q.mode = Mode::sampled;
        for (std::size_t s = 0; s < budget.samples; ++s) {
            if (record(pred(family.sample(rng)))) break;
        }
    }
    return q;
}

/// Quantifies over pairs (L~, R~) from two families. `map_left` / `map_right`
/// turn each inverse into the operand `test` consumes, so the per-member work
/// is done once per member instead of once per pair.
template <Field K, class MapL, class MapR, class Test>
Quantified quantify_pairs(const InverseFamily<K>& left, const InverseFamily<K>& right, const SamplingBudget& budget,
                          Rng& rng, MapL&& map_left, MapR&& map_right, Test&& test) {
    Quantified q;
    auto record = [&](bool v) {
        q.some = q.some || v;
        q.all = q.all && v;
        ++q.checked;
        return q.some && !q.all;
    };
    auto cl = left.count(budget.enum_cap);
    auto cr = right.count(budget.enum_cap);
    if (cl && cr && *cl <= budget.enum_cap / *cr) {
        q.mode = Mode::exhaustive;
        using L = decltype(map_left(left.at(0)));
        using R = decltype(map_right(right.at(0)));
        std::vector<L> lefts;
        std::vector<R> rights;
        lefts.reserve(*cl);
        rights.reserve(*cr);
        for (std::uint64_t i = 0; i < *cl; ++i) lefts.push_back(map_left(left.at(i)));
        for (std::uint64_t j = 0; j < *cr; ++j) rights.push_back(map_right(right.at(j)));
        for (const auto& l : lefts) {
            for (const auto& r : rights) {
                if (record(test(l, r))) return q;
            }
        }
    } else {
        q.mode = Mode::sampled;
        for (std::size_t s = 0; s < budget.samples; ++s) {
            auto l = map_left(left.sample(rng));
            auto r = map_right(right.sample(rng));
            if (record(test(l, r))) break;
        }
    }
    return q;
}

} // namespace gpsk
