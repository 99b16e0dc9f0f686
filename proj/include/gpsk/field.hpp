#pragma once

// Field abstraction shared by every algorithm in the library.
//
// Each concrete field is a small value type carrying its runtime parameters
// (the modulus for GF(p), the zero threshold for floating fields) and exposing
// the arithmetic needed by elimination. Algorithms are templates over the
// `Field` concept; `FieldSpec` is the tagged runtime descriptor used by the
// text formats, reports and the C API.

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "gpsk/error.hpp"

namespace gpsk {

using Rng = std::mt19937_64;

inline constexpr double kDefaultEps = 1e-10;

enum class FieldKind { prime, rational, real, complex };

bool is_prime(std::uint64_t n) noexcept;

struct FieldSpec {
    FieldKind kind = FieldKind::rational;
    std::uint32_t p = 0;   // prime fields only
    double eps = 0.0;      // floating fields only

    static FieldSpec prime(std::uint32_t p);
    static FieldSpec rational() { return {FieldKind::rational, 0, 0.0}; }
    static FieldSpec real(double eps = kDefaultEps);
    static FieldSpec complex(double eps = kDefaultEps);

    /// Accepts `gf <p>`, `gf<p>`, `rational`, `real`, `complex`. The eps is
    /// attached to floating kinds and ignored otherwise.
    static FieldSpec parse(std::string_view text, double eps = kDefaultEps);

    /// File spelling: `gf 5`, `rational`, `real`, `complex`.
    std::string name() const;

    bool is_exact() const noexcept { return kind == FieldKind::prime || kind == FieldKind::rational; }
    bool is_finite() const noexcept { return kind == FieldKind::prime; }

    /// Name of the involution used for the `*` operator in this field.
    const char* involution() const noexcept {
        return kind == FieldKind::complex ? "conjugate" : "identity";
    }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

template <class K>
concept Field = std::copy_constructible<K> && requires(const K& k, const typename K::value_type& a,
                                                       Rng& rng, std::string_view text) {
    typename K::value_type;
    { K::is_exact } -> std::convertible_to<bool>;
    { k.zero() } -> std::same_as<typename K::value_type>;
    { k.one() } -> std::same_as<typename K::value_type>;
    { k.add(a, a) } -> std::same_as<typename K::value_type>;
    { k.sub(a, a) } -> std::same_as<typename K::value_type>;
    { k.mul(a, a) } -> std::same_as<typename K::value_type>;
    { k.neg(a) } -> std::same_as<typename K::value_type>;
    { k.inv(a) } -> std::same_as<typename K::value_type>;
    { k.conj(a) } -> std::same_as<typename K::value_type>;
    { k.is_zero(a) } -> std::same_as<bool>;
    { k.approx_zero(a, 1.0) } -> std::same_as<bool>;
    { k.magnitude(a) } -> std::same_as<double>;
    { k.from_int(1LL) } -> std::same_as<typename K::value_type>;
    { k.sample(rng) } -> std::same_as<typename K::value_type>;
    { k.order() } -> std::same_as<std::optional<std::uint64_t>>;
    { k.spec() } -> std::same_as<FieldSpec>;
    { k.format(a) } -> std::same_as<std::string>;
    { k.parse(text) } -> std::same_as<typename K::value_type>;
};

// ---------------------------------------------------------------------------

/// GF(p) with machine-word residues; p < 2^31 so products fit in 64 bits.
class PrimeField {
public:
    using value_type = std::uint32_t;
    static constexpr bool is_exact = true;

    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const noexcept { return p_; }

    value_type zero() const noexcept { return 0; }
    value_type one() const noexcept { return 1; }
    value_type add(value_type a, value_type b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<value_type>(s >= p_ ? s - p_ : s);
    }
    value_type sub(value_type a, value_type b) const noexcept {
        return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
    }
    value_type mul(value_type a, value_type b) const noexcept {
        return static_cast<value_type>(std::uint64_t{a} * b % p_);
    }
    value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
    value_type inv(value_type a) const;
    value_type conj(value_type a) const noexcept { return a; }

    bool is_zero(value_type a) const noexcept { return a == 0; }
    bool approx_zero(value_type a, double) const noexcept { return a == 0; }
    double magnitude(value_type a) const noexcept { return a == 0 ? 0.0 : 1.0; }

    value_type from_int(long long v) const noexcept {
        long long r = v % static_cast<long long>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }
    value_type sample(Rng& rng) const {
        return static_cast<value_type>(std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng));
    }
    std::optional<std::uint64_t> order() const noexcept { return p_; }
    /// i-th element in enumeration order, i < p.
    value_type element(std::uint64_t i) const noexcept { return static_cast<value_type>(i); }

    FieldSpec spec() const { return FieldSpec::prime(p_); }
    std::string format(value_type a) const { return std::to_string(a); }
    value_type parse(std::string_view text) const;

    friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

/// Exact rationals backed by GMP; values are kept canonical (reduced, positive
/// denominator).
class RationalField {
public:
    using value_type = mpq_class;
    static constexpr bool is_exact = true;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const;
    value_type conj(const value_type& a) const { return a; }

    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool approx_zero(const value_type& a, double) const { return sgn(a) == 0; }
    double magnitude(const value_type& a) const { return std::abs(a.get_d()); }

    value_type from_int(long long v) const { return value_type(static_cast<long>(v)); }
    /// Small integers in [-3, 3] keep coefficient growth in check.
    value_type sample(Rng& rng) const {
        return value_type(static_cast<long>(std::uniform_int_distribution<int>(-3, 3)(rng)));
    }
    std::optional<std::uint64_t> order() const noexcept { return std::nullopt; }

    FieldSpec spec() const { return FieldSpec::rational(); }
    std::string format(const value_type& a) const { return a.get_str(); }
    value_type parse(std::string_view text) const;

    friend bool operator==(const RationalField&, const RationalField&) noexcept { return true; }
};

class RealField {
public:
    using value_type = double;
    static constexpr bool is_exact = false;

    explicit RealField(double eps = kDefaultEps);

    double eps() const noexcept { return eps_; }

    value_type zero() const noexcept { return 0.0; }
    value_type one() const noexcept { return 1.0; }
    value_type add(value_type a, value_type b) const noexcept { return a + b; }
    value_type sub(value_type a, value_type b) const noexcept { return a - b; }
    value_type mul(value_type a, value_type b) const noexcept { return a * b; }
    value_type neg(value_type a) const noexcept { return -a; }
    value_type inv(value_type a) const;
    value_type conj(value_type a) const noexcept { return a; }

    bool is_zero(value_type a) const noexcept { return a == 0.0; }
    bool approx_zero(value_type a, double scale) const noexcept {
        return std::abs(a) <= eps_ * (scale > 1.0 ? scale : 1.0);
    }
    double magnitude(value_type a) const noexcept { return std::abs(a); }

    value_type from_int(long long v) const noexcept { return static_cast<double>(v); }
    value_type sample(Rng& rng) const { return std::normal_distribution<double>(0.0, 1.0)(rng); }
    std::optional<std::uint64_t> order() const noexcept { return std::nullopt; }

    FieldSpec spec() const { return FieldSpec::real(eps_); }
    std::string format(value_type a) const;
    value_type parse(std::string_view text) const;

    friend bool operator==(const RealField&, const RealField&) noexcept { return true; }

private:
    double eps_;
};

class ComplexField {
public:
    using value_type = std::complex<double>;
    static constexpr bool is_exact = false;

    explicit ComplexField(double eps = kDefaultEps);

    double eps() const noexcept { return eps_; }

    value_type zero() const noexcept { return {}; }
    value_type one() const noexcept { return {1.0, 0.0}; }
    value_type add(const value_type& a, const value_type& b) const noexcept { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const noexcept { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const noexcept { return a * b; }
    value_type neg(const value_type& a) const noexcept { return -a; }
    value_type inv(const value_type& a) const;
    value_type conj(const value_type& a) const noexcept { return std::conj(a); }

    bool is_zero(const value_type& a) const noexcept { return a == value_type{}; }
    bool approx_zero(const value_type& a, double scale) const noexcept {
        return std::abs(a) <= eps_ * (scale > 1.0 ? scale : 1.0);
    }
    double magnitude(const value_type& a) const noexcept { return std::abs(a); }

    value_type from_int(long long v) const noexcept { return {static_cast<double>(v), 0.0}; }
    value_type sample(Rng& rng) const {
        std::normal_distribution<double> normal(0.0, 1.0);
        double re = normal(rng);
        double im = normal(rng);
        return {re, im};
    }
    std::optional<std::uint64_t> order() const noexcept { return std::nullopt; }

    FieldSpec spec() const { return FieldSpec::complex(eps_); }
    std::string format(const value_type& a) const;
    value_type parse(std::string_view text) const;

    friend bool operator==(const ComplexField&, const ComplexField&) noexcept { return true; }

private:
    double eps_;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);
static_assert(Field<RealField>);
static_assert(Field<ComplexField>);

/// Zero threshold of a field (0 for exact fields).
template <Field K>
double tolerance(const K& k) {
    if constexpr (K::is_exact) {
        return 0.0;
    } else {
        return k.eps();
    }
}

/// Calls `fn` with the concrete field object described by `spec`.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
    switch (spec.kind) {
    case FieldKind::prime: return fn(PrimeField(spec.p));
    case FieldKind::rational: return fn(RationalField{});
    case FieldKind::real: return fn(RealField(spec.eps));
    case FieldKind::complex: break;
    }
    return fn(ComplexField(spec.eps));
}

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);
double parse_double(std::string_view text);

} // namespace gpsk
