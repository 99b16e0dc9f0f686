#include "gpsk/field.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace gpsk {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::zero_inverse: return "ZeroInverse";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::field_mismatch: return "FieldMismatch";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::singular: return "Singular";
    case ErrorCode::not_finite_field: return "NotFiniteField";
    case ErrorCode::enumeration_too_large: return "EnumerationTooLarge";
    case ErrorCode::not_generalized_inverse: return "NotGeneralizedInverse";
    case ErrorCode::unsupported_field: return "UnsupportedField";
    case ErrorCode::not_square: return "NotSquare";
    case ErrorCode::verification_failed: return "VerificationFailed";
    case ErrorCode::rank_hypothesis_violated: return "RankHypothesisViolated";
    case ErrorCode::bad_mode: return "BadMode";
    case ErrorCode::infeasible_rank: return "InfeasibleRank";
    case ErrorCode::retries_exhausted: return "RetriesExhausted";
    case ErrorCode::non_conjugate_symmetric: return "NonConjugateSymmetric";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::io_error: return "IOError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
    if (p >= (1u << 31) || !is_prime(p)) {
        raise(ErrorCode::invalid_argument, "gf modulus " + std::to_string(p) + " is not a prime below 2^31");
    }
    return {FieldKind::prime, p, 0.0};
}

namespace {

void check_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        raise(ErrorCode::invalid_argument, "floating fields need a positive finite eps");
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

long long parse_integer(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        raise(ErrorCode::parse_error, "not an integer: '" + std::string(text) + "'");
    }
    return v;
}

} // namespace

FieldSpec FieldSpec::real(double eps) {
    check_eps(eps);
    return {FieldKind::real, 0, eps};
}

FieldSpec FieldSpec::complex(double eps) {
    check_eps(eps);
    return {FieldKind::complex, 0, eps};
}

FieldSpec FieldSpec::parse(std::string_view text, double eps) {
    text = trim(text);
    if (text == "rational") return rational();
    if (text == "real") return real(eps);
    if (text == "complex") return complex(eps);
    if (text.starts_with("gf")) {
        auto rest = trim(text.substr(2));
        long long p = 0;
        try {
            p = parse_integer(rest);
        } catch (const Error&) {
            raise(ErrorCode::parse_error, "bad field spec '" + std::string(text) + "'");
        }
        if (p < 2 || p >= (1LL << 31)) {
            raise(ErrorCode::parse_error, "gf modulus out of range in '" + std::string(text) + "'");
        }
        if (!is_prime(static_cast<std::uint64_t>(p))) {
            raise(ErrorCode::parse_error, "gf modulus " + std::to_string(p) + " is not prime");
        }
        return prime(static_cast<std::uint32_t>(p));
    }
    raise(ErrorCode::parse_error, "unknown field '" + std::string(text) + "'");
}

std::string FieldSpec::name() const {
    switch (kind) {
    case FieldKind::prime: return "gf " + std::to_string(p);
    case FieldKind::rational: return "rational";
    case FieldKind::real: return "real";
    case FieldKind::complex: break;
    }
    return "complex";
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        raise(ErrorCode::parse_error, "not a decimal number: '" + std::string(text) + "'");
    }
    return v;
}

// ---------------------------------------------------------------------------

PrimeField::PrimeField(std::uint32_t p) : p_(FieldSpec::prime(p).p) {}

PrimeField::value_type PrimeField::inv(value_type a) const {
    if (a == 0) raise(ErrorCode::zero_inverse, "inverse of zero in GF(" + std::to_string(p_) + ")");
    // extended Euclid on (a, p)
    long long r0 = p_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        long long t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    return from_int(t0);
}

PrimeField::value_type PrimeField::parse(std::string_view text) const {
    return from_int(parse_integer(text));
}

RationalField::value_type RationalField::inv(const value_type& a) const {
    if (sgn(a) == 0) raise(ErrorCode::zero_inverse, "inverse of zero rational");
    return 1 / a;
}

RationalField::value_type RationalField::parse(std::string_view text) const {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return value_type(static_cast<long>(parse_integer(text)));
    }
    // Validate both parts before handing them to GMP.
    auto num = trim(text.substr(0, slash));
    auto den = trim(text.substr(slash + 1));
    auto digits = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };
    if (!digits(num, true) || !digits(den, false)) {
        raise(ErrorCode::parse_error, "not a rational: '" + std::string(text) + "'");
    }
    if (num.front() == '+') num.remove_prefix(1);
    mpz_class n{std::string(num)};
    mpz_class d{std::string(den)};
    if (d == 0) raise(ErrorCode::parse_error, "zero denominator in '" + std::string(text) + "'");
    value_type q(n, d);
    q.canonicalize();
    return q;
}

RealField::RealField(double eps) : eps_(FieldSpec::real(eps).eps) {}

RealField::value_type RealField::inv(value_type a) const {
    if (approx_zero(a, 1.0)) raise(ErrorCode::zero_inverse, "inverse of (numerically) zero real");
    return 1.0 / a;
}

std::string RealField::format(value_type a) const { return format_double(a); }

RealField::value_type RealField::parse(std::string_view text) const { return parse_double(text); }

ComplexField::ComplexField(double eps) : eps_(FieldSpec::complex(eps).eps) {}

ComplexField::value_type ComplexField::inv(const value_type& a) const {
    if (approx_zero(a, 1.0)) raise(ErrorCode::zero_inverse, "inverse of (numerically) zero complex");
    return 1.0 / a;
}

std::string ComplexField::format(const value_type& a) const {
    std::string out = format_double(a.real());
    double im = a.imag();
    if (im == 0.0 && !std::signbit(im)) return out;
    if (std::signbit(im)) {
        out += '-';
        out += format_double(-im);
    } else {
        out += '+';
        out += format_double(im);
    }
    out += 'i';
    return out;
}

ComplexField::value_type ComplexField::parse(std::string_view text) const {
    text = trim(text);
    if (text.empty()) raise(ErrorCode::parse_error, "empty complex literal");
    if (text.back() != 'i') return {parse_double(text), 0.0};

    auto body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not leading and not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        char c = body[k];
        char prev = body[k - 1];
        if ((c == '+' || c == '-') && prev != 'e' && prev != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [](std::string_view s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_double(s);
    };
    if (split == std::string_view::npos) return {0.0, imag_part(body)};
    return {parse_double(body.substr(0, split)), imag_part(body.substr(split))};
}

} // namespace gpsk
