#pragma once

#include <stdexcept>
#include <string>

namespace gpsk {

enum class ErrorCode {
    zero_inverse,
    index_out_of_range,
    field_mismatch,
    shape_mismatch,
    singular,
    not_finite_field,
    enumeration_too_large,
    not_generalized_inverse,
    unsupported_field,
    not_square,
    verification_failed,
    rank_hypothesis_violated,
    bad_mode,
    infeasible_rank,
    retries_exhausted,
    non_conjugate_symmetric,
    parse_error,
    io_error,
    invalid_argument,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C API can translate it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace gpsk
