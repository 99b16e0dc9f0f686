#pragma once

// Plain-text matrix and tensor files.
//
//   field <spec>            field <spec>
//   <m> <n>                 <order> <d1> ... <dn>
//   a11 a12 ...             entries, mode 1 fastest
//   ...
//
// Lines starting with '#' are ignored.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "gpsk/tensor.hpp"

namespace gpsk {

using AnyMatrix = std::variant<Matrix<PrimeField>, Matrix<RationalField>, Matrix<RealField>, Matrix<ComplexField>>;
using AnyTensor = std::variant<Tensor<PrimeField>, Tensor<RationalField>, Tensor<RealField>, Tensor<ComplexField>>;

/// `eps` is attached to real and complex fields.
AnyMatrix parse_matrix(std::string_view text, double eps = kDefaultEps);
AnyTensor parse_tensor(std::string_view text, double eps = kDefaultEps);

template <Field K>
std::string format_matrix(const Matrix<K>& a) {
    std::string out = "field " + a.field().spec().name() + "\n" + std::to_string(a.rows()) + " " +
                      std::to_string(a.cols()) + "\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j > 0) out += ' ';
            out += a.field().format(a(i, j));
        }
        out += '\n';
    }
    return out;
}

/// One mode-1 fiber per line.
template <Field K>
std::string format_tensor(const Tensor<K>& t) {
    std::string out = "field " + t.field().spec().name() + "\n" + std::to_string(t.order());
    for (auto d : t.shape()) out += " " + std::to_string(d);
    out += '\n';
    const std::size_t fiber = t.shape().front();
    auto data = t.data();
    for (std::size_t k = 0; k < data.size(); ++k) {
        out += t.field().format(data[k]);
        out += (k + 1) % fiber == 0 ? '\n' : ' ';
    }
    return out;
}

inline std::string format_matrix(const AnyMatrix& a) {
    return std::visit([](const auto& m) { return format_matrix(m); }, a);
}
inline std::string format_tensor(const AnyTensor& t) {
    return std::visit([](const auto& x) { return format_tensor(x); }, t);
}

inline FieldSpec field_of(const AnyMatrix& a) {
    return std::visit([](const auto& m) { return m.field().spec(); }, a);
}
inline FieldSpec field_of(const AnyTensor& t) {
    return std::visit([](const auto& x) { return x.field().spec(); }, t);
}

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

} // namespace gpsk
