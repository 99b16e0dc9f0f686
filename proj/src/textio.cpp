#include "gpsk/textio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace gpsk {

namespace {

struct Lines {
    std::vector<std::string> lines;
    std::vector<std::size_t> numbers;  // 1-based source line
};

Lines content_lines(std::string_view text) {
    Lines out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        ++lineno;
        pos = nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') continue;
        out.lines.emplace_back(line);
        out.numbers.push_back(lineno);
    }
    return out;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    raise(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what);
}

std::size_t parse_dim(const std::string& tok, std::size_t line) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(line, "expected a dimension, got '" + tok + "'");
    return v;
}

FieldSpec parse_header(const Lines& l, double eps) {
    if (l.lines.empty()) raise(ErrorCode::parse_error, "empty input");
    const std::string& head = l.lines[0];
    std::size_t first = head.find_first_not_of(" \t");
    if (head.compare(first, 5, "field") != 0) fail(l.numbers[0], "expected 'field <spec>'");
    try {
        return FieldSpec::parse(std::string_view(head).substr(first + 5), eps);
    } catch (const Error& e) {
        fail(l.numbers[0], e.what());
    }
}

template <Field K>
typename K::value_type parse_scalar(const K& k, const std::string& tok, std::size_t line) {
    try {
        return k.parse(tok);
    } catch (const Error& e) {
        fail(line, e.what());
    }
}

} // namespace

AnyMatrix parse_matrix(std::string_view text, double eps) {
    Lines l = content_lines(text);
    FieldSpec spec = parse_header(l, eps);
    if (l.lines.size() < 2) raise(ErrorCode::parse_error, "missing '<m> <n>' line");
    auto dims = tokens(l.lines[1]);
    if (dims.size() != 2) fail(l.numbers[1], "expected '<m> <n>'");
    const std::size_t m = parse_dim(dims[0], l.numbers[1]);
    const std::size_t n = parse_dim(dims[1], l.numbers[1]);
    if (l.lines.size() != m + 2) {
        raise(ErrorCode::parse_error,
              "expected " + std::to_string(m) + " rows, found " + std::to_string(l.lines.size() - 2));
    }
    return visit_field(spec, [&](const auto& k) -> AnyMatrix {
        using K = std::decay_t<decltype(k)>;
        Matrix<K> a(k, m, n);
        for (std::size_t i = 0; i < m; ++i) {
            auto row = tokens(l.lines[i + 2]);
            if (row.size() != n) {
                fail(l.numbers[i + 2], "expected " + std::to_string(n) + " entries, found " + std::to_string(row.size()));
            }
            for (std::size_t j = 0; j < n; ++j) a(i, j) = parse_scalar(k, row[j], l.numbers[i + 2]);
        }
        return a;
    });
}

AnyTensor parse_tensor(std::string_view text, double eps) {
    Lines l = content_lines(text);
    FieldSpec spec = parse_header(l, eps);
    if (l.lines.size() < 2) raise(ErrorCode::parse_error, "missing '<order> <d1> ... <dn>' line");
    auto head = tokens(l.lines[1]);
    if (head.empty()) fail(l.numbers[1], "expected '<order> <d1> ... <dn>'");
    const std::size_t order = parse_dim(head[0], l.numbers[1]);
    if (order == 0 || head.size() != order + 1) fail(l.numbers[1], "order does not match the number of dimensions");
    std::vector<std::size_t> shape;
    for (std::size_t k = 1; k < head.size(); ++k) shape.push_back(parse_dim(head[k], l.numbers[1]));

    std::vector<std::pair<std::string, std::size_t>> entries;
    for (std::size_t i = 2; i < l.lines.size(); ++i)
        for (auto& tok : tokens(l.lines[i])) entries.emplace_back(std::move(tok), l.numbers[i]);
    const std::size_t expected = Tensor<RationalField>::element_count(shape);
    if (entries.size() != expected) {
        raise(ErrorCode::parse_error,
              "expected " + std::to_string(expected) + " entries, found " + std::to_string(entries.size()));
    }
    return visit_field(spec, [&](const auto& k) -> AnyTensor {
        using K = std::decay_t<decltype(k)>;
        std::vector<typename K::value_type> data;
        data.reserve(expected);
        for (const auto& [tok, line] : entries) data.push_back(parse_scalar(k, tok, line));
        return Tensor<K>(k, shape, std::move(data));
    });
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::io_error, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) raise(ErrorCode::io_error, "read failed on '" + path.string() + "'");
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::io_error, "cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) raise(ErrorCode::io_error, "write failed on '" + path.string() + "'");
}

} // namespace gpsk
