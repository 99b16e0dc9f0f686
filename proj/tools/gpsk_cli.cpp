// gpsk command-line front end. Talks to the library only through gpsk.h.

#include <gpsk.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { kConsistent = 0, kInconsistent = 1, kUsage = 2 };

struct Failure {
    gpsk_status status;
    std::string message;
};

void check(gpsk_status s) {
    if (s != GPSK_OK) throw Failure{s, gpsk_last_error()};
}

struct StringDeleter {
    void operator()(char* s) const { gpsk_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct MatrixDeleter {
    void operator()(gpsk_matrix* m) const { gpsk_matrix_free(m); }
};
struct TensorDeleter {
    void operator()(gpsk_tensor* t) const { gpsk_tensor_free(t); }
};
using MatrixHandle = std::unique_ptr<gpsk_matrix, MatrixDeleter>;
using TensorHandle = std::unique_ptr<gpsk_tensor, TensorDeleter>;

std::vector<std::size_t> split_sizes(const std::string& text, char sep, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, sep);) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size()) throw CLI::ValidationError(what, "'" + text + "' is not a list of integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw CLI::ValidationError(what, "empty list");
    return out;
}

// "1,2/3/1,4" -> one set per mode
std::vector<std::vector<std::size_t>> split_mode_sets(const std::string& text, const char* what) {
    std::vector<std::vector<std::size_t>> out;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, '/');) out.push_back(split_sizes(part, ',', what));
    return out;
}

struct Common {
    std::string field;
    std::uint64_t seed = 0;
    std::size_t samples = 0;  // 0: module default
    std::uint64_t enum_cap = 0;
    double eps = 0.0;
    std::string format = "json";
    std::string out;
};

gpsk_budget budget_for(const Common& c, std::size_t default_samples, std::uint64_t seed) {
    gpsk_budget b;
    gpsk_budget_default(&b);
    b.seed = seed;
    b.samples = c.samples != 0 ? c.samples : default_samples;
    if (c.enum_cap != 0) b.enum_cap = c.enum_cap;
    return b;
}

gpsk_format format_for(const Common& c) { return c.format == "text" ? GPSK_FORMAT_TEXT : GPSK_FORMAT_JSON; }

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Failure{GPSK_ERR_IO, "cannot write '" + path + "'"};
    f << content;
    if (!f) throw Failure{GPSK_ERR_IO, "write failed on '" + path + "'"};
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    Common common;
    std::string shape;
    std::optional<std::size_t> rank;
    std::string mlrank;
    std::optional<std::size_t> trank;
};

int run_gen(const GenArgs& g) {
    auto shape = split_sizes(g.shape, 'x', "--shape");
    OwnedString text;
    std::string ranks;
    char* raw = nullptr;
    if (shape.size() == 2) {
        if (!g.rank) throw CLI::ValidationError("--rank", "matrix shapes need --rank");
        gpsk_matrix* m = nullptr;
        check(gpsk_matrix_generate(g.common.field.c_str(), g.common.eps, shape[0], shape[1], *g.rank, g.common.seed, &m));
        MatrixHandle h(m);
        std::size_t r = 0;
        check(gpsk_matrix_rank(h.get(), &r));
        check(gpsk_matrix_format(h.get(), &raw));
        text.reset(raw);
        ranks = "rank " + std::to_string(r);
    } else {
        gpsk_tensor* t = nullptr;
        if (g.trank) {
            if (shape.size() != 3) throw CLI::ValidationError("--t-rank", "t-product tensors have three modes");
            check(gpsk_tensor_generate_tproduct(g.common.field.c_str(), g.common.eps, shape[0], shape[1], shape[2],
                                                *g.trank, g.common.seed, &t));
        } else {
            if (g.mlrank.empty()) throw CLI::ValidationError("--mlrank", "tensor shapes need --mlrank or --t-rank");
            auto target = split_sizes(g.mlrank, ',', "--mlrank");
            if (target.size() != shape.size()) {
                throw CLI::ValidationError("--mlrank", "one rank per mode is required");
            }
            check(gpsk_tensor_generate(g.common.field.c_str(), g.common.eps, shape.size(), shape.data(),
                                       target.data(), g.common.seed, &t));
        }
        TensorHandle h(t);
        std::vector<std::size_t> mlr(shape.size());
        check(gpsk_tensor_multilinear_rank(h.get(), mlr.data()));
        check(gpsk_tensor_format(h.get(), &raw));
        text.reset(raw);
        ranks = "mlrank " + join(mlr);
    }
    write_output(g.common.out, text.get());
    (g.common.out.empty() ? std::cerr : std::cout) << ranks << "\n";
    return kConsistent;
}

// ---------------------------------------------------------------------------
// verify

enum class VerifyKind { cur, fiber, chidori, tcur };

struct VerifyArgs {
    Common common;
    std::string input;
    std::string rows;
    std::string cols;
    bool auto_indices = false;
    std::size_t trials = 1;
};

struct Outcome {
    std::string report;
    bool consistent = false;
};

Outcome verify_once(VerifyKind kind, const VerifyArgs& v, std::uint64_t seed) {
    const Common& c = v.common;
    char* raw = nullptr;
    int consistent = 0;
    const gpsk_format fmt = format_for(c);
    if (kind == VerifyKind::cur) {
        gpsk_matrix* m = nullptr;
        check(gpsk_matrix_load(v.input.c_str(), c.eps, &m));
        MatrixHandle h(m);
        auto b = budget_for(c, 16, seed);
        if (v.auto_indices) {
            check(gpsk_verify_cur(h.get(), nullptr, 0, nullptr, 0, &b, fmt, &raw, &consistent));
        } else {
            auto rs = split_sizes(v.rows, ',', "--rows");
            auto cs = split_sizes(v.cols, ',', "--cols");
            check(gpsk_verify_cur(h.get(), rs.data(), rs.size(), cs.data(), cs.size(), &b, fmt, &raw, &consistent));
        }
    } else {
        gpsk_tensor* t = nullptr;
        check(gpsk_tensor_load(v.input.c_str(), c.eps, &t));
        TensorHandle h(t);
        std::size_t order = 0;
        check(gpsk_tensor_order(h.get(), &order));
        auto mode_sets = [&](const std::string& text, const char* what) {
            auto sets = split_mode_sets(text, what);
            if (sets.size() != order) {
                throw CLI::ValidationError(what, "expected " + std::to_string(order) + " '/'-separated sets");
            }
            return sets;
        };
        auto views = [](const std::vector<std::vector<std::size_t>>& sets) {
            std::vector<gpsk_index_set> out;
            for (const auto& s : sets) out.push_back({s.data(), s.size()});
            return out;
        };
        if (kind == VerifyKind::tcur) {
            auto b = budget_for(c, 16, seed);
            if (v.auto_indices) {
                check(gpsk_verify_tcur(h.get(), nullptr, 0, nullptr, 0, &b, fmt, &raw, &consistent));
            } else {
                auto rs = split_sizes(v.rows, ',', "--rows");
                auto cs = split_sizes(v.cols, ',', "--cols");
                check(gpsk_verify_tcur(h.get(), rs.data(), rs.size(), cs.data(), cs.size(), &b, fmt, &raw,
                                       &consistent));
            }
        } else if (kind == VerifyKind::fiber) {
            auto b = budget_for(c, 8, seed);
            if (v.auto_indices) {
                check(gpsk_verify_fiber(h.get(), nullptr, nullptr, &b, fmt, &raw, &consistent));
            } else {
                auto rs = mode_sets(v.rows, "--rows");
                auto cs = mode_sets(v.cols, "--cols");
                auto rv = views(rs), cv = views(cs);
                check(gpsk_verify_fiber(h.get(), rv.data(), cv.data(), &b, fmt, &raw, &consistent));
            }
        } else {
            auto b = budget_for(c, 8, seed);
            if (v.auto_indices) {
                check(gpsk_verify_chidori(h.get(), nullptr, &b, fmt, &raw, &consistent));
            } else {
                auto rs = mode_sets(v.rows, "--rows");
                auto rv = views(rs);
                check(gpsk_verify_chidori(h.get(), rv.data(), &b, fmt, &raw, &consistent));
            }
        }
    }
    OwnedString report(raw);
    return {report.get(), consistent != 0};
}

int run_verify(VerifyKind kind, const VerifyArgs& v) {
    if (!v.auto_indices) {
        if (v.rows.empty()) throw CLI::ValidationError("--rows", "give index sets or --auto-indices");
        if (kind != VerifyKind::chidori && v.cols.empty()) {
            throw CLI::ValidationError("--cols", "give index sets or --auto-indices");
        }
    }
    if (v.trials == 1) {
        auto o = verify_once(kind, v, v.common.seed);
        write_output(v.common.out, o.report);
        return o.consistent ? kConsistent : kInconsistent;
    }
    bool all = true;
    std::string text;
    auto trials = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < v.trials; ++k) {
        const std::uint64_t seed = v.common.seed + k;
        auto o = verify_once(kind, v, seed);
        all = all && o.consistent;
        if (v.common.format == "json") {
            trials.push_back(nlohmann::ordered_json::parse(o.report));
        } else {
            text += "trial " + std::to_string(k + 1) + " seed " + std::to_string(seed) + "\n" + o.report;
        }
    }
    if (v.common.format == "json") {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["trials"] = std::move(trials);
        j["consistent"] = all;
        text = j.dump(2) + "\n";
    } else {
        text += std::string("consistent: ") + (all ? "true" : "false") + "\n";
    }
    write_output(v.common.out, text);
    return all ? kConsistent : kInconsistent;
}

// ---------------------------------------------------------------------------
// geninv

struct GenInvArgs {
    Common common;
    std::string input;
    bool enumerate = false;
    bool mp = false;
    bool drazin = false;
};

int run_geninv(const GenInvArgs& g) {
    gpsk_matrix* m = nullptr;
    check(gpsk_matrix_load(g.input.c_str(), g.common.eps, &m));
    MatrixHandle h(m);
    gpsk_geninv_options opts{g.enumerate ? 1 : 0, g.mp ? 1 : 0, g.drazin ? 1 : 0};
    auto b = budget_for(g.common, 16, g.common.seed);
    char* raw = nullptr;
    int consistent = 0;
    check(gpsk_geninv_report(h.get(), &opts, &b, format_for(g.common), &raw, &consistent));
    OwnedString report(raw);
    write_output(g.common.out, report.get());
    return consistent != 0 ? kConsistent : kInconsistent;
}

void add_budget_options(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "Seed for every random choice");
    app->add_option("--samples", c.samples, "Draws per sampled quantifier")->check(CLI::PositiveNumber);
    app->add_option("--enum-cap", c.enum_cap, "Largest family decided by enumeration")->check(CLI::PositiveNumber);
    app->add_option("--eps", c.eps, "Zero threshold for real/complex input")->check(CLI::PositiveNumber);
    app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app->add_option("--out", c.out, "Output path (default stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized pseudoskeleton (CUR) decompositions over arbitrary fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gpsk_version()));

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a random matrix or tensor of prescribed rank");
    gen_cmd->add_option("--field", gen.common.field, "gf <p>, rational, real or complex")->required();
    gen_cmd->add_option("--shape", gen.shape, "MxN or D1xD2x...")->required();
    gen_cmd->add_option("--rank", gen.rank, "Matrix rank");
    gen_cmd->add_option("--mlrank", gen.mlrank, "Multilinear rank, comma separated");
    gen_cmd->add_option("--t-rank", gen.trank, "Inner size of a random t-product A * B (real/complex, 3 modes)");
    gen_cmd->add_option("--seed", gen.common.seed, "Seed");
    gen_cmd->add_option("--eps", gen.common.eps, "Zero threshold")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--out", gen.common.out, "Output path (default stdout)");

    VerifyArgs verify;
    VerifyKind kind = VerifyKind::cur;
    auto* verify_cmd = app.add_subcommand("verify", "Check a CUR characterization on an input file");
    verify_cmd->require_subcommand(1);
    struct Sub {
        const char* name;
        const char* help;
        VerifyKind kind;
    };
    const Sub subs[] = {
        {"cur", "Matrix CUR, conditions (i)-(x)", VerifyKind::cur},
        {"fiber", "Fiber tensor CUR, conditions (i)-(iv)", VerifyKind::fiber},
        {"chidori", "Chidori tensor CUR, conditions (i)-(v)", VerifyKind::chidori},
        {"tcur", "t-product CUR, conditions (i)-(viii)", VerifyKind::tcur},
    };
    for (const auto& s : subs) {
        auto* cmd = verify_cmd->add_subcommand(s.name, s.help);
        cmd->add_option("input", verify.input, "Matrix or tensor file")->required();
        cmd->add_option("--rows", verify.rows, "1-based row indices, e.g. 1,3 (tensors: 1,2/3/1,4)");
        cmd->add_option("--cols", verify.cols, "1-based column indices");
        cmd->add_flag("--auto-indices", verify.auto_indices, "Select indices by pivoting");
        cmd->add_option("--trials", verify.trials, "Repeat with seeds seed, seed+1, ...")->check(CLI::PositiveNumber);
        add_budget_options(cmd, verify.common);
        cmd->callback([&kind, k = s.kind] { kind = k; });
    }

    GenInvArgs geninv;
    auto* geninv_cmd = app.add_subcommand("geninv", "Sample or enumerate generalized inverses of a matrix");
    geninv_cmd->add_option("input", geninv.input, "Matrix file")->required();
    geninv_cmd->add_flag("--enumerate", geninv.enumerate, "Enumerate the whole family (GF(p) only)");
    geninv_cmd->add_flag("--mp", geninv.mp, "Include the Moore-Penrose inverse (real/complex)");
    geninv_cmd->add_flag("--drazin", geninv.drazin, "Include the Drazin inverse (square input)");
    add_budget_options(geninv_cmd, geninv.common);

    try {
        app.parse(argc, argv);
        if (*gen_cmd) return run_gen(gen);
        if (*verify_cmd) return run_verify(kind, verify);
        return run_geninv(geninv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        app.exit(e);
        return kUsage;
    } catch (const Failure& f) {
        std::cerr << "error: " << gpsk_status_string(f.status) << ": " << f.message << "\n";
        return f.status == GPSK_ERR_VERIFICATION_FAILED ? kInconsistent : kUsage;
    }
}
