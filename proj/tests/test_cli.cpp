#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(GPSK_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("gpsk_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content = "") const {
        auto p = path / name;
        if (!content.empty()) std::ofstream(p) << content;
        return p.string();
    }
};

} // namespace

TEST_CASE("gen then verify cur") {
    TempDir dir;
    auto m = dir.file("m.txt");
    auto g = cli("gen --field gf5 --shape 4x6 --rank 2 --seed 7 --out " + m);
    CHECK(g.code == 0);
    CHECK(g.out == "rank 2\n");

    auto v = cli("verify cur " + m + " --auto-indices --seed 3");
    CHECK(v.code == 0);
    auto j = json::parse(v.out);
    CHECK(j["ranks"]["A"] == 2);
    CHECK(j["consistent"] == true);
    for (const auto& [name, flag] : j["conditions"].items()) CHECK(flag["value"] == true);
    CHECK(cli("verify cur " + m + " --auto-indices --seed 3").out == v.out);

    auto u = cli("verify cur " + m + " --rows 1 --cols 1,2,3 --format text");
    CHECK(u.code == 0);
    CHECK(u.out.find("i: false") != std::string::npos);
    CHECK(u.out.find("consistent: true") != std::string::npos);

    auto inv = dir.file("inv.txt");
    CHECK(cli("gen --field rational --shape 3x3 --rank 3 --out " + inv).out == "rank 3\n");
}

TEST_CASE("tensor subcommands") {
    TempDir dir;
    auto t = dir.file("t.txt");
    CHECK(cli("gen --field gf7 --shape 4x5x6 --mlrank 2,2,2 --seed 1 --out " + t).out == "mlrank 2,2,2\n");
    auto f = cli("verify fiber " + t + " --auto-indices");
    CHECK(f.code == 0);
    CHECK(json::parse(f.out)["kind"] == "fiber");
    auto c = cli("verify chidori " + t + " --auto-indices");
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["conditions"]["v"]["value"] == true);
    auto bad = cli("verify chidori " + t + " --rows 1/1,2/1,2");
    CHECK(bad.code == 0);
    CHECK(json::parse(bad.out)["conditions"]["i"]["value"] == false);

    auto x = dir.file("x.txt");
    CHECK(cli("gen --field real --shape 4x5x3 --t-rank 2 --seed 2 --out " + x).code == 0);
    auto tc = cli("verify tcur " + x + " --auto-indices --seed 9");
    CHECK(tc.code == 0);
    auto j = json::parse(tc.out);
    CHECK(j["consistent"] == true);
    CHECK(j["max_reconstruction_error"].get<double>() <= 1e-8);
    CHECK(cli("verify tcur " + t + " --auto-indices").code == 2);
}

TEST_CASE("geninv subcommand") {
    TempDir dir;
    auto e = dir.file("e.txt", "field gf 2\n2 2\n1 0\n0 0\n");
    auto r = cli("geninv " + e + " --enumerate");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["count"] == 8);

    auto n = dir.file("n.txt", "field rational\n2 2\n0 1\n0 0\n");
    auto d = json::parse(cli("geninv " + n + " --drazin").out);
    CHECK(d["drazin"]["index"] == 2);
    CHECK(d["drazin"]["matrix"] == json::array({json::array({"0", "0"}), json::array({"0", "0"})}));

    auto re = dir.file("r.txt", "field real\n2 3\n1 2 3\n2 4 6\n");
    auto mp = json::parse(cli("geninv " + re + " --mp").out);
    CHECK(mp["moore_penrose"]["conditions"] == "{1,2,3,4}");

    auto big = dir.file("big.txt", "field gf 5\n3 3\n0 0 0\n0 0 0\n0 0 0\n");
    CHECK(cli("geninv " + big + " --enumerate").code == 2);
}

TEST_CASE("trials and output files") {
    TempDir dir;
    auto m = dir.file("m.txt");
    cli("gen --field rational --shape 5x4 --rank 2 --seed 4 --out " + m);
    auto r = cli("verify cur " + m + " --auto-indices --trials 3 --seed 10");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["trials"].size() == 3);
    CHECK(j["trials"][2]["seed"] == 12);
    CHECK(j["consistent"] == true);

    auto out = dir.file("report.json");
    CHECK(cli("verify cur " + m + " --auto-indices --out " + out).code == 0);
    std::ifstream in(out);
    std::string saved((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(saved == cli("verify cur " + m + " --auto-indices").out);
}

TEST_CASE("usage and input errors") {
    TempDir dir;
    auto bad = dir.file("bad.txt", "field gf 5\n2 2\n1 2\n");
    CHECK(cli("verify cur " + bad + " --auto-indices").code == 2);
    CHECK(cli("verify cur " + dir.file("missing.txt") + " --auto-indices").code == 2);
    CHECK(cli("gen --shape 2x2").code == 2);
    CHECK(cli("gen --field gf5 --shape 2x3 --rank 3").code == 2);
    CHECK(cli("verify cur").code == 2);
    CHECK(cli("frobnicate").code == 2);
    auto ok = dir.file("ok.txt", "field gf 5\n2 2\n1 2\n3 4\n");
    CHECK(cli("verify cur " + ok + " --rows 3 --cols 1").code == 2);
    CHECK(cli("verify cur " + ok + " --rows 1 --cols 1 --samples 0").code == 2);
    CHECK(cli("verify cur " + ok + " --rows 1 --cols 1 --format xml").code == 2);
    CHECK(cli("--help").code == 0);
}
