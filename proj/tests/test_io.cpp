#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "kato/errors.hpp"
#include "kato/io/config.hpp"
#include "kato/io/serialize.hpp"

using namespace kato;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_ini(text, "t.ini");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string& args) {
    const int status = std::system((std::string(KATO_CLI) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("kato_io_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

const char* const zero_ini = "[grid]\nnx = 16\nny = 16\n[time]\nT = 0.05\ndt = 1e-2\ncheckpoints = 2\n"
                             "[physics]\nnu = 0.01\nn_modes = 0\n[initial]\nkind = zero\n";

}  // namespace

TEST_CASE("ini errors carry line numbers") {
    CHECK(error_of("[grid]\nnx = 8\nbogus = 1\n") == "t.ini:3: unknown key grid.bogus");
    CHECK(error_of("[grid]\nnx = 8\nnx = 16\n") == "t.ini:3: duplicate key grid.nx");
    CHECK(error_of("# comment\n[weird]\n") == "t.ini:2: unknown section [weird]");
    CHECK(error_of("nx = 8\n") == "t.ini:1: key outside of any section");
    CHECK(error_of("[grid]\n\nnx 8\n") == "t.ini:3: expected key = value");
    CHECK(error_of("[grid\n") == "t.ini:1: unterminated section header");

    const IniDocument doc = parse_ini("[grid]\nnx = eight\n", "t.ini");
    CHECK_THROWS_WITH_AS(ini_int(doc, "grid", "nx", 4), doctest::Contains("t.ini:2"), ConfigError);
    CHECK_THROWS_AS(parse_u64("-3", "seed"), ConfigError);
    CHECK(parse_u64("18446744073709551615", "seed") == 18446744073709551615ull);
}

TEST_CASE("missing viscosity is reported by name") {
    const IniDocument doc = parse_ini("[grid]\nnx = 16\n", "t.ini");
    CHECK_THROWS_WITH_AS(experiment_from_ini(doc, ViscosityField::single),
                         "t.ini: missing required field physics.nu", ConfigError);
    CHECK_THROWS_WITH_AS(experiment_from_ini(doc, ViscosityField::list),
                         "t.ini: missing required field physics.nu_list", ConfigError);
    CHECK_NOTHROW(experiment_from_ini(doc, ViscosityField::none));
}

TEST_CASE("config hash ignores formatting only") {
    const IniDocument a = parse_ini("[grid]\nnx = 16\nny=16\n\n[physics]\nnu = 0.01\n");
    const IniDocument b = parse_ini("# reordered\n[physics]\n  nu   =   0.01   # inline\n[grid]\nny = 16\nnx = 16\n");
    const IniDocument c = parse_ini("[grid]\nnx = 16\nny = 16\n[physics]\nnu = 0.02\n");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(canonical_text(a) == canonical_text(b));
    CHECK(config_hash(a) != config_hash(c));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(hex64(0xabcull) == "0000000000000abc");
}

TEST_CASE("stream terms") {
    const StreamFunction s = parse_stream_terms("0.5:2:sin:3; 0.25:0:cos:1", 2.0);
    REQUIRE(s.terms.size() == 2);
    CHECK(s.terms[0].amplitude == 0.5);
    CHECK(s.terms[0].m == 2);
    CHECK(s.terms[0].sine);
    CHECK(s.terms[1].n == 1);
    CHECK(s.length_x == 2.0);
    CHECK_THROWS_AS(parse_stream_terms("0.5:2:tan:3", 1.0), ConfigError);
    CHECK_THROWS_AS(parse_stream_terms("0.5:2:sin:0", 1.0), ConfigError);
}

TEST_CASE("csv rendering") {
    CsvTable t;
    t.columns = {"t", "x"};
    t.add({0.1, 1.0 / 3.0});
    CHECK(t.render("00ff") == "# config_hash=00ff\nt,x\n0.10000000000000001,0.33333333333333331\n");
    CHECK_THROWS(t.add({1.0}));
    CHECK(std::stod(fmt17(0.1)) == 0.1);
    CHECK_THROWS(require_same_hash("aa", "bb"));
    CHECK_NOTHROW(require_same_hash("aa", "aa"));
}

TEST_CASE("cli exit codes") {
    const fs::path dir = scratch("codes");
    std::ofstream(dir / "zero.ini") << zero_ini;
    std::ofstream(dir / "bad.ini") << "[grid]\nnx = 16\nwat = 1\n";
    const std::string out = " --out " + (dir / "o").string();

    CHECK(run("simulate --config " + (dir / "zero.ini").string() + out) == 0);
    CHECK(run("simulate --config " + (dir / "bad.ini").string() + out) == 2);
    CHECK(run("simulate --config " + (dir / "missing.ini").string() + out) == 2);
    CHECK(run("simulate --config " + (dir / "zero.ini").string() + " --seed -4" + out) == 2);
    CHECK(run("sweep --config " + (dir / "zero.ini").string() + out) == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("cli outputs are reproducible") {
    const fs::path dir = scratch("repro");
    std::ofstream(dir / "zero.ini") << zero_ini;
    const std::string cfg = " --config " + (dir / "zero.ini").string();
    REQUIRE(run("simulate" + cfg + " --out " + (dir / "a").string()) == 0);
    REQUIRE(run("simulate" + cfg + " --threads 2 --out " + (dir / "b").string()) == 0);

    const std::string csv = slurp(dir / "a" / "trajectory.csv");
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 2 + 5 + 1);  // hash, header, n_steps + 1 rows
    CHECK(csv.rfind("# config_hash=", 0) == 0);
    CHECK(csv == slurp(dir / "b" / "trajectory.csv"));
    CHECK(slurp(dir / "a" / "summary.json") == slurp(dir / "b" / "summary.json"));
    CHECK(fs::exists(dir / "a" / "manifest.json"));

    REQUIRE(run("simulate" + cfg + " --seed 99 --out " + (dir / "c").string()) == 0);
    const std::string other = slurp(dir / "c" / "trajectory.csv");
    CHECK(other.substr(0, other.find('\n')) != csv.substr(0, csv.find('\n')));
}
