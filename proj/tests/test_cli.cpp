#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
    const std::string cmd = std::string(TWR_CLI_PATH) + " " + args + " > cli_stdout.txt 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string last_stdout() {
    std::ifstream in("cli_stdout.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string scene(const char* name) { return std::string(TWR_SCENES_DIR) + "/" + name; }

}  // namespace

TEST_CASE("simulate produces the full artifact set deterministically") {
    const fs::path dir = fs::temp_directory_path() / "twr_cli_sim";
    fs::remove_all(dir);
    const std::string base = "simulate --scene " + scene("env-a.ini") +
                             " --seed 7 --duration 0.6 --out ";
    REQUIRE(run(base + (dir / "a").string()) == 0);
    for (const char* name :
         {"trace.twrif", "spectrogram.csv", "spectrogram.pgm", "ranges.csv", "run.txt"})
        CHECK(fs::exists(dir / "a" / name));

    REQUIRE(run(base + (dir / "b").string() + " --threads 3") == 0);
    for (const char* name :
         {"trace.twrif", "spectrogram.csv", "spectrogram.pgm", "ranges.csv", "run.txt"})
        CHECK(read_bytes(dir / "a" / name) == read_bytes(dir / "b" / name));
    fs::remove_all(dir);
}

TEST_CASE("simulate exits 2 when the scene file is missing") {
    CHECK(run("simulate --scene missing-scene.ini") == 2);
    CHECK(last_stdout().find("missing-scene.ini") != std::string::npos);
}

TEST_CASE("analyze replays a trace and rejects corrupt headers") {
    const fs::path dir = fs::temp_directory_path() / "twr_cli_ana";
    fs::remove_all(dir);
    REQUIRE(run("simulate --scene " + scene("env-a.ini") + " --duration 0.3 --out " +
                (dir / "sim").string()) == 0);
    CHECK(run("analyze --trace " + (dir / "sim" / "trace.twrif").string() +
              " --slope 11.2e12 --d0 55.97 --out " + (dir / "ana").string()) == 0);
    CHECK(fs::exists(dir / "ana" / "spectrogram.csv"));
    CHECK(fs::exists(dir / "ana" / "peaks.csv"));
    CHECK(fs::exists(dir / "ana" / "ranges.csv"));

    fs::create_directories(dir / "bad");
    {
        std::ofstream out(dir / "bad" / "corrupt.twrif", std::ios::binary);
        out << "XWRIF1 1 4 24320000\n";
        const float z[4] = {0, 0, 0, 0};
        out.write(reinterpret_cast<const char*>(z), sizeof(z));
    }
    CHECK(run("analyze --trace " + (dir / "bad" / "corrupt.twrif").string()) == 2);
    fs::remove_all(dir);
}

TEST_CASE("validate prints one verdict line per check") {
    const int code = run("validate");
    const std::string out = last_stdout();
    CHECK((code == 0 || code == 1));
    CHECK(out.find("figure-of-merit table") != std::string::npos);
    CHECK(out.find("beat-frequency inversion") != std::string::npos);
    CHECK(out.find("range resolution") != std::string::npos);
    CHECK(out.find("aperture cutoff") != std::string::npos);
    CHECK(out.find("excluded") != std::string::npos);
}

TEST_CASE("validate --quiet prints only verdict lines") {
    const int code = run("validate --quiet");
    const std::string out = last_stdout();
    CHECK((code == 0 || code == 1));
    CHECK(out.find("figure-of-merit table") != std::string::npos);
    CHECK(out.find("computed=") == std::string::npos);  // detail lines suppressed
}

TEST_CASE("presets list shows the built-in inventory") {
    REQUIRE(run("presets list") == 0);
    const std::string out = last_stdout();
    for (const char* token : {"roc-operational", "roc-nominal", "horn", "vivaldi", "quasi-yagi",
                              "wooden-partition", "brick-mortar-40cm"})
        CHECK(out.find(token) != std::string::npos);
}

TEST_CASE("cli reports usage errors") { CHECK(run("frobnicate") != 0); }
