#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

// portable-enough exit-code extraction for POSIX std::system
int run(const std::string& args) {
    std::string cmd = std::string(BIHAR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("bihar_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string arg() const { return "--out " + path.string(); }
};

} // namespace

TEST_CASE("config errors exit with code 3") {
    TempDir tmp;
    CHECK(run("certify --dims 12 " + tmp.arg()) == 3);
    CHECK(run("hr-check --dims 4 " + tmp.arg()) == 3);
    CHECK(run("certify " + tmp.arg()) == 3);          // missing --dims
    CHECK(run("bogus --dims 13 " + tmp.arg()) == 3);  // unknown subcommand
}

TEST_CASE("falsified override exits with code 1") {
    TempDir tmp;
    CHECK(run("certify --dims 13 --lambda-prime 100 " + tmp.arg()) == 1);
    CHECK(run("certify --dims 13 --beta 1e6 " + tmp.arg()) == 1);
}

TEST_CASE("certified override exits cleanly") {
    TempDir tmp;
    CHECK(run("certify --dims 13 --lambda-prime 2525 --tol 1e-5 " + tmp.arg()) == 0);
    CHECK(run("certify --dims 13 --beta 2560 --tol 1e-5 " + tmp.arg()) == 0);
}

TEST_CASE("full certification writes reports and exits 0") {
    TempDir tmp;
    REQUIRE(run("certify --dims 13 --tol 1e-5 " + tmp.arg()) == 0);
    CHECK(fs::exists(tmp.path / "certify_N13.json"));
    CHECK(fs::exists(tmp.path / "certify_summary.json"));

    // a written report contains the enclosure fields
    std::ifstream in(tmp.path / "certify_N13.json");
    std::string body((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(body.find("\"verdict\"") != std::string::npos);
    CHECK(body.find("\"rounding\": \"outward\"") != std::string::npos);

    // re-running without --overwrite refuses, with it succeeds
    CHECK(run("certify --dims 13 --tol 1e-5 " + tmp.arg()) == 3);
    CHECK(run("certify --dims 13 --tol 1e-5 --overwrite " + tmp.arg()) == 0);
}

TEST_CASE("table subcommand succeeds for a small range") {
    TempDir tmp;
    CHECK(run("table --dims 13,14 --tol 1e-5 --format csv " + tmp.arg()) == 0);
}

TEST_CASE("hr-check subcommand succeeds") {
    TempDir tmp;
    CHECK(run("hr-check --dims 13 --tol 1e-5 " + tmp.arg()) == 0);
}

TEST_CASE("branch subcommand produces csv and respects the certified bound") {
    TempDir tmp;
    REQUIRE(run("branch --dims 13 --tol 1e-4 " + tmp.arg()) == 0);
    REQUIRE(fs::exists(tmp.path / "branch_N13.csv"));
    std::ifstream in(tmp.path / "branch_N13.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "lambda,u0,u2_0,sup_norm,residual");
    CHECK(fs::exists(tmp.path / "branch_N13.json"));
}
