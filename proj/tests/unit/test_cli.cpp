#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(MAOA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("maoa_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("cli: fixed seed gives byte-identical output")
{
    const auto a = scratch("a");
    const auto b = scratch("b");
    const std::string common = "run --algo maoa --normal --mu 1e-6 --runs 50 --seed 7 --r 8 --out ";
    REQUIRE(run_cli(common + a.string()) == 0);
    REQUIRE(run_cli(common + b.string() + " --workers 2") == 0);
    CHECK(slurp(a / "curve.csv") == slurp(b / "curve.csv"));
    CHECK(slurp(a / "runs.csv") == slurp(b / "runs.csv"));
    CHECK_FALSE(slurp(a / "curve.csv").empty());
}

TEST_CASE("cli: manifest replays the run")
{
    const auto a = scratch("m1");
    const auto b = scratch("m2");
    REQUIRE(run_cli("run --algo classical --normal --mu 1e-4 --runs 40 --out " + a.string()) == 0);
    const auto manifest = a / "manifest.txt";
    REQUIRE(fs::exists(manifest));
    CHECK(slurp(manifest).find("seed = ") != std::string::npos);
    REQUIRE(run_cli("run --config " + manifest.string() + " --out " + b.string()) == 0);
    CHECK(slurp(a / "curve.csv") == slurp(b / "curve.csv"));
}

TEST_CASE("cli: exit codes")
{
    const std::string out = " --out " + scratch("exit").string();
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("run --bogus" + out) == 2);
    CHECK(run_cli("nosuchcommand") == 2);
    CHECK(run_cli("run --algo classical --dist /nonexistent/dist.bin --mu 0.1" + out) == 3);
    CHECK(run_cli("run --algo warp --normal --mu 0.1" + out) == 3);
}

TEST_CASE("cli: generators and curves")
{
    const auto dir = scratch("gen");
    REQUIRE(run_cli("gen-cvrp --l 3 --seed 1 --out " + dir.string()) == 0);
    std::ifstream csv(dir / "distribution.csv");
    std::string line;
    std::getline(csv, line);
    CHECK(line == "value,multiplicity");
    long long total = 0;
    while (std::getline(csv, line))
        total += std::stoll(line.substr(line.find(',') + 1));
    CHECK(total == 13);

    REQUIRE(run_cli("response-curve --normal --r 128 --out " + dir.string()) == 0);
    CHECK(fs::file_size(dir / "response.csv") > 1000);
    REQUIRE(run_cli("plot --csv " + (dir / "response.csv").string() +
                    " --x threshold --y probability --out " + dir.string()) == 0);
    bool has_svg = false;
    for (const auto& e : fs::directory_iterator(dir))
        has_svg |= e.path().extension() == ".svg";
    CHECK(has_svg);
}
