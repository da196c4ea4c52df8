#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "betafrac/cli.hpp"
#include "betafrac/coding.hpp"

using namespace betafrac;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

// Occupied rows of a P5 image, top row first.
std::vector<bool> occupied_rows(const std::string& pgm, std::size_t width, std::size_t height) {
    const std::string header = "P5\n" + std::to_string(width) + ' ' + std::to_string(height) + "\n255\n";
    REQUIRE(pgm.substr(0, header.size()) == header);
    std::vector<bool> rows(height, false);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            if (pgm[header.size() + r * width + c] != 0) rows[r] = true;
        }
    }
    return rows;
}

}  // namespace

TEST_CASE("depth and number parsing") {
    CHECK(cli::parse_depths("2..5") == std::vector<std::size_t>{2, 3, 4, 5});
    CHECK(cli::parse_depths("3,7,9") == std::vector<std::size_t>{3, 7, 9});
    CHECK(cli::parse_depths("4") == std::vector<std::size_t>{4});
    CHECK_THROWS_AS(cli::parse_depths("5..2"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_depths("a..b"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_depths("2,,3"), cli::UsageError);
    CHECK(cli::parse_real("phi") == kGoldenRatio);
    CHECK(cli::parse_real("1/3") == 1.0 / 3.0);
    CHECK(cli::parse_real("0.25") == 0.25);
    CHECK_THROWS_AS(cli::parse_real("x"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real("1/0"), cli::UsageError);
}

TEST_CASE("parameter validation and exit codes") {
    TempDir dir("betafrac-cli-codes");
    const Run bad_tau = run({"dimension", "--tau", "0.6", "--out", dir / "x"});
    CHECK(bad_tau.code == cli::kExitUsage);
    CHECK(bad_tau.err.find("(0, 0.5)") != std::string::npos);
    const Run bad_beta = run({"--beta", "2.5", "render", "--out", dir / "x"});
    CHECK(bad_beta.code == cli::kExitUsage);
    CHECK(bad_beta.err.find("(1, 2)") != std::string::npos);
    CHECK(run({"verify", "bogus", "--out", dir / "x"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"dimension", "--method", "guess"}).code == cli::kExitUsage);
    CHECK(run({"render", "--width", "8", "--out", dir / "x"}).code == cli::kExitUsage);
    CHECK(run({"dimension", "--depths", "2..30", "--out", dir / "x"}).code == cli::kExitResource);
    CHECK(run({"entropy", "--word-len", "45", "--out", dir / "x"}).code == cli::kExitResource);
    CHECK(run({"dimension", "--out", (dir.path / "no" / "such" / "dir").string()}).code == cli::kExitResource);
    const Run help = run({"--help"});
    CHECK(help.code == cli::kExitPass);
    CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("dimension command") {
    TempDir dir("betafrac-cli-dimension");
    const Run pass = run({"dimension", "--beta", "1.8", "--tau", "0.3", "--depths", "2..8", "--check", "--tol",
                          "0.05", "--method", "rectangles", "--out", dir / "d"});
    CHECK(pass.code == cli::kExitPass);
    const auto report = nlohmann::json::parse(slurp(dir / "d.json"));
    CHECK(report["pass"] == true);
    CHECK(std::abs(report["metrics"]["slope"].get<double>() - 1.48821) < 0.05);
    CHECK(slurp(dir / "d.csv").rfind("n,scale,count,bound\n", 0) == 0);

    const Run strict = run({"dimension", "--beta", "1.8", "--tau", "0.3", "--check", "--tol", "0", "--out", dir / "e"});
    CHECK(strict.code == cli::kExitCheckFailure);
    const Run unchecked = run({"dimension", "--beta", "1.8", "--tau", "0.3", "--tol", "0", "--out", dir / "e"});
    CHECK(unchecked.code == cli::kExitPass);

    const Run formula = run({"dimension", "--method", "formula", "--out", dir / "f"});
    CHECK(formula.code == cli::kExitPass);
    CHECK(std::abs(std::stod(formula.out) - 1.43802) < 1e-5);
    CHECK(std::count(formula.out.begin(), formula.out.end(), '\n') == 1);
    CHECK_FALSE(fs::exists(dir / "f.json"));
}

TEST_CASE("config file with command-line override") {
    TempDir dir("betafrac-cli-config");
    {
        std::ofstream cfg(dir / "run.ini");
        cfg << "beta=1.8\ntau=0.3\ncheck=true\ntol=0\n";
    }
    CHECK(run({"dimension", "--config", dir / "run.ini", "--out", dir / "a"}).code == cli::kExitCheckFailure);
    CHECK(run({"dimension", "--config", dir / "run.ini", "--tol", "0.05", "--out", dir / "b"}).code == cli::kExitPass);
    const auto report = nlohmann::json::parse(slurp(dir / "b.json"));
    CHECK(report["params"]["beta"] == 1.8);
    CHECK(run({"dimension", "--config", dir / "missing.ini"}).code == cli::kExitUsage);
}

TEST_CASE("entropy command") {
    TempDir dir("betafrac-cli-entropy");
    const Run golden = run({"entropy", "--beta", "phi", "--word-len", "25", "--block-len", "12", "--samples",
                            "1000000", "--check", "--tol", "1e-3", "--out", dir / "g"});
    CHECK(golden.code == cli::kExitPass);
    const auto report = nlohmann::json::parse(slurp(dir / "g.json"));
    CHECK(report["metrics"]["target"].get<double>() == std::log(kGoldenRatio));
    CHECK(slurp(dir / "g_density.csv").rfind("x0,x1,density\n", 0) == 0);

    CHECK(run({"entropy", "--beta", "1.9", "--samples", "200000", "--block-len", "8", "--check", "--tol", "5e-3",
               "--out", dir / "n"})
              .code == cli::kExitPass);
    const Run small = run({"entropy", "--samples", "500", "--out", dir / "s"});
    CHECK(small.code == cli::kExitPass);
    CHECK(small.out.find("warning") != std::string::npos);
    CHECK(run({"entropy", "--block-len", "0", "--out", dir / "s"}).code == cli::kExitUsage);
}

TEST_CASE("render confines occupied rows to Cantor bands") {
    TempDir dir("betafrac-cli-render");
    constexpr std::size_t side = 512;
    auto occupied_fraction = [&](const std::string& tau, const std::string& name) {
        REQUIRE(run({"render", "--beta", "1.5", "--tau", tau, "--samples", "100000", "--width", "512", "--height",
                     "512", "--out", dir / name})
                    .code == cli::kExitPass);
        const auto rows = occupied_rows(slurp(dir / (name + ".pgm")), side, side);
        return std::make_pair(rows, static_cast<double>(std::count(rows.begin(), rows.end(), true)) / side);
    };
    const auto [rows, thin] = occupied_fraction("0.25", "thin");
    const CantorParams cp(0.25, 8);
    const double cylinder = std::pow(0.25, 8);
    for (std::size_t r = 0; r < side; ++r) {
        if (!rows[r]) continue;
        const double y_hi = 1.0 - static_cast<double>(r) / side;
        const double y_lo = 1.0 - static_cast<double>(r + 1) / side;
        // Scan the row at a step finer than a depth-8 cylinder.
        bool band = false;
        for (double y = y_lo; y <= y_hi && !band; y += cylinder / 2) band = in_cantor(y, cp);
        band = band || in_cantor(y_hi, cp);
        INFO("row " << r);
        REQUIRE(band);
    }
    const auto [fat_rows, fat] = occupied_fraction("0.45", "fat");
    CHECK(fat > thin);
    CHECK(thin < 0.5);

    REQUIRE(run({"render", "--samples", "2000", "--csv", "--out", dir / "c"}).code == cli::kExitPass);
    const std::string csv = slurp(dir / "c.csv");
    CHECK(csv.rfind("x,y\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2001);
}

TEST_CASE("every command is byte-reproducible") {
    TempDir dir("betafrac-cli-determinism");
    const std::vector<std::vector<std::string>> commands{
        {"render", "--samples", "20000", "--csv"},
        {"dimension", "--depths", "2..6"},
        {"dimension", "--method", "cloud", "--samples", "50000", "--depths", "2..5"},
        {"entropy", "--samples", "50000", "--block-len", "6"},
        {"verify", "covering"},
    };
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::vector<std::string> outputs;
        for (const char* tag : {"a", "b"}) {
            auto args = commands[i];
            args.insert(args.end(), {"--seed", "5", "--out", dir / (std::to_string(i) + tag)});
            REQUIRE(run(args).code == cli::kExitPass);
            std::string all;
            for (const char* ext : {".pgm", ".csv", ".json", "_density.csv"}) {
                const std::string file = dir / (std::to_string(i) + tag + ext);
                if (fs::exists(file)) all += std::string(ext) + slurp(file);
            }
            REQUIRE_FALSE(all.empty());
            outputs.push_back(all);
        }
        CHECK(outputs[0] == outputs[1]);
    }
}

TEST_CASE("verify report layout") {
    TempDir dir("betafrac-cli-verify");
    const Run r = run({"verify", "covering", "--out", dir / "v"});
    CHECK(r.code == cli::kExitPass);
    const auto report = nlohmann::ordered_json::parse(slurp(dir / "v.json"));
    std::vector<std::string> keys;
    for (const auto& [k, v] : report.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"command", "params", "seed", "metrics", "pass"});
    CHECK(report["metrics"]["covering"]["failures"] == 0);
    CHECK(report["metrics"]["covering"]["checks"] == 220);
}
