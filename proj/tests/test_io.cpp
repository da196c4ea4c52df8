#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "betafrac/io.hpp"

using namespace betafrac;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("atomic write") {
    const fs::path dir = fs::temp_directory_path() / "betafrac-io-test";
    fs::create_directories(dir);
    const fs::path file = dir / "out.txt";
    io::write_atomic(file, "first");
    io::write_atomic(file, std::string("second\0bytes", 12));
    CHECK(slurp(file) == std::string("second\0bytes", 12));
    CHECK_FALSE(fs::exists(dir / "out.txt.tmp"));
    try {
        io::write_atomic(dir / "missing" / "x.csv", "data");
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("missing") != std::string::npos);
    }
    fs::remove_all(dir);
}

TEST_CASE("real formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678901234567, 0.0}) {
        CHECK(std::strtod(io::format_real(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("csv tables") {
    const PointCloud cloud{{{0.25, 0.5}, {1.0, 0.0}}, Params(1.5, 0.25), 1};
    CHECK(io::cloud_csv(cloud) == "x,y\n0.25,0.5\n1,0\n");

    BoxReport r;
    r.depths = {2};
    r.scales = {0.0625};
    r.counts = {10};
    r.bounds = {52.0};
    CHECK(io::box_report_csv(r) == "n,scale,count,bound\n2,0.0625,10,52\n");

    EntropyReport e;
    e.block_len = 3;
    e.sample_len = 100;
    e.block_entropy_rate = 0.5;
    e.target = 0.25;
    CHECK(io::entropy_csv({e}) == "block_len,sample_len,block_entropy_rate,target\n3,100,0.5,0.25\n");

    const ParryMeasure m(kGoldenRatio);
    std::istringstream table(io::density_csv(m));
    std::string line;
    std::getline(table, line);
    CHECK(line == "x0,x1,density");
    std::size_t rows = 0;
    while (std::getline(table, line)) ++rows;
    CHECK(rows == m.levels().size());
}

TEST_CASE("visit image orientation and scaling") {
    PointCloud cloud{{}, Params(1.5, 0.25), 1};
    for (int i = 0; i < 9; ++i) cloud.points.push_back({0.01, 0.99});  // top-left pixel
    cloud.points.push_back({0.99, 0.01});                               // bottom-right pixel
    const io::GrayImage img = io::render_visits(cloud, 16, 16);
    CHECK(img.pixels[0] == 255);
    CHECK(img.pixels[16 * 16 - 1] == static_cast<std::uint8_t>(std::lround(255.0 * std::log(2.0) / std::log(10.0))));
    std::size_t lit = 0;
    for (auto v : img.pixels) lit += v > 0 ? 1 : 0;
    CHECK(lit == 2);
    CHECK_THROWS(io::render_visits(cloud, 0, 16));

    const std::string pgm = io::encode_pgm(img);
    const std::string header = "P5\n16 16\n255\n";
    CHECK(pgm.substr(0, header.size()) == header);
    CHECK(pgm.size() == header.size() + 256);
}
