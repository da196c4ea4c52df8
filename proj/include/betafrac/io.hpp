#pragma once

// File formats: CSV tables, binary PGM images, atomic writes.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "betafrac/dimension.hpp"
#include "betafrac/measures.hpp"
#include "betafrac/skew_system.hpp"

namespace betafrac::io {

/// Writes to `<path>.tmp` and renames over `path`. Throws std::runtime_error
/// naming the path on failure.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal that round-trips a double ("%.17g").
std::string format_real(double value);

/// Header `x,y`, one point per row.
std::string cloud_csv(const PointCloud& cloud);

/// Header `n,scale,count,bound`.
std::string box_report_csv(const BoxReport& report);

/// Header `block_len,sample_len,block_entropy_rate,target`.
std::string entropy_csv(const std::vector<EntropyReport>& reports);

/// Header `x0,x1,density`, one row per constant piece.
std::string density_csv(const ParryMeasure& measure);

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, row 0 at the top (y = 1)
};

/// Visit counts per pixel mapped to 255 * ln(1 + c) / ln(1 + c_max).
GrayImage render_visits(const PointCloud& cloud, std::size_t width, std::size_t height);

/// Binary P5 encoding with maxval 255.
std::string encode_pgm(const GrayImage& image);

}  // namespace betafrac::io
