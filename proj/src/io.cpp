#include "betafrac/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace betafrac::io {

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                                 ec.message());
    }
}

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string cloud_csv(const PointCloud& cloud) {
    std::string out = "x,y\n";
    out.reserve(cloud.points.size() * 44);
    for (const Point2& p : cloud.points) {
        out += format_real(p.x);
        out += ',';
        out += format_real(p.y);
        out += '\n';
    }
    return out;
}

std::string box_report_csv(const BoxReport& report) {
    std::string out = "n,scale,count,bound\n";
    for (std::size_t i = 0; i < report.depths.size(); ++i) {
        out += std::to_string(report.depths[i]) + ',' + format_real(report.scales[i]) + ',' +
               std::to_string(report.counts[i]) + ',' + format_real(report.bounds[i]) + '\n';
    }
    return out;
}

std::string entropy_csv(const std::vector<EntropyReport>& reports) {
    std::string out = "block_len,sample_len,block_entropy_rate,target\n";
    for (const auto& r : reports) {
        out += std::to_string(r.block_len) + ',' + std::to_string(r.sample_len) + ',' +
               format_real(r.block_entropy_rate) + ',' + format_real(r.target) + '\n';
    }
    return out;
}

std::string density_csv(const ParryMeasure& measure) {
    std::string out = "x0,x1,density\n";
    const auto b = measure.breakpoints();
    const auto levels = measure.levels();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        out += format_real(b[i]) + ',' + format_real(b[i + 1]) + ',' + format_real(levels[i]) + '\n';
    }
    return out;
}

GrayImage render_visits(const PointCloud& cloud, std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) throw std::invalid_argument("image dimensions must be positive");
    std::vector<std::uint64_t> visits(width * height, 0);
    for (const Point2& p : cloud.points) {
        const auto col = std::min(width - 1, static_cast<std::size_t>(p.x * static_cast<double>(width)));
        const auto row =
            std::min(height - 1, static_cast<std::size_t>((1.0 - p.y) * static_cast<double>(height)));
        ++visits[row * width + col];
    }
    GrayImage image{width, height, std::vector<std::uint8_t>(width * height, 0)};
    const auto peak = *std::max_element(visits.begin(), visits.end());
    if (peak == 0) return image;
    const double scale = 255.0 / std::log1p(static_cast<double>(peak));
    for (std::size_t i = 0; i < visits.size(); ++i) {
        image.pixels[i] =
            static_cast<std::uint8_t>(std::lround(std::log1p(static_cast<double>(visits[i])) * scale));
    }
    return image;
}

std::string encode_pgm(const GrayImage& image) {
    std::string out = "P5\n" + std::to_string(image.width) + ' ' + std::to_string(image.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
    return out;
}

}  // namespace betafrac::io
