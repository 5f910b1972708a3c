#include "browmad/imagecore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "browmad/error.hpp"

namespace browmad {
namespace {

void check_dims(int width, int height, std::size_t n) {
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "image dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
    if (n != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw Error(ErrorCode::InvalidArgument, "pixel count does not match dimensions");
    }
}

// Nearest-rank index (0-based) for a 1-based rank clamped to [1, n].
std::size_t rank_index(long rank, std::size_t n) {
    rank = std::clamp<long>(rank, 1, static_cast<long>(n));
    return static_cast<std::size_t>(rank - 1);
}

long ceil_count(double fraction, std::size_t n) {
    // The epsilon keeps 0.05 * 100 from becoming 6 through representation error.
    return static_cast<long>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
}

}  // namespace

RgbImage::RgbImage(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width_, height_, pixels_.size());
}

GrayImage::GrayImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width_, height_, pixels_.size());
    for (double v : pixels_) {
        if (!(v >= 0.0 && v <= 255.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "gray pixel outside [0, 255]: " + std::to_string(v));
        }
    }
}

GrayImage::GrayImage(int width, int height, double fill)
    : GrayImage(width, height,
                std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                        static_cast<std::size_t>(std::max(height, 0)),
                                    fill)) {}

void ClipConfig::validate() const {
    auto in_unit = [](double f) { return f >= 0.0 && f < 1.0; };
    if (!in_unit(black_fraction) || !in_unit(white_fraction) ||
        black_fraction + white_fraction >= 1.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "clip fractions must lie in [0, 1) and sum to less than 1");
    }
}

GrayImage to_grayscale(const RgbImage& img) {
    std::vector<double> out;
    out.reserve(img.pixels().size());
    for (const Rgb& p : img.pixels()) {
        double v = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        out.push_back(std::clamp(v, 0.0, 255.0));
    }
    return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage contrast_stretch(const GrayImage& img, const ClipConfig& cfg) {
    cfg.validate();
    const std::size_t n = img.size();
    std::vector<double> sorted(img.pixels().begin(), img.pixels().end());
    std::sort(sorted.begin(), sorted.end());

    const double lo = sorted[rank_index(ceil_count(cfg.black_fraction, n), n)];
    const double hi =
        sorted[rank_index(static_cast<long>(n) - ceil_count(cfg.white_fraction, n), n)];
    if (hi <= lo) {
        return img;
    }

    const double gain = 255.0 / (hi - lo);
    std::vector<double> out;
    out.reserve(n);
    for (double v : img.pixels()) {
        out.push_back(std::clamp(gain * (v - lo), 0.0, 255.0));
    }
    return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage resize_bilinear(const GrayImage& img, int width, int height) {
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::InvalidArgument, "resize target must be positive");
    }
    if (width == img.width() && height == img.height()) {
        return img;
    }
    // Pixel-center alignment, edges clamped.
    const double sx = static_cast<double>(img.width()) / width;
    const double sy = static_cast<double>(img.height()) / height;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height() - 1.0);
        int y0 = static_cast<int>(fy);
        int y1 = std::min(y0 + 1, img.height() - 1);
        double wy = fy - y0;
        for (int x = 0; x < width; ++x) {
            double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width() - 1.0);
            int x0 = static_cast<int>(fx);
            int x1 = std::min(x0 + 1, img.width() - 1);
            double wx = fx - x0;
            double top = img.at(x0, y0) * (1 - wx) + img.at(x1, y0) * wx;
            double bottom = img.at(x0, y1) * (1 - wx) + img.at(x1, y1) * wx;
            out.push_back(std::clamp(top * (1 - wy) + bottom * wy, 0.0, 255.0));
        }
    }
    return GrayImage(width, height, std::move(out));
}

GrayImage scale_intensity(const GrayImage& img, double k) {
    std::vector<double> out;
    out.reserve(img.size());
    for (double v : img.pixels()) {
        out.push_back(std::clamp(k * v, 0.0, 255.0));
    }
    return GrayImage(img.width(), img.height(), std::move(out));
}

}  // namespace browmad
