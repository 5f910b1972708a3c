#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace browmad {

using Rgb = std::array<std::uint8_t, 3>;

class RgbImage {
public:
    RgbImage(int width, int height, std::vector<Rgb> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::span<const Rgb> pixels() const noexcept { return pixels_; }
    const Rgb& at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

private:
    int width_;
    int height_;
    std::vector<Rgb> pixels_;
};

// Row-major grayscale image with real-valued samples in [0, 255].
// Values stay real through the pipeline and are only quantized on export.
class GrayImage {
public:
    GrayImage(int width, int height, std::vector<double> pixels);
    GrayImage(int width, int height, double fill);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }
    std::span<const double> pixels() const noexcept { return pixels_; }

    double at(int x, int y) const { return pixels_[index(x, y)]; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_;
    int height_;
    std::vector<double> pixels_;
};

/// Fractions of the pixel population clipped to black and to white before
/// the remaining range is stretched over [0, 255].
struct ClipConfig {
    double black_fraction = 0.01;
    double white_fraction = 0.05;

    void validate() const;
};

GrayImage to_grayscale(const RgbImage& img);

/// Percentile clipping contrast enhancement.
///
/// With N pixels sorted ascending, the low anchor is the nearest-rank value at
/// rank max(1, ceil(black_fraction * N)) and the high anchor the value at rank
/// N - ceil(white_fraction * N). Pixels are mapped linearly so the anchors land
/// on 0 and 255, then clamped. If the high anchor does not exceed the low one
/// the image is returned unchanged.
GrayImage contrast_stretch(const GrayImage& img, const ClipConfig& cfg = {});

GrayImage resize_bilinear(const GrayImage& img, int width, int height);

// Elementwise k * img clamped to [0, 255]; used by tests and the synthesizer.
GrayImage scale_intensity(const GrayImage& img, double k);

}  // namespace browmad
