#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <string>

#include "browmad/imagecore.hpp"

namespace browmad {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline constexpr int kLandmarkCount = 68;
inline constexpr int kEyebrowFirst = 17;  // iBUG-68, 0-indexed, inclusive
inline constexpr int kEyebrowLast = 26;

/// 68 facial landmarks in iBUG annotation order. Indices 17..21 are the
/// eyebrow on the image's left, 22..26 the one on the right.
struct LandmarkSet {
    std::array<Point2, kLandmarkCount> points{};

    friend bool operator==(const LandmarkSet&, const LandmarkSet&) = default;
};

enum class LandmarkFormat { Pts, Json };

struct CropRect {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;

    friend bool operator==(const CropRect&, const CropRect&) = default;
};

inline constexpr int kMinCropWidth = 8;
inline constexpr int kMinCropHeight = 4;
inline constexpr double kDefaultMargin = 0.10;

LandmarkSet parse_landmarks(std::istream& source, LandmarkFormat format);
LandmarkSet load_landmarks(const std::filesystem::path& path);
std::string format_pts(const LandmarkSet& lm);

// Picks the format from the extension: ".json" is JSON, anything else is pts.
LandmarkFormat format_for_path(const std::filesystem::path& path);

/// One rectangle covering both eyebrows: the bounding box of points 17..26,
/// widened by margin * box width on the left and right and margin * box height
/// on top and bottom, then clamped to the image.
CropRect eyebrow_rect(const LandmarkSet& lm, int img_w, int img_h, double margin = kDefaultMargin);

GrayImage crop(const GrayImage& img, const CropRect& rect);

}  // namespace browmad
