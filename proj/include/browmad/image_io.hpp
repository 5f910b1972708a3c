#pragma once

#include <filesystem>

#include "browmad/imagecore.hpp"

namespace browmad {

// PNG/JPEG (anything OpenCV can decode). Throws DecodeFailure.
RgbImage read_rgb(const std::filesystem::path& path);
GrayImage read_gray(const std::filesystem::path& path);

// Rounds half away from zero and clamps to 8 bits. Throws IoError.
void write_gray_png(const std::filesystem::path& path, const GrayImage& img);

}  // namespace browmad
