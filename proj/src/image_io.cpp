#include "browmad/image_io.hpp"

#include <cmath>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "browmad/error.hpp"

namespace browmad {

RgbImage read_rgb(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw Error(ErrorCode::MissingFile, path.string());
    }
    cv::Mat bgr;
    try {
        bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    } catch (const cv::Exception& e) {
        throw Error(ErrorCode::DecodeFailure, path.string() + ": " + e.what());
    }
    if (bgr.empty() || bgr.type() != CV_8UC3) {
        throw Error(ErrorCode::DecodeFailure, "cannot decode " + path.string());
    }
    std::vector<Rgb> px;
    px.reserve(static_cast<std::size_t>(bgr.rows) * bgr.cols);
    for (int y = 0; y < bgr.rows; ++y) {
        const auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            px.push_back({row[x][2], row[x][1], row[x][0]});
        }
    }
    return RgbImage(bgr.cols, bgr.rows, std::move(px));
}

GrayImage read_gray(const std::filesystem::path& path) { return to_grayscale(read_rgb(path)); }

void write_gray_png(const std::filesystem::path& path, const GrayImage& img) {
    cv::Mat out(img.height(), img.width(), CV_8UC1);
    for (int y = 0; y < img.height(); ++y) {
        auto* row = out.ptr<std::uint8_t>(y);
        for (int x = 0; x < img.width(); ++x) {
            row[x] = static_cast<std::uint8_t>(std::lround(img.at(x, y)));
        }
    }
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), out);
    } catch (const cv::Exception& e) {
        throw Error(ErrorCode::IoError, path.string() + ": " + e.what());
    }
    if (!ok) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
}

}  // namespace browmad
