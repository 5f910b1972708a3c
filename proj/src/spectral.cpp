#include "browmad/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "browmad/error.hpp"
#include "browmad/fft.hpp"

namespace browmad {
namespace {

MagnitudeSpectrum roll(const MagnitudeSpectrum& spec, int drow, int dcol) {
    const int rows = spec.rows();
    const int cols = spec.cols();
    std::vector<double> out(spec.values().size());
    for (int r = 0; r < rows; ++r) {
        const int rr = (r + drow) % rows;
        for (int c = 0; c < cols; ++c) {
            const int cc = (c + dcol) % cols;
            out[static_cast<std::size_t>(rr) * cols + cc] = spec.at(r, c);
        }
    }
    return MagnitudeSpectrum(rows, cols, std::move(out));
}

}  // namespace

MagnitudeSpectrum::MagnitudeSpectrum(int rows, int cols, std::vector<double> mag)
    : rows_(rows), cols_(cols), mag_(std::move(mag)) {
    if (rows_ < 1 || cols_ < 1 ||
        mag_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
        throw Error(ErrorCode::InvalidArgument, "spectrum size does not match its dimensions");
    }
    for (double v : mag_) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument, "spectrum magnitudes must be finite and >= 0");
        }
    }
}

void SpectralConfig::validate() const {
    if (!(low_freq_crop_percent >= 0.0 && low_freq_crop_percent < 100.0)) {
        throw Error(ErrorCode::InvalidArgument, "low_freq_crop_percent must lie in [0, 100)");
    }
}

MagnitudeSpectrum dft2_magnitude(const GrayImage& img) {
    const int rows = img.height();
    const int cols = img.width();
    std::vector<fft::Complex> buf(img.pixels().begin(), img.pixels().end());
    fft::forward_2d(buf, rows, cols);
    std::vector<double> mag(buf.size());
    std::transform(buf.begin(), buf.end(), mag.begin(), [](const fft::Complex& z) { return std::abs(z); });
    return MagnitudeSpectrum(rows, cols, std::move(mag));
}

MagnitudeSpectrum fft_shift(const MagnitudeSpectrum& spec) {
    return roll(spec, spec.rows() / 2, spec.cols() / 2);
}

MagnitudeSpectrum ifft_shift(const MagnitudeSpectrum& spec) {
    return roll(spec, (spec.rows() + 1) / 2, (spec.cols() + 1) / 2);
}

MagnitudeSpectrum apply_low_freq_crop(const MagnitudeSpectrum& spec, double percent) {
    SpectralConfig{percent, false}.validate();
    if (percent == 0.0) {
        return spec;
    }
    const int rows = spec.rows();
    const int cols = spec.cols();
    const double radius = (percent / 100.0) * (std::min(rows, cols) / 2.0);
    // Distance to DC in the shifted view equals the wrapped frequency distance
    // in the unshifted grid, so the disk is applied in place.
    const int crow = rows / 2;
    const int ccol = cols / 2;
    std::vector<double> out(spec.values().begin(), spec.values().end());
    for (int r = 0; r < rows; ++r) {
        const int sr = (r + crow) % rows;  // row index after the shift
        const double dr = sr - crow;
        for (int c = 0; c < cols; ++c) {
            const int sc = (c + ccol) % cols;
            const double dc = sc - ccol;
            if (std::sqrt(dr * dr + dc * dc) <= radius) {
                out[static_cast<std::size_t>(r) * cols + c] = 0.0;
            }
        }
    }
    return MagnitudeSpectrum(rows, cols, std::move(out));
}

double frequency_score(const GrayImage& img, const SpectralConfig& cfg) {
    cfg.validate();
    MagnitudeSpectrum spec = apply_low_freq_crop(dft2_magnitude(img), cfg.low_freq_crop_percent);
    double sum = 0.0;
    for (double v : spec.values()) {
        sum += v;
    }
    return sum / static_cast<double>(img.size());
}

MagnitudeSpectrum averaged_spectrum(std::span<const GrayImage> imgs, int display_width,
                                    int display_height) {
    if (imgs.empty()) {
        throw Error(ErrorCode::EmptyInput, "averaged_spectrum needs at least one image");
    }
    std::vector<double> acc(static_cast<std::size_t>(display_width) * display_height, 0.0);
    for (const GrayImage& img : imgs) {
        MagnitudeSpectrum s = fft_shift(dft2_magnitude(resize_bilinear(img, display_width, display_height)));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += std::log1p(s.values()[i]);
        }
    }
    for (double& v : acc) {
        v /= static_cast<double>(imgs.size());
    }
    return MagnitudeSpectrum(display_height, display_width, std::move(acc));
}

GrayImage spectrum_to_image(const MagnitudeSpectrum& spec, bool log_scale) {
    std::vector<double> v(spec.values().begin(), spec.values().end());
    if (log_scale) {
        for (double& x : v) {
            x = std::log1p(x);
        }
    }
    auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    for (double& x : v) {
        x = range > 0.0 ? 255.0 * (x - lo) / range : 0.0;
    }
    return GrayImage(spec.cols(), spec.rows(), std::move(v));
}

void write_spectrum_csv(std::ostream& out, const MagnitudeSpectrum& spec) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (int r = 0; r < spec.rows(); ++r) {
        for (int c = 0; c < spec.cols(); ++c) {
            if (c) {
                out << ',';
            }
            out << spec.at(r, c);
        }
        out << '\n';
    }
}

}  // namespace browmad
