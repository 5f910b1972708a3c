#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <vector>

#include "browmad/imagecore.hpp"

namespace browmad {

/// Magnitudes of the unnormalized forward 2D DFT, row-major rows x cols.
/// Unless produced by fft_shift, the DC bin is at (0, 0).
class MagnitudeSpectrum {
public:
    MagnitudeSpectrum(int rows, int cols, std::vector<double> mag);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    std::span<const double> values() const noexcept { return mag_; }
    double at(int row, int col) const {
        return mag_[static_cast<std::size_t>(row) * cols_ + col];
    }

    friend bool operator==(const MagnitudeSpectrum&, const MagnitudeSpectrum&) = default;

private:
    int rows_;
    int cols_;
    std::vector<double> mag_;
};

/// The low-frequency region is a disk around DC in the shifted spectrum with
/// radius (percent / 100) * min(rows, cols) / 2. Bins inside the disk are
/// dropped from the score.
struct SpectralConfig {
    double low_freq_crop_percent = 0.0;
    bool shift_for_display = false;

    void validate() const;
};

MagnitudeSpectrum dft2_magnitude(const GrayImage& img);

// Moves DC to (rows / 2, cols / 2). Self-inverse when both sizes are even.
MagnitudeSpectrum fft_shift(const MagnitudeSpectrum& spec);
MagnitudeSpectrum ifft_shift(const MagnitudeSpectrum& spec);

MagnitudeSpectrum apply_low_freq_crop(const MagnitudeSpectrum& spec, double percent);

/// Normalized magnitude sum: the sum of all DFT magnitudes (after the optional
/// low-frequency crop) divided by the pixel count of the region.
double frequency_score(const GrayImage& img, const SpectralConfig& cfg = {});

/// Mean of per-image shifted log(1 + |F|) spectra after bilinear resizing
/// to a common size. Visualization only; scoring never uses it.
MagnitudeSpectrum averaged_spectrum(std::span<const GrayImage> imgs, int display_width,
                                    int display_height);

// log(1 + mag), then min-max normalized to [0, 255] as an image.
GrayImage spectrum_to_image(const MagnitudeSpectrum& spec, bool log_scale = true);

void write_spectrum_csv(std::ostream& out, const MagnitudeSpectrum& spec);

}  // namespace browmad
