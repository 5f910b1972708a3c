#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "browmad/imagecore.hpp"
#include "browmad/landmarks.hpp"

namespace browmad {

enum class Alignment { None, Similarity };

struct BlendSpec {
    double alpha = 0.5;
    Alignment alignment = Alignment::Similarity;

    void validate() const;
};

/// x' = scale * R(angle) * x + t, stored as [a -b; b a] plus translation.
struct SimilarityTransform {
    double a = 1.0;
    double b = 0.0;
    double tx = 0.0;
    double ty = 0.0;

    Point2 apply(Point2 p) const { return {a * p.x - b * p.y + tx, b * p.x + a * p.y + ty}; }
    SimilarityTransform inverse() const;
};

/// Least-squares similarity taking `from` onto `to`. Throws
/// DegenerateAlignment when `from` is collinear.
SimilarityTransform fit_similarity(const LandmarkSet& from, const LandmarkSet& to);

// Samples img at every output pixel mapped through `to_source`; bilinear,
// with out-of-range coordinates clamped to the nearest border pixel.
GrayImage warp(const GrayImage& img, const SimilarityTransform& to_source, int width, int height);

struct MorphResult {
    GrayImage image;
    LandmarkSet landmarks;
};

/// alpha * a + (1 - alpha) * warp(b). With similarity alignment b is first
/// mapped into a's frame using all 68 landmarks.
MorphResult blend_morph(const GrayImage& a, const LandmarkSet& lm_a, const GrayImage& b,
                        const LandmarkSet& lm_b, const BlendSpec& spec = {});

/// Circular convolution with a normalized sampled Gaussian truncated at
/// +-ceil(3 sigma). sigma == 0 is the identity.
GrayImage gaussian_blur_circular(const GrayImage& img, double sigma);

struct SyntheticSample {
    GrayImage image;
    LandmarkSet landmarks;
    std::string name;
};

struct SyntheticDataset {
    std::vector<SyntheticSample> bonafide;
    std::vector<SyntheticSample> morphs;
};

struct SynthSize {
    int width = 256;
    int height = 256;
};

/// n bonafide subjects and floor(n / 2) morphs built from disjoint pairs
/// (0,1), (2,3), ... Subject i is drawn from its own stream seeded with
/// seed + i, so output depends only on (n, seed, size).
SyntheticDataset make_synthetic_pair_set(int n, std::uint64_t seed, SynthSize size = {});

// Writes <name>.png and <name>.pts per sample plus manifest.csv; returns the
// manifest path.
std::filesystem::path write_synthetic_dataset(const SyntheticDataset& ds,
                                              const std::filesystem::path& dir);

// Mean face shape used by the synthesizer, scaled to a size x size canvas.
LandmarkSet template_landmarks(const SynthSize& size);

}  // namespace browmad
