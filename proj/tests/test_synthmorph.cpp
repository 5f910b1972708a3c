#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "browmad/error.hpp"
#include "browmad/spectral.hpp"
#include "browmad/synthmorph.hpp"
#include "oracles.hpp"

namespace browmad {
namespace {

LandmarkSet shifted(const LandmarkSet& lm, double dx, double dy) {
    LandmarkSet out = lm;
    for (auto& p : out.points) {
        p.x += dx;
        p.y += dy;
    }
    return out;
}

TEST(BlendMorph, EndpointsAreExact) {
    std::mt19937_64 rng(41);
    GrayImage a = oracle::random_image(rng, 64, 64);
    GrayImage b = oracle::random_image(rng, 64, 64);
    LandmarkSet la = template_landmarks({64, 64});
    LandmarkSet lb = shifted(la, 1.5, -0.5);

    MorphResult one = blend_morph(a, la, b, lb, {1.0, Alignment::Similarity});
    EXPECT_EQ(one.image, a);
    EXPECT_EQ(one.landmarks, la);

    MorphResult zero = blend_morph(a, la, b, lb, {0.0, Alignment::None});
    EXPECT_EQ(zero.image, b);
    EXPECT_EQ(zero.landmarks, lb);
}

TEST(BlendMorph, LinearBlendOfConstants) {
    LandmarkSet lm = template_landmarks({64, 64});
    MorphResult m = blend_morph(GrayImage(64, 64, 100.0), lm, GrayImage(64, 64, 200.0), lm,
                                {0.5, Alignment::None});
    for (double v : m.image.pixels()) {
        EXPECT_DOUBLE_EQ(v, 150.0);
    }
}

TEST(BlendMorph, Errors) {
    LandmarkSet lm = template_landmarks({64, 64});
    EXPECT_THROW(blend_morph(GrayImage(64, 64, 1.0), lm, GrayImage(65, 64, 1.0), lm,
                             {0.5, Alignment::None}),
                 Error);
    LandmarkSet line;
    for (int i = 0; i < kLandmarkCount; ++i) {
        line.points[i] = {1.0 * i, 2.0 * i};
    }
    try {
        blend_morph(GrayImage(64, 64, 1.0), lm, GrayImage(64, 64, 1.0), line, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateAlignment);
    }
    EXPECT_THROW(blend_morph(GrayImage(8, 8, 1.0), lm, GrayImage(8, 8, 1.0), lm, {1.5}), Error);
}

TEST(BlendMorph, SimilarityAlignmentRecoversKnownTransform) {
    LandmarkSet la = template_landmarks({128, 128});
    SimilarityTransform truth{0.9 * std::cos(0.1), 0.9 * std::sin(0.1), 4.0, -3.0};
    LandmarkSet lb;
    for (int i = 0; i < kLandmarkCount; ++i) {
        lb.points[i] = truth.apply(la.points[i]);
    }
    SimilarityTransform fit = fit_similarity(lb, la);
    SimilarityTransform inv = truth.inverse();
    EXPECT_NEAR(fit.a, inv.a, 1e-12);
    EXPECT_NEAR(fit.b, inv.b, 1e-12);
    EXPECT_NEAR(fit.tx, inv.tx, 1e-9);
    EXPECT_NEAR(fit.ty, inv.ty, 1e-9);

    MorphResult m = blend_morph(GrayImage(128, 128, 50.0), la, GrayImage(128, 128, 50.0), lb, {});
    for (int i = 0; i < kLandmarkCount; ++i) {
        EXPECT_NEAR(m.landmarks.points[i].x, la.points[i].x, 1e-9);
        EXPECT_NEAR(m.landmarks.points[i].y, la.points[i].y, 1e-9);
    }
}

TEST(BlendMorph, UnalignedBlendScoreBound) {
    std::mt19937_64 rng(42);
    LandmarkSet lm = template_landmarks({64, 64});
    for (double alpha : {0.25, 0.5, 0.75}) {
        GrayImage a = oracle::random_texture(rng, 64, 64);
        GrayImage b = oracle::random_texture(rng, 64, 64);
        MorphResult m = blend_morph(a, lm, b, lm, {alpha, Alignment::None});
        EXPECT_LE(frequency_score(m.image),
                  alpha * frequency_score(a) + (1 - alpha) * frequency_score(b) + 1e-9);
    }
}

TEST(GaussianBlur, IdentityConstantAndImpulse) {
    std::mt19937_64 rng(43);
    GrayImage img = oracle::random_image(rng, 9, 7);
    EXPECT_EQ(gaussian_blur_circular(img, 0.0), img);

    GrayImage flat = gaussian_blur_circular(GrayImage(9, 7, 77.0), 1.7);
    for (double v : flat.pixels()) {
        EXPECT_NEAR(v, 77.0, 1e-12);
    }

    std::vector<double> px(15 * 15, 0.0);
    px[7 * 15 + 7] = 255.0;
    GrayImage blurred = gaussian_blur_circular(GrayImage(15, 15, px), 1.0);
    // 255 / (sum_{k=-3..3} exp(-k^2 / 2))^2
    EXPECT_NEAR(blurred.at(7, 7), 40.60648705112912, 1e-9);
    EXPECT_THROW(gaussian_blur_circular(img, -1.0), Error);
}

TEST(GaussianBlur, WrapsAround) {
    std::vector<double> px(10 * 4, 0.0);
    px[0] = 200.0;  // corner impulse leaks to the opposite edges
    GrayImage out = gaussian_blur_circular(GrayImage(10, 4, px), 1.0);
    EXPECT_GT(out.at(9, 0), 0.0);
    EXPECT_GT(out.at(0, 3), 0.0);
    EXPECT_NEAR(out.at(9, 0), out.at(1, 0), 1e-12);
}

TEST(SyntheticSet, DeterministicAndPaired) {
    SyntheticDataset a = make_synthetic_pair_set(4, 9, {96, 96});
    SyntheticDataset b = make_synthetic_pair_set(4, 9, {96, 96});
    ASSERT_EQ(a.bonafide.size(), 4u);
    ASSERT_EQ(a.morphs.size(), 2u);
    for (std::size_t i = 0; i < a.bonafide.size(); ++i) {
        EXPECT_EQ(a.bonafide[i].image, b.bonafide[i].image);
        EXPECT_EQ(a.bonafide[i].landmarks, b.bonafide[i].landmarks);
    }
    for (std::size_t i = 0; i < a.morphs.size(); ++i) {
        EXPECT_EQ(a.morphs[i].image, b.morphs[i].image);
    }
    SyntheticDataset c = make_synthetic_pair_set(4, 10, {96, 96});
    EXPECT_NE(a.bonafide[0].image, c.bonafide[0].image);

    SyntheticDataset two = make_synthetic_pair_set(2, 1, {96, 96});
    EXPECT_EQ(two.bonafide.size(), 2u);
    EXPECT_EQ(two.morphs.size(), 1u);
    EXPECT_THROW(make_synthetic_pair_set(1, 1), Error);
}

TEST(SyntheticSet, SubjectDependsOnlyOnSeedPlusIndex) {
    SyntheticDataset small = make_synthetic_pair_set(2, 5, {96, 96});
    SyntheticDataset big = make_synthetic_pair_set(6, 5, {96, 96});
    EXPECT_EQ(small.bonafide[1].image, big.bonafide[1].image);
}

TEST(SyntheticSet, WritesPngPtsAndManifest) {
    const auto dir = std::filesystem::temp_directory_path() / "browmad_synth_test";
    std::filesystem::remove_all(dir);
    SyntheticDataset ds = make_synthetic_pair_set(2, 3, {80, 80});
    const auto manifest = write_synthetic_dataset(ds, dir);
    EXPECT_TRUE(std::filesystem::exists(dir / "bonafide_0000.png"));
    EXPECT_TRUE(std::filesystem::exists(dir / "bonafide_0001.pts"));
    EXPECT_TRUE(std::filesystem::exists(dir / "morph_0000.png"));
    std::ifstream in(manifest);
    std::string header, row;
    std::getline(in, header);
    EXPECT_EQ(header, "image_path,label,dataset_tag,morph_tool_tag,landmark_path");
    std::getline(in, row);
    EXPECT_EQ(row, "bonafide_0000.png,bonafide,synthetic,,bonafide_0000.pts");
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace browmad
