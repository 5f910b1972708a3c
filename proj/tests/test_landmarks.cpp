#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "browmad/error.hpp"
#include "browmad/landmarks.hpp"

namespace browmad {
namespace {

LandmarkSet numbered_set() {
    LandmarkSet lm;
    for (int i = 0; i < kLandmarkCount; ++i) {
        lm.points[i] = {10.0 + i, 200.0 - 0.5 * i};
    }
    return lm;
}

// Eyebrow points spread over x in [100, 300], y in [80, 110].
LandmarkSet eyebrow_box_set() {
    LandmarkSet lm;
    for (auto& p : lm.points) {
        p = {200.0, 300.0};
    }
    const double xs[10] = {100, 140, 180, 220, 260, 120, 160, 200, 240, 300};
    const double ys[10] = {110, 90, 80, 95, 105, 100, 85, 82, 96, 108};
    for (int k = 0; k < 10; ++k) {
        lm.points[kEyebrowFirst + k] = {xs[k], ys[k]};
    }
    return lm;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

TEST(ParseLandmarks, PtsRoundTrip) {
    LandmarkSet lm = numbered_set();
    std::istringstream in(format_pts(lm));
    EXPECT_EQ(parse_landmarks(in, LandmarkFormat::Pts), lm);
}

TEST(ParseLandmarks, PtsWithWrongCount) {
    std::istringstream in("version: 1\nn_points: 5\n{\n1 2\n3 4\n5 6\n7 8\n9 10\n}\n");
    EXPECT_EQ(code_of([&] { parse_landmarks(in, LandmarkFormat::Pts); }),
              ErrorCode::WrongPointCount);
}

TEST(ParseLandmarks, PtsSyntaxErrors) {
    std::string good = format_pts(numbered_set());
    std::istringstream no_brace("version: 1\nn_points: 68\n");
    EXPECT_EQ(code_of([&] { parse_landmarks(no_brace, LandmarkFormat::Pts); }),
              ErrorCode::MalformedFile);

    std::string bad_line = good;
    bad_line.replace(bad_line.find("{\n") + 2, 0, "abc def\n");
    std::istringstream in(bad_line);
    EXPECT_EQ(code_of([&] { parse_landmarks(in, LandmarkFormat::Pts); }),
              ErrorCode::MalformedFile);

    std::string unclosed = good.substr(0, good.rfind('}'));
    std::istringstream in2(unclosed);
    EXPECT_EQ(code_of([&] { parse_landmarks(in2, LandmarkFormat::Pts); }),
              ErrorCode::MalformedFile);
}

TEST(ParseLandmarks, PtsDeclaredCountMustMatchListedLines) {
    std::ostringstream s;
    s << "version: 1\nn_points: 68\n{\n";
    for (int i = 0; i < 67; ++i) {
        s << i << ' ' << i << '\n';
    }
    s << "}\n";
    std::istringstream in(s.str());
    EXPECT_EQ(code_of([&] { parse_landmarks(in, LandmarkFormat::Pts); }),
              ErrorCode::MalformedFile);
}

TEST(ParseLandmarks, JsonPreservesOrder) {
    std::ostringstream s;
    s << '[';
    for (int i = 0; i < 68; ++i) {
        s << (i ? "," : "") << '[' << i << ',' << 1000 + i << ']';
    }
    s << ']';
    std::istringstream in(s.str());
    LandmarkSet lm = parse_landmarks(in, LandmarkFormat::Json);
    EXPECT_EQ(lm.points[17], (Point2{17.0, 1017.0}));
}

TEST(ParseLandmarks, JsonErrors) {
    std::istringstream short_arr("[[1,2],[3,4]]");
    EXPECT_EQ(code_of([&] { parse_landmarks(short_arr, LandmarkFormat::Json); }),
              ErrorCode::WrongPointCount);
    std::istringstream not_json("{nope");
    EXPECT_EQ(code_of([&] { parse_landmarks(not_json, LandmarkFormat::Json); }),
              ErrorCode::MalformedFile);
    std::istringstream bad_pair("[[1,2,3]]");
    EXPECT_EQ(code_of([&] { parse_landmarks(bad_pair, LandmarkFormat::Json); }),
              ErrorCode::MalformedFile);
}

TEST(EyebrowRect, HandExpandedExample) {
    EXPECT_EQ(eyebrow_rect(eyebrow_box_set(), 640, 480, 0.1), (CropRect{80, 77, 240, 36}));
}

TEST(EyebrowRect, ZeroMarginIsBoundingBox) {
    EXPECT_EQ(eyebrow_rect(eyebrow_box_set(), 640, 480, 0.0), (CropRect{100, 80, 200, 30}));
}

TEST(EyebrowRect, ClampsAtTopEdge) {
    LandmarkSet lm = eyebrow_box_set();
    for (int i = kEyebrowFirst; i <= kEyebrowLast; ++i) {
        lm.points[i].y -= 78.0;  // y in [2, 32]
    }
    CropRect r = eyebrow_rect(lm, 640, 480, 0.5);
    EXPECT_EQ(r.y0, 0);
    EXPECT_EQ(r.y0 + r.height, 47);
}

TEST(EyebrowRect, DegenerateRegion) {
    LandmarkSet lm = eyebrow_box_set();
    for (int i = kEyebrowFirst; i <= kEyebrowLast; ++i) {
        lm.points[i].y = 50.0;  // flat: height 0
    }
    EXPECT_EQ(code_of([&] { eyebrow_rect(lm, 640, 480, 0.1); }), ErrorCode::DegenerateRegion);
    // Entirely outside the image.
    EXPECT_EQ(code_of([&] { eyebrow_rect(eyebrow_box_set(), 50, 50, 0.1); }),
              ErrorCode::DegenerateRegion);
}

TEST(EyebrowRect, ContainsPointsAndIsTranslationEquivariant) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coord(150.0, 350.0);
    std::uniform_real_distribution<double> margin(0.0, 0.3);
    std::uniform_int_distribution<int> shift(-40, 40);
    for (int trial = 0; trial < 500; ++trial) {
        LandmarkSet lm = numbered_set();
        for (int i = kEyebrowFirst; i <= kEyebrowLast; ++i) {
            lm.points[i] = {coord(rng), coord(rng)};
        }
        const double m = margin(rng);
        CropRect r = eyebrow_rect(lm, 1000, 1000, m);
        for (int i = kEyebrowFirst; i <= kEyebrowLast; ++i) {
            const Point2& p = lm.points[i];
            ASSERT_GE(p.x, r.x0);
            ASSERT_LE(p.x, r.x0 + r.width);
            ASSERT_GE(p.y, r.y0);
            ASSERT_LE(p.y, r.y0 + r.height);
        }
        const int dx = shift(rng);
        const int dy = shift(rng);
        LandmarkSet moved = lm;
        for (auto& p : moved.points) {
            p.x += dx;
            p.y += dy;
        }
        CropRect rm = eyebrow_rect(moved, 1000 + dx, 1000 + dy, m);
        ASSERT_EQ(rm, (CropRect{r.x0 + dx, r.y0 + dy, r.width, r.height}));
    }
}

TEST(Crop, FullImageIsIdentity) {
    GrayImage img(4, 3, std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    EXPECT_EQ(crop(img, {0, 0, 4, 3}), img);
}

TEST(Crop, OnePastEdgeIsOutOfBounds) {
    GrayImage img(4, 4, 1.0);
    EXPECT_EQ(code_of([&] { crop(img, {1, 0, 4, 4}); }), ErrorCode::OutOfBounds);
    EXPECT_EQ(code_of([&] { crop(img, {0, 1, 4, 4}); }), ErrorCode::OutOfBounds);
    EXPECT_EQ(code_of([&] { crop(img, {-1, 0, 2, 2}); }), ErrorCode::OutOfBounds);
}

TEST(Crop, InteriorOfRamp) {
    std::vector<double> px(16);
    for (int i = 0; i < 16; ++i) {
        px[static_cast<std::size_t>(i)] = i;
    }
    GrayImage out = crop(GrayImage(4, 4, px), {1, 1, 2, 2});
    EXPECT_EQ(out, GrayImage(2, 2, std::vector<double>{5, 6, 9, 10}));
}

TEST(Crop, EyebrowCropNeverExceedsSource) {
    GrayImage img(320, 240, 100.0);
    LandmarkSet lm = eyebrow_box_set();
    for (double m : {0.0, 0.1, 0.5, 0.9}) {
        GrayImage out = crop(img, eyebrow_rect(lm, img.width(), img.height(), m));
        EXPECT_LE(out.width(), img.width());
        EXPECT_LE(out.height(), img.height());
    }
}

TEST(FormatForPath, PicksByExtension) {
    EXPECT_EQ(format_for_path("a/b.JSON"), LandmarkFormat::Json);
    EXPECT_EQ(format_for_path("a/b.pts"), LandmarkFormat::Pts);
}

}  // namespace
}  // namespace browmad
