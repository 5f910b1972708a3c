#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "browmad/error.hpp"
#include "browmad/metrics.hpp"
#include "oracles.hpp"

namespace browmad {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const LabeledScores kSix{{0.7, 0.8, 0.9}, {0.2, 0.3, 0.75}};

bool has_point(const DetCurve& c, double ap, double bp) {
    for (const auto& p : c.points) {
        if (std::abs(p.apcer - ap) < 1e-12 && std::abs(p.bpcer - bp) < 1e-12) {
            return true;
        }
    }
    return false;
}

TEST(Apcer, DirectCounts) {
    std::vector<double> m{0.1, 0.2, 0.9};
    EXPECT_DOUBLE_EQ(apcer(m, 0.5), 1.0 / 3);
    EXPECT_EQ(apcer(m, -kInf), 1.0);
    std::vector<double> none;
    EXPECT_THROW(apcer(none, 0.0), Error);
}

TEST(Bpcer, DirectCounts) {
    std::vector<double> b{0.7, 0.8, 0.9};
    EXPECT_DOUBLE_EQ(bpcer(b, 0.75), 1.0 / 3);
    EXPECT_EQ(bpcer(b, -kInf), 0.0);
    std::vector<double> none;
    EXPECT_THROW(bpcer(none, 0.0), Error);
}

TEST(ConfusionCounts, KnownCountsArithmetic) {
    ConfusionRates r = rates_from_counts({720, 40, 964, 48});
    EXPECT_NEAR(r.apcer, 48.0 / 964, 1e-15);
    EXPECT_NEAR(r.bpcer, 40.0 / 720, 1e-15);
    EXPECT_EQ(format_percent(r.apcer), "5.0");
    EXPECT_EQ(format_percent(r.bpcer), "5.6");
    EXPECT_NEAR(100 * r.acer, 5.27, 0.005);
    EXPECT_THROW(rates_from_counts({10, 11, 5, 0}), Error);
}

TEST(Acer, Mean) {
    EXPECT_NEAR(acer(0.0498, 0.0556), 0.0527, 1e-12);
    EXPECT_EQ(acer(0, 0), 0.0);
    EXPECT_EQ(acer(1, 0), 0.5);
    EXPECT_THROW(acer(1.5, 0), Error);
}

TEST(DetCurve, SentinelsAndSeparableOrigin) {
    DetCurve c = det_curve({{1.0}, {0.0}});
    ASSERT_GE(c.points.size(), 3u);
    EXPECT_EQ(c.points.front(), (DetPoint{-kInf, 1.0, 0.0}));
    EXPECT_EQ(c.points.back(), (DetPoint{kInf, 0.0, 1.0}));
    EXPECT_TRUE(has_point(c, 0.0, 0.0));
}

TEST(DetCurve, IdenticalDistributionsSumToOne) {
    LabeledScores ls{{0.1, 0.4, 0.6, 0.9}, {0.1, 0.4, 0.6, 0.9}};
    DetCurve c = det_curve(ls);
    for (const auto& p : c.points) {
        EXPECT_DOUBLE_EQ(p.apcer + p.bpcer, 1.0);
    }
    EXPECT_DOUBLE_EQ(d_eer(c), 0.5);
    EXPECT_NEAR(bpcer_at_apcer(c, 0.10), 0.90, 1e-12);
}

TEST(DetCurve, SixScoreExample) {
    DetCurve c = det_curve(kSix);
    EXPECT_TRUE(has_point(c, 1.0 / 3, 1.0 / 3));
    EXPECT_NEAR(d_eer(c), 1.0 / 3, 1e-12);
    EXPECT_NEAR(bpcer_at_apcer(c, 0.05), 1.0 / 3, 1e-12);
}

TEST(DetCurve, SeparableRates) {
    DetCurve c = det_curve({{0.8, 0.9}, {0.1, 0.2}});
    EXPECT_EQ(d_eer(c), 0.0);
    EXPECT_EQ(bpcer_at_apcer(c, 0.10), 0.0);
    EXPECT_THROW(bpcer_at_apcer(c, 0.0), Error);
    EXPECT_THROW(det_curve({{}, {1.0}}), Error);
}

TEST(DetCurve, MonotoneAndMatchesDirectRecount) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coarse(0, 12);  // plenty of ties
    for (int trial = 0; trial < 200; ++trial) {
        LabeledScores ls;
        ls.bonafide.resize(1 + rng() % 20);
        ls.morph.resize(1 + rng() % 20);
        for (double& s : ls.bonafide) {
            s = coarse(rng) + 3;
        }
        for (double& s : ls.morph) {
            s = coarse(rng);
        }
        DetCurve c = det_curve(ls);
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            const auto& p = c.points[i];
            ASSERT_EQ(p.apcer, apcer(ls.morph, p.threshold));
            ASSERT_EQ(p.bpcer, bpcer(ls.bonafide, p.threshold));
            if (i > 0) {
                ASSERT_LT(c.points[i - 1].threshold, p.threshold);
                ASSERT_LE(p.apcer, c.points[i - 1].apcer);
                ASSERT_GE(p.bpcer, c.points[i - 1].bpcer);
            }
        }
    }
}

TEST(DetCurve, StrictlyIncreasingTransformKeepsPointSet) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        LabeledScores ls, mapped;
        for (int i = 0; i < 15; ++i) {
            ls.bonafide.push_back(u(rng) + 0.2);
            ls.morph.push_back(u(rng));
        }
        for (double s : ls.bonafide) {
            mapped.bonafide.push_back(std::exp(3 * s) + 7);
        }
        for (double s : ls.morph) {
            mapped.morph.push_back(std::exp(3 * s) + 7);
        }
        DetCurve a = det_curve(ls), b = det_curve(mapped);
        ASSERT_EQ(a.points.size(), b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            ASSERT_EQ(a.points[i].apcer, b.points[i].apcer);
            ASSERT_EQ(a.points[i].bpcer, b.points[i].bpcer);
        }
    }
}

TEST(DEer, NearBruteForceMinMax) {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        LabeledScores ls;
        ls.bonafide.resize(3 + rng() % 25);
        ls.morph.resize(3 + rng() % 25);
        for (double& s : ls.bonafide) {
            s = u(rng) + 0.25;
        }
        for (double& s : ls.morph) {
            s = u(rng);
        }
        const double tol = 1.0 / static_cast<double>(std::min(ls.bonafide.size(), ls.morph.size()));
        EXPECT_NEAR(d_eer(det_curve(ls)), oracle::brute_force_min_max(ls.bonafide, ls.morph), tol);
    }
}

TEST(Summarize, AcerIsMeanOfRatesAtThreshold) {
    EvalSummary s = summarize(kSix);
    EXPECT_DOUBLE_EQ(s.acer, 0.5 * (s.apcer_at_threshold + s.bpcer_at_threshold));
    EXPECT_EQ(s.n_bonafide, 3u);
    EXPECT_EQ(s.n_morph, 3u);
    EXPECT_NEAR(s.d_eer, 1.0 / 3, 1e-12);
}

TEST(DetExport, CsvAndSvg) {
    DetCurve c = det_curve({{1.0}, {0.0}});
    std::ostringstream csv;
    write_det_csv(csv, c);
    EXPECT_EQ(csv.str(), "threshold,apcer,bpcer\n-inf,1,0\n0.5,0,0\ninf,0,1\n");
    std::ostringstream svg;
    NamedCurve nc{"all", &c};
    write_det_svg(svg, std::span<const NamedCurve>(&nc, 1));
    EXPECT_NE(svg.str().find("<polyline"), std::string::npos);
    EXPECT_NE(svg.str().find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace browmad
