#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace browmad {

struct LabeledScores {
    std::vector<double> bonafide;
    std::vector<double> morph;
};

// Rates follow ISO/IEC 30107-3 with the "morph iff score < t" polarity:
// APCER is the share of morphs scoring >= t (accepted as bonafide),
// BPCER the share of bonafide scoring < t (rejected as morphs).
double apcer(std::span<const double> morph_scores, double t);
double bpcer(std::span<const double> bonafide_scores, double t);
double acer(double apcer_rate, double bpcer_rate);

struct DetPoint {
    double threshold;
    double apcer;
    double bpcer;

    friend bool operator==(const DetPoint&, const DetPoint&) = default;
};

/// Points ordered by increasing threshold. The first is the -inf sentinel
/// (APCER 1, BPCER 0) and the last the +inf sentinel (APCER 0, BPCER 1).
struct DetCurve {
    std::vector<DetPoint> points;
};

/// -inf, the midpoints between consecutive distinct pooled scores, +inf.
std::vector<double> candidate_thresholds(std::span<const double> bonafide,
                                         std::span<const double> morph);

DetCurve det_curve(const LabeledScores& ls);

/// Index i such that the APCER - BPCER sign change lies between points i and
/// i + 1 (or exactly at i). Shared with threshold calibration.
std::size_t eer_bracket(const DetCurve& curve);

double d_eer(const DetCurve& curve);
double bpcer_at_apcer(const DetCurve& curve, double target_apcer);

struct EvalSummary {
    double d_eer = 0.0;
    double bpcer10 = 0.0;
    double bpcer20 = 0.0;
    double apcer_at_threshold = 0.0;
    double bpcer_at_threshold = 0.0;
    double acer = 0.0;
    double threshold = 0.0;
    std::size_t n_bonafide = 0;
    std::size_t n_morph = 0;
};

/// D-EER, BPCER10, BPCER20 from the DET curve, plus APCER/BPCER/ACER at the
/// calibrated EER threshold.
EvalSummary summarize(const LabeledScores& ls);
EvalSummary summarize(const LabeledScores& ls, const DetCurve& curve);

/// Error rates from a confusion table of the kind reported for a fixed
/// threshold: totals and misclassified counts per class.
struct ConfusionCounts {
    std::size_t bonafide_total = 0;
    std::size_t bonafide_wrong = 0;
    std::size_t morph_total = 0;
    std::size_t morph_wrong = 0;
};

struct ConfusionRates {
    double apcer;
    double bpcer;
    double acer;
};

ConfusionRates rates_from_counts(const ConfusionCounts& counts);

// Percent with one decimal, e.g. 0.0527 -> "5.3".
std::string format_percent(double fraction);

void write_det_csv(std::ostream& out, const DetCurve& curve);

struct NamedCurve {
    std::string name;
    const DetCurve* curve;
};

/// DET plot (BPCER against APCER) on logarithmic axes covering 0.1% .. 100%.
void write_det_svg(std::ostream& out, std::span<const NamedCurve> curves);

}  // namespace browmad
