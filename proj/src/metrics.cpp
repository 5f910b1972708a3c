#include "browmad/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

#include "browmad/classifier.hpp"
#include "browmad/error.hpp"

namespace browmad {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_non_empty(std::span<const double> scores, const char* what) {
    if (scores.empty()) {
        throw Error(ErrorCode::EmptyScores, std::string(what) + " scores are empty");
    }
}

// Counts of sorted scores below t, for t walking upward.
std::size_t count_below(std::span<const double> sorted, double t) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), t) -
                                    sorted.begin());
}

double lerp(double a, double b, double t) { return a + t * (b - a); }

}  // namespace

double apcer(std::span<const double> morph_scores, double t) {
    require_non_empty(morph_scores, "morph");
    auto accepted = std::count_if(morph_scores.begin(), morph_scores.end(),
                                  [t](double s) { return s >= t; });
    return static_cast<double>(accepted) / static_cast<double>(morph_scores.size());
}

double bpcer(std::span<const double> bonafide_scores, double t) {
    require_non_empty(bonafide_scores, "bonafide");
    auto rejected = std::count_if(bonafide_scores.begin(), bonafide_scores.end(),
                                  [t](double s) { return s < t; });
    return static_cast<double>(rejected) / static_cast<double>(bonafide_scores.size());
}

double acer(double apcer_rate, double bpcer_rate) {
    if (!(apcer_rate >= 0.0 && apcer_rate <= 1.0 && bpcer_rate >= 0.0 && bpcer_rate <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "error rates must lie in [0, 1]");
    }
    return 0.5 * (apcer_rate + bpcer_rate);
}

std::vector<double> candidate_thresholds(std::span<const double> bonafide,
                                         std::span<const double> morph) {
    std::vector<double> pooled;
    pooled.reserve(bonafide.size() + morph.size());
    pooled.insert(pooled.end(), bonafide.begin(), bonafide.end());
    pooled.insert(pooled.end(), morph.begin(), morph.end());
    std::sort(pooled.begin(), pooled.end());
    pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

    std::vector<double> out;
    out.reserve(pooled.size() + 1);
    out.push_back(-kInf);
    for (std::size_t i = 0; i + 1 < pooled.size(); ++i) {
        out.push_back(pooled[i] + 0.5 * (pooled[i + 1] - pooled[i]));
    }
    out.push_back(kInf);
    return out;
}

DetCurve det_curve(const LabeledScores& ls) {
    require_non_empty(ls.bonafide, "bonafide");
    require_non_empty(ls.morph, "morph");
    std::vector<double> b = ls.bonafide;
    std::vector<double> m = ls.morph;
    std::sort(b.begin(), b.end());
    std::sort(m.begin(), m.end());
    const double nb = static_cast<double>(b.size());
    const double nm = static_cast<double>(m.size());

    DetCurve curve;
    for (double t : candidate_thresholds(b, m)) {
        const double ap = static_cast<double>(m.size() - count_below(m, t)) / nm;
        const double bp = static_cast<double>(count_below(b, t)) / nb;
        curve.points.push_back({t, ap, bp});
    }
    return curve;
}

std::size_t eer_bracket(const DetCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "DET curve needs both sentinels");
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double d0 = pts[i].apcer - pts[i].bpcer;
        const double d1 = pts[i + 1].apcer - pts[i + 1].bpcer;
        if (d0 == 0.0 || (d0 > 0.0 && d1 <= 0.0)) {
            return i;
        }
    }
    return pts.size() - 1;
}

double d_eer(const DetCurve& curve) {
    const auto& pts = curve.points;
    const std::size_t i = eer_bracket(curve);
    const DetPoint& p = pts[i];
    const double d0 = p.apcer - p.bpcer;
    if (d0 == 0.0 || i + 1 == pts.size()) {
        return p.apcer;
    }
    const DetPoint& q = pts[i + 1];
    const double d1 = q.apcer - q.bpcer;
    const double t = d0 / (d0 - d1);
    return lerp(p.apcer, q.apcer, t);
}

double bpcer_at_apcer(const DetCurve& curve, double target_apcer) {
    if (!(target_apcer > 0.0 && target_apcer < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "target APCER must lie in (0, 1)");
    }
    const auto& pts = curve.points;
    // APCER is non-increasing along the curve, so the first qualifying point
    // carries the smallest BPCER.
    auto it = std::find_if(pts.begin(), pts.end(),
                           [&](const DetPoint& p) { return p.apcer <= target_apcer; });
    if (it == pts.end()) {
        return 1.0;
    }
    if (it->apcer == target_apcer || it == pts.begin()) {
        return it->bpcer;
    }
    const DetPoint& hi = *std::prev(it);  // apcer above target
    const DetPoint& lo = *it;
    const double t = (hi.apcer - target_apcer) / (hi.apcer - lo.apcer);
    return lerp(hi.bpcer, lo.bpcer, t);
}

EvalSummary summarize(const LabeledScores& ls) { return summarize(ls, det_curve(ls)); }

EvalSummary summarize(const LabeledScores& ls, const DetCurve& curve) {
    EvalSummary s;
    s.d_eer = d_eer(curve);
    s.bpcer10 = bpcer_at_apcer(curve, 0.10);
    s.bpcer20 = bpcer_at_apcer(curve, 0.05);
    s.threshold = calibrate_eer_threshold(ls.bonafide, ls.morph).value;
    s.apcer_at_threshold = apcer(ls.morph, s.threshold);
    s.bpcer_at_threshold = bpcer(ls.bonafide, s.threshold);
    s.acer = acer(s.apcer_at_threshold, s.bpcer_at_threshold);
    s.n_bonafide = ls.bonafide.size();
    s.n_morph = ls.morph.size();
    return s;
}

ConfusionRates rates_from_counts(const ConfusionCounts& c) {
    if (c.bonafide_total == 0 || c.morph_total == 0) {
        throw Error(ErrorCode::EmptyScores, "confusion table needs both classes");
    }
    if (c.bonafide_wrong > c.bonafide_total || c.morph_wrong > c.morph_total) {
        throw Error(ErrorCode::InvalidArgument, "misclassified count exceeds total");
    }
    ConfusionRates r{};
    r.apcer = static_cast<double>(c.morph_wrong) / static_cast<double>(c.morph_total);
    r.bpcer = static_cast<double>(c.bonafide_wrong) / static_cast<double>(c.bonafide_total);
    r.acer = acer(r.apcer, r.bpcer);
    return r;
}

std::string format_percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", 100.0 * fraction);
    return buf;
}

void write_det_csv(std::ostream& out, const DetCurve& curve) {
    out << "threshold,apcer,bpcer\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const DetPoint& p : curve.points) {
        if (std::isinf(p.threshold)) {
            out << (p.threshold < 0 ? "-inf" : "inf");
        } else {
            out << p.threshold;
        }
        out << ',' << p.apcer << ',' << p.bpcer << '\n';
    }
}

void write_det_svg(std::ostream& out, std::span<const NamedCurve> curves) {
    constexpr double kSize = 400.0;
    constexpr double kPad = 50.0;
    constexpr double kFloor = 1e-3;  // 0.1%, lower edge of the log axes
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    auto axis = [&](double rate) {
        double v = std::log10(std::clamp(rate, kFloor, 1.0));
        return (v - std::log10(kFloor)) / -std::log10(kFloor) * kSize;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize + 2 * kPad
        << "\" height=\"" << kSize + 2 * kPad << "\">\n";
    out << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kSize << "\" height=\""
        << kSize << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double tick : {0.001, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0}) {
        const double px = kPad + axis(tick);
        const double py = kPad + kSize - axis(tick);
        out << "<line x1=\"" << px << "\" y1=\"" << kPad << "\" x2=\"" << px << "\" y2=\""
            << kPad + kSize << "\" stroke=\"#ddd\"/>\n";
        out << "<line x1=\"" << kPad << "\" y1=\"" << py << "\" x2=\"" << kPad + kSize
            << "\" y2=\"" << py << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << kPad + kSize + 15
            << "\" font-size=\"10\" text-anchor=\"middle\">" << tick * 100 << "</text>\n";
        out << "<text x=\"" << kPad - 5 << "\" y=\"" << py + 3
            << "\" font-size=\"10\" text-anchor=\"end\">" << tick * 100 << "</text>\n";
    }
    out << "<text x=\"" << kPad + kSize / 2 << "\" y=\"" << kPad + kSize + 35
        << "\" font-size=\"12\" text-anchor=\"middle\">APCER (%)</text>\n";
    out << "<text x=\"15\" y=\"" << kPad + kSize / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << kPad + kSize / 2 << ")\">BPCER (%)</text>\n";

    for (std::size_t i = 0; i < curves.size(); ++i) {
        const char* color = colors[i % std::size(colors)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (const DetPoint& p : curves[i].curve->points) {
            out << kPad + axis(p.apcer) << ',' << kPad + kSize - axis(p.bpcer) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kPad + kSize - 5 << "\" y=\"" << kPad + 15 + 14 * i
            << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << color << "\">"
            << curves[i].name << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace browmad
