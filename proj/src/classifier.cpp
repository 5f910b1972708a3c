#include "browmad/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "browmad/error.hpp"
#include "browmad/metrics.hpp"

namespace browmad {

Threshold::Threshold(double v) : value(v) {
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidArgument, "threshold must be finite");
    }
}

Decision decide(double score, const Threshold& t) {
    if (!std::isfinite(score)) {
        throw Error(ErrorCode::InvalidArgument, "score must be finite");
    }
    return {score < t.value ? Label::Morph : Label::Bonafide, score, t.value};
}

Threshold calibrate_eer_threshold(std::span<const double> bonafide_scores,
                                  std::span<const double> morph_scores) {
    if (bonafide_scores.empty() || morph_scores.empty()) {
        throw Error(ErrorCode::EmptyScores, "calibration needs scores from both classes");
    }
    LabeledScores ls{{bonafide_scores.begin(), bonafide_scores.end()},
                     {morph_scores.begin(), morph_scores.end()}};
    const DetCurve curve = det_curve(ls);
    const auto& pts = curve.points;

    std::size_t pick = eer_bracket(curve);
    if (pick + 1 < pts.size()) {
        const DetPoint& p = pts[pick];
        const DetPoint& q = pts[pick + 1];
        const double gap_p = std::abs(p.apcer - p.bpcer);
        const double gap_q = std::abs(q.apcer - q.bpcer);
        if (gap_q < gap_p ||
            (gap_q == gap_p && std::max(q.apcer, q.bpcer) < std::max(p.apcer, p.bpcer))) {
            ++pick;
        }
    }

    const double t = pts[pick].threshold;
    if (std::isfinite(t)) {
        return Threshold(t);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto span : {bonafide_scores, morph_scores}) {
        for (double s : span) {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
    }
    // -inf accepts everything: so does the minimum score under strict "<".
    // +inf rejects everything: so does the next double above the maximum.
    return Threshold(t < 0 ? lo : std::nextafter(hi, std::numeric_limits<double>::infinity()));
}

}  // namespace browmad
