#pragma once

#include <span>

namespace browmad {

enum class Label { Bonafide, Morph };

/// Decision threshold on frequency scores. Morphs are smoothed and carry less
/// spectral magnitude, so the polarity is fixed: morph iff score < value.
struct Threshold {
    double value = 0.0;

    explicit Threshold(double v);
};

struct Decision {
    Label label;
    double score;
    double threshold_used;
};

Decision decide(double score, const Threshold& t);

/// Threshold at the APCER/BPCER crossing. The result is always one of the
/// DET candidate thresholds (midpoints between consecutive distinct pooled
/// scores); of the two candidates bracketing the crossing, the one with the
/// smaller |APCER - BPCER| wins. A sentinel candidate is replaced by a finite
/// value that classifies every score the same way.
Threshold calibrate_eer_threshold(std::span<const double> bonafide_scores,
                                  std::span<const double> morph_scores);

}  // namespace browmad
