#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "browmad/classifier.hpp"
#include "browmad/error.hpp"
#include "browmad/imagecore.hpp"
#include "browmad/landmarks.hpp"
#include "browmad/metrics.hpp"

namespace browmad {

inline constexpr int kSchemaVersion = 1;

std::string_view to_string(Label label);
Label parse_label(std::string_view text);  // throws InvalidArgument

struct ManifestEntry {
    std::filesystem::path image_path;
    Label label = Label::Bonafide;
    std::string dataset_tag;
    std::string morph_tool_tag;  // empty when absent
    std::optional<std::filesystem::path> landmark_path;
    int row = 0;  // 1-based data row, header excluded
};

/// Manifest CSV with header image_path,label,dataset_tag,morph_tool_tag,landmark_path.
/// Blank lines and lines starting with '#' are skipped; relative paths are
/// resolved against base_dir.
std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::filesystem::path& base_dir);
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

struct SplitConfig {
    double train_fraction = 0.5;
    std::uint64_t seed = 0;
};

struct PipelineConfig {
    bool enhance_contrast = true;
    ClipConfig clip{};
    double margin = kDefaultMargin;
    double low_freq_crop_percent = 0.0;
    std::optional<SplitConfig> split;

    void validate() const;
};

nlohmann::json to_json(const PipelineConfig& cfg);
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// 16 hex digits of FNV-1a over the canonical JSON form of the config.
std::string config_digest(const PipelineConfig& cfg);

/// Crop around the eyebrows, then (optionally) contrast-stretch the crop.
GrayImage eyebrow_region(const GrayImage& gray, const LandmarkSet& lm, const PipelineConfig& cfg);
double score_image(const GrayImage& gray, const LandmarkSet& lm, const PipelineConfig& cfg);

class LandmarkProvider {
public:
    virtual ~LandmarkProvider() = default;
    virtual LandmarkSet landmarks_for(const ManifestEntry& entry, const GrayImage& gray) const = 0;
};

/// Reads entry.landmark_path, or failing that a sibling <stem>.pts / <stem>.json
/// next to the image.
class SidecarLandmarkProvider final : public LandmarkProvider {
public:
    LandmarkSet landmarks_for(const ManifestEntry& entry, const GrayImage& gray) const override;
};

struct ScoreRecord {
    std::string image_path;
    Label label = Label::Bonafide;
    std::string dataset_tag;
    std::string morph_tool_tag;
    double score = 0.0;
    std::string config_digest;

    friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

struct EntryFailure {
    int row = 0;
    std::string image_path;
    ErrorCode code = ErrorCode::IoError;
    std::string message;
};

struct ScoreOptions {
    bool strict = false;
    int threads = 0;  // 0: BROWMAD_THREADS, falling back to hardware concurrency
    const LandmarkProvider* provider = nullptr;  // null: sidecar files
};

struct ScoreBatch {
    std::vector<ScoreRecord> records;  // sorted by image_path
    std::vector<EntryFailure> failures;  // sorted by row
};

/// decode -> grayscale -> eyebrow crop -> (optional) contrast stretch ->
/// frequency score, for every entry. The result does not depend on the
/// thread count or manifest order. In strict mode the first failure (lowest
/// row) is rethrown.
ScoreBatch score_dataset(const std::vector<ManifestEntry>& entries, const PipelineConfig& cfg,
                         const ScoreOptions& opts = {});

int resolve_thread_count(int requested);

void write_scores_csv(std::ostream& out, const std::vector<ScoreRecord>& records);
std::vector<ScoreRecord> read_scores_csv(std::istream& in);

enum class GroupBy { All, DatasetTag, MorphToolTag };
GroupBy parse_group_by(std::string_view text);
std::string_view to_string(GroupBy g);

struct GroupReport {
    std::string name;
    EvalSummary summary;
    DetCurve curve;
};

LabeledScores labeled_scores(const std::vector<ScoreRecord>& records);

/// One report per group, ordered by name. Grouping by dataset_tag appends a
/// "Combined" group over all records. Grouping by morph_tool_tag pairs every
/// tool's morphs with all bonafide records. Throws SingleClassGroup.
std::vector<GroupReport> evaluate(const std::vector<ScoreRecord>& records, GroupBy group_by);

struct FileSizeStats {
    std::string dataset_tag;
    std::size_t count = 0;
    std::uintmax_t min_bytes = 0;
    std::uintmax_t max_bytes = 0;
    double mean_bytes = 0.0;
};

/// Bonafide image file sizes per dataset tag; files that no longer exist are
/// skipped.
std::vector<FileSizeStats> file_size_audit(const std::vector<ScoreRecord>& records);

nlohmann::json eval_report_json(const std::vector<GroupReport>& groups, GroupBy group_by,
                                const std::vector<ScoreRecord>& records);

struct TrainTestSplit {
    std::vector<ScoreRecord> train;
    std::vector<ScoreRecord> test;
};

/// Seeded shuffle within each label, then the first round(fraction * n) of
/// each label go to train. Throws InsufficientData when either side ends up
/// with fewer than two records of a class.
TrainTestSplit split_train_test(const std::vector<ScoreRecord>& records, double train_fraction,
                                std::uint64_t seed);

struct SplitEvalReport {
    double threshold = 0.0;
    EvalSummary train;
    ConfusionCounts test_counts;
    ConfusionRates test_rates;
};

/// Calibrates the EER threshold on train and applies it unchanged to test.
SplitEvalReport split_evaluate(const TrainTestSplit& split);
nlohmann::json split_report_json(const SplitEvalReport& report, const std::string& digest,
                                 double train_fraction, std::uint64_t seed);

nlohmann::json summary_json(const EvalSummary& s);

}  // namespace browmad
