#include "browmad/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "browmad/image_io.hpp"
#include "browmad/spectral.hpp"
#include "rng.hpp"

namespace browmad {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kManifestHeader = "image_path,label,dataset_tag,morph_tool_tag,landmark_path";
constexpr const char* kScoresHeader = "image_path,label,dataset_tag,morph_tool_tag,score,config_digest";

std::string trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// RFC 4180 style: fields may be double-quoted, "" is an escaped quote.
std::vector<std::string> split_csv(std::string_view line, bool& ok) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    ok = true;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) {
        ok = false;
    }
    fields.push_back(trim(cur));
    return fields;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + '"';
}

bool is_skippable(const std::string& t) { return t.empty() || t.front() == '#'; }

std::string strip_bom(std::string line) {
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) {
        line.erase(0, 3);
    }
    return line;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return (path.is_relative() ? base / path : path).lexically_normal();
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    return j.at(key).get<T>();
}

}  // namespace

std::string_view to_string(Label label) {
    return label == Label::Bonafide ? "bonafide" : "morph";
}

Label parse_label(std::string_view text) {
    if (text == "bonafide") {
        return Label::Bonafide;
    }
    if (text == "morph") {
        return Label::Morph;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown label '" + std::string(text) + "'");
}

std::vector<ManifestEntry> parse_manifest(std::istream& in, const fs::path& base_dir) {
    std::string line;
    bool have_header = false;
    int row = 0;
    std::vector<ManifestEntry> entries;
    while (std::getline(in, line)) {
        std::string t = trim(strip_bom(line));
        if (is_skippable(t)) {
            continue;
        }
        if (!have_header) {
            if (t != kManifestHeader) {
                throw Error(ErrorCode::MalformedManifest,
                            "header must be '" + std::string(kManifestHeader) + "', got '" + t + "'");
            }
            have_header = true;
            continue;
        }
        ++row;
        const std::string where = "row " + std::to_string(row);
        bool ok = true;
        auto f = split_csv(t, ok);
        if (!ok || f.size() < 3 || f.size() > 5) {
            throw Error(ErrorCode::MalformedManifest, where + ": expected 3 to 5 fields");
        }
        f.resize(5);
        if (f[0].empty()) {
            throw Error(ErrorCode::MalformedManifest, where + ": empty image_path");
        }
        ManifestEntry e;
        e.row = row;
        e.image_path = resolve(base_dir, f[0]);
        try {
            e.label = parse_label(f[1]);
        } catch (const Error&) {
            throw Error(ErrorCode::MalformedManifest,
                        where + ": label must be bonafide or morph, got '" + f[1] + "'");
        }
        e.dataset_tag = f[2];
        e.morph_tool_tag = f[3];
        if (!f[4].empty()) {
            e.landmark_path = resolve(base_dir, f[4]);
        }
        if (!fs::is_regular_file(e.image_path)) {
            throw Error(ErrorCode::MissingFile, where + ": " + e.image_path.string());
        }
        entries.push_back(std::move(e));
    }
    if (!have_header) {
        throw Error(ErrorCode::MalformedManifest, "manifest has no header");
    }
    return entries;
}

std::vector<ManifestEntry> load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::MissingFile, "cannot open manifest " + path.string());
    }
    return parse_manifest(in, path.parent_path());
}

void PipelineConfig::validate() const {
    clip.validate();
    if (!(margin >= 0.0 && margin < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "margin must lie in [0, 1)");
    }
    SpectralConfig{low_freq_crop_percent, false}.validate();
    if (split && !(split->train_fraction > 0.0 && split->train_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "train_fraction must lie in (0, 1)");
    }
}

json to_json(const PipelineConfig& cfg) {
    json j;
    j["enhance_contrast"] = cfg.enhance_contrast;
    j["clip"] = {{"black_fraction", cfg.clip.black_fraction},
                 {"white_fraction", cfg.clip.white_fraction}};
    j["margin"] = cfg.margin;
    j["low_freq_crop_percent"] = cfg.low_freq_crop_percent;
    if (cfg.split) {
        j["split"] = {{"train_fraction", cfg.split->train_fraction}, {"seed", cfg.split->seed}};
    } else {
        j["split"] = nullptr;
    }
    return j;
}

PipelineConfig pipeline_config_from_json(const json& j) {
    static const std::set<std::string> known = {"enhance_contrast", "clip", "margin",
                                                "low_freq_crop_percent", "split"};
    PipelineConfig cfg;
    try {
        if (!j.is_object()) {
            throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
        }
        for (const auto& [key, _] : j.items()) {
            if (!known.contains(key)) {
                throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
            }
        }
        cfg.enhance_contrast = get_or(j, "enhance_contrast", cfg.enhance_contrast);
        if (j.contains("clip") && !j["clip"].is_null()) {
            cfg.clip.black_fraction = get_or(j["clip"], "black_fraction", cfg.clip.black_fraction);
            cfg.clip.white_fraction = get_or(j["clip"], "white_fraction", cfg.clip.white_fraction);
        }
        cfg.margin = get_or(j, "margin", cfg.margin);
        cfg.low_freq_crop_percent = get_or(j, "low_freq_crop_percent", cfg.low_freq_crop_percent);
        if (j.contains("split") && !j["split"].is_null()) {
            SplitConfig s;
            s.train_fraction = get_or(j["split"], "train_fraction", s.train_fraction);
            s.seed = get_or<std::uint64_t>(j["split"], "seed", s.seed);
            cfg.split = s;
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::MissingFile, "cannot open config " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, "config " + path.string() + ": " + e.what());
    }
    return pipeline_config_from_json(j);
}

std::string config_digest(const PipelineConfig& cfg) {
    // nlohmann::json keeps object keys sorted and prints doubles in shortest
    // round-trip form, so dump() is canonical.
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(to_json(cfg).dump())));
    return buf;
}

GrayImage eyebrow_region(const GrayImage& gray, const LandmarkSet& lm, const PipelineConfig& cfg) {
    GrayImage region = crop(gray, eyebrow_rect(lm, gray.width(), gray.height(), cfg.margin));
    return cfg.enhance_contrast ? contrast_stretch(region, cfg.clip) : region;
}

double score_image(const GrayImage& gray, const LandmarkSet& lm, const PipelineConfig& cfg) {
    return frequency_score(eyebrow_region(gray, lm, cfg), {cfg.low_freq_crop_percent, false});
}

LandmarkSet SidecarLandmarkProvider::landmarks_for(const ManifestEntry& entry,
                                                   const GrayImage&) const {
    if (entry.landmark_path) {
        return load_landmarks(*entry.landmark_path);
    }
    for (const char* ext : {".pts", ".json"}) {
        fs::path candidate = entry.image_path;
        candidate.replace_extension(ext);
        if (fs::is_regular_file(candidate)) {
            return load_landmarks(candidate);
        }
    }
    throw Error(ErrorCode::MissingFile,
                "no landmarks for " + entry.image_path.string() + " (no .pts/.json sidecar)");
}

int resolve_thread_count(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("BROWMAD_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<int>(std::min<long>(v, 1024));
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

ScoreBatch score_dataset(const std::vector<ManifestEntry>& entries, const PipelineConfig& cfg,
                         const ScoreOptions& opts) {
    cfg.validate();
    const std::string digest = config_digest(cfg);
    const SidecarLandmarkProvider sidecar;
    const LandmarkProvider& provider = opts.provider ? *opts.provider : sidecar;

    std::vector<std::optional<ScoreRecord>> results(entries.size());
    std::vector<std::optional<EntryFailure>> failures(entries.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};

    auto worker = [&] {
        for (;;) {
            if (opts.strict && stop.load()) {
                return;
            }
            const std::size_t i = next.fetch_add(1);
            if (i >= entries.size()) {
                return;
            }
            const ManifestEntry& e = entries[i];
            const std::string path = e.image_path.generic_string();
            try {
                const GrayImage gray = read_gray(e.image_path);
                const LandmarkSet lm = provider.landmarks_for(e, gray);
                const double score = score_image(gray, lm, cfg);
                results[i] = ScoreRecord{path, e.label, e.dataset_tag, e.morph_tool_tag, score, digest};
            } catch (const Error& err) {
                failures[i] = EntryFailure{e.row, path, err.code(), err.what()};
                stop = true;
            } catch (const std::exception& err) {
                failures[i] = EntryFailure{e.row, path, ErrorCode::IoError, err.what()};
                stop = true;
            }
        }
    };

    const int threads = std::min<int>(resolve_thread_count(opts.threads),
                                      static_cast<int>(std::max<std::size_t>(entries.size(), 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    ScoreBatch batch;
    for (auto& r : results) {
        if (r) {
            batch.records.push_back(std::move(*r));
        }
    }
    for (auto& f : failures) {
        if (f) {
            batch.failures.push_back(std::move(*f));
        }
    }
    std::sort(batch.records.begin(), batch.records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.image_path, a.label, a.dataset_tag, a.morph_tool_tag) <
               std::tie(b.image_path, b.label, b.dataset_tag, b.morph_tool_tag);
    });
    std::sort(batch.failures.begin(), batch.failures.end(),
              [](const auto& a, const auto& b) { return a.row < b.row; });
    if (opts.strict && !batch.failures.empty()) {
        const EntryFailure& f = batch.failures.front();
        throw Error(f.code, "row " + std::to_string(f.row) + ": " + f.message);
    }
    return batch;
}

void write_scores_csv(std::ostream& out, const std::vector<ScoreRecord>& records) {
    out << "# schema_version=" << kSchemaVersion << '\n' << kScoresHeader << '\n';
    for (const auto& r : records) {
        out << csv_field(r.image_path) << ',' << to_string(r.label) << ','
            << csv_field(r.dataset_tag) << ',' << csv_field(r.morph_tool_tag) << ','
            << format_double(r.score) << ',' << r.config_digest << '\n';
    }
}

std::vector<ScoreRecord> read_scores_csv(std::istream& in) {
    std::string line;
    bool have_header = false;
    int row = 0;
    std::vector<ScoreRecord> records;
    while (std::getline(in, line)) {
        std::string t = trim(strip_bom(line));
        if (t.rfind("# schema_version=", 0) == 0) {
            if (t != "# schema_version=" + std::to_string(kSchemaVersion)) {
                throw Error(ErrorCode::MalformedFile, "unsupported score schema: " + t);
            }
            continue;
        }
        if (is_skippable(t)) {
            continue;
        }
        if (!have_header) {
            if (t != kScoresHeader) {
                throw Error(ErrorCode::MalformedFile, "score CSV header must be '" +
                                                          std::string(kScoresHeader) + "'");
            }
            have_header = true;
            continue;
        }
        ++row;
        bool ok = true;
        auto f = split_csv(t, ok);
        const std::string where = "score row " + std::to_string(row);
        if (!ok || f.size() != 6) {
            throw Error(ErrorCode::MalformedFile, where + ": expected 6 fields");
        }
        ScoreRecord r;
        r.image_path = f[0];
        try {
            r.label = parse_label(f[1]);
        } catch (const Error&) {
            throw Error(ErrorCode::MalformedFile, where + ": bad label '" + f[1] + "'");
        }
        r.dataset_tag = f[2];
        r.morph_tool_tag = f[3];
        char* end = nullptr;
        r.score = std::strtod(f[4].c_str(), &end);
        if (f[4].empty() || *end != '\0' || !std::isfinite(r.score) || r.score < 0.0) {
            throw Error(ErrorCode::MalformedFile, where + ": score must be finite and >= 0");
        }
        r.config_digest = f[5];
        records.push_back(std::move(r));
    }
    if (!have_header) {
        throw Error(ErrorCode::MalformedFile, "score CSV has no header");
    }
    return records;
}

GroupBy parse_group_by(std::string_view text) {
    if (text == "all") {
        return GroupBy::All;
    }
    if (text == "dataset_tag") {
        return GroupBy::DatasetTag;
    }
    if (text == "morph_tool_tag") {
        return GroupBy::MorphToolTag;
    }
    throw Error(ErrorCode::InvalidArgument, "group-by must be all, dataset_tag or morph_tool_tag");
}

std::string_view to_string(GroupBy g) {
    switch (g) {
        case GroupBy::All: return "all";
        case GroupBy::DatasetTag: return "dataset_tag";
        case GroupBy::MorphToolTag: return "morph_tool_tag";
    }
    return "all";
}

LabeledScores labeled_scores(const std::vector<ScoreRecord>& records) {
    LabeledScores ls;
    for (const auto& r : records) {
        (r.label == Label::Bonafide ? ls.bonafide : ls.morph).push_back(r.score);
    }
    return ls;
}

std::vector<GroupReport> evaluate(const std::vector<ScoreRecord>& records, GroupBy group_by) {
    std::set<std::string> digests;
    for (const auto& r : records) {
        digests.insert(r.config_digest);
    }
    if (digests.size() > 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "scores come from " + std::to_string(digests.size()) +
                        " different configurations; refusing to merge them");
    }

    std::map<std::string, std::vector<ScoreRecord>> groups;
    switch (group_by) {
        case GroupBy::All:
            groups["all"] = records;
            break;
        case GroupBy::DatasetTag:
            for (const auto& r : records) {
                groups[r.dataset_tag].push_back(r);
            }
            break;
        case GroupBy::MorphToolTag: {
            std::vector<ScoreRecord> bonafide;
            for (const auto& r : records) {
                if (r.label == Label::Bonafide) {
                    bonafide.push_back(r);
                } else {
                    groups[r.morph_tool_tag].push_back(r);
                }
            }
            for (auto& [_, g] : groups) {
                g.insert(g.end(), bonafide.begin(), bonafide.end());
            }
            if (groups.empty()) {
                groups[""] = bonafide;
            }
            break;
        }
    }

    std::vector<GroupReport> reports;
    auto add = [&](const std::string& name, const std::vector<ScoreRecord>& rs) {
        LabeledScores ls = labeled_scores(rs);
        if (ls.bonafide.empty() || ls.morph.empty()) {
            throw Error(ErrorCode::SingleClassGroup,
                        "group '" + name + "' has no " +
                            (ls.bonafide.empty() ? "bonafide" : "morph") + " scores");
        }
        GroupReport g;
        g.name = name;
        g.curve = det_curve(ls);
        g.summary = summarize(ls, g.curve);
        reports.push_back(std::move(g));
    };
    for (const auto& [name, rs] : groups) {
        add(name, rs);
    }
    if (group_by == GroupBy::DatasetTag) {
        add("Combined", records);
    }
    return reports;
}

std::vector<FileSizeStats> file_size_audit(const std::vector<ScoreRecord>& records) {
    std::map<std::string, FileSizeStats> by_tag;
    std::map<std::string, long double> totals;
    for (const auto& r : records) {
        if (r.label != Label::Bonafide) {
            continue;
        }
        std::error_code ec;
        const auto bytes = fs::file_size(r.image_path, ec);
        if (ec) {
            continue;
        }
        auto& s = by_tag[r.dataset_tag];
        if (s.count == 0) {
            s.dataset_tag = r.dataset_tag;
            s.min_bytes = bytes;
            s.max_bytes = bytes;
        }
        ++s.count;
        s.min_bytes = std::min(s.min_bytes, bytes);
        s.max_bytes = std::max(s.max_bytes, bytes);
        totals[r.dataset_tag] += bytes;
    }
    std::vector<FileSizeStats> out;
    for (auto& [tag, s] : by_tag) {
        s.mean_bytes = static_cast<double>(totals[tag] / s.count);
        out.push_back(s);
    }
    return out;
}

json summary_json(const EvalSummary& s) {
    return {
        {"d_eer", s.d_eer},
        {"bpcer10", s.bpcer10},
        {"bpcer20", s.bpcer20},
        {"threshold", s.threshold},
        {"apcer", s.apcer_at_threshold},
        {"bpcer", s.bpcer_at_threshold},
        {"acer", s.acer},
        {"n_bonafide", s.n_bonafide},
        {"n_morph", s.n_morph},
        {"percent",
         {{"d_eer", format_percent(s.d_eer)},
          {"bpcer10", format_percent(s.bpcer10)},
          {"bpcer20", format_percent(s.bpcer20)},
          {"apcer", format_percent(s.apcer_at_threshold)},
          {"bpcer", format_percent(s.bpcer_at_threshold)},
          {"acer", format_percent(s.acer)}}},
    };
}

json eval_report_json(const std::vector<GroupReport>& groups, GroupBy group_by,
                      const std::vector<ScoreRecord>& records) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["config_digest"] = records.empty() ? "" : records.front().config_digest;
    j["group_by"] = std::string(to_string(group_by));
    j["polarity"] = "morph_if_score_below_threshold";
    json arr = json::array();
    for (const auto& g : groups) {
        json item = summary_json(g.summary);
        item["name"] = g.name;
        item["det_points"] = g.curve.points.size();
        arr.push_back(std::move(item));
    }
    j["groups"] = std::move(arr);
    json audit = json::array();
    for (const auto& s : file_size_audit(records)) {
        audit.push_back({{"dataset_tag", s.dataset_tag},
                         {"count", s.count},
                         {"min_bytes", s.min_bytes},
                         {"max_bytes", s.max_bytes},
                         {"mean_bytes", s.mean_bytes}});
    }
    j["bonafide_file_sizes"] = std::move(audit);
    return j;
}

TrainTestSplit split_train_test(const std::vector<ScoreRecord>& records, double train_fraction,
                                std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "train_fraction must lie in (0, 1)");
    }
    std::vector<ScoreRecord> by_label[2];
    for (const auto& r : records) {
        by_label[r.label == Label::Bonafide ? 0 : 1].push_back(r);
    }
    detail::Rng rng(seed);
    for (auto& group : by_label) {
        std::sort(group.begin(), group.end(),
                  [](const auto& a, const auto& b) { return a.image_path < b.image_path; });
        for (std::size_t i = group.size(); i > 1; --i) {
            std::swap(group[i - 1], group[rng.below(i)]);
        }
    }

    // Largest-remainder allocation of round(fraction * N) training slots.
    const std::size_t total = by_label[0].size() + by_label[1].size();
    const auto quota = static_cast<std::size_t>(std::llround(train_fraction * total));
    std::size_t take[2];
    double rem[2];
    for (int c = 0; c < 2; ++c) {
        const double exact = train_fraction * by_label[c].size();
        take[c] = static_cast<std::size_t>(std::floor(exact));
        rem[c] = exact - take[c];
    }
    while (take[0] + take[1] < quota) {
        int c = rem[0] >= rem[1] ? 0 : 1;
        if (take[c] >= by_label[c].size()) {
            c = 1 - c;
        }
        ++take[c];
        rem[c] = -1.0;
    }

    TrainTestSplit split;
    for (int c = 0; c < 2; ++c) {
        const auto& g = by_label[c];
        const std::size_t train_n = take[c];
        const std::size_t test_n = g.size() - train_n;
        if (train_n < 2 || test_n < 2) {
            throw Error(ErrorCode::InsufficientData,
                        std::string(c == 0 ? "bonafide" : "morph") + " records split " +
                            std::to_string(train_n) + "/" + std::to_string(test_n) +
                            "; each side needs at least 2");
        }
        split.train.insert(split.train.end(), g.begin(), g.begin() + static_cast<long>(train_n));
        split.test.insert(split.test.end(), g.begin() + static_cast<long>(train_n), g.end());
    }
    auto by_path = [](const auto& a, const auto& b) { return a.image_path < b.image_path; };
    std::sort(split.train.begin(), split.train.end(), by_path);
    std::sort(split.test.begin(), split.test.end(), by_path);
    return split;
}

SplitEvalReport split_evaluate(const TrainTestSplit& split) {
    const LabeledScores train = labeled_scores(split.train);
    const LabeledScores test = labeled_scores(split.test);
    SplitEvalReport rep;
    rep.train = summarize(train);
    rep.threshold = rep.train.threshold;
    const Threshold t(rep.threshold);

    rep.test_counts.bonafide_total = test.bonafide.size();
    rep.test_counts.morph_total = test.morph.size();
    for (double s : test.bonafide) {
        rep.test_counts.bonafide_wrong += decide(s, t).label == Label::Morph ? 1 : 0;
    }
    for (double s : test.morph) {
        rep.test_counts.morph_wrong += decide(s, t).label == Label::Bonafide ? 1 : 0;
    }
    rep.test_rates = rates_from_counts(rep.test_counts);
    return rep;
}

json split_report_json(const SplitEvalReport& r, const std::string& digest, double train_fraction,
                       std::uint64_t seed) {
    const auto& c = r.test_counts;
    auto row = [](std::size_t total, std::size_t wrong) {
        return json{{"total", total}, {"rightly_classified", total - wrong},
                    {"wrongly_classified", wrong}};
    };
    return {
        {"schema_version", kSchemaVersion},
        {"config_digest", digest},
        {"train_fraction", train_fraction},
        {"seed", seed},
        {"threshold", r.threshold},
        {"polarity", "morph_if_score_below_threshold"},
        {"train", summary_json(r.train)},
        {"test",
         {{"bonafide", row(c.bonafide_total, c.bonafide_wrong)},
          {"morph", row(c.morph_total, c.morph_wrong)},
          {"apcer", r.test_rates.apcer},
          {"bpcer", r.test_rates.bpcer},
          {"acer", r.test_rates.acer},
          {"percent",
           {{"apcer", format_percent(r.test_rates.apcer)},
            {"bpcer", format_percent(r.test_rates.bpcer)},
            {"acer", format_percent(r.test_rates.acer)}}}}},
        {"rate_definitions",
         {{"apcer", "wrongly classified morphs / total morphs"},
          {"bpcer", "wrongly classified bonafide / total bonafide"},
          {"acer", "(apcer + bpcer) / 2"}}},
    };
}

}  // namespace browmad
