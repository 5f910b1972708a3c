// browmad: eyebrow-region frequency scoring for single-image morph detection.
//
// Exit status: 0 success, 1 validation/usage error, 2 some manifest entries
// failed (non-strict scoring).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "browmad/classifier.hpp"
#include "browmad/error.hpp"
#include "browmad/harness.hpp"
#include "browmad/image_io.hpp"
#include "browmad/metrics.hpp"
#include "browmad/spectral.hpp"
#include "browmad/synthmorph.hpp"

namespace {

namespace fs = std::filesystem;
using namespace browmad;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitPartial = 2;

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    return out;
}

void emit_json(const nlohmann::json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        open_out(path) << text;
    }
}

PipelineConfig config_or_default(const std::string& path) {
    return path.empty() ? PipelineConfig{} : load_pipeline_config(path);
}

std::vector<ScoreRecord> load_scores(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::MissingFile, "cannot open scores " + path.string());
    }
    return read_scores_csv(in);
}

void report_failures(const std::vector<EntryFailure>& failures) {
    for (const auto& f : failures) {
        std::cerr << "row " << f.row << " (" << f.image_path << "): " << f.message << '\n';
    }
}

fs::path per_group_path(const fs::path& base, const std::string& group) {
    fs::path p = base;
    p.replace_filename(base.stem().string() + "_" + group + base.extension().string());
    return p;
}

struct ScoreArgs {
    std::string manifest;
    std::string config;
    std::string out;
    bool strict = false;
    int threads = 0;
};

int run_score(const ScoreArgs& a) {
    const PipelineConfig cfg = config_or_default(a.config);
    ScoreBatch batch = score_dataset(load_manifest(a.manifest), cfg, {a.strict, a.threads, nullptr});
    auto out = open_out(a.out);
    write_scores_csv(out, batch.records);
    report_failures(batch.failures);
    std::cerr << batch.records.size() << " scored, " << batch.failures.size() << " failed\n";
    return batch.failures.empty() ? kExitOk : kExitPartial;
}

struct EvalArgs {
    std::string scores;
    std::string group_by = "all";
    std::string det_out;
    std::string svg;
    std::string out;
};

int run_eval(const EvalArgs& a) {
    const GroupBy group_by = parse_group_by(a.group_by);
    const auto records = load_scores(a.scores);
    const auto groups = evaluate(records, group_by);

    if (!a.det_out.empty()) {
        for (const auto& g : groups) {
            auto out = open_out(groups.size() == 1 ? fs::path(a.det_out)
                                                   : per_group_path(a.det_out, g.name));
            write_det_csv(out, g.curve);
        }
    }
    if (!a.svg.empty()) {
        std::vector<NamedCurve> curves;
        for (const auto& g : groups) {
            curves.push_back({g.name, &g.curve});
        }
        auto out = open_out(a.svg);
        write_det_svg(out, curves);
    }
    emit_json(eval_report_json(groups, group_by, records), a.out);
    return kExitOk;
}

int run_calibrate(const std::string& scores, const std::string& out) {
    const auto records = load_scores(scores);
    const LabeledScores ls = labeled_scores(records);
    const Threshold t = calibrate_eer_threshold(ls.bonafide, ls.morph);
    const EvalSummary s = summarize(ls);
    nlohmann::json j{
        {"schema_version", kSchemaVersion},
        {"config_digest", records.empty() ? "" : records.front().config_digest},
        {"threshold", t.value},
        {"polarity", "morph_if_score_below_threshold"},
        {"d_eer", s.d_eer},
        {"apcer", s.apcer_at_threshold},
        {"bpcer", s.bpcer_at_threshold},
        {"n_bonafide", s.n_bonafide},
        {"n_morph", s.n_morph},
    };
    emit_json(j, out);
    return kExitOk;
}

struct SplitArgs {
    std::string manifest;
    std::string config;
    std::optional<double> train_fraction;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool strict = false;
    int threads = 0;
};

int run_split_eval(const SplitArgs& a) {
    PipelineConfig cfg = config_or_default(a.config);
    SplitConfig split = cfg.split.value_or(SplitConfig{});
    if (a.train_fraction) {
        split.train_fraction = *a.train_fraction;
    }
    if (a.seed) {
        split.seed = *a.seed;
    }
    cfg.split = split;
    cfg.validate();

    ScoreBatch batch = score_dataset(load_manifest(a.manifest), cfg, {a.strict, a.threads, nullptr});
    report_failures(batch.failures);
    const TrainTestSplit parts = split_train_test(batch.records, split.train_fraction, split.seed);
    const SplitEvalReport rep = split_evaluate(parts);
    emit_json(split_report_json(rep, config_digest(cfg), split.train_fraction, split.seed), a.out);
    return batch.failures.empty() ? kExitOk : kExitPartial;
}

GrayImage region_for(const std::string& image, const std::string& landmarks,
                     const PipelineConfig& cfg) {
    return eyebrow_region(read_gray(image), load_landmarks(landmarks), cfg);
}

int run_crop(const std::string& image, const std::string& landmarks, const std::string& config,
             const std::string& out) {
    write_gray_png(out, region_for(image, landmarks, config_or_default(config)));
    return kExitOk;
}

int run_spectrum(const std::string& image, const std::string& landmarks,
                 const std::string& config, const std::string& out, const std::string& csv) {
    const PipelineConfig cfg = config_or_default(config);
    const GrayImage region = region_for(image, landmarks, cfg);
    const MagnitudeSpectrum spec =
        fft_shift(apply_low_freq_crop(dft2_magnitude(region), cfg.low_freq_crop_percent));
    write_gray_png(out, spectrum_to_image(spec));
    if (!csv.empty()) {
        auto f = open_out(csv);
        write_spectrum_csv(f, spec);
    }
    std::cout << frequency_score(region, {cfg.low_freq_crop_percent, false}) << '\n';
    return kExitOk;
}

int run_avg_spectrum(const std::string& manifest, const std::string& label,
                     const std::string& config, const std::string& out, int width, int height) {
    const PipelineConfig cfg = config_or_default(config);
    const Label wanted = parse_label(label);
    const SidecarLandmarkProvider provider;
    std::vector<GrayImage> regions;
    for (const auto& e : load_manifest(manifest)) {
        if (e.label != wanted) {
            continue;
        }
        const GrayImage gray = read_gray(e.image_path);
        regions.push_back(eyebrow_region(gray, provider.landmarks_for(e, gray), cfg));
    }
    write_gray_png(out, spectrum_to_image(averaged_spectrum(regions, width, height), false));
    return kExitOk;
}

int run_synth(int n, std::uint64_t seed, const std::string& out, int width, int height) {
    const auto ds = make_synthetic_pair_set(n, seed, {width, height});
    std::cout << write_synthetic_dataset(ds, out).string() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eyebrow-region frequency analysis for single-image morphing attack detection"};
    app.require_subcommand(1);

    ScoreArgs score;
    auto* cmd_score = app.add_subcommand("score", "Score every image of a manifest");
    cmd_score->add_option("--manifest", score.manifest, "Manifest CSV")->required();
    cmd_score->add_option("--config", score.config, "Pipeline config JSON");
    cmd_score->add_option("--out", score.out, "Output score CSV")->required();
    cmd_score->add_flag("--strict", score.strict, "Abort on the first failing entry");
    cmd_score->add_option("--threads", score.threads, "Worker threads (0: BROWMAD_THREADS or auto)");

    EvalArgs eval;
    auto* cmd_eval = app.add_subcommand("eval", "D-EER, BPCER10/20 and DET curves from scores");
    cmd_eval->add_option("--scores", eval.scores, "Score CSV")->required();
    cmd_eval->add_option("--group-by", eval.group_by, "all | dataset_tag | morph_tool_tag");
    cmd_eval->add_option("--det-out", eval.det_out, "DET curve CSV");
    cmd_eval->add_option("--svg", eval.svg, "DET plot SVG");
    cmd_eval->add_option("--out", eval.out, "Report JSON (default stdout)");

    std::string cal_scores, cal_out;
    auto* cmd_cal = app.add_subcommand("calibrate", "EER threshold from scores");
    cmd_cal->add_option("--scores", cal_scores, "Score CSV")->required();
    cmd_cal->add_option("--out", cal_out, "Threshold JSON (default stdout)");

    SplitArgs split;
    auto* cmd_split = app.add_subcommand("split-eval", "Calibrate on a train split, report test errors");
    cmd_split->add_option("--manifest", split.manifest, "Manifest CSV")->required();
    cmd_split->add_option("--config", split.config, "Pipeline config JSON");
    cmd_split->add_option("--train-fraction", split.train_fraction, "Training share in (0, 1)");
    cmd_split->add_option("--seed", split.seed, "Shuffle seed");
    cmd_split->add_option("--out", split.out, "Report JSON (default stdout)");
    cmd_split->add_flag("--strict", split.strict, "Abort on the first failing entry");
    cmd_split->add_option("--threads", split.threads, "Worker threads");

    std::string img, lm, cfg_path, out, csv;
    auto* cmd_crop = app.add_subcommand("crop", "Write the preprocessed eyebrow region");
    cmd_crop->add_option("--image", img)->required();
    cmd_crop->add_option("--landmarks", lm)->required();
    cmd_crop->add_option("--config", cfg_path);
    cmd_crop->add_option("--out", out)->required();

    auto* cmd_spec = app.add_subcommand("spectrum", "Write the shifted log-magnitude spectrum");
    cmd_spec->add_option("--image", img)->required();
    cmd_spec->add_option("--landmarks", lm)->required();
    cmd_spec->add_option("--config", cfg_path);
    cmd_spec->add_option("--out", out)->required();
    cmd_spec->add_option("--csv", csv, "Also write the spectrum grid as CSV");

    std::string avg_label = "bonafide";
    int width = 256, height = 256;
    std::string manifest;
    auto* cmd_avg = app.add_subcommand("avg-spectrum", "Averaged spectrum over one class");
    cmd_avg->add_option("--manifest", manifest)->required();
    cmd_avg->add_option("--label", avg_label, "bonafide | morph");
    cmd_avg->add_option("--config", cfg_path);
    cmd_avg->add_option("--out", out)->required();
    cmd_avg->add_option("--width", width);
    cmd_avg->add_option("--height", height);

    int n = 0;
    std::uint64_t seed = 0;
    auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic bonafide/morph set");
    cmd_synth->add_option("--n", n, "Bonafide subjects (>= 2)")->required();
    cmd_synth->add_option("--seed", seed)->required();
    cmd_synth->add_option("--out", out, "Output directory")->required();
    cmd_synth->add_option("--width", width);
    cmd_synth->add_option("--height", height);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*cmd_score) return run_score(score);
        if (*cmd_eval) return run_eval(eval);
        if (*cmd_cal) return run_calibrate(cal_scores, cal_out);
        if (*cmd_split) return run_split_eval(split);
        if (*cmd_crop) return run_crop(img, lm, cfg_path, out);
        if (*cmd_spec) return run_spectrum(img, lm, cfg_path, out, csv);
        if (*cmd_avg) return run_avg_spectrum(manifest, avg_label, cfg_path, out, width, height);
        if (*cmd_synth) return run_synth(n, seed, out, width, height);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
