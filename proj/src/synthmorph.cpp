#include "browmad/synthmorph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "browmad/error.hpp"
#include "browmad/image_io.hpp"
#include "rng.hpp"

namespace browmad {
namespace {

using detail::Rng;

constexpr double kPi = std::numbers::pi;

Point2 centroid(const LandmarkSet& lm) {
    Point2 c;
    for (const Point2& p : lm.points) {
        c.x += p.x;
        c.y += p.y;
    }
    c.x /= kLandmarkCount;
    c.y /= kLandmarkCount;
    return c;
}

double sample_bilinear_clamped(const GrayImage& img, double x, double y) {
    x = std::clamp(x, 0.0, img.width() - 1.0);
    y = std::clamp(y, 0.0, img.height() - 1.0);
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, img.width() - 1);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double wx = x - x0;
    const double wy = y - y0;
    const double top = img.at(x0, y0) * (1 - wx) + img.at(x1, y0) * wx;
    const double bottom = img.at(x0, y1) * (1 - wx) + img.at(x1, y1) * wx;
    return top * (1 - wy) + bottom * wy;
}

std::vector<double> blur_rows_circular(const std::vector<double>& src, int w, int h,
                                       const std::vector<double>& kernel, bool along_x) {
    const int radius = static_cast<int>(kernel.size() / 2);
    std::vector<double> out(src.size(), 0.0);
    const int len = along_x ? w : h;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            const int pos = along_x ? x : y;
            for (int k = -radius; k <= radius; ++k) {
                int q = ((pos + k) % len + len) % len;
                const int sx = along_x ? q : x;
                const int sy = along_x ? y : q;
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       src[static_cast<std::size_t>(sy) * w + sx];
            }
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    return out;
}

// Canonical face in unit coordinates, iBUG-68 order.
LandmarkSet unit_template() {
    LandmarkSet lm;
    auto& p = lm.points;
    for (int i = 0; i <= 16; ++i) {
        const double phi = kPi - i * kPi / 16.0;
        p[i] = {0.5 + 0.38 * std::cos(phi), 0.42 + 0.40 * std::sin(phi)};
    }
    // Eyebrows arch upward; outer ends sit lower than the inner ones.
    for (int k = 0; k < 5; ++k) {
        const double u = k / 4.0;
        const double arch = 0.045 * std::sin(kPi * (0.15 + 0.75 * u));
        p[17 + k] = {0.20 + 0.24 * u, 0.355 - arch + 0.012 * (1 - u)};
        p[26 - k] = {0.80 - 0.24 * u, 0.355 - arch + 0.012 * (1 - u)};
    }
    for (int k = 0; k < 4; ++k) {
        p[27 + k] = {0.5, 0.41 + 0.05 * k};
    }
    for (int k = 0; k < 5; ++k) {
        p[31 + k] = {0.44 + 0.03 * k, k == 2 ? 0.61 : 0.60};
    }
    const double eye_angles[6] = {180, 120, 60, 0, 300, 240};
    for (int k = 0; k < 6; ++k) {
        const double a = eye_angles[k] * kPi / 180.0;
        p[36 + k] = {0.34 + 0.06 * std::cos(a), 0.44 - 0.025 * std::sin(a)};
        p[42 + k] = {0.66 + 0.06 * std::cos(a), 0.44 - 0.025 * std::sin(a)};
    }
    for (int k = 0; k < 12; ++k) {
        const double a = (180.0 - 30.0 * k) * kPi / 180.0;
        p[48 + k] = {0.5 + 0.12 * std::cos(a), 0.71 - 0.04 * std::sin(a)};
    }
    for (int k = 0; k < 8; ++k) {
        const double a = (180.0 - 45.0 * k) * kPi / 180.0;
        p[60 + k] = {0.5 + 0.08 * std::cos(a), 0.71 - 0.02 * std::sin(a)};
    }
    return lm;
}

struct Canvas {
    int w;
    int h;
    std::vector<double> px;

    double& at(int x, int y) { return px[static_cast<std::size_t>(y) * w + x]; }
};

// Anti-aliased segment: coverage falls off linearly over one pixel outside
// the stroke's half-width.
void draw_stroke(Canvas& c, Point2 a, Point2 b, double width, double value, double opacity) {
    const double reach = width / 2 + 1.0;
    const int x_lo = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - reach)));
    const int x_hi = std::min(c.w - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + reach)));
    const int y_lo = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - reach)));
    const int y_hi = std::min(c.h - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + reach)));
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    for (int y = y_lo; y <= y_hi; ++y) {
        for (int x = x_lo; x <= x_hi; ++x) {
            double t = len2 > 0 ? ((x - a.x) * dx + (y - a.y) * dy) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const double ex = a.x + t * dx - x;
            const double ey = a.y + t * dy - y;
            const double d = std::sqrt(ex * ex + ey * ey);
            const double cov = std::clamp(width / 2 + 0.5 - d, 0.0, 1.0);
            if (cov > 0) {
                double& px = c.at(x, y);
                px += cov * opacity * (value - px);
            }
        }
    }
}

void draw_ellipse(Canvas& c, Point2 center, double rx, double ry, double value, double opacity) {
    for (int y = 0; y < c.h; ++y) {
        for (int x = 0; x < c.w; ++x) {
            const double ux = (x - center.x) / rx;
            const double uy = (y - center.y) / ry;
            const double r = std::sqrt(ux * ux + uy * uy);
            const double cov = std::clamp((1.0 - r) * std::min(rx, ry), 0.0, 1.0);
            if (cov > 0) {
                double& px = c.at(x, y);
                px += cov * opacity * (value - px);
            }
        }
    }
}

// Dense short hairs along the 5-point eyebrow polyline starting at `first`.
void draw_eyebrow(Canvas& c, const LandmarkSet& lm, int first, bool outer_first, Rng& rng,
                  double hair_value, double thickness) {
    const Point2* pts = &lm.points[first];
    double seg_len[4];
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        seg_len[k] = std::hypot(pts[k + 1].x - pts[k].x, pts[k + 1].y - pts[k].y);
        total += seg_len[k];
    }
    const int strokes = static_cast<int>(total * 3.2);
    for (int s = 0; s < strokes; ++s) {
        double along = rng.uniform() * total;
        int k = 0;
        while (k < 3 && along > seg_len[k]) {
            along -= seg_len[k];
            ++k;
        }
        const double f = seg_len[k] > 0 ? along / seg_len[k] : 0.0;
        const Point2 base{pts[k].x + f * (pts[k + 1].x - pts[k].x),
                          pts[k].y + f * (pts[k + 1].y - pts[k].y)};
        const double tx = (pts[k + 1].x - pts[k].x) / std::max(seg_len[k], 1e-9);
        const double ty = (pts[k + 1].y - pts[k].y) / std::max(seg_len[k], 1e-9);
        // 0 at the outer tip, 1 at the inner end; brows thin out toward the tip.
        double u = (k + f) / 4.0;
        if (!outer_first) {
            u = 1.0 - u;
        }
        const double local = thickness * (0.55 + 0.45 * u);
        // Landmarks sit on the upper edge, so hair grows below them.
        const double offset = rng.uniform(-0.25, 0.85) * local;
        const Point2 root{base.x - ty * offset, base.y + tx * offset};

        double angle = std::atan2(ty, tx) + (outer_first ? -1.0 : 1.0) * 0.35 + 0.30 * rng.normal();
        const double length = rng.uniform(3.5, 7.5);
        const Point2 tip{root.x + length * std::cos(angle), root.y + length * std::sin(angle)};
        draw_stroke(c, root, tip, rng.uniform(0.5, 1.0), hair_value + rng.uniform(-12, 12),
                    rng.uniform(0.55, 0.95));
    }
}

LandmarkSet subject_landmarks(const LandmarkSet& tmpl, const SynthSize& size, Rng& rng) {
    const double scale = rng.uniform(0.94, 1.06);
    const double shift_x = rng.uniform(-5, 5);
    const double shift_y = rng.uniform(-5, 5);
    const double cx = size.width / 2.0;
    const double cy = size.height / 2.0;
    LandmarkSet lm;
    for (int i = 0; i < kLandmarkCount; ++i) {
        const Point2& t = tmpl.points[i];
        lm.points[i] = {cx + scale * (t.x - cx) + shift_x + 0.6 * rng.normal(),
                        cy + scale * (t.y - cy) + shift_y + 0.6 * rng.normal()};
    }
    return lm;
}

SyntheticSample make_bonafide(const SynthSize& size, const LandmarkSet& tmpl, Rng& rng,
                              std::string name) {
    const int w = size.width;
    const int h = size.height;
    LandmarkSet lm = subject_landmarks(tmpl, size, rng);

    // Smooth skin texture: blurred white noise around a per-subject tone.
    std::vector<double> noise(static_cast<std::size_t>(w) * h);
    for (double& v : noise) {
        v = rng.normal();
    }
    {
        const double sigma = 2.0;
        const int radius = static_cast<int>(std::ceil(3 * sigma));
        std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
        double sum = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            kernel[static_cast<std::size_t>(k + radius)] = std::exp(-k * k / (2 * sigma * sigma));
            sum += kernel[static_cast<std::size_t>(k + radius)];
        }
        for (double& k : kernel) {
            k /= sum;
        }
        noise = blur_rows_circular(blur_rows_circular(noise, w, h, kernel, true), w, h, kernel, false);
    }
    double var = 0.0;
    for (double v : noise) {
        var += v * v;
    }
    const double noise_scale = 1.0 / std::sqrt(var / noise.size() + 1e-12);

    const double tone = rng.uniform(145, 190);
    const double texture_amp = rng.uniform(4, 8);
    const double grad_x = rng.uniform(-0.08, 0.08);
    const double grad_y = rng.uniform(-0.08, 0.08);
    Canvas c{w, h, std::vector<double>(noise.size())};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            c.at(x, y) = tone + grad_x * (x - w / 2.0) + grad_y * (y - h / 2.0) +
                         texture_amp * noise_scale * noise[static_cast<std::size_t>(y) * w + x];
        }
    }

    auto centre = [&](int first, int count) {
        Point2 m;
        for (int i = first; i < first + count; ++i) {
            m.x += lm.points[i].x;
            m.y += lm.points[i].y;
        }
        return Point2{m.x / count, m.y / count};
    };
    const double scale_px = size.width;
    draw_ellipse(c, centre(36, 6), 0.055 * scale_px, 0.022 * scale_px, tone - 90, 0.8);
    draw_ellipse(c, centre(42, 6), 0.055 * scale_px, 0.022 * scale_px, tone - 90, 0.8);
    draw_ellipse(c, centre(48, 12), 0.11 * scale_px, 0.035 * scale_px, tone - 45, 0.7);

    const double hair = rng.uniform(25, 65);
    const double thickness = rng.uniform(0.030, 0.042) * scale_px;
    draw_eyebrow(c, lm, 17, true, rng, hair, thickness);
    draw_eyebrow(c, lm, 22, false, rng, hair, thickness);

    // Per-subject exposure/contrast, then sensor noise.
    const double gain = rng.uniform(0.5, 1.0);
    const double offset = rng.uniform(-15, 15);
    for (double& v : c.px) {
        v = tone + offset + gain * (v - tone) + 1.5 * rng.normal();
        v = std::clamp(v, 0.0, 255.0);
    }
    return {GrayImage(w, h, std::move(c.px)), lm, std::move(name)};
}

std::string indexed_name(const char* prefix, int i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s_%04d", prefix, i);
    return buf;
}

}  // namespace

void BlendSpec::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "blend alpha must lie in [0, 1]");
    }
}

SimilarityTransform SimilarityTransform::inverse() const {
    const double d = a * a + b * b;
    SimilarityTransform inv{a / d, -b / d, 0.0, 0.0};
    const Point2 t = inv.apply({tx, ty});
    inv.tx = -t.x;
    inv.ty = -t.y;
    return inv;
}

SimilarityTransform fit_similarity(const LandmarkSet& from, const LandmarkSet& to) {
    const Point2 cf = centroid(from);
    const Point2 ct = centroid(to);
    double sxx = 0, syy = 0, sxy = 0, num_a = 0, num_b = 0;
    for (int i = 0; i < kLandmarkCount; ++i) {
        const double x = from.points[i].x - cf.x;
        const double y = from.points[i].y - cf.y;
        const double u = to.points[i].x - ct.x;
        const double v = to.points[i].y - ct.y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
        num_a += x * u + y * v;
        num_b += x * v - y * u;
    }
    const double trace = sxx + syy;
    if (trace <= 0.0 || sxx * syy - sxy * sxy <= 1e-12 * trace * trace) {
        throw Error(ErrorCode::DegenerateAlignment, "source landmarks are collinear");
    }
    SimilarityTransform t{num_a / trace, num_b / trace, 0.0, 0.0};
    const Point2 moved = t.apply(cf);
    t.tx = ct.x - moved.x;
    t.ty = ct.y - moved.y;
    return t;
}

GrayImage warp(const GrayImage& img, const SimilarityTransform& to_source, int width, int height) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const Point2 s = to_source.apply({static_cast<double>(x), static_cast<double>(y)});
            out.push_back(std::clamp(sample_bilinear_clamped(img, s.x, s.y), 0.0, 255.0));
        }
    }
    return GrayImage(width, height, std::move(out));
}

MorphResult blend_morph(const GrayImage& a, const LandmarkSet& lm_a, const GrayImage& b,
                        const LandmarkSet& lm_b, const BlendSpec& spec) {
    spec.validate();
    GrayImage aligned = b;
    LandmarkSet aligned_lm = lm_b;
    if (spec.alignment == Alignment::None) {
        if (a.width() != b.width() || a.height() != b.height()) {
            throw Error(ErrorCode::DimensionMismatch, "unaligned blend needs equal image sizes");
        }
    } else {
        const SimilarityTransform t = fit_similarity(lm_b, lm_a);
        aligned = warp(b, t.inverse(), a.width(), a.height());
        for (auto& p : aligned_lm.points) {
            p = t.apply(p);
        }
    }

    const double wa = spec.alpha;
    const double wb = 1.0 - spec.alpha;
    std::vector<double> px(a.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
        px[i] = std::clamp(wa * a.pixels()[i] + wb * aligned.pixels()[i], 0.0, 255.0);
    }
    LandmarkSet lm;
    for (int i = 0; i < kLandmarkCount; ++i) {
        lm.points[i] = {wa * lm_a.points[i].x + wb * aligned_lm.points[i].x,
                        wa * lm_a.points[i].y + wb * aligned_lm.points[i].y};
    }
    return {GrayImage(a.width(), a.height(), std::move(px)), lm};
}

GrayImage gaussian_blur_circular(const GrayImage& img, double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorCode::InvalidArgument, "sigma must be finite and >= 0");
    }
    if (sigma == 0.0) {
        return img;
    }
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double v = std::exp(-(k * k) / (2.0 * sigma * sigma));
        kernel[static_cast<std::size_t>(k + radius)] = v;
        sum += v;
    }
    for (double& v : kernel) {
        v /= sum;
    }
    std::vector<double> px(img.pixels().begin(), img.pixels().end());
    px = blur_rows_circular(px, img.width(), img.height(), kernel, true);
    px = blur_rows_circular(px, img.width(), img.height(), kernel, false);
    for (double& v : px) {
        v = std::clamp(v, 0.0, 255.0);
    }
    return GrayImage(img.width(), img.height(), std::move(px));
}

LandmarkSet template_landmarks(const SynthSize& size) {
    LandmarkSet lm = unit_template();
    for (auto& p : lm.points) {
        p = {p.x * size.width, p.y * size.height};
    }
    return lm;
}

SyntheticDataset make_synthetic_pair_set(int n, std::uint64_t seed, SynthSize size) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "synthetic set needs at least 2 subjects");
    }
    if (size.width < 64 || size.height < 64) {
        throw Error(ErrorCode::InvalidArgument, "synthetic images must be at least 64x64");
    }
    const LandmarkSet tmpl = template_landmarks(size);
    SyntheticDataset ds;
    for (int i = 0; i < n; ++i) {
        Rng rng(seed + static_cast<std::uint64_t>(i));
        ds.bonafide.push_back(make_bonafide(size, tmpl, rng, indexed_name("bonafide", i)));
    }
    for (int k = 0; k < n / 2; ++k) {
        Rng rng(detail::splitmix64(seed) + static_cast<std::uint64_t>(n + k));
        const SyntheticSample& a = ds.bonafide[static_cast<std::size_t>(2 * k)];
        const SyntheticSample& b = ds.bonafide[static_cast<std::size_t>(2 * k + 1)];
        // Detector noise on the second subject's landmarks before alignment.
        LandmarkSet jittered = b.landmarks;
        for (auto& p : jittered.points) {
            p.x += rng.uniform(-2.0, 2.0);
            p.y += rng.uniform(-2.0, 2.0);
        }
        MorphResult m = blend_morph(a.image, a.landmarks, b.image, jittered,
                                    {0.5, Alignment::Similarity});
        ds.morphs.push_back({std::move(m.image), m.landmarks, indexed_name("morph", k)});
    }
    return ds;
}

std::filesystem::path write_synthetic_dataset(const SyntheticDataset& ds,
                                              const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    }
    const auto manifest_path = dir / "manifest.csv";
    std::ofstream manifest(manifest_path);
    if (!manifest) {
        throw Error(ErrorCode::IoError, "cannot write " + manifest_path.string());
    }
    manifest << "image_path,label,dataset_tag,morph_tool_tag,landmark_path\n";
    auto emit = [&](const SyntheticSample& s, const char* label, const char* tool) {
        write_gray_png(dir / (s.name + ".png"), s.image);
        std::ofstream pts(dir / (s.name + ".pts"));
        pts << format_pts(s.landmarks);
        if (!pts) {
            throw Error(ErrorCode::IoError, "cannot write landmarks for " + s.name);
        }
        manifest << s.name << ".png," << label << ",synthetic," << tool << ',' << s.name
                 << ".pts\n";
    };
    for (const auto& s : ds.bonafide) {
        emit(s, "bonafide", "");
    }
    for (const auto& s : ds.morphs) {
        emit(s, "morph", "alpha_blend");
    }
    return manifest_path;
}

}  // namespace browmad
