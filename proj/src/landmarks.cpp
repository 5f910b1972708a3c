#include "browmad/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "browmad/error.hpp"

namespace browmad {
namespace {

std::string trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

LandmarkSet from_points(const std::vector<Point2>& pts) {
    if (pts.size() != kLandmarkCount) {
        throw Error(ErrorCode::WrongPointCount,
                    "expected 68 landmarks, got " + std::to_string(pts.size()));
    }
    LandmarkSet lm;
    std::copy(pts.begin(), pts.end(), lm.points.begin());
    return lm;
}

LandmarkSet parse_pts(std::istream& in) {
    std::string line;
    long declared = -1;
    bool opened = false;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t == "{") {
            opened = true;
            break;
        }
        auto colon = t.find(':');
        if (colon == std::string::npos) {
            throw Error(ErrorCode::MalformedFile, "pts header line without ':': " + t);
        }
        std::string key = trim(std::string_view(t).substr(0, colon));
        std::string value = trim(std::string_view(t).substr(colon + 1));
        if (key == "n_points") {
            try {
                std::size_t used = 0;
                declared = std::stol(value, &used);
                if (used != value.size()) {
                    throw std::invalid_argument(value);
                }
            } catch (const std::exception&) {
                throw Error(ErrorCode::MalformedFile, "bad n_points value: " + value);
            }
        }
    }
    if (!opened) {
        throw Error(ErrorCode::MalformedFile, "pts file has no '{' block");
    }
    if (declared < 0) {
        throw Error(ErrorCode::MalformedFile, "pts file has no n_points header");
    }
    if (declared != kLandmarkCount) {
        throw Error(ErrorCode::WrongPointCount,
                    "expected n_points: 68, got " + std::to_string(declared));
    }

    std::vector<Point2> pts;
    bool closed = false;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t == "}") {
            closed = true;
            break;
        }
        std::istringstream row(t);
        Point2 p;
        std::string extra;
        if (!(row >> p.x >> p.y) || (row >> extra) || !std::isfinite(p.x) ||
            !std::isfinite(p.y)) {
            throw Error(ErrorCode::MalformedFile, "bad pts coordinate line: " + t);
        }
        pts.push_back(p);
    }
    if (!closed) {
        throw Error(ErrorCode::MalformedFile, "pts file has no closing '}'");
    }
    if (static_cast<long>(pts.size()) != declared) {
        throw Error(ErrorCode::MalformedFile, "pts file declares " + std::to_string(declared) +
                                                  " points but lists " +
                                                  std::to_string(pts.size()));
    }
    return from_points(pts);
}

LandmarkSet parse_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedFile, std::string("landmark JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw Error(ErrorCode::MalformedFile, "landmark JSON must be a top-level array");
    }
    std::vector<Point2> pts;
    for (const auto& item : doc) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
            throw Error(ErrorCode::MalformedFile, "landmark JSON entries must be [x, y] pairs");
        }
        pts.push_back({item[0].get<double>(), item[1].get<double>()});
    }
    return from_points(pts);
}

// Half away from zero.
int round_coord(double v) { return static_cast<int>(std::lround(v)); }

}  // namespace

LandmarkSet parse_landmarks(std::istream& source, LandmarkFormat format) {
    return format == LandmarkFormat::Pts ? parse_pts(source) : parse_json(source);
}

LandmarkFormat format_for_path(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".json" ? LandmarkFormat::Json : LandmarkFormat::Pts;
}

LandmarkSet load_landmarks(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::MissingFile, "cannot open landmarks " + path.string());
    }
    return parse_landmarks(in, format_for_path(path));
}

std::string format_pts(const LandmarkSet& lm) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << "version: 1\nn_points: " << kLandmarkCount << "\n{\n";
    for (const Point2& p : lm.points) {
        out << p.x << ' ' << p.y << '\n';
    }
    out << "}\n";
    return out.str();
}

CropRect eyebrow_rect(const LandmarkSet& lm, int img_w, int img_h, double margin) {
    if (!(margin >= 0.0 && margin < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "margin must lie in [0, 1)");
    }
    if (img_w < 1 || img_h < 1) {
        throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
    }
    double xmin = std::numeric_limits<double>::infinity();
    double ymin = xmin;
    double xmax = -xmin;
    double ymax = -xmin;
    for (int i = kEyebrowFirst; i <= kEyebrowLast; ++i) {
        const Point2& p = lm.points[i];
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double dx = margin * (xmax - xmin);
    const double dy = margin * (ymax - ymin);

    // Rounded edges, widened just enough that no eyebrow point falls outside.
    int x0 = std::min(round_coord(xmin - dx), static_cast<int>(std::floor(xmin)));
    int y0 = std::min(round_coord(ymin - dy), static_cast<int>(std::floor(ymin)));
    int x1 = std::max(round_coord(xmax + dx), static_cast<int>(std::ceil(xmax)));
    int y1 = std::max(round_coord(ymax + dy), static_cast<int>(std::ceil(ymax)));

    x0 = std::clamp(x0, 0, img_w);
    x1 = std::clamp(x1, 0, img_w);
    y0 = std::clamp(y0, 0, img_h);
    y1 = std::clamp(y1, 0, img_h);

    CropRect rect{x0, y0, x1 - x0, y1 - y0};
    if (rect.width < kMinCropWidth || rect.height < kMinCropHeight) {
        throw Error(ErrorCode::DegenerateRegion,
                    "eyebrow region " + std::to_string(rect.width) + "x" +
                        std::to_string(rect.height) + " is below the 8x4 minimum");
    }
    return rect;
}

GrayImage crop(const GrayImage& img, const CropRect& rect) {
    if (rect.width < 1 || rect.height < 1 || rect.x0 < 0 || rect.y0 < 0 ||
        rect.x0 + rect.width > img.width() || rect.y0 + rect.height > img.height()) {
        throw Error(ErrorCode::OutOfBounds, "crop rectangle exceeds the image");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(rect.width) * rect.height);
    for (int y = rect.y0; y < rect.y0 + rect.height; ++y) {
        for (int x = rect.x0; x < rect.x0 + rect.width; ++x) {
            out.push_back(img.at(x, y));
        }
    }
    return GrayImage(rect.width, rect.height, std::move(out));
}

}  // namespace browmad
