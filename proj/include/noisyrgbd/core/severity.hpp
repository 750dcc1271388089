#pragma once

#include <array>
#include <string>
#include <vector>

#include "noisyrgbd/core/error.hpp"
#include "noisyrgbd/core/types.hpp"

namespace noisyrgbd {

/// The 16 RGB imaging corruptions, grouped as noise, blur, environmental
/// interference and post-processing.
enum class RgbKind {
    GaussianNoise,
    ShotNoise,
    ImpulseNoise,
    SpeckleNoise,
    GaussianBlur,
    DefocusBlur,
    MotionBlur,
    GlassBlur,
    Snow,
    Frost,
    Fog,
    Spatter,
    Brightness,
    Contrast,
    Jpeg,
    Pixelate,
};

inline constexpr std::array<RgbKind, 16> kAllRgbKinds = {
    RgbKind::GaussianNoise, RgbKind::ShotNoise,  RgbKind::ImpulseNoise, RgbKind::SpeckleNoise,
    RgbKind::GaussianBlur,  RgbKind::DefocusBlur, RgbKind::MotionBlur,  RgbKind::GlassBlur,
    RgbKind::Snow,          RgbKind::Frost,       RgbKind::Fog,         RgbKind::Spatter,
    RgbKind::Brightness,    RgbKind::Contrast,    RgbKind::Jpeg,        RgbKind::Pixelate,
};

enum class DepthKind {
    GaussianNoise,
    EdgeErosion,
    RandomMissing,
    RangeClip,
};

inline constexpr std::array<DepthKind, 4> kAllDepthKinds = {
    DepthKind::GaussianNoise,
    DepthKind::EdgeErosion,
    DepthKind::RandomMissing,
    DepthKind::RangeClip,
};

inline std::string to_string(RgbKind kind) {
    switch (kind) {
        case RgbKind::GaussianNoise: return "gaussian_noise";
        case RgbKind::ShotNoise: return "shot_noise";
        case RgbKind::ImpulseNoise: return "impulse_noise";
        case RgbKind::SpeckleNoise: return "speckle_noise";
        case RgbKind::GaussianBlur: return "gaussian_blur";
        case RgbKind::DefocusBlur: return "defocus_blur";
        case RgbKind::MotionBlur: return "motion_blur";
        case RgbKind::GlassBlur: return "glass_blur";
        case RgbKind::Snow: return "snow";
        case RgbKind::Frost: return "frost";
        case RgbKind::Fog: return "fog";
        case RgbKind::Spatter: return "spatter";
        case RgbKind::Brightness: return "brightness";
        case RgbKind::Contrast: return "contrast";
        case RgbKind::Jpeg: return "jpeg";
        case RgbKind::Pixelate: return "pixelate";
    }
    throw ConfigError("invalid RgbKind");
}

inline std::string to_string(DepthKind kind) {
    switch (kind) {
        case DepthKind::GaussianNoise: return "gaussian_noise";
        case DepthKind::EdgeErosion: return "edge_erosion";
        case DepthKind::RandomMissing: return "random_missing";
        case DepthKind::RangeClip: return "range_clip";
    }
    throw ConfigError("invalid DepthKind");
}

inline RgbKind rgb_kind_from_string(const std::string& s) {
    for (RgbKind k : kAllRgbKinds)
        if (to_string(k) == s) return k;
    throw ConfigError("unknown RGB perturbation kind '" + s + "'");
}

inline DepthKind depth_kind_from_string(const std::string& s) {
    for (DepthKind k : kAllDepthKinds)
        if (to_string(k) == s) return k;
    throw ConfigError("unknown depth perturbation kind '" + s + "'");
}

// ---------------------------------------------------------------------------
// Per-kind parameter records, one row per severity level 1..5.
// ---------------------------------------------------------------------------

struct SnowParams {
    double mean, stddev, scale, threshold, blur_radius, blur_sigma, blend_ratio;
};

struct FrostParams {
    double intensity, texture_influence;
};

struct FogParams {
    double thickness, smoothness;
};

struct SpatterParams {
    double mean, stddev, sigma, threshold, scale;
    int complexity;
};

struct DefocusBlurParams {
    double radius, alias_blur;
};

struct GlassBlurParams {
    double sigma;
    int max_delta, iterations;
};

struct MotionBlurParams {
    double radius, sigma;
};

struct RangeClipParams {
    double min_depth, max_depth;
};

namespace severity_detail {

inline int index(SeverityLevel level) { return level.value - 1; }

inline constexpr std::array<SnowParams, 5> kSnow = {{
    {0.1, 0.3, 3.0, 0.5, 10.0, 4.0, 0.8},
    {0.2, 0.3, 2.0, 0.5, 12.0, 4.0, 0.7},
    {0.55, 0.3, 4.0, 0.9, 12.0, 8.0, 0.7},
    {0.55, 0.3, 4.5, 0.85, 12.0, 8.0, 0.65},
    {0.55, 0.3, 2.5, 0.85, 12.0, 12.0, 0.55},
}};

inline constexpr std::array<FrostParams, 5> kFrost = {{
    {1.00, 0.40}, {0.80, 0.60}, {0.70, 0.70}, {0.65, 0.70}, {0.60, 0.75},
}};

inline constexpr std::array<FogParams, 5> kFog = {{
    {1.5, 2.0}, {2.0, 2.0}, {2.5, 1.7}, {2.5, 1.5}, {3.0, 1.4},
}};

inline constexpr std::array<SpatterParams, 5> kSpatter = {{
    {0.65, 0.3, 4.0, 0.69, 0.6, 0},
    {0.65, 0.3, 3.0, 0.68, 0.6, 0},
    {0.65, 0.3, 2.0, 0.68, 0.5, 0},
    {0.65, 0.3, 1.0, 0.65, 1.5, 1},
    {0.67, 0.4, 1.0, 0.65, 1.5, 1},
}};

inline constexpr std::array<DefocusBlurParams, 5> kDefocus = {{
    {3.0, 0.1}, {4.0, 0.5}, {6.0, 0.5}, {8.0, 0.5}, {10.0, 0.5},
}};

inline constexpr std::array<GlassBlurParams, 5> kGlass = {{
    {0.7, 1, 2}, {0.9, 2, 1}, {1.0, 2, 3}, {1.1, 3, 2}, {1.5, 4, 2},
}};

inline constexpr std::array<MotionBlurParams, 5> kMotionBlur = {{
    {10.0, 3.0}, {15.0, 5.0}, {15.0, 8.0}, {15.0, 12.0}, {20.0, 15.0},
}};

inline constexpr std::array<double, 5> kGaussianBlurSigma = {1.0, 2.0, 3.0, 4.0, 6.0};
inline constexpr std::array<double, 5> kGaussianNoiseScale = {0.08, 0.12, 0.18, 0.26, 0.38};
inline constexpr std::array<double, 5> kShotPhotons = {60.0, 25.0, 12.0, 5.0, 3.0};
inline constexpr std::array<double, 5> kImpulseAmount = {0.03, 0.06, 0.09, 0.17, 0.27};
inline constexpr std::array<double, 5> kSpeckleScale = {0.15, 0.2, 0.35, 0.45, 0.6};
inline constexpr std::array<double, 5> kBrightnessRatio = {0.1, 0.2, 0.3, 0.4, 0.5};
inline constexpr std::array<double, 5> kContrastBeta = {0.40, 0.30, 0.20, 0.10, 0.05};
inline constexpr std::array<int, 5> kJpegQuality = {25, 18, 15, 10, 7};
inline constexpr std::array<double, 5> kPixelateFactor = {0.60, 0.50, 0.40, 0.30, 0.25};

inline constexpr std::array<double, 5> kDepthNoiseScale = {0.1, 0.2, 0.3, 0.4, 0.5};
inline constexpr std::array<double, 5> kEdgeErosionRate = {0.015, 0.020, 0.025, 0.03, 0.035};
inline constexpr std::array<double, 5> kMissingRatePercent = {10.0, 15.0, 20.0, 25.0, 30.0};

inline constexpr std::array<RangeClipParams, 5> kRangeClip = {{
    {0.2, 4.4}, {0.3, 4.2}, {0.4, 4.0}, {0.5, 3.8}, {0.6, 3.6},
}};

}  // namespace severity_detail

inline SnowParams snow_params(SeverityLevel l) { return severity_detail::kSnow[severity_detail::index(l)]; }
inline FrostParams frost_params(SeverityLevel l) { return severity_detail::kFrost[severity_detail::index(l)]; }
inline FogParams fog_params(SeverityLevel l) { return severity_detail::kFog[severity_detail::index(l)]; }
inline SpatterParams spatter_params(SeverityLevel l) { return severity_detail::kSpatter[severity_detail::index(l)]; }
inline DefocusBlurParams defocus_blur_params(SeverityLevel l) { return severity_detail::kDefocus[severity_detail::index(l)]; }
inline GlassBlurParams glass_blur_params(SeverityLevel l) { return severity_detail::kGlass[severity_detail::index(l)]; }
inline MotionBlurParams motion_blur_params(SeverityLevel l) { return severity_detail::kMotionBlur[severity_detail::index(l)]; }
inline double gaussian_blur_sigma(SeverityLevel l) { return severity_detail::kGaussianBlurSigma[severity_detail::index(l)]; }
inline double gaussian_noise_scale(SeverityLevel l) { return severity_detail::kGaussianNoiseScale[severity_detail::index(l)]; }
inline double shot_noise_photons(SeverityLevel l) { return severity_detail::kShotPhotons[severity_detail::index(l)]; }
inline double impulse_noise_amount(SeverityLevel l) { return severity_detail::kImpulseAmount[severity_detail::index(l)]; }
inline double speckle_noise_scale(SeverityLevel l) { return severity_detail::kSpeckleScale[severity_detail::index(l)]; }
inline double brightness_ratio(SeverityLevel l) { return severity_detail::kBrightnessRatio[severity_detail::index(l)]; }
inline double contrast_beta(SeverityLevel l) { return severity_detail::kContrastBeta[severity_detail::index(l)]; }
inline int jpeg_quality(SeverityLevel l) { return severity_detail::kJpegQuality[severity_detail::index(l)]; }
inline double pixelate_factor(SeverityLevel l) { return severity_detail::kPixelateFactor[severity_detail::index(l)]; }

inline double depth_noise_scale(SeverityLevel l) { return severity_detail::kDepthNoiseScale[severity_detail::index(l)]; }
inline double edge_erosion_rate(SeverityLevel l) { return severity_detail::kEdgeErosionRate[severity_detail::index(l)]; }
/// Missing rate as listed in the configuration table, i.e. percent.
inline double random_missing_percent(SeverityLevel l) { return severity_detail::kMissingRatePercent[severity_detail::index(l)]; }
inline RangeClipParams range_clip_params(SeverityLevel l) { return severity_detail::kRangeClip[severity_detail::index(l)]; }

/// Flat view of one kind's parameters at one level, in table column order.
inline std::vector<double> severity_values(RgbKind kind, SeverityLevel level) {
    switch (kind) {
        case RgbKind::Snow: {
            auto p = snow_params(level);
            return {p.mean, p.stddev, p.scale, p.threshold, p.blur_radius, p.blur_sigma, p.blend_ratio};
        }
        case RgbKind::Frost: {
            auto p = frost_params(level);
            return {p.intensity, p.texture_influence};
        }
        case RgbKind::Fog: {
            auto p = fog_params(level);
            return {p.thickness, p.smoothness};
        }
        case RgbKind::Spatter: {
            auto p = spatter_params(level);
            return {p.mean, p.stddev, p.sigma, p.threshold, p.scale, static_cast<double>(p.complexity)};
        }
        case RgbKind::DefocusBlur: {
            auto p = defocus_blur_params(level);
            return {p.radius, p.alias_blur};
        }
        case RgbKind::GlassBlur: {
            auto p = glass_blur_params(level);
            return {p.sigma, static_cast<double>(p.max_delta), static_cast<double>(p.iterations)};
        }
        case RgbKind::MotionBlur: {
            auto p = motion_blur_params(level);
            return {p.radius, p.sigma};
        }
        case RgbKind::GaussianBlur: return {gaussian_blur_sigma(level)};
        case RgbKind::GaussianNoise: return {gaussian_noise_scale(level)};
        case RgbKind::ShotNoise: return {shot_noise_photons(level)};
        case RgbKind::ImpulseNoise: return {impulse_noise_amount(level)};
        case RgbKind::SpeckleNoise: return {speckle_noise_scale(level)};
        case RgbKind::Brightness: return {brightness_ratio(level)};
        case RgbKind::Contrast: return {contrast_beta(level)};
        case RgbKind::Jpeg: return {static_cast<double>(jpeg_quality(level))};
        case RgbKind::Pixelate: return {pixelate_factor(level)};
    }
    throw ConfigError("invalid RgbKind");
}

inline std::vector<double> severity_values(DepthKind kind, SeverityLevel level) {
    switch (kind) {
        case DepthKind::GaussianNoise: return {depth_noise_scale(level)};
        case DepthKind::EdgeErosion: return {edge_erosion_rate(level)};
        case DepthKind::RandomMissing: return {random_missing_percent(level)};
        case DepthKind::RangeClip: {
            auto p = range_clip_params(level);
            return {p.min_depth, p.max_depth};
        }
    }
    throw ConfigError("invalid DepthKind");
}

/// One documentation-dump row: a perturbation kind with its parameter names
/// and the five per-level value tuples.
struct SeverityRow {
    std::string kind;
    std::string parameters;
    std::array<std::vector<double>, 5> levels;
};

/// Full severity configuration, 16 RGB rows followed by 4 depth rows.
inline std::vector<SeverityRow> severity_table() {
    auto param_names = [](RgbKind kind) -> std::string {
        switch (kind) {
            case RgbKind::Snow: return "mean, std, scale, threshold, blur radius, blur std, blending ratio";
            case RgbKind::Frost: return "frost intensity, texture influence";
            case RgbKind::Fog: return "thickness, smoothness";
            case RgbKind::Spatter: return "mean, std, sigma, threshold, scaling factor, complexity";
            case RgbKind::DefocusBlur: return "kernel radius, alias blur";
            case RgbKind::GlassBlur: return "sigma, max delta, iterations";
            case RgbKind::MotionBlur: return "radius, sigma";
            case RgbKind::GaussianBlur: return "sigma";
            case RgbKind::GaussianNoise: return "noise scale";
            case RgbKind::ShotNoise: return "photon number";
            case RgbKind::ImpulseNoise: return "noise amount";
            case RgbKind::SpeckleNoise: return "noise scale";
            case RgbKind::Brightness: return "adjustment ratio";
            case RgbKind::Contrast: return "adjustment of pixel mean";
            case RgbKind::Jpeg: return "compression quality";
            case RgbKind::Pixelate: return "resize factor";
        }
        return {};
    };
    std::vector<SeverityRow> rows;
    for (RgbKind kind : kAllRgbKinds) {
        SeverityRow row{to_string(kind), param_names(kind), {}};
        for (int l = 1; l <= 5; ++l) row.levels[l - 1] = severity_values(kind, SeverityLevel(l));
        rows.push_back(std::move(row));
    }
    auto depth_param_names = [](DepthKind kind) -> std::string {
        switch (kind) {
            case DepthKind::GaussianNoise: return "noise scale";
            case DepthKind::EdgeErosion: return "erosion rate";
            case DepthKind::RandomMissing: return "missing rate (%)";
            case DepthKind::RangeClip: return "min depth, max depth";
        }
        return {};
    };
    for (DepthKind kind : kAllDepthKinds) {
        SeverityRow row{"depth_" + to_string(kind), depth_param_names(kind), {}};
        for (int l = 1; l <= 5; ++l) row.levels[l - 1] = severity_values(kind, SeverityLevel(l));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace noisyrgbd
