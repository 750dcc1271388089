#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noisyrgbd/core/rng.hpp"
#include "noisyrgbd/core/severity.hpp"
#include "noisyrgbd/core/types.hpp"
#include "noisyrgbd/io/image_codec.hpp"
#include "noisyrgbd/perturb/filters.hpp"
#include "noisyrgbd/perturb/procedural.hpp"

namespace noisyrgbd {

/// One RGB imaging perturbation of a stream.
struct RgbPerturbation {
    RgbKind kind = RgbKind::GaussianNoise;
    SeverityLevel level{1};
    Mode mode = Mode::Static;
};

// Lane salts so the independent random purposes of one op never share draws.
namespace rgb_detail {
inline constexpr std::uint64_t kLanePixels = 1;
inline constexpr std::uint64_t kLaneAngle = 2;
inline constexpr std::uint64_t kLaneLayer = 3;
inline constexpr std::uint64_t kLaneJitter = 4;
}  // namespace rgb_detail

// ---------------------------------------------------------------------------
// Noise
// ---------------------------------------------------------------------------

inline RgbImage rgb_gaussian_noise(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    const double scale = gaussian_noise_scale(level);
    RngStream rng(key.child(rgb_detail::kLanePixels));
    FloatImage f = to_working(img);
    for (float& v : f.data) v = static_cast<float>(v + rng.gaussian(0.0, scale));
    return from_working(f);
}

inline RgbImage rgb_shot_noise(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    const double photons = shot_noise_photons(level);
    RngStream rng(key.child(rgb_detail::kLanePixels));
    FloatImage f = to_working(img);
    for (float& v : f.data)
        v = static_cast<float>(static_cast<double>(rng.poisson(v * photons)) / photons);
    return from_working(f);
}

inline RgbImage rgb_impulse_noise(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    const double amount = impulse_noise_amount(level);
    RngStream rng(key.child(rgb_detail::kLanePixels));
    RgbImage out = img;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const double u = rng.next_double();
            if (u < amount / 2.0) {
                out.at(x, y, 0) = out.at(x, y, 1) = out.at(x, y, 2) = 0;
            } else if (u < amount) {
                out.at(x, y, 0) = out.at(x, y, 1) = out.at(x, y, 2) = 255;
            }
        }
    return out;
}

inline RgbImage rgb_speckle_noise(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    const double rho = speckle_noise_scale(level);
    RngStream rng(key.child(rgb_detail::kLanePixels));
    FloatImage f = to_working(img);
    for (float& v : f.data) v = static_cast<float>(v * (1.0 + rho * rng.gaussian()));
    return from_working(f);
}

// ---------------------------------------------------------------------------
// Blur
// ---------------------------------------------------------------------------

inline RgbImage rgb_gaussian_blur(const RgbImage& img, SeverityLevel level) {
    const double sigma = gaussian_blur_sigma(level);
    if (2 * filt::gaussian_radius(sigma) + 1 > std::min(img.width, img.height))
        throw ParameterError("gaussian blur kernel larger than image");
    return from_working(gaussian_blur(to_working(img), sigma));
}

inline RgbImage rgb_defocus_blur(const RgbImage& img, SeverityLevel level) {
    const auto p = defocus_blur_params(level);
    return from_working(convolve(to_working(img), disc_kernel(p.radius, p.alias_blur)));
}

inline RgbImage rgb_motion_blur(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    const auto p = motion_blur_params(level);
    RngStream rng(key.child(rgb_detail::kLaneAngle));
    const double angle = rng.uniform(0.0, std::numbers::pi);  // one direction per image
    return from_working(convolve(to_working(img), line_kernel(p.radius, p.sigma, angle)));
}

inline RgbImage rgb_glass_blur(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    const auto p = glass_blur_params(level);
    RngStream rng(key.child(rgb_detail::kLanePixels));
    FloatImage f = to_working(img);
    for (int it = 0; it < p.iterations; ++it)
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x) {
                const int dx = static_cast<int>(rng.uniform_range(-p.max_delta, p.max_delta));
                const int dy = static_cast<int>(rng.uniform_range(-p.max_delta, p.max_delta));
                const int sx = std::clamp(x + dx, 0, f.width - 1);
                const int sy = std::clamp(y + dy, 0, f.height - 1);
                for (int c = 0; c < 3; ++c) std::swap(f.at(x, y, c), f.at(sx, sy, c));
            }
    return from_working(gaussian_blur(f, p.sigma));
}

// ---------------------------------------------------------------------------
// Environmental interference
// ---------------------------------------------------------------------------

/// Snow layer construction: Gaussian field (mean, std) -> central zoom by
/// `scale` (enlarges flake blobs) -> threshold (values below it are cleared)
/// -> directional blur (radius, std) smearing flakes into streaks. The layer
/// is added on top of a whitened base mixed at `blend_ratio`.
inline RgbImage rgb_snow(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    const auto p = snow_params(level);
    RngStream layer_rng(key.child(rgb_detail::kLaneLayer));
    Plane layer = gaussian_field(img.width, img.height, p.mean, p.stddev, layer_rng);
    layer = center_zoom(layer, p.scale);
    for (float& v : layer.data) v = v < static_cast<float>(p.threshold) ? 0.0f : v;

    RngStream angle_rng(key.child(rgb_detail::kLaneAngle));
    const double angle = angle_rng.uniform(-135.0, -45.0) * std::numbers::pi / 180.0;
    if (2 * std::max(1, static_cast<int>(std::ceil(p.blur_radius))) + 1 <=
        std::min(img.width, img.height))
        layer = convolve(layer, line_kernel(p.blur_radius, p.blur_sigma, angle));
    for (float& v : layer.data) v = clamp01(v);

    FloatImage f = to_working(img);
    FloatImage out(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const float lum = (f.at(x, y, 0) + f.at(x, y, 1) + f.at(x, y, 2)) / 3.0f;
            const float whitened = std::min(1.0f, 1.5f * lum + 0.5f);
            const float snow = layer.at(x, y);
            for (int c = 0; c < 3; ++c) {
                const float base = static_cast<float>(p.blend_ratio) * f.at(x, y, c) +
                                   static_cast<float>(1.0 - p.blend_ratio) *
                                       std::max(f.at(x, y, c), whitened);
                out.at(x, y, c) = base + snow;
            }
        }
    return from_working(out);
}

inline RgbImage rgb_frost(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    const auto p = frost_params(level);
    RngStream rng(key.child(rgb_detail::kLaneLayer));
    // Ridged fractal gives icy vein structure.
    Plane field = fractal_field(img.width, img.height, 1.8, rng);
    for (float& v : field.data) v = 1.0f - std::abs(2.0f * v - 1.0f);

    FloatImage f = to_working(img);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            for (int c = 0; c < 3; ++c)
                f.at(x, y, c) = static_cast<float>(p.intensity) * f.at(x, y, c) +
                                static_cast<float>(p.texture_influence) * field.at(x, y);
    return from_working(f);
}

/// Fog weight per pixel: w = t*p / (1 + t*p) with p a smoothed plasma field,
/// so w -> 0 as thickness -> 0 and w < 1 everywhere.
inline RgbImage rgb_fog_with(const RgbImage& img, const FogParams& p, const RngKey& key) {
    constexpr float kFogGray = 0.7f;
    RngStream rng(key.child(rgb_detail::kLaneLayer));
    Plane field = fractal_field(img.width, img.height, p.smoothness, rng);

    FloatImage f = to_working(img);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const double tp = p.thickness * field.at(x, y);
            const float w = static_cast<float>(tp / (1.0 + tp));
            for (int c = 0; c < 3; ++c)
                f.at(x, y, c) = (1.0f - w) * f.at(x, y, c) + w * kFogGray;
        }
    return from_working(f);
}

inline RgbImage rgb_fog(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    return rgb_fog_with(img, fog_params(level), key);
}

inline RgbImage rgb_spatter(const RgbImage& img, SeverityLevel level, const RngKey& key) {
    const auto p = spatter_params(level);
    constexpr float kSpotColor = 0.05f;
    RngStream rng(key.child(rgb_detail::kLaneLayer));

    // Hard mask: the smoothed Gaussian field above `threshold` marks perturbed
    // regions (1), everything else stays transparent (0).
    auto spot_layer = [&](RngStream& stream) {
        Plane field = gaussian_field(img.width, img.height, p.mean, p.stddev, stream);
        return gaussian_blur(field, p.sigma);
    };
    Plane smooth = spot_layer(rng);
    if (p.complexity > 0) {
        // Extra streak pass: a second independent layer joins the mask.
        RngStream rng2(key.child(rgb_detail::kLaneLayer + 16));
        Plane second = spot_layer(rng2);
        for (std::size_t i = 0; i < smooth.data.size(); ++i)
            smooth.data[i] = std::max(smooth.data[i], second.data[i]);
    }

    FloatImage f = to_working(img);
    const float thr = static_cast<float>(p.threshold);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const float v = smooth.at(x, y);
            if (v <= thr) continue;  // mask = 0, transparent
            const float opacity = clamp01(static_cast<float>(p.scale) * (v - thr) /
                                          std::max(1e-6f, 1.0f - thr));
            for (int c = 0; c < 3; ++c)
                f.at(x, y, c) = (1.0f - opacity) * f.at(x, y, c) + opacity * kSpotColor;
        }
    return from_working(f);
}

// ---------------------------------------------------------------------------
// Post-processing
// ---------------------------------------------------------------------------

inline RgbImage rgb_brightness(const RgbImage& img, SeverityLevel level) {
    const float offset = static_cast<float>(brightness_ratio(level));
    FloatImage f = to_working(img);
    for (float& v : f.data) v += offset;
    return from_working(f);
}

inline RgbImage rgb_contrast(const RgbImage& img, SeverityLevel level) {
    const float beta = static_cast<float>(contrast_beta(level));
    FloatImage f = to_working(img);
    double mean[3] = {0.0, 0.0, 0.0};
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            for (int c = 0; c < 3; ++c) mean[c] += f.at(x, y, c);
    const double n = static_cast<double>(f.width) * f.height;
    for (double& m : mean) m /= n;
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            for (int c = 0; c < 3; ++c) {
                const float J = static_cast<float>(mean[c]);
                f.at(x, y, c) = beta * (f.at(x, y, c) - J) + J;
            }
    return from_working(f);
}

inline RgbImage rgb_jpeg(const RgbImage& img, SeverityLevel level) {
    return jpeg_roundtrip(img, jpeg_quality(level));
}

inline RgbImage rgb_pixelate(const RgbImage& img, SeverityLevel level) {
    const double factor = pixelate_factor(level);
    const int nw = std::max(1, static_cast<int>(std::round(img.width * factor)));
    const int nh = std::max(1, static_cast<int>(std::round(img.height * factor)));
    FloatImage f = to_working(img);
    return from_working(nearest_resize(box_resize(f, nw, nh), img.width, img.height));
}

// ---------------------------------------------------------------------------
// Group entry points and the per-frame dispatcher
// ---------------------------------------------------------------------------

inline RgbImage add_noise(const RgbImage& img, RgbKind kind, SeverityLevel level,
                          const RngKey& key) {
    if (img.empty()) throw ParameterError("cannot perturb an empty image");
    switch (kind) {
        case RgbKind::GaussianNoise: return rgb_gaussian_noise(img, level, key);
        case RgbKind::ShotNoise: return rgb_shot_noise(img, level, key);
        case RgbKind::ImpulseNoise: return rgb_impulse_noise(img, level, key);
        case RgbKind::SpeckleNoise: return rgb_speckle_noise(img, level, key);
        default: throw ConfigError("add_noise: " + to_string(kind) + " is not a noise kind");
    }
}

inline RgbImage apply_blur(const RgbImage& img, RgbKind kind, SeverityLevel level,
                           const RngKey& key) {
    switch (kind) {
        case RgbKind::GaussianBlur: return rgb_gaussian_blur(img, level);
        case RgbKind::DefocusBlur: return rgb_defocus_blur(img, level);
        case RgbKind::MotionBlur: return rgb_motion_blur(img, level, key);
        case RgbKind::GlassBlur: return rgb_glass_blur(img, level, key);
        default: throw ConfigError("apply_blur: " + to_string(kind) + " is not a blur kind");
    }
}

inline RgbImage apply_environment(const RgbImage& img, RgbKind kind, SeverityLevel level,
                                  const RngKey& key) {
    switch (kind) {
        case RgbKind::Snow: return rgb_snow(img, level, key);
        case RgbKind::Frost: return rgb_frost(img, level, key);
        case RgbKind::Fog: return rgb_fog(img, level, key);
        case RgbKind::Spatter: return rgb_spatter(img, level, key);
        default:
            throw ConfigError("apply_environment: " + to_string(kind) +
                              " is not an environmental kind");
    }
}

inline RgbImage apply_postprocess(const RgbImage& img, RgbKind kind, SeverityLevel level) {
    switch (kind) {
        case RgbKind::Brightness: return rgb_brightness(img, level);
        case RgbKind::Contrast: return rgb_contrast(img, level);
        case RgbKind::Jpeg: return rgb_jpeg(img, level);
        case RgbKind::Pixelate: return rgb_pixelate(img, level);
        default:
            throw ConfigError("apply_postprocess: " + to_string(kind) +
                              " is not a post-processing kind");
    }
}

inline RgbImage apply_rgb_kind(const RgbImage& img, RgbKind kind, SeverityLevel level,
                               const RngKey& key) {
    switch (kind) {
        case RgbKind::GaussianNoise:
        case RgbKind::ShotNoise:
        case RgbKind::ImpulseNoise:
        case RgbKind::SpeckleNoise: return add_noise(img, kind, level, key);
        case RgbKind::GaussianBlur:
        case RgbKind::DefocusBlur:
        case RgbKind::MotionBlur:
        case RgbKind::GlassBlur: return apply_blur(img, kind, level, key);
        case RgbKind::Snow:
        case RgbKind::Frost:
        case RgbKind::Fog:
        case RgbKind::Spatter: return apply_environment(img, kind, level, key);
        case RgbKind::Brightness:
        case RgbKind::Contrast:
        case RgbKind::Jpeg:
        case RgbKind::Pixelate: return apply_postprocess(img, kind, level);
    }
    throw ConfigError("invalid RgbKind");
}

/// Severity actually applied on this frame. Static mode keeps the configured
/// level; dynamic mode resamples uniformly from {level-1, level, level+1}
/// clamped to [1,5].
inline SeverityLevel effective_level(const RgbPerturbation& spec, const RngKey& frame_key) {
    if (spec.mode == Mode::Static) return spec.level;
    RngStream rng(frame_key.child(rgb_detail::kLaneJitter));
    const int jitter = static_cast<int>(rng.uniform_range(-1, 1));
    return SeverityLevel(std::clamp(spec.level.value + jitter, 1, 5));
}

/// Applies one RGB perturbation to one frame. `frame_key` must already carry
/// the frame index and op id; stochastic draws are re-keyed per frame in both
/// modes.
inline RgbImage apply_rgb(const RgbImage& img, const RgbPerturbation& spec,
                          const RngKey& frame_key) {
    return apply_rgb_kind(img, spec.kind, effective_level(spec, frame_key), frame_key);
}

}  // namespace noisyrgbd
