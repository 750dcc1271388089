#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "noisyrgbd/core/rng.hpp"
#include "noisyrgbd/core/severity.hpp"
#include "noisyrgbd/core/types.hpp"

namespace noisyrgbd {

/// One depth imaging perturbation of a stream.
struct DepthPerturbation {
    DepthKind kind = DepthKind::GaussianNoise;
    SeverityLevel level{1};
    Mode mode = Mode::Static;
};

namespace depth_detail {
inline constexpr std::uint64_t kLanePixels = 1;
inline constexpr std::uint64_t kLaneJitter = 4;
/// Smallest depth a perturbation may produce; keeps values positive.
inline constexpr float kMinDepth = 1e-4f;
}  // namespace depth_detail

/// Additive Gaussian noise in meters. VOID pixels pass through untouched;
/// noisy values are clamped below at a small positive epsilon.
inline DepthMap depth_gaussian_noise(const DepthMap& d, SeverityLevel level, const RngKey& key) {
    const double scale = depth_noise_scale(level);
    RngStream rng(key.child(depth_detail::kLanePixels));
    DepthMap out = d;
    for (float& v : out.data) {
        const double eta = rng.gaussian(0.0, scale);  // one draw per pixel, VOID included
        if (is_void(v)) continue;
        v = std::max(depth_detail::kMinDepth, static_cast<float>(v + eta));
    }
    return out;
}

namespace depth_detail {

/// Gradient magnitude by central differences, VOID treated as depth 0 so
/// hole boundaries also register as edges.
inline Plane gradient_magnitude(const DepthMap& d) {
    Plane mag(d.width, d.height, 0.0f);
    auto val = [&](int x, int y) {
        return d.at(std::clamp(x, 0, d.width - 1), std::clamp(y, 0, d.height - 1));
    };
    for (int y = 0; y < d.height; ++y)
        for (int x = 0; x < d.width; ++x) {
            const float gx = 0.5f * (val(x + 1, y) - val(x - 1, y));
            const float gy = 0.5f * (val(x, y + 1) - val(x, y - 1));
            mag.at(x, y) = std::sqrt(gx * gx + gy * gy);
        }
    return mag;
}

}  // namespace depth_detail

/// Voids a band of pixels around depth edges so that the erased fraction of
/// the whole image approximates the table erosion rate. Edges come from
/// gradient-magnitude thresholding at the 90th percentile; the band grows
/// outward from the edges (breadth-first), with the final partial ring chosen
/// at random.
inline DepthMap depth_edge_erosion(const DepthMap& d, SeverityLevel level, const RngKey& key) {
    const double rate = edge_erosion_rate(level);
    const std::size_t total = d.pixel_count();
    std::size_t target = static_cast<std::size_t>(std::llround(rate * static_cast<double>(total)));
    if (target == 0) return d;

    Plane mag = depth_detail::gradient_magnitude(d);
    std::vector<float> sorted(mag.data);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(0.9 * (sorted.size() - 1)),
                     sorted.end());
    const float threshold = sorted[static_cast<std::size_t>(0.9 * (sorted.size() - 1))];

    std::vector<std::int32_t> ring(total, -1);
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < total; ++i)
        if (mag.data[i] > threshold) {
            ring[i] = 0;
            frontier.push_back(i);
        }
    if (frontier.empty()) return d;  // no edges, nothing to erode

    DepthMap out = d;
    RngStream rng(key.child(depth_detail::kLanePixels));
    std::size_t erased = 0;
    std::int32_t level_id = 0;
    const int w = d.width, h = d.height;
    while (!frontier.empty() && erased < target) {
        // Erase this ring; shuffle so a partial take is a uniform subset.
        std::vector<std::size_t> ring_pixels = frontier;
        for (std::size_t i = ring_pixels.size(); i > 1; --i)
            std::swap(ring_pixels[i - 1], ring_pixels[rng.uniform_int(i)]);
        for (std::size_t idx : ring_pixels) {
            if (erased >= target) break;
            if (!is_void(out.data[idx])) {
                out.data[idx] = kVoidDepth;
                ++erased;
            }
        }
        if (erased >= target) break;
        // Grow the band by one 4-neighbourhood step.
        std::vector<std::size_t> next;
        for (std::size_t idx : frontier) {
            const int x = static_cast<int>(idx % static_cast<std::size_t>(w));
            const int y = static_cast<int>(idx / static_cast<std::size_t>(w));
            const int nx[4] = {x - 1, x + 1, x, x};
            const int ny[4] = {y, y, y - 1, y + 1};
            for (int k = 0; k < 4; ++k) {
                if (nx[k] < 0 || nx[k] >= w || ny[k] < 0 || ny[k] >= h) continue;
                const std::size_t nidx = static_cast<std::size_t>(ny[k]) * w + nx[k];
                if (ring[nidx] < 0) {
                    ring[nidx] = level_id + 1;
                    next.push_back(nidx);
                }
            }
        }
        frontier = std::move(next);
        ++level_id;
    }
    return out;
}

/// Voids axis-aligned rectangles (uniform centers, side lengths uniform in
/// [2%, 10%] of the corresponding image side) until the VOID fraction first
/// reaches `rate`.
inline DepthMap depth_random_missing_rate(const DepthMap& d, double rate, const RngKey& key) {
    if (rate < 0.0 || rate > 1.0) throw ParameterError("missing rate must be within [0,1]");
    const std::size_t total = d.pixel_count();
    if (total == 0) throw ParameterError("cannot perturb an empty depth map");

    DepthMap out = d;
    std::size_t voids = 0;
    for (float v : out.data)
        if (is_void(v)) ++voids;
    const double target = rate * static_cast<double>(total);
    if (static_cast<double>(voids) >= target) return out;

    if (std::llround(0.10 * d.width) < 1 || std::llround(0.10 * d.height) < 1)
        throw ParameterError("image too small for rectangle sampling; missing rate unreachable");

    RngStream rng(key.child(depth_detail::kLanePixels));
    while (static_cast<double>(voids) < target) {
        const int cx = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d.width)));
        const int cy = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d.height)));
        const int sw = static_cast<int>(std::llround(rng.uniform(0.02, 0.10) * d.width));
        const int sh = static_cast<int>(std::llround(rng.uniform(0.02, 0.10) * d.height));
        if (sw < 1 || sh < 1) continue;
        const int x0 = std::max(0, cx - sw / 2);
        const int y0 = std::max(0, cy - sh / 2);
        const int x1 = std::min(d.width, x0 + sw);
        const int y1 = std::min(d.height, y0 + sh);
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) {
                float& v = out.at(x, y);
                if (!is_void(v)) {
                    v = kVoidDepth;
                    ++voids;
                }
            }
    }
    return out;
}

inline DepthMap depth_random_missing(const DepthMap& d, SeverityLevel level, const RngKey& key) {
    return depth_random_missing_rate(d, random_missing_percent(level) / 100.0, key);
}

/// Depth values outside [min, max] become VOID; in-range values are untouched.
inline DepthMap depth_range_clip(const DepthMap& d, SeverityLevel level) {
    const auto p = range_clip_params(level);
    DepthMap out = d;
    for (float& v : out.data) {
        if (is_void(v)) continue;
        if (v < static_cast<float>(p.min_depth) || v > static_cast<float>(p.max_depth))
            v = kVoidDepth;
    }
    return out;
}

inline DepthMap apply_depth_kind(const DepthMap& d, DepthKind kind, SeverityLevel level,
                                 const RngKey& key) {
    switch (kind) {
        case DepthKind::GaussianNoise: return depth_gaussian_noise(d, level, key);
        case DepthKind::EdgeErosion: return depth_edge_erosion(d, level, key);
        case DepthKind::RandomMissing: return depth_random_missing(d, level, key);
        case DepthKind::RangeClip: return depth_range_clip(d, level);
    }
    throw ConfigError("invalid DepthKind");
}

inline SeverityLevel effective_level(const DepthPerturbation& spec, const RngKey& frame_key) {
    if (spec.mode == Mode::Static) return spec.level;
    RngStream rng(frame_key.child(depth_detail::kLaneJitter));
    const int jitter = static_cast<int>(rng.uniform_range(-1, 1));
    return SeverityLevel(std::clamp(spec.level.value + jitter, 1, 5));
}

inline DepthMap apply_depth(const DepthMap& d, const DepthPerturbation& spec,
                            const RngKey& frame_key) {
    return apply_depth_kind(d, spec.kind, effective_level(spec, frame_key), frame_key);
}

}  // namespace noisyrgbd
