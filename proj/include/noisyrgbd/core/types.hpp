#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "noisyrgbd/core/error.hpp"

namespace noisyrgbd {

/// Sentinel for missing depth, both in memory (meters) and in 16-bit storage.
inline constexpr float kVoidDepth = 0.0f;

/// A timestamped SE(3) element. Rotation is kept as a unit quaternion.
struct Pose {
    double timestamp = 0.0;
    Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    Pose() = default;
    Pose(double t, const Eigen::Quaterniond& q, const Eigen::Vector3d& p)
        : timestamp(t), rotation(q.normalized()), translation(p) {}

    Eigen::Isometry3d isometry() const {
        Eigen::Isometry3d iso = Eigen::Isometry3d::Identity();
        iso.linear() = rotation.toRotationMatrix();
        iso.translation() = translation;
        return iso;
    }
};

struct Trajectory {
    std::vector<Pose> poses;

    std::size_t size() const { return poses.size(); }
    bool empty() const { return poses.empty(); }
    const Pose& operator[](std::size_t i) const { return poses[i]; }
    Pose& operator[](std::size_t i) { return poses[i]; }

    /// Enforces the trajectory invariants: non-empty, strictly increasing timestamps.
    void validate() const {
        if (poses.empty()) throw ConfigError("trajectory must contain at least one pose");
        for (std::size_t i = 1; i < poses.size(); ++i) {
            if (!(poses[i].timestamp > poses[i - 1].timestamp))
                throw ConfigError("trajectory timestamps must be strictly increasing at index " +
                                  std::to_string(i));
        }
    }
};

/// 8-bit RGB image, interleaved row-major storage.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // size = width * height * 3

    RgbImage() = default;
    RgbImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, fill) {}

    bool empty() const { return width == 0 || height == 0; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }

    bool operator==(const RgbImage& o) const {
        return width == o.width && height == o.height && data == o.data;
    }
};

/// Working representation for imaging operations: 3-channel float in [0,1].
struct FloatImage {
    int width = 0;
    int height = 0;
    std::vector<float> data;  // size = width * height * 3

    FloatImage() = default;
    FloatImage(int w, int h, float fill = 0.0f)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, fill) {}

    float& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    float at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
};

/// Single-channel float field (procedural masks, depth gradients, ...).
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<float> data;  // size = width * height

    Plane() = default;
    Plane(int w, int h, float fill = 0.0f)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Metric depth map in meters; kVoidDepth marks missing measurements.
struct DepthMap {
    int width = 0;
    int height = 0;
    std::vector<float> data;  // size = width * height

    DepthMap() = default;
    DepthMap(int w, int h, float fill = kVoidDepth)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    bool empty() const { return width == 0 || height == 0; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    bool operator==(const DepthMap& o) const {
        return width == o.width && height == o.height && data == o.data;
    }
};

inline bool is_void(float depth) { return depth == kVoidDepth; }

/// Severity level 1..5, 5 strongest.
struct SeverityLevel {
    int value = 1;

    SeverityLevel() = default;
    explicit SeverityLevel(int v) : value(v) {
        if (v < 1 || v > 5)
            throw ConfigError("severity level must be in 1..5, got " + std::to_string(v));
    }

    bool operator==(const SeverityLevel& o) const { return value == o.value; }
};

/// Static: constant severity across the stream. Dynamic: per-frame variation.
enum class Mode { Static, Dynamic };

inline std::string to_string(Mode m) { return m == Mode::Static ? "static" : "dynamic"; }

inline Mode mode_from_string(const std::string& s) {
    if (s == "static") return Mode::Static;
    if (s == "dynamic") return Mode::Dynamic;
    throw ConfigError("unknown mode '" + s + "' (expected 'static' or 'dynamic')");
}

inline float clamp01(float v) { return std::clamp(v, 0.0f, 1.0f); }

inline std::uint8_t quantize_channel(float v) {
    return static_cast<std::uint8_t>(clamp01(v) * 255.0f + 0.5f);
}

inline FloatImage to_working(const RgbImage& img) {
    FloatImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        out.data[i] = static_cast<float>(img.data[i]) / 255.0f;
    return out;
}

/// Clamps to [0,1] and quantizes back to 8-bit storage.
inline RgbImage from_working(const FloatImage& img) {
    RgbImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        out.data[i] = quantize_channel(img.data[i]);
    return out;
}

}  // namespace noisyrgbd
