#pragma once

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <vector>

#include "noisyrgbd/core/rng.hpp"
#include "noisyrgbd/core/types.hpp"

namespace noisyrgbd {

/// Per-frame SE(3) deviation magnitudes. Deviations are i.i.d. across frames.
struct DeviationSpec {
    double rotation_std_deg = 0.0;   // per-axis Euler angle std
    double translation_std_m = 0.0;  // per-axis std

    void validate() const {
        if (rotation_std_deg < 0.0 || translation_std_m < 0.0)
            throw ConfigError("deviation standard deviations must be non-negative");
    }
};

namespace motion_detail {
inline constexpr std::uint64_t kLaneRotation = 1;
inline constexpr std::uint64_t kLaneTranslation = 2;
}  // namespace motion_detail

/// Rotation deviation from per-axis Euler angles (degrees), composed X, then
/// Y, then Z.
inline Eigen::Quaterniond sample_rotation_deviation(double std_deg, RngStream& rng) {
    const double to_rad = std::numbers::pi / 180.0;
    const double ax = rng.gaussian(0.0, std_deg) * to_rad;
    const double ay = rng.gaussian(0.0, std_deg) * to_rad;
    const double az = rng.gaussian(0.0, std_deg) * to_rad;
    return Eigen::Quaterniond(Eigen::AngleAxisd(ax, Eigen::Vector3d::UnitX()) *
                              Eigen::AngleAxisd(ay, Eigen::Vector3d::UnitY()) *
                              Eigen::AngleAxisd(az, Eigen::Vector3d::UnitZ()));
}

/// Applies R' = R * dR and t' = t + dt independently per pose. Timestamps are
/// untouched; quaternions are renormalized. A zero spec returns the input
/// bit-for-bit.
inline Trajectory perturb_trajectory(const Trajectory& traj, const DeviationSpec& spec,
                                     const RngKey& key) {
    spec.validate();
    if (spec.rotation_std_deg == 0.0 && spec.translation_std_m == 0.0) return traj;

    Trajectory out = traj;
    for (std::size_t i = 0; i < out.poses.size(); ++i) {
        Pose& pose = out.poses[i];
        const RngKey frame_key = key.with_frame(i);
        if (spec.rotation_std_deg > 0.0) {
            RngStream rot_rng(frame_key.child(motion_detail::kLaneRotation));
            const Eigen::Quaterniond dq = sample_rotation_deviation(spec.rotation_std_deg, rot_rng);
            pose.rotation = (pose.rotation * dq).normalized();
        }
        if (spec.translation_std_m > 0.0) {
            RngStream trans_rng(frame_key.child(motion_detail::kLaneTranslation));
            for (int a = 0; a < 3; ++a)
                pose.translation[a] += trans_rng.gaussian(0.0, spec.translation_std_m);
        }
    }
    return out;
}

/// Keeps elements at indices 0, r, 2r, ...; output length is ceil(N / r).
template <typename T>
std::vector<T> downsample_stream(const std::vector<T>& frames, int ratio) {
    if (ratio < 1) throw ParameterError("downsample ratio must be >= 1");
    if (ratio == 1) return frames;
    std::vector<T> out;
    out.reserve((frames.size() + ratio - 1) / ratio);
    for (std::size_t i = 0; i < frames.size(); i += static_cast<std::size_t>(ratio))
        out.push_back(frames[i]);
    return out;
}

inline Trajectory downsample_stream(const Trajectory& traj, int ratio) {
    return Trajectory{downsample_stream(traj.poses, ratio)};
}

/// Kept source indices for a downsampled stream of length n.
inline std::vector<std::size_t> downsample_indices(std::size_t n, int ratio) {
    if (ratio < 1) throw ParameterError("downsample ratio must be >= 1");
    std::vector<std::size_t> idx;
    idx.reserve((n + ratio - 1) / ratio);
    for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(ratio)) idx.push_back(i);
    return idx;
}

/// Speeds are first differences scaled by the frame rate; accelerations are
/// magnitudes of the speed first differences, again scaled by the frame rate.
struct MotionStats {
    std::vector<double> translation_speed;   // m/s, length N-1
    std::vector<double> translation_accel;   // m/s^2, length N-2
    std::vector<double> rotation_speed;      // deg/s, length N-1
    std::vector<double> rotation_accel;      // deg/s^2, length N-2
    double mean_translation_speed = 0.0;
    double mean_translation_accel = 0.0;
    double mean_rotation_speed = 0.0;
    double mean_rotation_accel = 0.0;
};

inline double geodesic_angle_deg(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
    // atan2 form stays well conditioned for near-identical rotations, where
    // acos of the dot product loses ~8 digits.
    const Eigen::Quaterniond d = a.conjugate() * b;
    const double angle = 2.0 * std::atan2(d.vec().norm(), std::abs(d.w()));
    return angle * 180.0 / std::numbers::pi;
}

inline MotionStats motion_statistics(const Trajectory& traj, double frame_rate) {
    if (traj.size() < 2) throw ParameterError("motion statistics require at least two poses");
    if (frame_rate <= 0.0) throw ParameterError("frame rate must be positive");

    MotionStats stats;
    const std::size_t n = traj.size();
    stats.translation_speed.reserve(n - 1);
    stats.rotation_speed.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        stats.translation_speed.push_back(
            (traj[i + 1].translation - traj[i].translation).norm() * frame_rate);
        stats.rotation_speed.push_back(
            geodesic_angle_deg(traj[i].rotation, traj[i + 1].rotation) * frame_rate);
    }
    for (std::size_t i = 0; i + 1 < stats.translation_speed.size(); ++i) {
        stats.translation_accel.push_back(
            std::abs(stats.translation_speed[i + 1] - stats.translation_speed[i]) * frame_rate);
        stats.rotation_accel.push_back(
            std::abs(stats.rotation_speed[i + 1] - stats.rotation_speed[i]) * frame_rate);
    }

    auto mean = [](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum / static_cast<double>(v.size());
    };
    stats.mean_translation_speed = mean(stats.translation_speed);
    stats.mean_translation_accel = mean(stats.translation_accel);
    stats.mean_rotation_speed = mean(stats.rotation_speed);
    stats.mean_rotation_accel = mean(stats.rotation_accel);
    return stats;
}

}  // namespace noisyrgbd
