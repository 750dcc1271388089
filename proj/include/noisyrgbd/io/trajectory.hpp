#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "noisyrgbd/core/error.hpp"
#include "noisyrgbd/core/types.hpp"

namespace noisyrgbd {

/// Trajectory together with the verbatim file line per pose, so untouched
/// poses can be written back byte-identically.
struct LoadedTrajectory {
    Trajectory trajectory;
    std::vector<std::string> pose_lines;
};

/// Reads the de-facto RGB-D benchmark trajectory format: one pose per line,
/// "timestamp tx ty tz qx qy qz qw", '#' starts a comment.
inline LoadedTrajectory load_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trajectory file " + path.string());

    LoadedTrajectory out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        const auto hash = view.find('#');
        const std::string payload(view.substr(0, hash == std::string_view::npos ? view.size() : hash));
        std::istringstream fields(payload);
        double ts, tx, ty, tz, qx, qy, qz, qw;
        if (!(fields >> ts >> tx >> ty >> tz >> qx >> qy >> qz >> qw)) {
            // blank or comment-only line
            std::istringstream probe(payload);
            std::string token;
            if (probe >> token)
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 8 fields 'timestamp tx ty tz qx qy qz qw'");
            continue;
        }
        out.trajectory.poses.emplace_back(ts, Eigen::Quaterniond(qw, qx, qy, qz),
                                          Eigen::Vector3d(tx, ty, tz));
        out.pose_lines.push_back(line);
    }
    if (out.trajectory.empty()) throw IoError("trajectory file " + path.string() + " has no poses");
    for (std::size_t i = 1; i < out.trajectory.size(); ++i)
        if (!(out.trajectory[i].timestamp > out.trajectory[i - 1].timestamp))
            throw IoError("trajectory file " + path.string() +
                          " has non-monotone timestamps at pose " + std::to_string(i));
    return out;
}

inline std::string format_pose_line(const Pose& pose) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%.9f %.9f %.9f %.9f %.9f %.9f %.9f %.9f", pose.timestamp,
                  pose.translation.x(), pose.translation.y(), pose.translation.z(),
                  pose.rotation.x(), pose.rotation.y(), pose.rotation.z(), pose.rotation.w());
    return std::string(buf);
}

inline void save_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write trajectory file " + path.string());
    out << "# timestamp tx ty tz qx qy qz qw\n";
    for (const Pose& pose : traj.poses) out << format_pose_line(pose) << "\n";
    if (!out) throw IoError("failed writing trajectory file " + path.string());
}

/// Writes verbatim pose lines (preserves the source formatting bit-for-bit).
inline void save_trajectory_lines(const std::filesystem::path& path,
                                  const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write trajectory file " + path.string());
    for (const std::string& line : lines) out << line << "\n";
    if (!out) throw IoError("failed writing trajectory file " + path.string());
}

}  // namespace noisyrgbd
