#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "noisyrgbd/core/error.hpp"
#include "noisyrgbd/io/image_codec.hpp"
#include "noisyrgbd/io/trajectory.hpp"

namespace noisyrgbd {

inline constexpr double kDefaultDepthScale = 6553.5;  // 16-bit units per meter

/// On-disk layout of an RGB-D sequence:
///   <root>/rgb/%06d.png     8-bit color frames
///   <root>/depth/%06d.png   16-bit depth frames, value = meters * depth_scale
///   <root>/groundtruth.txt  trajectory, one pose per frame
struct SequenceLayout {
    std::filesystem::path root;
    std::string rgb_dir = "rgb";
    std::string depth_dir = "depth";
    std::string trajectory_file = "groundtruth.txt";
    double depth_scale = kDefaultDepthScale;

    std::filesystem::path rgb_path(std::size_t index) const {
        return root / rgb_dir / frame_name(index);
    }
    std::filesystem::path depth_path(std::size_t index) const {
        return root / depth_dir / frame_name(index);
    }
    std::filesystem::path trajectory_path() const { return root / trajectory_file; }

    static std::string frame_name(std::size_t index) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%06zu.png", index);
        return std::string(buf);
    }
};

/// A loaded sequence: frame paths (decoded lazily) plus the trajectory.
struct Sequence {
    SequenceLayout layout;
    std::vector<std::filesystem::path> rgb_frames;
    std::vector<std::filesystem::path> depth_frames;
    LoadedTrajectory trajectory;

    std::size_t size() const { return rgb_frames.size(); }

    RgbImage load_rgb(std::size_t index) const { return read_rgb_png(rgb_frames.at(index)); }
    DepthMap load_depth(std::size_t index) const {
        return read_depth_png(depth_frames.at(index), layout.depth_scale);
    }
};

namespace sequence_detail {

inline std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw IoError("missing frame directory " + dir.string());
    std::vector<std::filesystem::path> frames;
    for (std::size_t i = 0;; ++i) {
        std::filesystem::path p = dir / SequenceLayout::frame_name(i);
        if (!std::filesystem::exists(p)) break;
        frames.push_back(std::move(p));
    }
    if (frames.empty()) throw IoError("no frames found under " + dir.string() +
                                      " (expected 000000.png, 000001.png, ...)");
    return frames;
}

}  // namespace sequence_detail

/// Writes aligned in-memory streams as a sequence directory. RGB frames are
/// stored losslessly; depth saturating 16-bit storage is reported on stderr.
inline void save_sequence(const std::vector<RgbImage>& rgb, const std::vector<DepthMap>& depth,
                          const Trajectory& trajectory, const SequenceLayout& layout) {
    if (rgb.size() != depth.size() || rgb.size() != trajectory.size())
        throw ParameterError("save_sequence requires aligned rgb/depth/trajectory streams");
    if (rgb.empty()) throw ParameterError("cannot save an empty sequence");
    std::filesystem::create_directories(layout.root / layout.rgb_dir);
    std::filesystem::create_directories(layout.root / layout.depth_dir);
    for (std::size_t i = 0; i < rgb.size(); ++i) {
        write_rgb_png(layout.rgb_path(i), rgb[i]);
        std::size_t saturated = 0;
        write_depth_png(layout.depth_path(i), depth[i], layout.depth_scale, &saturated);
        if (saturated > 0)
            std::fprintf(stderr, "warning: frame %zu: %zu depth values saturated 16-bit storage\n",
                         i, saturated);
    }
    save_trajectory(layout.trajectory_path(), trajectory);
}

/// Loads (indexes) a sequence and enforces that the RGB, depth and trajectory
/// stream lengths agree and frame indices are contiguous from zero.
inline Sequence load_sequence(const SequenceLayout& layout) {
    Sequence seq;
    seq.layout = layout;
    seq.rgb_frames = sequence_detail::list_frames(layout.root / layout.rgb_dir);
    seq.depth_frames = sequence_detail::list_frames(layout.root / layout.depth_dir);
    seq.trajectory = load_trajectory(layout.trajectory_path());

    if (seq.rgb_frames.size() != seq.depth_frames.size() ||
        seq.rgb_frames.size() != seq.trajectory.trajectory.size())
        throw IoError("stream length mismatch under " + layout.root.string() + ": rgb=" +
                      std::to_string(seq.rgb_frames.size()) + " depth=" +
                      std::to_string(seq.depth_frames.size()) + " poses=" +
                      std::to_string(seq.trajectory.trajectory.size()));

    // Paired streams must agree on resolution; the first pair stands in for
    // the sequence, individual decode errors surface during processing.
    const RgbImage rgb0 = seq.load_rgb(0);
    const DepthMap depth0 = seq.load_depth(0);
    if (rgb0.width != depth0.width || rgb0.height != depth0.height)
        throw IoError("rgb/depth resolution mismatch under " + layout.root.string());
    return seq;
}

}  // namespace noisyrgbd
