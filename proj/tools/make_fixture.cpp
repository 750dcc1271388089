// Regenerates the bundled synthetic fixture sequence (deterministic, no RNG).
// Usage: make_fixture <output-dir> [frames] [width] [height]

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>

#include "noisyrgbd/io/image_codec.hpp"
#include "noisyrgbd/io/sequence.hpp"
#include "noisyrgbd/io/trajectory.hpp"

using namespace noisyrgbd;

namespace {

// Textured scene: tilted color gradients, a checkerboard band and a bright
// disc, all drifting with the camera so consecutive frames differ.
RgbImage render_rgb(int width, int height, int frame) {
    RgbImage img(width, height);
    const double shift = 3.0 * frame;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double u = (x + shift) / width;
            const double v = static_cast<double>(y) / height;
            double r = 0.5 + 0.4 * std::sin(2.0 * std::numbers::pi * (u + 0.3 * v));
            double g = 0.5 + 0.4 * std::sin(2.0 * std::numbers::pi * (1.7 * v + 0.2 * u) + 1.0);
            double b = 0.5 + 0.4 * std::cos(2.0 * std::numbers::pi * (u - v));
            const bool checker = ((static_cast<int>(x + shift) / 12) + (y / 12)) % 2 == 0;
            if (y > height / 2 && y < height / 2 + 24 && checker) {
                r = r * 0.3;
                g = g * 0.3;
                b = b * 0.3 + 0.2;
            }
            const double dx = x - (width / 2 + 20.0 * std::cos(0.3 * frame));
            const double dy = y - (height / 3 + 10.0 * std::sin(0.3 * frame));
            if (dx * dx + dy * dy < 15.0 * 15.0) {
                r = 0.95;
                g = 0.9;
                b = 0.55;
            }
            img.at(x, y, 0) = quantize_channel(static_cast<float>(r));
            img.at(x, y, 1) = quantize_channel(static_cast<float>(g));
            img.at(x, y, 2) = quantize_channel(static_cast<float>(b));
        }
    return img;
}

// Depth: a receding floor plane with a protruding box and a sphere bump, plus
// a small hole of VOID pixels. Values span roughly 0.3 m .. 5 m so the range
// clipping presets have work to do.
DepthMap render_depth(int width, int height, int frame) {
    DepthMap depth(width, height);
    const double shift = 3.0 * frame;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double d = 0.3 + 4.7 * (static_cast<double>(y) / height);
            const int bx = static_cast<int>(x + shift) % width;
            if (bx > width / 4 && bx < width / 2 && y > height / 3 && y < 2 * height / 3)
                d = 0.9;  // box in front of the floor
            const double sx = x - 0.75 * width;
            const double sy = y - 0.25 * height;
            const double r2 = sx * sx + sy * sy;
            if (r2 < 18.0 * 18.0) d = 2.0 - 0.5 * std::sqrt(1.0 - r2 / (18.0 * 18.0));
            const double hx = x - (0.1 * width + shift * 0.5);
            const double hy = y - 0.8 * height;
            if (hx * hx + hy * hy < 5.0 * 5.0) d = 0.0;  // sensor hole (VOID)
            depth.at(x, y) = static_cast<float>(d);
        }
    return depth;
}

Trajectory make_trajectory(int frames) {
    Trajectory traj;
    for (int i = 0; i < frames; ++i) {
        const double t = i / 20.0;
        const Eigen::Vector3d position(0.02 * i, 0.01 * std::sin(0.4 * i), 0.005 * i);
        const Eigen::Quaterniond yaw(Eigen::AngleAxisd(0.01 * i, Eigen::Vector3d::UnitY()));
        const Eigen::Quaterniond pitch(Eigen::AngleAxisd(0.002 * i, Eigen::Vector3d::UnitX()));
        traj.poses.emplace_back(t, yaw * pitch, position);
    }
    return traj;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: make_fixture <output-dir> [frames] [width] [height]\n";
        return 1;
    }
    const std::filesystem::path root = argv[1];
    const int frames = argc > 2 ? std::stoi(argv[2]) : 16;
    const int width = argc > 3 ? std::stoi(argv[3]) : 160;
    const int height = argc > 4 ? std::stoi(argv[4]) : 120;

    SequenceLayout layout;
    layout.root = root;
    std::filesystem::create_directories(root / layout.rgb_dir);
    std::filesystem::create_directories(root / layout.depth_dir);

    for (int i = 0; i < frames; ++i) {
        write_rgb_png(layout.rgb_path(static_cast<std::size_t>(i)), render_rgb(width, height, i));
        write_depth_png(layout.depth_path(static_cast<std::size_t>(i)),
                        render_depth(width, height, i), layout.depth_scale);
    }
    save_trajectory(layout.trajectory_path(), make_trajectory(frames));
    std::cout << "wrote " << frames << " frames (" << width << "x" << height << ") to "
              << root.string() << "\n";
    return 0;
}
