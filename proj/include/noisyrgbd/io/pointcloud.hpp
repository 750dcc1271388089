#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>

#include "noisyrgbd/core/error.hpp"
#include "noisyrgbd/eval/mesh.hpp"

namespace noisyrgbd {

/// ASCII XYZ: one "x y z" triple per line, '#' starts a comment.
inline PointCloud load_pointcloud(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open point cloud " + path.string());
    PointCloud cloud;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        std::istringstream fields(line.substr(0, hash));
        double x, y, z;
        if (fields >> x >> y >> z) {
            cloud.emplace_back(x, y, z);
        } else {
            std::istringstream probe(line.substr(0, hash));
            std::string token;
            if (probe >> token)
                throw IoError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 'x y z'");
        }
    }
    if (cloud.empty()) throw IoError("point cloud " + path.string() + " is empty");
    return cloud;
}

inline void save_pointcloud(const std::filesystem::path& path, const PointCloud& cloud) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write point cloud " + path.string());
    for (const auto& p : cloud) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.9f %.9f %.9f\n", p.x(), p.y(), p.z());
        out << buf;
    }
    if (!out) throw IoError("failed writing point cloud " + path.string());
}

}  // namespace noisyrgbd
