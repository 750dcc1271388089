#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "noisyrgbd/core/rng.hpp"
#include "noisyrgbd/io/digest.hpp"
#include "noisyrgbd/io/pointcloud.hpp"
#include "noisyrgbd/io/sequence.hpp"

using namespace noisyrgbd;
namespace fs = std::filesystem;

namespace {

const RngKey kKey = RngKey::make(13, "io-tests", 0, 0);

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("noisyrgbd-test-" + std::to_string(RngStream(kKey).next_u64()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

RgbImage random_rgb(int w, int h, std::uint64_t salt) {
    RgbImage img(w, h);
    RngStream rng(kKey.child(salt));
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_int(256));
    return img;
}

}  // namespace

TEST_CASE("rgb png round trip is bit exact") {
    TempDir tmp;
    const RgbImage img = random_rgb(64, 48, 1);
    const fs::path path = tmp.path / "frame.png";
    write_rgb_png(path, img);
    CHECK(read_rgb_png(path) == img);
}

TEST_CASE("rgb png stores channels in the conventional order on disk") {
    TempDir tmp;
    RgbImage img(1, 1);
    img.at(0, 0, 0) = 255;  // pure red
    const fs::path path = tmp.path / "red.png";
    write_rgb_png(path, img);
    const cv::Mat raw = cv::imread(path.string(), cv::IMREAD_COLOR);  // BGR
    REQUIRE_FALSE(raw.empty());
    const auto px = raw.at<cv::Vec3b>(0, 0);
    CHECK(px[0] == 0);
    CHECK(px[1] == 0);
    CHECK(px[2] == 255);
}

TEST_CASE("depth png encoding follows the scale and VOID conventions") {
    TempDir tmp;
    DepthMap d(4, 1);
    d.at(0, 0) = kVoidDepth;
    d.at(1, 0) = 10.0f;  // 65535 / 6553.5
    d.at(2, 0) = 4.0f;   // stores round(26214.0)
    d.at(3, 0) = 1.2345f;
    const fs::path path = tmp.path / "depth.png";
    write_depth_png(path, d, kDefaultDepthScale);
    const DepthMap back = read_depth_png(path, kDefaultDepthScale);
    CHECK(is_void(back.at(0, 0)));
    CHECK(back.at(1, 0) == Catch::Approx(10.0).margin(1e-6));
    CHECK(back.at(2, 0) == Catch::Approx(4.0).margin(1e-6));
    // round trip within half a quantization step
    CHECK(std::abs(back.at(3, 0) - d.at(3, 0)) <= 0.5 / kDefaultDepthScale);
}

TEST_CASE("depth png saturates beyond the 16-bit range with a warning count") {
    TempDir tmp;
    DepthMap d(2, 1);
    d.at(0, 0) = 100.0f;  // above 65535 / 6553.5 m
    d.at(1, 0) = 1.0f;
    std::size_t saturated = 0;
    const fs::path path = tmp.path / "sat.png";
    write_depth_png(path, d, kDefaultDepthScale, &saturated);
    CHECK(saturated == 1);
    const DepthMap back = read_depth_png(path, kDefaultDepthScale);
    CHECK(back.at(0, 0) == Catch::Approx(65535.0 / kDefaultDepthScale).margin(1e-6));
}

TEST_CASE("depth round trip stays within half a quantization step") {
    TempDir tmp;
    DepthMap d(80, 60);
    RngStream rng(kKey.child(2));
    for (float& v : d.data) v = static_cast<float>(rng.uniform(0.05, 9.9));
    const fs::path path = tmp.path / "depth.png";
    write_depth_png(path, d, kDefaultDepthScale);
    const DepthMap back = read_depth_png(path, kDefaultDepthScale);
    for (std::size_t i = 0; i < d.data.size(); ++i)
        REQUIRE(std::abs(back.data[i] - d.data[i]) <= 0.5 / kDefaultDepthScale + 1e-7);
}

TEST_CASE("trajectory format parses the field order and comments") {
    TempDir tmp;
    const fs::path path = tmp.path / "traj.txt";
    {
        std::ofstream out(path);
        out << "# timestamp tx ty tz qx qy qz qw\n";
        out << "\n";
        out << "0.0 1.0 2.0 3.0 0.0 0.0 0.0 1.0\n";
        out << "0.05 1.1 2.0 3.0 0.0 0.0 0.7071067811865476 0.7071067811865476  # inline note\n";
    }
    const LoadedTrajectory loaded = load_trajectory(path);
    REQUIRE(loaded.trajectory.size() == 2);
    CHECK(loaded.trajectory[0].translation == Eigen::Vector3d(1.0, 2.0, 3.0));
    CHECK(loaded.trajectory[0].rotation.w() == Catch::Approx(1.0));
    CHECK(loaded.trajectory[1].rotation.z() == Catch::Approx(0.7071067811865476));
    CHECK(loaded.pose_lines.size() == 2);
}

TEST_CASE("trajectory save/load round trip within formatting precision") {
    TempDir tmp;
    Trajectory traj;
    RngStream rng(kKey.child(3));
    for (int i = 0; i < 20; ++i) {
        Eigen::Quaterniond q(rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
        q.normalize();
        traj.poses.emplace_back(i * 0.05, q,
                                Eigen::Vector3d(rng.uniform(-3, 3), rng.uniform(-3, 3),
                                                rng.uniform(-3, 3)));
    }
    const fs::path path = tmp.path / "traj.txt";
    save_trajectory(path, traj);
    const Trajectory back = load_trajectory(path).trajectory;
    REQUIRE(back.size() == traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(std::abs(back[i].timestamp - traj[i].timestamp) < 1e-9);
        CHECK((back[i].translation - traj[i].translation).norm() < 1e-8);
        CHECK(std::abs(std::abs(back[i].rotation.dot(traj[i].rotation)) - 1.0) < 1e-9);
    }
}

TEST_CASE("malformed trajectories are rejected") {
    TempDir tmp;
    const fs::path path = tmp.path / "bad.txt";
    {
        std::ofstream out(path);
        out << "0.0 1.0 2.0\n";  // too few fields
    }
    CHECK_THROWS_AS(load_trajectory(path), IoError);
    {
        std::ofstream out(path, std::ios::trunc);
        out << "0.10 0 0 0 0 0 0 1\n";
        out << "0.05 0 0 0 0 0 0 1\n";  // timestamps not increasing
    }
    CHECK_THROWS_AS(load_trajectory(path), IoError);
    {
        std::ofstream out(path, std::ios::trunc);
        out << "# only comments\n";
    }
    CHECK_THROWS_AS(load_trajectory(path), IoError);
    CHECK_THROWS_AS(load_trajectory(tmp.path / "missing.txt"), IoError);
}

TEST_CASE("sequence loading validates stream agreement") {
    TempDir tmp;
    SequenceLayout layout;
    layout.root = tmp.path;
    fs::create_directories(tmp.path / layout.rgb_dir);
    fs::create_directories(tmp.path / layout.depth_dir);

    Trajectory traj;
    for (int i = 0; i < 3; ++i) {
        write_rgb_png(layout.rgb_path(static_cast<std::size_t>(i)),
                      random_rgb(16, 12, 10 + static_cast<std::uint64_t>(i)));
        DepthMap d(16, 12, 1.0f + static_cast<float>(i));
        write_depth_png(layout.depth_path(static_cast<std::size_t>(i)), d, layout.depth_scale);
        traj.poses.emplace_back(i * 0.05, Eigen::Quaterniond::Identity(),
                                Eigen::Vector3d(0.1 * i, 0, 0));
    }
    save_trajectory(layout.trajectory_path(), traj);

    const Sequence seq = load_sequence(layout);
    REQUIRE(seq.size() == 3);
    CHECK(seq.load_rgb(0).width == 16);
    CHECK(seq.load_depth(2).at(0, 0) == Catch::Approx(3.0).margin(1e-3));

    // A missing depth frame breaks the count agreement.
    fs::remove(layout.depth_path(2));
    CHECK_THROWS_AS(load_sequence(layout), IoError);
}

TEST_CASE("save_sequence / load_sequence round trip") {
    TempDir tmp;
    std::vector<RgbImage> rgb;
    std::vector<DepthMap> depth;
    Trajectory traj;
    RngStream rng(kKey.child(7));
    for (int i = 0; i < 4; ++i) {
        rgb.push_back(random_rgb(20, 16, 20 + static_cast<std::uint64_t>(i)));
        DepthMap d(20, 16);
        for (float& v : d.data) v = static_cast<float>(rng.uniform(0.2, 8.0));
        d.at(0, 0) = kVoidDepth;
        depth.push_back(std::move(d));
        traj.poses.emplace_back(i * 0.05, Eigen::Quaterniond::Identity(),
                                Eigen::Vector3d(0.01 * i, 0, 0));
    }
    SequenceLayout layout;
    layout.root = tmp.path / "seq";
    save_sequence(rgb, depth, traj, layout);

    const Sequence back = load_sequence(layout);
    REQUIRE(back.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(back.load_rgb(i) == rgb[i]);  // lossless storage
        const DepthMap d = back.load_depth(i);
        for (std::size_t p = 0; p < d.data.size(); ++p) {
            if (is_void(depth[i].data[p]))
                REQUIRE(is_void(d.data[p]));
            else
                REQUIRE(std::abs(d.data[p] - depth[i].data[p]) <=
                        0.5 / layout.depth_scale + 1e-7);
        }
    }

    std::vector<RgbImage> short_rgb(rgb.begin(), rgb.begin() + 2);
    CHECK_THROWS_AS(save_sequence(short_rgb, depth, traj, layout), ParameterError);
}

TEST_CASE("point cloud ascii round trip") {
    TempDir tmp;
    PointCloud cloud;
    RngStream rng(kKey.child(4));
    for (int i = 0; i < 50; ++i)
        cloud.emplace_back(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
    const fs::path path = tmp.path / "cloud.xyz";
    save_pointcloud(path, cloud);
    const PointCloud back = load_pointcloud(path);
    REQUIRE(back.size() == cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        CHECK((back[i] - cloud[i]).norm() < 1e-8);
    CHECK_THROWS_AS(load_pointcloud(tmp.path / "nope.xyz"), IoError);
}

TEST_CASE("file digests identify identical and differing content") {
    TempDir tmp;
    const fs::path a = tmp.path / "a.bin";
    const fs::path b = tmp.path / "b.bin";
    {
        std::ofstream(a) << "payload-123";
        std::ofstream(b) << "payload-123";
    }
    CHECK(digest_file(a) == digest_file(b));
    {
        std::ofstream(b, std::ios::trunc) << "payload-124";
    }
    CHECK(digest_file(a) != digest_file(b));
    CHECK(digest_hex(0x1234abcdull) == "000000001234abcd");
}
