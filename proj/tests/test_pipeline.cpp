#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "noisyrgbd/pipeline/run.hpp"
#include "support/test_sequences.hpp"

using namespace noisyrgbd;
namespace fs = std::filesystem;
using nlohmann::json;
using testsupport::TempDir;
using testsupport::make_test_sequence;

namespace {

PipelineConfig base_config(const fs::path& input, const fs::path& output) {
    PipelineConfig config;
    config.input = input;
    config.output = output;
    config.seed = 7;
    config.sequence_id = "unit";
    return config;
}

}  // namespace

TEST_CASE("config parsing enforces the propagation order") {
    json j;
    j["input"] = "in";
    j["output"] = "out";
    j["stages"] = json::array({{{"stage", "desync"}, {"interval", 5}},
                               {{"stage", "rgb"}, {"kind", "gaussian_noise"}, {"level", 3}}});
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j["stages"] = json::array({{{"stage", "depth"}, {"kind", "range_clip"}, {"level", 3}},
                               {{"stage", "rgb"}, {"kind", "gaussian_noise"}, {"level", 3}}});
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j["stages"] = json::array({{{"stage", "downsample"}, {"ratio", 2}},
                               {{"stage", "downsample"}, {"ratio", 4}}});
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j["stages"] = json::array({{{"stage", "rgb"}, {"kind", "sparkle"}, {"level", 3}}});
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j["stages"] = json::array({{{"stage", "rgb"}, {"kind", "snow"}, {"level", 9}}});
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j["stages"] = json::array();  // identity pipeline is valid
    CHECK_NOTHROW(parse_config(j));
}

TEST_CASE("the six-stage mixture config validates") {
    json j;
    j["input"] = "in";
    j["output"] = "out";
    j["stages"] = json::array(
        {{{"stage", "rgb"}, {"kind", "snow"}, {"level", 3}},
         {{"stage", "rgb"}, {"kind", "motion_blur"}, {"level", 3}},
         {{"stage", "rgb"}, {"kind", "gaussian_noise"}, {"level", 3}},
         {{"stage", "rgb"}, {"kind", "jpeg"}, {"level", 3}},
         {{"stage", "depth"}, {"kind", "gaussian_noise"}, {"level", 3}},
         {{"stage", "desync"}, {"interval", 10}}});
    const PipelineConfig config = parse_config(j);
    CHECK(config.rgb.size() == 4);
    CHECK(config.depth.size() == 1);
    CHECK(config.desync.has_value());
}

TEST_CASE("relative config paths resolve against the config directory") {
    TempDir tmp("config-rel");
    const fs::path cfg_path = tmp.path / "deep" / "cfg.json";
    fs::create_directories(cfg_path.parent_path());
    {
        std::ofstream out(cfg_path);
        out << R"({"input": "../seq", "output": "out", "stages": []})";
    }
    const PipelineConfig config = load_config(cfg_path);
    CHECK(config.input == tmp.path / "deep" / ".." / "seq");
    CHECK(config.output == tmp.path / "deep" / "out");
}

TEST_CASE("identity pipeline copies inputs byte for byte") {
    TempDir tmp("identity");
    const auto layout = make_test_sequence(tmp.path / "in", 4, 32, 24);
    const PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out");
    const Manifest manifest = run(config);
    REQUIRE(manifest.output_frames == 4);

    SequenceLayout out_layout;
    out_layout.root = tmp.path / "out";
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(digest_file(layout.rgb_path(i)) == digest_file(out_layout.rgb_path(i)));
        CHECK(digest_file(layout.depth_path(i)) == digest_file(out_layout.depth_path(i)));
        CHECK(manifest.frames[i].rgb_digest == digest_file(layout.rgb_path(i)));
        CHECK(manifest.frames[i].depth_digest == digest_file(layout.depth_path(i)));
    }
    CHECK(digest_file(layout.trajectory_path()) ==
          digest_file(out_layout.trajectory_path()));
}

TEST_CASE("same config and seed reproduce identical digests") {
    TempDir tmp("determinism");
    make_test_sequence(tmp.path / "in", 6, 48, 36);
    PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out_a");
    config.rgb.push_back({RgbPerturbation{RgbKind::GaussianNoise, SeverityLevel(3), Mode::Dynamic}, true});
    config.depth.push_back({DepthPerturbation{DepthKind::RandomMissing, SeverityLevel(2), Mode::Static}, true});
    config.desync = DesyncStage{DesyncSpec{2, Mode::Dynamic}, false, true};

    const Manifest a = run(config);
    config.output = tmp.path / "out_b";
    const Manifest b = run(config);
    CHECK(a.combined_digest == b.combined_digest);
    REQUIRE(a.frames.size() == b.frames.size());
    for (std::size_t i = 0; i < a.frames.size(); ++i) {
        CHECK(a.frames[i].rgb_digest == b.frames[i].rgb_digest);
        CHECK(a.frames[i].depth_digest == b.frames[i].depth_digest);
        CHECK(a.frames[i].rgb_levels == b.frames[i].rgb_levels);
    }

    config.output = tmp.path / "out_c";
    config.seed = 8;
    const Manifest c = run(config);
    CHECK(a.combined_digest != c.combined_digest);
}

TEST_CASE("worker count does not change the output") {
    TempDir tmp("workers");
    make_test_sequence(tmp.path / "in", 8, 40, 30);
    PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out_1");
    config.rgb.push_back({RgbPerturbation{RgbKind::SpeckleNoise, SeverityLevel(4), Mode::Dynamic}, true});
    config.rgb.push_back({RgbPerturbation{RgbKind::Pixelate, SeverityLevel(2), Mode::Static}, true});
    config.depth.push_back({DepthPerturbation{DepthKind::EdgeErosion, SeverityLevel(3), Mode::Static}, true});

    RunOptions serial;
    serial.workers = 1;
    const Manifest a = run(config, serial);

    config.output = tmp.path / "out_8";
    RunOptions parallel;
    parallel.workers = 8;
    const Manifest b = run(config, parallel);
    CHECK(a.combined_digest == b.combined_digest);
}

TEST_CASE("frame-count bookkeeping follows ceil(N/r) - delta") {
    TempDir tmp("counts");
    make_test_sequence(tmp.path / "in", 21, 24, 18);
    for (int ratio : {1, 2, 4}) {
        for (int delta : {0, 3, 5}) {
            PipelineConfig config =
                base_config(tmp.path / "in",
                            tmp.path / ("out_r" + std::to_string(ratio) + "_d" + std::to_string(delta)));
            if (ratio > 1) config.downsample = DownsampleStage{ratio, true};
            config.desync = DesyncStage{DesyncSpec{delta, Mode::Static}, false, true};
            const Manifest m = run(config);
            const std::size_t expected = (21 + ratio - 1) / static_cast<std::size_t>(ratio) -
                                         static_cast<std::size_t>(delta);
            REQUIRE(m.output_frames == expected);
        }
    }
}

TEST_CASE("static desync pairs the delayed depth stream by digest") {
    TempDir tmp("desync");
    const auto in_layout = make_test_sequence(tmp.path / "in", 12, 24, 18);
    PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out");
    config.desync = DesyncStage{DesyncSpec{4, Mode::Static}, false, true};
    const Manifest m = run(config);
    REQUIRE(m.output_frames == 8);

    SequenceLayout out_layout;
    out_layout.root = tmp.path / "out";
    const auto in_lines = load_trajectory(in_layout.trajectory_path()).pose_lines;
    const auto out_lines = load_trajectory(out_layout.trajectory_path()).pose_lines;
    REQUIRE(out_lines.size() == 8);
    for (std::size_t t = 0; t < 8; ++t) {
        CHECK(digest_file(out_layout.rgb_path(t)) == digest_file(in_layout.rgb_path(t)));
        CHECK(digest_file(out_layout.depth_path(t)) == digest_file(in_layout.depth_path(t + 4)));
        CHECK(out_lines[t] == in_lines[t]);  // pose labels stay with the reference index
    }
}

TEST_CASE("desync can delay the rgb stream instead") {
    TempDir tmp("desync-swap");
    const auto in_layout = make_test_sequence(tmp.path / "in", 10, 24, 18);
    PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out");
    config.desync = DesyncStage{DesyncSpec{3, Mode::Static}, true, true};
    const Manifest m = run(config);
    REQUIRE(m.output_frames == 7);
    SequenceLayout out_layout;
    out_layout.root = tmp.path / "out";
    for (std::size_t t = 0; t < 7; ++t) {
        CHECK(digest_file(out_layout.rgb_path(t)) == digest_file(in_layout.rgb_path(t + 3)));
        CHECK(digest_file(out_layout.depth_path(t)) == digest_file(in_layout.depth_path(t)));
    }
}

TEST_CASE("disabling a stage equals never configuring it") {
    TempDir tmp("isolation");
    make_test_sequence(tmp.path / "in", 6, 32, 24);

    PipelineConfig with_disabled = base_config(tmp.path / "in", tmp.path / "out_disabled");
    with_disabled.rgb.push_back({RgbPerturbation{RgbKind::Fog, SeverityLevel(3), Mode::Static}, true});
    with_disabled.rgb.push_back({RgbPerturbation{RgbKind::Jpeg, SeverityLevel(3), Mode::Static}, false});
    with_disabled.rgb.push_back({RgbPerturbation{RgbKind::GaussianNoise, SeverityLevel(2), Mode::Static}, true});
    with_disabled.depth.push_back({DepthPerturbation{DepthKind::RangeClip, SeverityLevel(3), Mode::Static}, false});

    PipelineConfig without = base_config(tmp.path / "in", tmp.path / "out_absent");
    without.rgb.push_back({RgbPerturbation{RgbKind::Fog, SeverityLevel(3), Mode::Static}, true});
    without.rgb.push_back({RgbPerturbation{RgbKind::GaussianNoise, SeverityLevel(2), Mode::Static}, true});

    CHECK(run(with_disabled).combined_digest == run(without).combined_digest);
}

TEST_CASE("motion deviation rewrites the ground-truth label trajectory") {
    TempDir tmp("motion");
    const auto in_layout = make_test_sequence(tmp.path / "in", 6, 24, 18);
    PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out");
    config.motion = MotionStage{DeviationSpec{0.0, 0.05}, true};
    run(config);

    const Trajectory in_traj = load_trajectory(in_layout.trajectory_path()).trajectory;
    SequenceLayout out_layout;
    out_layout.root = tmp.path / "out";
    const Trajectory out_traj = load_trajectory(out_layout.trajectory_path()).trajectory;
    REQUIRE(out_traj.size() == in_traj.size());
    bool any_moved = false;
    for (std::size_t i = 0; i < in_traj.size(); ++i) {
        CHECK(out_traj[i].timestamp == Catch::Approx(in_traj[i].timestamp).margin(1e-9));
        if ((out_traj[i].translation - in_traj[i].translation).norm() > 1e-6) any_moved = true;
    }
    CHECK(any_moved);
    // RGB frames are untouched by a motion-only pipeline.
    CHECK(digest_file(out_layout.rgb_path(0)) == digest_file(in_layout.rgb_path(0)));
}

TEST_CASE("unsatisfiable desync interval is rejected against the input length") {
    TempDir tmp("toolong");
    make_test_sequence(tmp.path / "in", 6, 24, 18);
    PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out");
    config.downsample = DownsampleStage{4, true};  // 6 -> 2 frames
    config.desync = DesyncStage{DesyncSpec{2, Mode::Static}, false, true};
    CHECK_THROWS_AS(run(config), ConfigError);
    CHECK_FALSE(fs::exists(tmp.path / "out"));
}

TEST_CASE("existing non-empty output requires overwrite") {
    TempDir tmp("overwrite");
    make_test_sequence(tmp.path / "in", 3, 24, 18);
    fs::create_directories(tmp.path / "out");
    std::ofstream(tmp.path / "out" / "keep.txt") << "user data";

    PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out");
    CHECK_THROWS_AS(run(config), IoError);
    CHECK(fs::exists(tmp.path / "out" / "keep.txt"));  // untouched

    RunOptions opts;
    opts.overwrite = true;
    CHECK_NOTHROW(run(config, opts));
    CHECK_FALSE(fs::exists(tmp.path / "out" / "keep.txt"));
}

TEST_CASE("failures remove partial outputs and surface the frame index") {
    TempDir tmp("failure");
    const auto in_layout = make_test_sequence(tmp.path / "in", 5, 24, 18);
    {
        std::ofstream bad(in_layout.rgb_path(3), std::ios::trunc | std::ios::binary);
        bad << "not a png";
    }
    PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out");
    config.rgb.push_back({RgbPerturbation{RgbKind::Brightness, SeverityLevel(1), Mode::Static}, true});
    try {
        run(config);
        FAIL("expected an IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("frame 3") != std::string::npos);
    }
    CHECK_FALSE(fs::exists(tmp.path / "out"));
}

TEST_CASE("manifest records stages in propagation order with op ids") {
    TempDir tmp("manifest");
    make_test_sequence(tmp.path / "in", 8, 24, 18);
    PipelineConfig config = base_config(tmp.path / "in", tmp.path / "out");
    config.motion = MotionStage{DeviationSpec{1.0, 0.0125}, true};
    config.downsample = DownsampleStage{2, true};
    config.rgb.push_back({RgbPerturbation{RgbKind::Snow, SeverityLevel(3), Mode::Static}, true});
    config.depth.push_back({DepthPerturbation{DepthKind::GaussianNoise, SeverityLevel(3), Mode::Static}, true});
    config.desync = DesyncStage{DesyncSpec{1, Mode::Static}, false, true};
    const Manifest m = run(config);

    REQUIRE(m.stages.size() == 5);
    CHECK(m.stages[0]["stage"] == "motion_deviation");
    CHECK(m.stages[1]["stage"] == "downsample");
    CHECK(m.stages[2]["stage"] == "rgb");
    CHECK(m.stages[3]["stage"] == "depth");
    CHECK(m.stages[4]["stage"] == "desync");
    CHECK(m.stages[0]["op"] == 0);
    CHECK(m.stages[2]["op"] == 1);
    CHECK(m.stages[3]["op"] == 2);
    CHECK(m.stages[4]["op"] == 3);

    // The manifest file itself is valid JSON with the same digests.
    std::ifstream in(tmp.path / "out" / "manifest.json");
    REQUIRE(in.good());
    json parsed;
    in >> parsed;
    CHECK(parsed["combined_digest"] == digest_hex(m.combined_digest));
    CHECK(parsed["toolkit_version"] == kToolkitVersion);
    CHECK(parsed["frames"].size() == m.output_frames);
}
