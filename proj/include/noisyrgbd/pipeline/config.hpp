#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "noisyrgbd/core/error.hpp"
#include "noisyrgbd/core/severity.hpp"
#include "noisyrgbd/perturb/depth.hpp"
#include "noisyrgbd/perturb/desync.hpp"
#include "noisyrgbd/perturb/motion.hpp"
#include "noisyrgbd/perturb/rgb.hpp"

namespace noisyrgbd {

struct MotionStage {
    DeviationSpec spec;
    bool enabled = true;
};

struct DownsampleStage {
    int ratio = 1;
    bool enabled = true;
};

struct RgbStage {
    RgbPerturbation spec;
    bool enabled = true;
};

struct DepthStage {
    DepthPerturbation spec;
    bool enabled = true;
};

struct DesyncStage {
    DesyncSpec spec;
    bool delay_rgb = false;  // by default the depth stream is the delayed one
    bool enabled = true;
};

/// Declarative description of one perturbation run. Stages always execute in
/// the sensing-chain order: motion deviation, downsample, RGB imaging, depth
/// imaging, desynchronization; configs listing them otherwise are rejected.
struct PipelineConfig {
    std::filesystem::path input;
    std::filesystem::path output;
    std::uint64_t seed = 0;
    std::string sequence_id;
    double frame_rate = 20.0;
    double depth_scale = kDefaultDepthScale;

    std::optional<MotionStage> motion;
    std::optional<DownsampleStage> downsample;
    std::vector<RgbStage> rgb;
    std::vector<DepthStage> depth;
    std::optional<DesyncStage> desync;
};

namespace config_detail {

inline int stage_rank(const std::string& name) {
    if (name == "motion_deviation") return 0;
    if (name == "downsample") return 1;
    if (name == "rgb") return 2;
    if (name == "depth") return 3;
    if (name == "desync") return 4;
    throw ConfigError("unknown stage '" + name + "'");
}

template <typename T>
T require(const nlohmann::json& j, const char* field) {
    if (!j.contains(field))
        throw ConfigError("missing required config field '" + std::string(field) + "'");
    try {
        return j.at(field).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad value for config field '" + std::string(field) + "': " + e.what());
    }
}

template <typename T>
T get_or(const nlohmann::json& j, const char* field, T fallback) {
    if (!j.contains(field)) return fallback;
    try {
        return j.at(field).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad value for config field '" + std::string(field) + "': " + e.what());
    }
}

}  // namespace config_detail

/// Structural validation: stage order (already enforced while parsing JSON,
/// re-checked here for programmatic configs), parameter domains and severity
/// resolvability.
inline void validate(const PipelineConfig& config) {
    if (config.output.empty()) throw ConfigError("config must name an output directory");
    if (config.frame_rate <= 0.0) throw ConfigError("frame rate must be positive");
    if (config.depth_scale <= 0.0) throw ConfigError("depth scale must be positive");
    if (config.motion) config.motion->spec.validate();
    if (config.downsample && config.downsample->ratio < 1)
        throw ConfigError("downsample ratio must be >= 1");
    for (const RgbStage& s : config.rgb) severity_values(s.spec.kind, s.spec.level);
    for (const DepthStage& s : config.depth) severity_values(s.spec.kind, s.spec.level);
    if (config.desync) config.desync->spec.validate();
}

/// Run-time validation against the actual input length: the effective desync
/// interval must fit the post-downsample stream.
inline void validate_against_length(const PipelineConfig& config, std::size_t frames) {
    if (frames == 0) throw ConfigError("input sequence is empty");
    std::size_t effective = frames;
    if (config.downsample && config.downsample->enabled) {
        const auto r = static_cast<std::size_t>(config.downsample->ratio);
        effective = (frames + r - 1) / r;
    }
    if (config.desync && config.desync->enabled &&
        static_cast<std::size_t>(config.desync->spec.interval) >= effective)
        throw ConfigError("desync interval " + std::to_string(config.desync->spec.interval) +
                          " does not fit the post-downsample stream length " +
                          std::to_string(effective));
}

inline PipelineConfig parse_config(const nlohmann::json& j,
                                   const std::filesystem::path& base_dir = {}) {
    using config_detail::get_or;
    using config_detail::require;

    PipelineConfig config;
    config.input = require<std::string>(j, "input");
    config.output = require<std::string>(j, "output");
    if (!base_dir.empty()) {
        if (config.input.is_relative()) config.input = base_dir / config.input;
        if (config.output.is_relative()) config.output = base_dir / config.output;
    }
    config.seed = get_or<std::uint64_t>(j, "seed", 0);
    config.sequence_id = get_or<std::string>(j, "sequence_id", "sequence");
    config.frame_rate = get_or<double>(j, "frame_rate", 20.0);
    config.depth_scale = get_or<double>(j, "depth_scale", kDefaultDepthScale);

    int last_rank = -1;
    for (const auto& stage : get_or<nlohmann::json>(j, "stages", nlohmann::json::array())) {
        const auto name = require<std::string>(stage, "stage");
        const int rank = config_detail::stage_rank(name);
        // RGB and depth stages may repeat; the single-instance stages may not.
        if (rank < last_rank)
            throw ConfigError("stage '" + name +
                              "' is out of order: stages must follow motion_deviation, "
                              "downsample, rgb, depth, desync");
        if (rank == last_rank && rank != 2 && rank != 3)
            throw ConfigError("stage '" + name + "' may appear only once");
        last_rank = rank;

        const bool enabled = get_or<bool>(stage, "enabled", true);
        if (name == "motion_deviation") {
            MotionStage s;
            s.spec.rotation_std_deg = get_or<double>(stage, "rotation_std_deg", 0.0);
            s.spec.translation_std_m = get_or<double>(stage, "translation_std_m", 0.0);
            s.enabled = enabled;
            config.motion = s;
        } else if (name == "downsample") {
            config.downsample = DownsampleStage{require<int>(stage, "ratio"), enabled};
        } else if (name == "rgb") {
            RgbStage s;
            s.spec.kind = rgb_kind_from_string(require<std::string>(stage, "kind"));
            s.spec.level = SeverityLevel(require<int>(stage, "level"));
            s.spec.mode = mode_from_string(get_or<std::string>(stage, "mode", "static"));
            s.enabled = enabled;
            config.rgb.push_back(s);
        } else if (name == "depth") {
            DepthStage s;
            s.spec.kind = depth_kind_from_string(require<std::string>(stage, "kind"));
            s.spec.level = SeverityLevel(require<int>(stage, "level"));
            s.spec.mode = mode_from_string(get_or<std::string>(stage, "mode", "static"));
            s.enabled = enabled;
            config.depth.push_back(s);
        } else if (name == "desync") {
            DesyncStage s;
            s.spec.interval = require<int>(stage, "interval");
            s.spec.mode = mode_from_string(get_or<std::string>(stage, "mode", "static"));
            s.delay_rgb = get_or<bool>(stage, "delay_rgb", false);
            s.enabled = enabled;
            config.desync = s;
        }
    }
    validate(config);
    return config;
}

/// Loads a config file; relative input/output paths resolve against the
/// config file's directory.
inline PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(j, std::filesystem::absolute(path).parent_path());
}

/// Canonical JSON form of a config (used for the manifest echo).
inline nlohmann::json config_to_json(const PipelineConfig& config) {
    nlohmann::json j;
    j["input"] = config.input.string();
    j["output"] = config.output.string();
    j["seed"] = config.seed;
    j["sequence_id"] = config.sequence_id;
    j["frame_rate"] = config.frame_rate;
    j["depth_scale"] = config.depth_scale;
    nlohmann::json stages = nlohmann::json::array();
    if (config.motion)
        stages.push_back({{"stage", "motion_deviation"},
                          {"rotation_std_deg", config.motion->spec.rotation_std_deg},
                          {"translation_std_m", config.motion->spec.translation_std_m},
                          {"enabled", config.motion->enabled}});
    if (config.downsample)
        stages.push_back({{"stage", "downsample"},
                          {"ratio", config.downsample->ratio},
                          {"enabled", config.downsample->enabled}});
    for (const RgbStage& s : config.rgb)
        stages.push_back({{"stage", "rgb"},
                          {"kind", to_string(s.spec.kind)},
                          {"level", s.spec.level.value},
                          {"mode", to_string(s.spec.mode)},
                          {"enabled", s.enabled}});
    for (const DepthStage& s : config.depth)
        stages.push_back({{"stage", "depth"},
                          {"kind", to_string(s.spec.kind)},
                          {"level", s.spec.level.value},
                          {"mode", to_string(s.spec.mode)},
                          {"enabled", s.enabled}});
    if (config.desync)
        stages.push_back({{"stage", "desync"},
                          {"interval", config.desync->spec.interval},
                          {"mode", to_string(config.desync->spec.mode)},
                          {"delay_rgb", config.desync->delay_rgb},
                          {"enabled", config.desync->enabled}});
    j["stages"] = stages;
    return j;
}

}  // namespace noisyrgbd
