#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include "noisyrgbd/core/error.hpp"
#include "noisyrgbd/io/digest.hpp"
#include "noisyrgbd/version.hpp"

namespace noisyrgbd {

/// Bookkeeping for one output frame: which input frames it came from, the
/// effective severity per stage (interesting in dynamic mode) and the content
/// digests of the written files.
struct FrameRecord {
    std::size_t index = 0;
    std::size_t rgb_source = 0;
    std::size_t depth_source = 0;
    std::vector<int> rgb_levels;
    std::vector<int> depth_levels;
    std::uint64_t rgb_digest = 0;
    std::uint64_t depth_digest = 0;
};

/// Everything needed to audit or reproduce a pipeline run bit-exactly:
/// the config echo, the effective per-stage parameters, per-frame records
/// and output content digests.
struct Manifest {
    nlohmann::json config;
    nlohmann::json stages = nlohmann::json::array();
    std::size_t input_frames = 0;
    std::size_t output_frames = 0;
    std::vector<FrameRecord> frames;
    std::uint64_t trajectory_digest = 0;
    std::uint64_t combined_digest = 0;
};

inline nlohmann::json manifest_to_json(const Manifest& m) {
    nlohmann::json j;
    j["toolkit_version"] = kToolkitVersion;
    j["config"] = m.config;
    j["stages"] = m.stages;
    j["input_frames"] = m.input_frames;
    j["output_frames"] = m.output_frames;
    nlohmann::json frames = nlohmann::json::array();
    for (const FrameRecord& f : m.frames) {
        nlohmann::json jf;
        jf["index"] = f.index;
        jf["rgb_source"] = f.rgb_source;
        jf["depth_source"] = f.depth_source;
        if (!f.rgb_levels.empty()) jf["rgb_levels"] = f.rgb_levels;
        if (!f.depth_levels.empty()) jf["depth_levels"] = f.depth_levels;
        jf["rgb_digest"] = digest_hex(f.rgb_digest);
        jf["depth_digest"] = digest_hex(f.depth_digest);
        frames.push_back(std::move(jf));
    }
    j["frames"] = frames;
    j["trajectory_digest"] = digest_hex(m.trajectory_digest);
    j["combined_digest"] = digest_hex(m.combined_digest);
    return j;
}

/// Writes the manifest through a temp file + rename so consumers never see a
/// partially written document.
inline void save_manifest(const std::filesystem::path& path, const Manifest& m) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot write manifest " + tmp.string());
        out << manifest_to_json(m).dump(2) << "\n";
        if (!out) throw IoError("failed writing manifest " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace noisyrgbd
