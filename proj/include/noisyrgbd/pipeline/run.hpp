#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

#include "noisyrgbd/io/sequence.hpp"
#include "noisyrgbd/perturb/depth.hpp"
#include "noisyrgbd/perturb/desync.hpp"
#include "noisyrgbd/perturb/motion.hpp"
#include "noisyrgbd/perturb/rgb.hpp"
#include "noisyrgbd/pipeline/config.hpp"
#include "noisyrgbd/pipeline/manifest.hpp"

namespace noisyrgbd {

struct RunOptions {
    int workers = 0;         // 0 = hardware concurrency (capped by NOISY_RGBD_THREADS)
    bool overwrite = false;  // remove a pre-existing output directory
};

namespace run_detail {

inline int resolve_workers(int requested, std::size_t tasks) {
    int workers = requested > 0 ? requested
                                : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("NOISY_RGBD_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) workers = std::min(workers, cap);
    }
    return std::max(1, std::min<int>(workers, static_cast<int>(tasks == 0 ? 1 : tasks)));
}

struct EnabledOp {
    std::uint64_t op;
};

}  // namespace run_detail

/// Runs a validated config end to end: stages apply in the canonical order,
/// each frame is keyed independently so worker count never changes the output,
/// and the manifest is written last. On failure, partial outputs are removed.
inline Manifest run(const PipelineConfig& config, const RunOptions& opts = {}) {
    validate(config);

    SequenceLayout in_layout;
    in_layout.root = config.input;
    in_layout.depth_scale = config.depth_scale;
    const Sequence seq = load_sequence(in_layout);
    const std::size_t n_input = seq.size();
    validate_against_length(config, n_input);

    const std::uint64_t seq_hash = fnv1a64(config.sequence_id);
    const RngKey base_key{config.seed, seq_hash, 0, 0};

    // Op ids go to rng-consuming stages only, in propagation order, skipping
    // disabled stages; a disabled stage therefore keys identically to one that
    // was never configured.
    std::uint64_t next_op = 0;
    const bool motion_on = config.motion && config.motion->enabled;
    const std::uint64_t motion_op = motion_on ? next_op++ : 0;
    struct ActiveRgb {
        RgbPerturbation spec;
        std::uint64_t op;
    };
    struct ActiveDepth {
        DepthPerturbation spec;
        std::uint64_t op;
    };
    std::vector<ActiveRgb> rgb_ops;
    for (const RgbStage& s : config.rgb)
        if (s.enabled) rgb_ops.push_back({s.spec, next_op++});
    std::vector<ActiveDepth> depth_ops;
    for (const DepthStage& s : config.depth)
        if (s.enabled) depth_ops.push_back({s.spec, next_op++});
    const bool desync_on = config.desync && config.desync->enabled;
    const std::uint64_t desync_op = desync_on ? next_op++ : 0;

    // Motion deviation acts on the full-rate trajectory.
    Trajectory trajectory = seq.trajectory.trajectory;
    const bool trajectory_modified =
        motion_on && (config.motion->spec.rotation_std_deg > 0.0 ||
                      config.motion->spec.translation_std_m > 0.0);
    if (motion_on)
        trajectory = perturb_trajectory(trajectory, config.motion->spec,
                                        base_key.with_op(motion_op));

    // Faster-motion downsampling selects the kept source indices.
    const bool downsample_on = config.downsample && config.downsample->enabled;
    const std::vector<std::size_t> kept =
        downsample_on ? downsample_indices(n_input, config.downsample->ratio)
                      : [&] {
                            std::vector<std::size_t> all(n_input);
                            std::iota(all.begin(), all.end(), std::size_t{0});
                            return all;
                        }();
    const std::size_t stream_len = kept.size();

    // Desynchronization remaps the delayed stream's indices.
    std::vector<int> offsets(stream_len, 0);
    bool delay_rgb = false;
    if (desync_on) {
        offsets = desync_offsets(stream_len, config.desync->spec, base_key.with_op(desync_op));
        delay_rgb = config.desync->delay_rgb;
    }
    const std::size_t out_len = offsets.size();

    // Output directory setup.
    const std::filesystem::path out_root = config.output;
    if (std::filesystem::exists(out_root)) {
        if (!opts.overwrite && !std::filesystem::is_empty(out_root))
            throw IoError("output directory " + out_root.string() +
                          " already exists; pass overwrite to replace it");
        std::filesystem::remove_all(out_root);
    }
    SequenceLayout out_layout;
    out_layout.root = out_root;
    out_layout.depth_scale = config.depth_scale;
    std::filesystem::create_directories(out_root / out_layout.rgb_dir);
    std::filesystem::create_directories(out_root / out_layout.depth_dir);

    std::vector<FrameRecord> records(out_len);
    std::mutex log_mutex;

    auto process_frame = [&](std::size_t t) {
        const std::size_t rgb_stream = delay_rgb ? t + static_cast<std::size_t>(offsets[t]) : t;
        const std::size_t depth_stream = delay_rgb ? t : t + static_cast<std::size_t>(offsets[t]);
        const std::size_t rgb_src = kept[rgb_stream];
        const std::size_t depth_src = kept[depth_stream];

        FrameRecord rec;
        rec.index = t;
        rec.rgb_source = rgb_src;
        rec.depth_source = depth_src;

        const std::filesystem::path rgb_out = out_layout.rgb_path(t);
        if (rgb_ops.empty()) {
            std::filesystem::copy_file(seq.rgb_frames[rgb_src], rgb_out);
        } else {
            RgbImage img = seq.load_rgb(rgb_src);
            for (const auto& op : rgb_ops) {
                const RngKey key{config.seed, seq_hash, rgb_stream, op.op};
                const SeverityLevel level = effective_level(op.spec, key);
                rec.rgb_levels.push_back(level.value);
                img = apply_rgb_kind(img, op.spec.kind, level, key);
            }
            write_rgb_png(rgb_out, img);
        }
        rec.rgb_digest = digest_file(rgb_out);

        const std::filesystem::path depth_out = out_layout.depth_path(t);
        if (depth_ops.empty()) {
            std::filesystem::copy_file(seq.depth_frames[depth_src], depth_out);
        } else {
            DepthMap depth = seq.load_depth(depth_src);
            for (const auto& op : depth_ops) {
                const RngKey key{config.seed, seq_hash, depth_stream, op.op};
                const SeverityLevel level = effective_level(op.spec, key);
                rec.depth_levels.push_back(level.value);
                depth = apply_depth_kind(depth, op.spec.kind, level, key);
            }
            std::size_t saturated = 0;
            write_depth_png(depth_out, depth, config.depth_scale, &saturated);
            if (saturated > 0) {
                std::lock_guard<std::mutex> lock(log_mutex);
                std::fprintf(stderr, "warning: frame %zu: %zu depth values saturated 16-bit storage\n",
                             t, saturated);
            }
        }
        rec.depth_digest = digest_file(depth_out);
        records[t] = std::move(rec);
    };

    // Worker pool over output frames; per-frame keying makes the result
    // independent of scheduling.
    {
        const int workers = run_detail::resolve_workers(opts.workers, out_len);
        std::atomic<std::size_t> cursor{0};
        std::atomic<bool> failed{false};
        std::exception_ptr first_error;
        std::mutex error_mutex;

        auto drain = [&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t t = cursor.fetch_add(1);
                if (t >= out_len) break;
                try {
                    process_frame(t);
                } catch (const Error& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::make_exception_ptr(
                            IoError("frame " + std::to_string(t) + ": " + e.what()));
                    failed = true;
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed = true;
                }
            }
        };

        if (workers == 1) {
            drain();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int i = 0; i < workers; ++i) pool.emplace_back(drain);
            for (auto& th : pool) th.join();
        }
        if (first_error) {
            std::filesystem::remove_all(out_root);
            std::rethrow_exception(first_error);
        }
    }

    // Trajectory labels follow the reference stream index t; untouched poses
    // are written back with their original bytes.
    try {
        const std::filesystem::path traj_out = out_layout.trajectory_path();
        if (trajectory_modified) {
            Trajectory out_traj;
            out_traj.poses.reserve(out_len);
            for (std::size_t t = 0; t < out_len; ++t) out_traj.poses.push_back(trajectory[kept[t]]);
            save_trajectory(traj_out, out_traj);
        } else if (!downsample_on && out_len == n_input) {
            std::filesystem::copy_file(in_layout.trajectory_path(), traj_out);
        } else {
            std::vector<std::string> lines;
            lines.reserve(out_len);
            for (std::size_t t = 0; t < out_len; ++t)
                lines.push_back(seq.trajectory.pose_lines[kept[t]]);
            save_trajectory_lines(traj_out, lines);
        }

        Manifest manifest;
        manifest.config = config_to_json(config);
        manifest.input_frames = n_input;
        manifest.output_frames = out_len;
        if (motion_on)
            manifest.stages.push_back({{"op", motion_op},
                                       {"stage", "motion_deviation"},
                                       {"rotation_std_deg", config.motion->spec.rotation_std_deg},
                                       {"translation_std_m", config.motion->spec.translation_std_m}});
        if (downsample_on)
            manifest.stages.push_back(
                {{"stage", "downsample"}, {"ratio", config.downsample->ratio}});
        for (const auto& op : rgb_ops)
            manifest.stages.push_back({{"op", op.op},
                                       {"stage", "rgb"},
                                       {"kind", to_string(op.spec.kind)},
                                       {"level", op.spec.level.value},
                                       {"mode", to_string(op.spec.mode)},
                                       {"params", severity_values(op.spec.kind, op.spec.level)}});
        for (const auto& op : depth_ops)
            manifest.stages.push_back({{"op", op.op},
                                       {"stage", "depth"},
                                       {"kind", to_string(op.spec.kind)},
                                       {"level", op.spec.level.value},
                                       {"mode", to_string(op.spec.mode)},
                                       {"params", severity_values(op.spec.kind, op.spec.level)}});
        if (desync_on)
            manifest.stages.push_back({{"op", desync_op},
                                       {"stage", "desync"},
                                       {"interval", config.desync->spec.interval},
                                       {"mode", to_string(config.desync->spec.mode)},
                                       {"delay_rgb", config.desync->delay_rgb}});
        manifest.frames = std::move(records);
        manifest.trajectory_digest = digest_file(traj_out);

        std::uint64_t combined = 0xCBF29CE484222325ull;
        for (const FrameRecord& rec : manifest.frames) {
            combined = digest_bytes(&rec.rgb_digest, sizeof(rec.rgb_digest), combined);
            combined = digest_bytes(&rec.depth_digest, sizeof(rec.depth_digest), combined);
        }
        manifest.combined_digest =
            digest_bytes(&manifest.trajectory_digest, sizeof(manifest.trajectory_digest), combined);

        save_manifest(out_root / "manifest.json", manifest);
        return manifest;
    } catch (...) {
        std::filesystem::remove_all(out_root);
        throw;
    }
}

}  // namespace noisyrgbd
