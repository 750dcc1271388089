#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "noisyrgbd/core/rng.hpp"
#include "noisyrgbd/core/types.hpp"

namespace noisyrgbd {

/// Cross-sensor frame delay. Static keeps the interval fixed; dynamic jitters
/// it by one frame, i.i.d. per frame.
struct DesyncSpec {
    int interval = 0;
    Mode mode = Mode::Static;

    void validate() const {
        if (interval < 0) throw ConfigError("desync interval must be non-negative");
    }
};

namespace desync_detail {
inline constexpr std::uint64_t kLaneJitter = 1;
}

/// Per-output-frame offsets into the delayed stream: output t pairs with the
/// delayed stream's frame t + offset[t]. Output length is n - interval in both
/// modes; dynamic jitter is clamped at the stream boundaries so every offset
/// stays addressable.
inline std::vector<int> desync_offsets(std::size_t n, const DesyncSpec& spec, const RngKey& key) {
    spec.validate();
    if (static_cast<std::size_t>(spec.interval) >= n)
        throw ParameterError("desync interval " + std::to_string(spec.interval) +
                             " must be smaller than the stream length " + std::to_string(n));
    const std::size_t out_len = n - static_cast<std::size_t>(spec.interval);
    std::vector<int> offsets(out_len, spec.interval);
    if (spec.mode == Mode::Dynamic) {
        for (std::size_t t = 0; t < out_len; ++t) {
            RngStream rng(key.with_frame(t).child(desync_detail::kLaneJitter));
            int offset = spec.interval + static_cast<int>(rng.uniform_range(-1, 1));
            const long long partner = static_cast<long long>(t) + offset;
            if (partner < 0) offset = -static_cast<int>(t);
            if (partner >= static_cast<long long>(n)) offset = static_cast<int>(n - 1 - t);
            offsets[t] = offset;
        }
    }
    return offsets;
}

/// Pairs the reference stream with the delayed one: output t is
/// (reference[t], delayed[t + offset_t]). Pose labels stay with index t, so
/// the caller keeps trajectory handling unchanged.
template <typename A, typename B>
std::vector<std::pair<A, B>> desynchronize(const std::vector<A>& reference,
                                           const std::vector<B>& delayed, const DesyncSpec& spec,
                                           const RngKey& key) {
    if (reference.size() != delayed.size())
        throw ParameterError("desynchronize requires equally long streams");
    const auto offsets = desync_offsets(reference.size(), spec, key);
    std::vector<std::pair<A, B>> out;
    out.reserve(offsets.size());
    for (std::size_t t = 0; t < offsets.size(); ++t)
        out.emplace_back(reference[t], delayed[t + static_cast<std::size_t>(offsets[t])]);
    return out;
}

}  // namespace noisyrgbd
