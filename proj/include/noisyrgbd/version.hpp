#pragma once

namespace noisyrgbd {

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace noisyrgbd
