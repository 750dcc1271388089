#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "noisyrgbd/core/error.hpp"

namespace noisyrgbd {

/// FNV-1a 64-bit content digest; used for reproducibility checks, not security.
inline std::uint64_t digest_bytes(const void* data, std::size_t size,
                                  std::uint64_t seed = 0xCBF29CE484222325ull) {
    const auto* bytes = static_cast<const std::uint8_t*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

inline std::uint64_t digest_file(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    return digest_bytes(bytes.data(), bytes.size());
}

inline std::string digest_hex(std::uint64_t digest) {
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[digest & 0xF];
        digest >>= 4;
    }
    return out;
}

}  // namespace noisyrgbd
