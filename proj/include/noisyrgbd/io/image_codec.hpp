#pragma once

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "noisyrgbd/core/error.hpp"
#include "noisyrgbd/core/types.hpp"

namespace noisyrgbd {

namespace codec_detail {

inline cv::Mat to_bgr_mat(const RgbImage& img) {
    cv::Mat mat(img.height, img.width, CV_8UC3);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            auto& px = mat.at<cv::Vec3b>(y, x);
            px[0] = img.at(x, y, 2);
            px[1] = img.at(x, y, 1);
            px[2] = img.at(x, y, 0);
        }
    return mat;
}

inline RgbImage from_bgr_mat(const cv::Mat& mat) {
    RgbImage img(mat.cols, mat.rows);
    for (int y = 0; y < mat.rows; ++y)
        for (int x = 0; x < mat.cols; ++x) {
            const auto& px = mat.at<cv::Vec3b>(y, x);
            img.at(x, y, 0) = px[2];
            img.at(x, y, 1) = px[1];
            img.at(x, y, 2) = px[0];
        }
    return img;
}

}  // namespace codec_detail

inline void write_rgb_png(const std::filesystem::path& path, const RgbImage& img) {
    if (!cv::imwrite(path.string(), codec_detail::to_bgr_mat(img)))
        throw IoError("failed to write image " + path.string());
}

inline RgbImage read_rgb_png(const std::filesystem::path& path) {
    cv::Mat mat = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (mat.empty()) throw IoError("failed to read image " + path.string());
    return codec_detail::from_bgr_mat(mat);
}

/// Depth stored as 16-bit single channel PNG; value = meters * scale, 0 = VOID.
/// Values beyond the 16-bit range saturate with a warning via `saturated`.
inline void write_depth_png(const std::filesystem::path& path, const DepthMap& depth, double scale,
                            std::size_t* saturated = nullptr) {
    cv::Mat mat(depth.height, depth.width, CV_16UC1);
    std::size_t clipped = 0;
    for (int y = 0; y < depth.height; ++y)
        for (int x = 0; x < depth.width; ++x) {
            const float d = depth.at(x, y);
            std::uint16_t stored = 0;
            if (!is_void(d)) {
                const double v = std::round(static_cast<double>(d) * scale);
                if (v >= 65535.0) {
                    stored = 65535;
                    ++clipped;
                } else if (v < 1.0) {
                    stored = 1;  // keep tiny positive depths distinct from VOID
                } else {
                    stored = static_cast<std::uint16_t>(v);
                }
            }
            mat.at<std::uint16_t>(y, x) = stored;
        }
    if (saturated) *saturated = clipped;
    if (!cv::imwrite(path.string(), mat))
        throw IoError("failed to write depth image " + path.string());
}

inline DepthMap read_depth_png(const std::filesystem::path& path, double scale) {
    cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (mat.empty()) throw IoError("failed to read depth image " + path.string());
    if (mat.type() != CV_16UC1)
        throw IoError("depth image " + path.string() + " is not 16-bit single channel");
    DepthMap depth(mat.cols, mat.rows);
    for (int y = 0; y < mat.rows; ++y)
        for (int x = 0; x < mat.cols; ++x) {
            const std::uint16_t stored = mat.at<std::uint16_t>(y, x);
            depth.at(x, y) = stored == 0 ? kVoidDepth : static_cast<float>(stored / scale);
        }
    return depth;
}

/// In-memory JPEG encode/decode round trip at the given quality (1..100).
inline RgbImage jpeg_roundtrip(const RgbImage& img, int quality) {
    std::vector<std::uint8_t> buffer;
    const std::vector<int> params = {cv::IMWRITE_JPEG_QUALITY, quality};
    if (!cv::imencode(".jpg", codec_detail::to_bgr_mat(img), buffer, params))
        throw IoError("JPEG encoding failed");
    cv::Mat decoded = cv::imdecode(buffer, cv::IMREAD_COLOR);
    if (decoded.empty()) throw IoError("JPEG decoding failed");
    return codec_detail::from_bgr_mat(decoded);
}

}  // namespace noisyrgbd
