#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "noisyrgbd/core/error.hpp"
#include "noisyrgbd/core/types.hpp"

namespace noisyrgbd {

/// Square convolution kernel with odd side length.
struct Kernel {
    int radius = 0;  // side = 2 * radius + 1
    std::vector<float> weights;

    int side() const { return 2 * radius + 1; }
    float at(int kx, int ky) const {
        return weights[static_cast<std::size_t>(ky + radius) * side() + (kx + radius)];
    }
    float& at(int kx, int ky) {
        return weights[static_cast<std::size_t>(ky + radius) * side() + (kx + radius)];
    }

    void normalize() {
        double sum = 0.0;
        for (float w : weights) sum += w;
        if (sum <= 0.0) throw ParameterError("kernel weights sum to zero");
        for (float& w : weights) w = static_cast<float>(w / sum);
    }
};

namespace filt {

/// Symmetric (half-sample) reflection: ... c b a | a b c ...
inline int reflect(int i, int n) {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

inline std::vector<float> gaussian_taps(double sigma, int radius) {
    std::vector<float> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
        taps[static_cast<std::size_t>(i + radius)] = static_cast<float>(w);
        sum += w;
    }
    for (float& w : taps) w = static_cast<float>(w / sum);
    return taps;
}

inline int gaussian_radius(double sigma) { return std::max(1, static_cast<int>(std::ceil(3.0 * sigma))); }

}  // namespace filt

/// Separable Gaussian blur with reflect padding.
inline FloatImage gaussian_blur(const FloatImage& img, double sigma) {
    if (sigma <= 0.0) return img;
    const int radius = filt::gaussian_radius(sigma);
    const auto taps = filt::gaussian_taps(sigma, radius);

    FloatImage tmp(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c) {
                float acc = 0.0f;
                for (int k = -radius; k <= radius; ++k)
                    acc += taps[static_cast<std::size_t>(k + radius)] *
                           img.at(filt::reflect(x + k, img.width), y, c);
                tmp.at(x, y, c) = acc;
            }
    FloatImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c) {
                float acc = 0.0f;
                for (int k = -radius; k <= radius; ++k)
                    acc += taps[static_cast<std::size_t>(k + radius)] *
                           tmp.at(x, filt::reflect(y + k, img.height), c);
                out.at(x, y, c) = acc;
            }
    return out;
}

inline Plane gaussian_blur(const Plane& field, double sigma) {
    if (sigma <= 0.0) return field;
    const int radius = filt::gaussian_radius(sigma);
    const auto taps = filt::gaussian_taps(sigma, radius);

    Plane tmp(field.width, field.height);
    for (int y = 0; y < field.height; ++y)
        for (int x = 0; x < field.width; ++x) {
            float acc = 0.0f;
            for (int k = -radius; k <= radius; ++k)
                acc += taps[static_cast<std::size_t>(k + radius)] *
                       field.at(filt::reflect(x + k, field.width), y);
            tmp.at(x, y) = acc;
        }
    Plane out(field.width, field.height);
    for (int y = 0; y < field.height; ++y)
        for (int x = 0; x < field.width; ++x) {
            float acc = 0.0f;
            for (int k = -radius; k <= radius; ++k)
                acc += taps[static_cast<std::size_t>(k + radius)] *
                       tmp.at(x, filt::reflect(y + k, field.height));
            out.at(x, y) = acc;
        }
    return out;
}

/// Dense 2D convolution with reflect padding. The kernel must fit the image.
inline FloatImage convolve(const FloatImage& img, const Kernel& kernel) {
    if (kernel.side() > std::min(img.width, img.height))
        throw ParameterError("convolution kernel larger than image");
    FloatImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            float acc[3] = {0.0f, 0.0f, 0.0f};
            for (int ky = -kernel.radius; ky <= kernel.radius; ++ky) {
                const int sy = filt::reflect(y + ky, img.height);
                for (int kx = -kernel.radius; kx <= kernel.radius; ++kx) {
                    const int sx = filt::reflect(x + kx, img.width);
                    const float w = kernel.at(kx, ky);
                    if (w == 0.0f) continue;
                    for (int c = 0; c < 3; ++c) acc[c] += w * img.at(sx, sy, c);
                }
            }
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = acc[c];
        }
    return out;
}

inline Plane convolve(const Plane& field, const Kernel& kernel) {
    if (kernel.side() > std::min(field.width, field.height))
        throw ParameterError("convolution kernel larger than image");
    Plane out(field.width, field.height);
    for (int y = 0; y < field.height; ++y)
        for (int x = 0; x < field.width; ++x) {
            float acc = 0.0f;
            for (int ky = -kernel.radius; ky <= kernel.radius; ++ky) {
                const int sy = filt::reflect(y + ky, field.height);
                for (int kx = -kernel.radius; kx <= kernel.radius; ++kx) {
                    const float w = kernel.at(kx, ky);
                    if (w == 0.0f) continue;
                    acc += w * field.at(filt::reflect(x + kx, field.width), sy);
                }
            }
            out.at(x, y) = acc;
        }
    return out;
}

/// Normalized circular disc (bokeh) kernel, softened by a small Gaussian to
/// suppress aliasing on the disc boundary.
inline Kernel disc_kernel(double radius, double alias_blur) {
    const int r = std::max(1, static_cast<int>(std::ceil(radius)));
    Kernel k;
    k.radius = r;
    k.weights.assign(static_cast<std::size_t>(k.side()) * k.side(), 0.0f);
    for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x)
            if (static_cast<double>(x) * x + static_cast<double>(y) * y <= radius * radius)
                k.at(x, y) = 1.0f;
    if (alias_blur > 0.0) {
        const int gr = filt::gaussian_radius(alias_blur);
        const auto taps = filt::gaussian_taps(alias_blur, gr);
        Kernel blurred;
        blurred.radius = r;
        blurred.weights.assign(k.weights.size(), 0.0f);
        // Separable blur over the kernel footprint, clamping taps to it.
        std::vector<float> tmp(k.weights.size(), 0.0f);
        const int side = k.side();
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x) {
                float acc = 0.0f;
                for (int t = -gr; t <= gr; ++t) {
                    const int sx = std::clamp(x + t, 0, side - 1);
                    acc += taps[static_cast<std::size_t>(t + gr)] *
                           k.weights[static_cast<std::size_t>(y) * side + sx];
                }
                tmp[static_cast<std::size_t>(y) * side + x] = acc;
            }
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x) {
                float acc = 0.0f;
                for (int t = -gr; t <= gr; ++t) {
                    const int sy = std::clamp(y + t, 0, side - 1);
                    acc += taps[static_cast<std::size_t>(t + gr)] *
                           tmp[static_cast<std::size_t>(sy) * side + x];
                }
                blurred.weights[static_cast<std::size_t>(y) * side + x] = acc;
            }
        k = blurred;
    }
    k.normalize();
    return k;
}

/// Normalized linear kernel: Gaussian weights along a line at `angle`,
/// rasterized with bilinear splatting.
inline Kernel line_kernel(double radius, double sigma, double angle) {
    const int r = std::max(1, static_cast<int>(std::ceil(radius)));
    Kernel k;
    k.radius = r;
    k.weights.assign(static_cast<std::size_t>(k.side()) * k.side(), 0.0f);
    const double dx = std::cos(angle);
    const double dy = std::sin(angle);
    const int steps = 4 * r;  // oversample the line
    for (int i = -steps; i <= steps; ++i) {
        const double s = radius * static_cast<double>(i) / steps;
        const double w = std::exp(-0.5 * s * s / (sigma * sigma));
        const double px = s * dx + r;
        const double py = s * dy + r;
        const int x0 = static_cast<int>(std::floor(px));
        const int y0 = static_cast<int>(std::floor(py));
        const double fx = px - x0;
        const double fy = py - y0;
        const int side = k.side();
        auto splat = [&](int x, int y, double ww) {
            if (x >= 0 && x < side && y >= 0 && y < side)
                k.weights[static_cast<std::size_t>(y) * side + x] += static_cast<float>(ww);
        };
        splat(x0, y0, w * (1 - fx) * (1 - fy));
        splat(x0 + 1, y0, w * fx * (1 - fy));
        splat(x0, y0 + 1, w * (1 - fx) * fy);
        splat(x0 + 1, y0 + 1, w * fx * fy);
    }
    k.normalize();
    return k;
}

/// Box-average downsample to (nw, nh); each target pixel averages its exact
/// (fractional) source footprint.
inline FloatImage box_resize(const FloatImage& img, int nw, int nh) {
    FloatImage out(nw, nh);
    const double sx = static_cast<double>(img.width) / nw;
    const double sy = static_cast<double>(img.height) / nh;
    for (int y = 0; y < nh; ++y) {
        const double y0 = y * sy, y1 = (y + 1) * sy;
        for (int x = 0; x < nw; ++x) {
            const double x0 = x * sx, x1 = (x + 1) * sx;
            double acc[3] = {0, 0, 0};
            double area = 0.0;
            for (int yy = static_cast<int>(y0); yy < static_cast<int>(std::ceil(y1)); ++yy) {
                const double hy = std::min<double>(y1, yy + 1) - std::max<double>(y0, yy);
                if (hy <= 0) continue;
                for (int xx = static_cast<int>(x0); xx < static_cast<int>(std::ceil(x1)); ++xx) {
                    const double wx = std::min<double>(x1, xx + 1) - std::max<double>(x0, xx);
                    if (wx <= 0) continue;
                    const double w = wx * hy;
                    for (int c = 0; c < 3; ++c)
                        acc[c] += w * img.at(std::min(xx, img.width - 1), std::min(yy, img.height - 1), c);
                    area += w;
                }
            }
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<float>(acc[c] / area);
        }
    }
    return out;
}

inline FloatImage nearest_resize(const FloatImage& img, int nw, int nh) {
    FloatImage out(nw, nh);
    for (int y = 0; y < nh; ++y) {
        const int sy = std::min(static_cast<int>((y + 0.5) * img.height / nh), img.height - 1);
        for (int x = 0; x < nw; ++x) {
            const int sx = std::min(static_cast<int>((x + 0.5) * img.width / nw), img.width - 1);
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(sx, sy, c);
        }
    }
    return out;
}

inline Plane bilinear_resize(const Plane& field, int nw, int nh) {
    Plane out(nw, nh);
    const double sx = static_cast<double>(field.width) / nw;
    const double sy = static_cast<double>(field.height) / nh;
    for (int y = 0; y < nh; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, field.height - 1.0);
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, field.height - 1);
        const float wy = static_cast<float>(fy - y0);
        for (int x = 0; x < nw; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, field.width - 1.0);
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, field.width - 1);
            const float wx = static_cast<float>(fx - x0);
            out.at(x, y) = (1 - wy) * ((1 - wx) * field.at(x0, y0) + wx * field.at(x1, y0)) +
                           wy * ((1 - wx) * field.at(x0, y1) + wx * field.at(x1, y1));
        }
    }
    return out;
}

/// Central zoom: crop the middle 1/zoom portion and scale it back up.
inline Plane center_zoom(const Plane& field, double zoom) {
    if (zoom <= 1.0) return field;
    const int cw = std::max(1, static_cast<int>(std::round(field.width / zoom)));
    const int ch = std::max(1, static_cast<int>(std::round(field.height / zoom)));
    const int x0 = (field.width - cw) / 2;
    const int y0 = (field.height - ch) / 2;
    Plane crop(cw, ch);
    for (int y = 0; y < ch; ++y)
        for (int x = 0; x < cw; ++x) crop.at(x, y) = field.at(x0 + x, y0 + y);
    return bilinear_resize(crop, field.width, field.height);
}

}  // namespace noisyrgbd
