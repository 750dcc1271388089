#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "noisyrgbd/core/rng.hpp"
#include "noisyrgbd/core/types.hpp"
#include "noisyrgbd/perturb/filters.hpp"

namespace noisyrgbd {

/// Diamond-square plasma fractal on a wraparound grid, normalized to [0,1].
/// `decay` divides the perturbation amplitude after every subdivision, so
/// larger decay values give smoother fields.
inline Plane plasma_fractal(int size, double decay, RngStream& rng) {
    int map = 1;
    while (map < size) map *= 2;
    std::vector<double> grid(static_cast<std::size_t>(map) * map, 0.0);
    auto cell = [&](int x, int y) -> double& {
        return grid[static_cast<std::size_t>((y & (map - 1))) * map + (x & (map - 1))];
    };

    double amplitude = 1.0;
    for (int step = map; step >= 2; step /= 2) {
        const int half = step / 2;
        // Square pass: centers from the four surrounding corners.
        for (int y = 0; y < map; y += step)
            for (int x = 0; x < map; x += step) {
                const double mean = (cell(x, y) + cell(x + step, y) + cell(x, y + step) +
                                     cell(x + step, y + step)) / 4.0;
                cell(x + half, y + half) = mean + amplitude * rng.uniform(-1.0, 1.0);
            }
        // Diamond pass: edge midpoints from their four diamond neighbours.
        for (int y = 0; y < map; y += half)
            for (int x = (y / half % 2 == 0) ? half : 0; x < map; x += step) {
                const double mean = (cell(x - half, y) + cell(x + half, y) + cell(x, y - half) +
                                     cell(x, y + half)) / 4.0;
                cell(x, y) = mean + amplitude * rng.uniform(-1.0, 1.0);
            }
        amplitude /= decay;
    }

    double lo = grid[0], hi = grid[0];
    for (double v : grid) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    Plane out(map, map);
    for (int y = 0; y < map; ++y)
        for (int x = 0; x < map; ++x)
            out.at(x, y) = static_cast<float>((cell(x, y) - lo) / span);
    return out;
}

/// Fractal field cropped to (width, height).
inline Plane fractal_field(int width, int height, double decay, RngStream& rng) {
    Plane full = plasma_fractal(std::max(width, height), decay, rng);
    Plane out(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) out.at(x, y) = full.at(x, y);
    return out;
}

/// Per-pixel Gaussian field with the given mean and standard deviation.
inline Plane gaussian_field(int width, int height, double mean, double stddev, RngStream& rng) {
    Plane out(width, height);
    for (float& v : out.data) v = static_cast<float>(rng.gaussian(mean, stddev));
    return out;
}

}  // namespace noisyrgbd
