#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "noisyrgbd/perturb/rgb.hpp"

using namespace noisyrgbd;

namespace {

RgbImage constant_image(int w, int h, std::uint8_t value) { return RgbImage(w, h, value); }

double channel_mean(const RgbImage& img) {
    double sum = 0.0;
    for (std::uint8_t v : img.data) sum += v / 255.0;
    return sum / static_cast<double>(img.data.size());
}

double channel_std(const RgbImage& img) {
    const double mean = channel_mean(img);
    double sum_sq = 0.0;
    for (std::uint8_t v : img.data) {
        const double d = v / 255.0 - mean;
        sum_sq += d * d;
    }
    return std::sqrt(sum_sq / static_cast<double>(img.data.size()));
}

const RngKey kKey = RngKey::make(77, "rgb-tests", 0, 0);

}  // namespace

TEST_CASE("speckle noise on an all-zero image is the identity") {
    const RgbImage zero = constant_image(64, 48, 0);
    for (int l = 1; l <= 5; ++l)
        CHECK(rgb_speckle_noise(zero, SeverityLevel(l), kKey) == zero);
}

TEST_CASE("impulse noise level 3 salt/pepper rates on a large constant image") {
    const RgbImage img = constant_image(640, 480, 128);
    const RgbImage out = rgb_impulse_noise(img, SeverityLevel(3), kKey);
    std::size_t black = 0, white = 0;
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) {
            if (out.at(x, y, 0) == 0 && out.at(x, y, 1) == 0 && out.at(x, y, 2) == 0) ++black;
            if (out.at(x, y, 0) == 255 && out.at(x, y, 1) == 255 && out.at(x, y, 2) == 255) ++white;
        }
    const double n = static_cast<double>(out.pixel_count());
    // amount 0.09 splits evenly between minimum and maximum intensity
    CHECK(black / n == Catch::Approx(0.045).margin(0.005));
    CHECK(white / n == Catch::Approx(0.045).margin(0.005));
}

TEST_CASE("gaussian noise level 1 empirical std matches the table scale") {
    const RgbImage img = constant_image(1024, 1024, 128);  // >= 1e6 pixels
    const RgbImage out = rgb_gaussian_noise(img, SeverityLevel(1), kKey);
    const double std_dev = channel_std(out);
    CHECK(std_dev >= 0.075);
    CHECK(std_dev <= 0.085);
}

TEST_CASE("shot noise empirical variance tracks the Poisson model") {
    // var(I') = I / photons for I' = Poisson(I * photons) / photons
    const RgbImage img = constant_image(512, 512, 128);
    const double I = 128.0 / 255.0;
    const double photons = shot_noise_photons(SeverityLevel(2));
    const RgbImage out = rgb_shot_noise(img, SeverityLevel(2), kKey);
    const double expected_std = std::sqrt(I / photons);
    CHECK(channel_std(out) == Catch::Approx(expected_std).epsilon(0.05));
}

TEST_CASE("blur kinds preserve constant images exactly") {
    const RgbImage img = constant_image(64, 48, 201);  // fits the level-5 motion kernel
    for (int l = 1; l <= 5; ++l) {
        const SeverityLevel level(l);
        CHECK(rgb_gaussian_blur(img, level) == img);
        CHECK(rgb_defocus_blur(img, level) == img);
        CHECK(rgb_motion_blur(img, level, kKey) == img);
        CHECK(rgb_glass_blur(img, level, kKey) == img);
    }
}

TEST_CASE("gaussian blur of a unit impulse matches the direct-summation kernel oracle") {
    RgbImage img(33, 33, 0);
    img.at(16, 16, 0) = img.at(16, 16, 1) = img.at(16, 16, 2) = 255;
    const RgbImage out = rgb_gaussian_blur(img, SeverityLevel(1));

    // Oracle: brute-force 2D kernel, normalized by direct summation.
    const double sigma = gaussian_blur_sigma(SeverityLevel(1));
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    double total = 0.0;
    for (int y = -radius; y <= radius; ++y)
        for (int x = -radius; x <= radius; ++x)
            total += std::exp(-0.5 * (x * x + y * y) / (sigma * sigma));
    const double peak = 1.0 / total;  // exp(0) / total

    CHECK(static_cast<double>(out.at(16, 16, 0)) == Catch::Approx(peak * 255.0).margin(1.0));
}

TEST_CASE("kernel larger than the image raises a parameter error") {
    const RgbImage tiny = constant_image(8, 8, 10);
    CHECK_THROWS_AS(rgb_defocus_blur(tiny, SeverityLevel(5)), ParameterError);
}

TEST_CASE("fog with zero thickness is the identity") {
    RgbImage img(32, 24);
    RngStream rng(kKey);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_int(256));
    const RgbImage out = rgb_fog_with(img, FogParams{0.0, 2.0}, kKey);
    CHECK(out == img);
}

TEST_CASE("fog on a black image brightens it but never beyond the fog gray") {
    const RgbImage img = constant_image(64, 64, 0);
    const RgbImage out = rgb_fog(img, SeverityLevel(3), kKey);
    CHECK(channel_mean(out) > 0.0);
    for (std::uint8_t v : out.data) CHECK(v <= static_cast<std::uint8_t>(0.7 * 255 + 1));
}

TEST_CASE("environmental kinds keep dimensions and are deterministic") {
    RgbImage img(40, 30);
    RngStream rng(kKey);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_int(256));
    for (RgbKind kind : {RgbKind::Snow, RgbKind::Frost, RgbKind::Fog, RgbKind::Spatter}) {
        const RgbImage a = apply_environment(img, kind, SeverityLevel(3), kKey);
        const RgbImage b = apply_environment(img, kind, SeverityLevel(3), kKey);
        CHECK(a.width == img.width);
        CHECK(a.height == img.height);
        CHECK(a == b);
    }
}

TEST_CASE("snow writes brighter pixels on a dark image") {
    const RgbImage img = constant_image(64, 64, 20);
    const RgbImage out = rgb_snow(img, SeverityLevel(3), kKey);
    CHECK(channel_mean(out) > channel_mean(img));
}

TEST_CASE("contrast about the mean is the identity on constant images") {
    const RgbImage img = constant_image(32, 32, 97);
    for (int l = 1; l <= 5; ++l) CHECK(rgb_contrast(img, SeverityLevel(l)) == img);
}

TEST_CASE("contrast scales deviations from the per-channel mean") {
    RgbImage img(2, 1);
    img.at(0, 0, 0) = 100;
    img.at(1, 0, 0) = 200;  // mean 150
    img.at(0, 0, 1) = img.at(1, 0, 1) = 50;
    img.at(0, 0, 2) = img.at(1, 0, 2) = 250;
    const RgbImage out = rgb_contrast(img, SeverityLevel(3));  // beta 0.2
    CHECK(static_cast<int>(out.at(0, 0, 0)) == 140);  // 0.2*(100-150)+150
    CHECK(static_cast<int>(out.at(1, 0, 0)) == 160);
    CHECK(static_cast<int>(out.at(0, 0, 1)) == 50);   // constant channel unchanged
    CHECK(static_cast<int>(out.at(0, 0, 2)) == 250);
}

TEST_CASE("brightness level 5 saturates a 0.6 image to white") {
    const RgbImage img = constant_image(16, 16, 153);  // 0.6
    const RgbImage out = rgb_brightness(img, SeverityLevel(5));
    for (std::uint8_t v : out.data) CHECK(v == 255);
}

TEST_CASE("pixelate box-averages blocks then upsamples nearest") {
    // 8x8 image, four 4x4 quadrants with known means; factor 0.25 reduces to
    // 2x2, so each quadrant collapses to its box average.
    RgbImage img(8, 8);
    auto fill = [&](int x0, int y0, std::uint8_t a, std::uint8_t b) {
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x) {
                const std::uint8_t v = (x + y) % 2 == 0 ? a : b;
                img.at(x0 + x, y0 + y, 0) = v;
                img.at(x0 + x, y0 + y, 1) = v;
                img.at(x0 + x, y0 + y, 2) = v;
            }
    };
    fill(0, 0, 10, 30);    // mean 20
    fill(4, 0, 100, 140);  // mean 120
    fill(0, 4, 200, 240);  // mean 220
    fill(4, 4, 60, 80);    // mean 70

    const RgbImage out = rgb_pixelate(img, SeverityLevel(5));
    auto quadrant_constant = [&](int x0, int y0, int expected) {
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x)
                if (std::abs(static_cast<int>(out.at(x0 + x, y0 + y, 0)) - expected) > 1)
                    return false;
        return true;
    };
    CHECK(quadrant_constant(0, 0, 20));
    CHECK(quadrant_constant(4, 0, 120));
    CHECK(quadrant_constant(0, 4, 220));
    CHECK(quadrant_constant(4, 4, 70));
}

TEST_CASE("jpeg round trip keeps dimensions and is deterministic") {
    RgbImage img(48, 32);
    RngStream rng(kKey);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_int(256));
    const RgbImage a = rgb_jpeg(img, SeverityLevel(5));
    const RgbImage b = rgb_jpeg(img, SeverityLevel(5));
    CHECK(a.width == img.width);
    CHECK(a.height == img.height);
    CHECK(a == b);
}

TEST_CASE("noise variance is non-decreasing in severity level") {
    const RgbImage img = constant_image(512, 512, 128);
    for (RgbKind kind : {RgbKind::GaussianNoise, RgbKind::ShotNoise, RgbKind::ImpulseNoise,
                         RgbKind::SpeckleNoise}) {
        double prev = -1.0;
        for (int l = 1; l <= 5; ++l) {
            const double s = channel_std(add_noise(img, kind, SeverityLevel(l), kKey));
            INFO(to_string(kind) << " level " << l);
            CHECK(s >= prev);
            prev = s;
        }
    }
}

TEST_CASE("every kind/level is deterministic under a fixed key and keeps dimensions") {
    RgbImage img(64, 48);
    RngStream rng(kKey);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_int(256));
    for (RgbKind kind : kAllRgbKinds)
        for (int l : {1, 3, 5}) {
            const RgbImage a = apply_rgb_kind(img, kind, SeverityLevel(l), kKey);
            const RgbImage b = apply_rgb_kind(img, kind, SeverityLevel(l), kKey);
            INFO(to_string(kind) << " level " << l);
            CHECK(a.width == img.width);
            CHECK(a.height == img.height);
            CHECK(a == b);
        }
}

TEST_CASE("static mode re-keys stochastic draws per frame") {
    const RgbImage img = constant_image(32, 32, 128);
    const RgbPerturbation spec{RgbKind::GaussianNoise, SeverityLevel(3), Mode::Static};
    const RgbImage f0 = apply_rgb(img, spec, kKey.with_frame(0));
    const RgbImage f1 = apply_rgb(img, spec, kKey.with_frame(1));
    CHECK_FALSE(f0 == f1);
}

TEST_CASE("static mode with deterministic kinds repeats identically across frames") {
    RgbImage img(32, 32);
    RngStream rng(kKey);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.uniform_int(256));
    const RgbPerturbation spec{RgbKind::Contrast, SeverityLevel(2), Mode::Static};
    CHECK(apply_rgb(img, spec, kKey.with_frame(0)) == apply_rgb(img, spec, kKey.with_frame(1)));
}

TEST_CASE("dynamic mode at level 1 jitters within {1,2} and hits both") {
    const RgbPerturbation spec{RgbKind::GaussianNoise, SeverityLevel(1), Mode::Dynamic};
    std::set<int> seen;
    for (int f = 0; f < 10'000; ++f)
        seen.insert(effective_level(spec, kKey.with_frame(static_cast<std::uint64_t>(f))).value);
    CHECK(seen == std::set<int>{1, 2});
}

TEST_CASE("dynamic mode at level 3 jitters uniformly over {2,3,4}") {
    const RgbPerturbation spec{RgbKind::GaussianNoise, SeverityLevel(3), Mode::Dynamic};
    int counts[6] = {0, 0, 0, 0, 0, 0};
    const int n = 30'000;
    for (int f = 0; f < n; ++f)
        ++counts[effective_level(spec, kKey.with_frame(static_cast<std::uint64_t>(f))).value];
    for (int l : {2, 3, 4})
        CHECK(static_cast<double>(counts[l]) / n == Catch::Approx(1.0 / 3.0).margin(0.02));
}
