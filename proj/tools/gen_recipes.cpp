// Regenerates the shipped preset recipes: the RGB grid (16 kinds x levels
// {1,3,5} x static/dynamic), depth kinds at level 3, the motion deviation
// grid, faster-motion ratios, desync intervals and the six-stage mixture.
// Usage: gen_recipes <recipes-dir>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "noisyrgbd/core/severity.hpp"

using namespace noisyrgbd;
using nlohmann::json;

namespace {

int g_count = 0;

void write_recipe(const std::filesystem::path& dir, const std::string& name, json stages) {
    json j;
    j["input"] = "../data/fixture/seq16";
    j["output"] = "../out/" + name;
    j["seed"] = 1;
    j["sequence_id"] = "seq16";
    j["frame_rate"] = 20.0;
    j["stages"] = std::move(stages);
    std::ofstream out(dir / (name + ".json"), std::ios::trunc);
    out << j.dump(2) << "\n";
    if (!out) {
        std::cerr << "failed writing " << name << "\n";
        std::exit(1);
    }
    ++g_count;
}

std::string trim_number(double v) {
    std::string s = std::to_string(v);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: gen_recipes <recipes-dir>\n";
        return 1;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);

    // RGB imaging grid.
    for (RgbKind kind : kAllRgbKinds)
        for (int level : {1, 3, 5})
            for (const char* mode : {"static", "dynamic"}) {
                const std::string name =
                    "rgb_" + to_string(kind) + "_l" + std::to_string(level) + "_" + mode;
                write_recipe(dir, name,
                             json::array({{{"stage", "rgb"},
                                           {"kind", to_string(kind)},
                                           {"level", level},
                                           {"mode", mode}}}));
            }

    // Depth imaging at level 3.
    for (DepthKind kind : kAllDepthKinds)
        write_recipe(dir, "depth_" + to_string(kind) + "_l3",
                     json::array({{{"stage", "depth"},
                                   {"kind", to_string(kind)},
                                   {"level", 3},
                                   {"mode", "static"}}}));

    // Motion deviation grid: pure rotation, pure translation, combinations.
    const std::vector<double> rot_degs = {1.0, 3.0, 5.0};
    const std::vector<double> trans_ms = {0.0125, 0.025, 0.05};
    auto deviation_stage = [](double rot, double trans) {
        return json::array({{{"stage", "motion_deviation"},
                             {"rotation_std_deg", rot},
                             {"translation_std_m", trans}}});
    };
    for (double rot : rot_degs)
        write_recipe(dir, "deviation_r" + trim_number(rot), deviation_stage(rot, 0.0));
    for (double trans : trans_ms)
        write_recipe(dir, "deviation_t" + trim_number(trans), deviation_stage(0.0, trans));
    for (double rot : rot_degs)
        for (double trans : trans_ms)
            write_recipe(dir, "deviation_r" + trim_number(rot) + "_t" + trim_number(trans),
                         deviation_stage(rot, trans));

    // Faster motion.
    for (int ratio : {2, 4, 8})
        write_recipe(dir, "downsample_x" + std::to_string(ratio),
                     json::array({{{"stage", "downsample"}, {"ratio", ratio}}}));

    // RGB-D desynchronization.
    for (int delta : {5, 10, 20})
        for (const char* mode : {"static", "dynamic"})
            write_recipe(dir, "desync_d" + std::to_string(delta) + "_" + mode,
                         json::array({{{"stage", "desync"}, {"interval", delta}, {"mode", mode}}}));

    // Six-stage mixture at medium severity, static.
    write_recipe(
        dir, "mixed_medium_static",
        json::array(
            {{{"stage", "rgb"}, {"kind", "snow"}, {"level", 3}, {"mode", "static"}},
             {{"stage", "rgb"}, {"kind", "motion_blur"}, {"level", 3}, {"mode", "static"}},
             {{"stage", "rgb"}, {"kind", "gaussian_noise"}, {"level", 3}, {"mode", "static"}},
             {{"stage", "rgb"}, {"kind", "jpeg"}, {"level", 3}, {"mode", "static"}},
             {{"stage", "depth"}, {"kind", "gaussian_noise"}, {"level", 3}, {"mode", "static"}},
             {{"stage", "desync"}, {"interval", 10}, {"mode", "static"}}}));

    std::cout << "wrote " << g_count << " recipes to " << dir.string() << "\n";
    return 0;
}
