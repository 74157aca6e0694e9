#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "btps/matrix.hpp"
#include "btps/pseudomode.hpp"
#include "btps/symbol.hpp"

namespace btps {

struct ExperimentConfig {
    std::string command;           // build|pseudospec|pseudomode|numrange|szego|scaling|part0|presets
    std::string preset;            // mutually exclusive with symbol_json
    std::string symbol_json;       // raw Symbol JSON
    std::vector<int> levels;
    std::optional<std::array<double, 4>> window;  // re_min, re_max, im_min, im_max
    int nx{64};
    int ny{64};
    std::optional<cplx> lambda;
    BuildMode mode{BuildMode::Exact};
    double width{1.0};
    std::filesystem::path out_dir{"."};
    long seed{0};  // reserved; all current paths are deterministic

    void validate() const;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

struct PresetInfo {
    std::string name;
    Symbol symbol;
    MatrixFamily family;
    cplx lambda;
    std::array<double, 4> window;
    std::vector<int> levels;
};

const std::vector<std::string>& preset_names();
PresetInfo preset_registry(const std::string& name);  // UnknownPreset on miss

// Resolve the config's symbol/preset into a symbol plus a level-indexed
// matrix builder honoring the requested construction mode.
struct ResolvedExperiment {
    Symbol symbol;
    MatrixFamily family;
    cplx lambda;
    std::array<double, 4> window;
    std::vector<int> levels;
};
ResolvedExperiment resolve(const ExperimentConfig& cfg);

// Exit status: 0 success, 2 config/schema error, 3 numerical failure.
// Writes declared artifacts atomically and prints a one-line JSON summary.
int run(const ExperimentConfig& cfg);

}  // namespace btps
