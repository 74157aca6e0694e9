#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "btps/runner.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"btps: quantized-matrix families, pseudospectra and pseudomodes"};
    app.require_subcommand(1);

    btps::ExperimentConfig cfg;
    std::string preset, symbol_file, levels, window, grid, lambda, mode = "exact", out = ".";
    double width = 1.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--preset", preset, "named preset configuration");
        sub->add_option("--symbol", symbol_file, "symbol JSON file");
        sub->add_option("--levels", levels, "comma-separated level list, e.g. 32,64,128");
        sub->add_option("--window", window, "re_min,re_max,im_min,im_max");
        sub->add_option("--grid", grid, "nx,ny");
        sub->add_option("--lambda", lambda, "re,im");
        sub->add_option("--mode", mode, "exact|leading")
            ->check(CLI::IsMember({"exact", "leading"}));
        sub->add_option("--width", width, "Gaussian width parameter");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--seed", cfg.seed, "reserved; runs are deterministic");
    };
    for (const char* name : {"build", "pseudospec", "pseudomode", "numrange", "szego",
                             "scaling", "part0", "presets"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.preset = preset;
        if (!symbol_file.empty()) {
            std::ifstream in(symbol_file);
            if (!in) {
                std::cerr << "cannot read symbol file: " << symbol_file << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            cfg.symbol_json = buf.str();
        }
        if (!levels.empty()) cfg.levels = parse_int_list(levels);
        if (!window.empty()) {
            auto w = parse_double_list(window);
            if (w.size() != 4) throw btps::ConfigError("--window needs 4 numbers");
            cfg.window = std::array<double, 4>{w[0], w[1], w[2], w[3]};
        }
        if (!grid.empty()) {
            auto g = parse_int_list(grid);
            if (g.size() != 2) throw btps::ConfigError("--grid needs 2 integers");
            cfg.nx = g[0];
            cfg.ny = g[1];
        }
        if (!lambda.empty()) {
            auto l = parse_double_list(lambda);
            if (l.size() != 2) throw btps::ConfigError("--lambda needs 2 numbers");
            cfg.lambda = btps::cplx(l[0], l[1]);
        }
        cfg.mode = mode == "leading" ? btps::BuildMode::Leading : btps::BuildMode::Exact;
        cfg.width = width;
        cfg.out_dir = out;
    } catch (const std::exception& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    return btps::run(cfg);
}
