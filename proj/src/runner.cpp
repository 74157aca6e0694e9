#include "btps/runner.hpp"

#include <iostream>

#include <nlohmann/json.hpp>

#include "btps/bargmann.hpp"
#include "btps/io.hpp"
#include "btps/sphere.hpp"
#include "btps/spectral.hpp"
#include "btps/torus.hpp"

namespace btps {

namespace {

using nlohmann::json;

const std::vector<std::string> kCommands = {"build",  "pseudospec", "pseudomode", "numrange",
                                            "szego",  "scaling",    "part0",      "presets"};

bool known_command(const std::string& c) {
    for (const auto& k : kCommands)
        if (k == c) return true;
    return false;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!known_command(command)) throw ConfigError("config: unknown command '" + command + "'");
    if (!preset.empty() && !symbol_json.empty())
        throw ConfigError("config: preset and symbol are mutually exclusive");
    if (command != "presets" && preset.empty() && symbol_json.empty())
        throw ConfigError("config: need a preset or a symbol");
    const bool needs_levels = command != "presets";
    if (needs_levels && levels.empty() && preset.empty())
        throw ConfigError("config: levels required (field 'levels')");
    for (int N : levels)
        if (N < 1) throw ConfigError("config: levels must be >= 1");
    if (window && ((*window)[1] < (*window)[0] || (*window)[3] < (*window)[2]))
        throw ConfigError("config: window must be [re_min, re_max, im_min, im_max]");
    if (nx < 2 || ny < 2) throw ConfigError("config: grid counts must be >= 2");
    if (width <= 0.0) throw ConfigError("config: width must be > 0");
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: expected object");
    static const std::vector<std::string> known = {"v",      "command", "preset", "symbol",
                                                   "levels", "window",  "grid",   "lambda",
                                                   "mode",   "width",   "out",    "seed"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw ConfigError("config: unknown field '" + it.key() + "'");
    if (j.value("v", 1) != 1) throw ConfigError("config: unsupported schema version (field 'v')");

    ExperimentConfig cfg;
    cfg.command = j.value("command", "");
    cfg.preset = j.value("preset", "");
    if (j.contains("symbol")) cfg.symbol_json = j["symbol"].dump();
    if (j.contains("levels")) cfg.levels = j["levels"].get<std::vector<int>>();
    if (j.contains("window")) {
        auto w = j["window"].get<std::vector<double>>();
        if (w.size() != 4) throw ConfigError("config: window must have 4 entries");
        cfg.window = std::array<double, 4>{w[0], w[1], w[2], w[3]};
    }
    if (j.contains("grid")) {
        auto g = j["grid"].get<std::vector<int>>();
        if (g.size() != 2) throw ConfigError("config: grid must be [nx, ny]");
        cfg.nx = g[0];
        cfg.ny = g[1];
    }
    if (j.contains("lambda")) {
        auto l = j["lambda"].get<std::vector<double>>();
        if (l.size() != 2) throw ConfigError("config: lambda must be [re, im]");
        cfg.lambda = cplx(l[0], l[1]);
    }
    if (j.contains("mode")) {
        std::string m = j["mode"].get<std::string>();
        if (m == "exact")
            cfg.mode = BuildMode::Exact;
        else if (m == "leading")
            cfg.mode = BuildMode::Leading;
        else
            throw ConfigError("config: mode must be exact|leading (field 'mode')");
    }
    cfg.width = j.value("width", 1.0);
    cfg.out_dir = j.value("out", std::string("."));
    cfg.seed = j.value("seed", 0L);
    cfg.validate();
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["v"] = 1;
    j["command"] = cfg.command;
    if (!cfg.preset.empty()) j["preset"] = cfg.preset;
    if (!cfg.symbol_json.empty()) j["symbol"] = json::parse(cfg.symbol_json);
    if (!cfg.levels.empty()) j["levels"] = cfg.levels;
    if (cfg.window) j["window"] = *cfg.window;
    j["grid"] = {cfg.nx, cfg.ny};
    if (cfg.lambda) j["lambda"] = {cfg.lambda->real(), cfg.lambda->imag()};
    j["mode"] = mode_name(cfg.mode);
    j["width"] = cfg.width;
    j["out"] = cfg.out_dir.string();
    j["seed"] = cfg.seed;
    return j.dump();
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"bargmann-mu05", "sphere-linear-t1",
                                                   "torus-scottish", "torus-twisted",
                                                   "sphere-x3"};
    return names;
}

PresetInfo preset_registry(const std::string& name) {
    if (name == "bargmann-mu05") {
        PlaneSymbol f{0.5, 1.0, 0.0};
        return {name, Symbol(f), [](int N) { return model_matrix(0.5, N); },
                cplx(0.0, 0.0), {-1.8, 1.8, -0.8, 0.8}, {20, 40, 80, 160}};
    }
    if (name == "sphere-linear-t1") {
        return {name, Symbol(linear_hamiltonian_symbol(1.0)),
                [](int N) { return linear_hamiltonian(1.0, N); },
                cplx(0.5 * std::cosh(1.0), 0.0), {-0.9, 0.9, -0.7, 0.7},
                {32, 64, 128, 256, 512}};
    }
    if (name == "torus-scottish") {
        // f = 2 cos 2 pi x + 2 i cos 2 pi y
        TorusSymbol f;
        f.set_coeff(1, 0, 1.0);
        f.set_coeff(-1, 0, 1.0);
        f.set_coeff(0, 1, cplx(0.0, 1.0));
        f.set_coeff(0, -1, cplx(0.0, 1.0));
        return {name, Symbol(f),
                [f](int N) { return build_torus(f, N, BuildMode::Exact); },
                cplx(0.0, 0.0), {-2.5, 2.5, -2.5, 2.5}, {16, 32, 64}};
    }
    if (name == "torus-twisted") {
        // f = e^{2 pi i x} + 0.5 e^{-2 pi i y}; lambda defaults to the value at
        // the center where {Re f, Im f} < 0.
        TorusSymbol f;
        f.set_coeff(1, 0, 1.0);
        f.set_coeff(0, -1, 0.5);
        cplx lambda = f.eval(0.375, 0.375);
        return {name, Symbol(f),
                [f](int N) { return build_torus(f, N, BuildMode::Exact); },
                lambda, {-2.0, 2.0, -2.0, 2.0}, {32, 64, 128, 256}};
    }
    if (name == "sphere-x3") {
        SphereSymbol f = SphereSymbol::monomial(0, 0, 1);
        return {name, Symbol(f), [f](int N) { return build_sphere(f, N); },
                cplx(0.7, 0.0), {-0.8, 0.8, -0.5, 0.5}, {32, 64, 128, 256}};
    }
    throw UnknownPreset("unknown preset '" + name + "'");
}

ResolvedExperiment resolve(const ExperimentConfig& cfg) {
    ResolvedExperiment rx;
    if (!cfg.preset.empty()) {
        PresetInfo p = preset_registry(cfg.preset);
        rx.symbol = p.symbol;
        rx.family = p.family;
        rx.lambda = cfg.lambda.value_or(p.lambda);
        rx.window = cfg.window.value_or(p.window);
        rx.levels = cfg.levels.empty() ? p.levels : cfg.levels;
        if (cfg.mode == BuildMode::Leading) {
            if (space_of(rx.symbol) != Space::Torus)
                throw ConfigError("config: leading mode applies to torus symbols only");
            TorusSymbol f = std::get<TorusSymbol>(rx.symbol);
            rx.family = [f](int N) { return build_torus(f, N, BuildMode::Leading); };
        }
        return rx;
    }
    rx.symbol = symbol_from_json(cfg.symbol_json);
    rx.lambda = cfg.lambda.value_or(cplx(0.0, 0.0));
    rx.window = cfg.window.value_or(std::array<double, 4>{-2.0, 2.0, -2.0, 2.0});
    rx.levels = cfg.levels;
    switch (space_of(rx.symbol)) {
        case Space::Torus: {
            TorusSymbol f = std::get<TorusSymbol>(rx.symbol);
            BuildMode mode = cfg.mode;
            rx.family = [f, mode](int N) { return build_torus(f, N, mode); };
            break;
        }
        case Space::Sphere: {
            SphereSymbol f = std::get<SphereSymbol>(rx.symbol);
            rx.family = [f](int N) { return build_sphere(f, N); };
            break;
        }
        case Space::PlaneDisk: {
            const PlaneSymbol& f = std::get<PlaneSymbol>(rx.symbol);
            if (std::abs(f.nu - 1.0) > 1e-12 || std::abs(f.kappa) > 1e-12 ||
                std::abs(f.mu.imag()) > 1e-12)
                throw ConfigError(
                    "config: plane symbols must be mu z + conj(z) with real mu (field 'symbol')");
            double mu = f.mu.real();
            rx.family = [mu](int N) { return model_matrix(mu, N); };
            break;
        }
    }
    return rx;
}

namespace {

int run_inner(const ExperimentConfig& cfg, json& summary) {
    if (cfg.command == "presets") {
        summary["presets"] = preset_names();
        return 0;
    }
    ResolvedExperiment rx = resolve(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    json files = json::array();
    auto emit = [&](const std::string& name, const std::string& content) {
        std::filesystem::path p = cfg.out_dir / name;
        atomic_write(p, content);
        files.push_back(p.string());
    };

    if (cfg.command == "build") {
        for (int N : rx.levels) {
            BTMatrix T = rx.family(N);
            emit("matrix_N" + std::to_string(N) + ".csv", matrix_to_csv(T));
            summary["n"] = T.n();
        }
    } else if (cfg.command == "pseudospec") {
        for (int N : rx.levels) {
            PseudospectrumGrid g = pseudospectrum_grid(rx.family(N), rx.window, cfg.nx, cfg.ny);
            emit("pseudospec_N" + std::to_string(N) + ".csv", grid_to_csv(g));
            emit("pseudospec_N" + std::to_string(N) + ".json", grid_to_json(g));
        }
    } else if (cfg.command == "pseudomode") {
        json residuals = json::array();
        for (int N : rx.levels) {
            Pseudomode m = optimal_pseudomode(rx.family(N), rx.lambda);
            emit("pseudomode_N" + std::to_string(N) + ".json", pseudomode_to_json(m));
            residuals.push_back(m.residual);
        }
        summary["residuals"] = residuals;
    } else if (cfg.command == "numrange") {
        for (int N : rx.levels) {
            NumericalRangeBoundary b = numerical_range(rx.family(N), std::max(cfg.nx, 64));
            emit("numrange_N" + std::to_string(N) + ".csv", numrange_to_csv(b));
        }
    } else if (cfg.command == "szego") {
        // F(z) = z^2
        ScalingReport rep = szego_trace(rx.family, {0.0, 0.0, 1.0}, rx.symbol, rx.levels);
        emit("szego.json", report_to_json(rep));
        summary["slope"] = rep.slope;
    } else if (cfg.command == "scaling") {
        ScalingReport rep = boundary_exponent(rx.family, rx.symbol, rx.lambda, rx.levels);
        emit("scaling.json", report_to_json(rep));
        summary["slope"] = rep.slope;
        summary["verdict"] = rep.verdict;
    } else if (cfg.command == "part0") {
        ScalingReport rep = part0_check(rx.family, rx.symbol, rx.lambda, rx.levels);
        emit("part0.json", report_to_json(rep));
        summary["slope"] = rep.slope;
    }
    summary["files"] = files;
    return 0;
}

}  // namespace

int run(const ExperimentConfig& cfg) {
    json summary;
    summary["command"] = cfg.command;
    try {
        cfg.validate();
        int rc = run_inner(cfg, summary);
        summary["status"] = "ok";
        std::cout << summary.dump() << std::endl;
        return rc;
    } catch (const NumericalFailure& e) {
        summary["status"] = "numerical-failure";
        summary["error"] = e.what();
        std::cout << summary.dump() << std::endl;
        return 3;
    } catch (const Error& e) {
        summary["status"] = "config-error";
        summary["error"] = e.what();
        std::cout << summary.dump() << std::endl;
        return 2;
    }
}

}  // namespace btps
