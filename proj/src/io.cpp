#include "btps/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace btps {

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw NumericalFailure("format_double: conversion failed");
    return {buf, ptr};
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("atomic_write: cannot open " + tmp.string());
        out << content;
        if (!out.flush()) throw ConfigError("atomic_write: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string matrix_to_csv(const BTMatrix& T) {
    std::string out;
    const int n = T.n();
    out.reserve(size_t(n) * n * 12);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out += ',';
            out += format_double(T.entries(i, j).real());
            out += ',';
            out += format_double(T.entries(i, j).imag());
        }
        out += '\n';
    }
    return out;
}

std::string grid_to_csv(const PseudospectrumGrid& g) {
    std::string out = "re,im,sigma_min\n";
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            cplx node = g.node(iy, ix);
            out += format_double(node.real());
            out += ',';
            out += format_double(node.imag());
            out += ',';
            out += format_double(g.at(iy, ix));
            out += '\n';
        }
    }
    return out;
}

std::string grid_to_json(const PseudospectrumGrid& g) {
    nlohmann::json j;
    j["v"] = 1;
    j["re_range"] = {g.re_min, g.re_max};
    j["im_range"] = {g.im_min, g.im_max};
    j["nx"] = g.nx;
    j["ny"] = g.ny;
    j["matrix_id"] = g.matrix_id;
    j["N"] = g.N;
    j["sigma_min"] = g.sigma_min_values;
    return j.dump();
}

std::string numrange_to_csv(const NumericalRangeBoundary& b) {
    std::string out = "theta,support,re,im\n";
    for (size_t m = 0; m < b.angles.size(); ++m) {
        out += format_double(b.angles[m]);
        out += ',';
        out += format_double(b.support_values[m]);
        out += ',';
        out += format_double(b.boundary_points[m].real());
        out += ',';
        out += format_double(b.boundary_points[m].imag());
        out += '\n';
    }
    return out;
}

std::string pseudomode_to_json(const Pseudomode& m) {
    nlohmann::json j;
    j["v"] = 1;
    j["basis"] = space_name(m.space);
    j["N"] = m.N;
    j["lambda"] = {m.lambda.real(), m.lambda.imag()};
    j["residual"] = m.residual;
    j["degenerate"] = m.degenerate;
    nlohmann::json coeffs = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.coeffs.size(); ++i)
        coeffs.push_back({m.coeffs(i).real(), m.coeffs(i).imag()});
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

}  // namespace btps
