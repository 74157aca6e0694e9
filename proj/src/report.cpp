#include "btps/report.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace btps {

bool ScalingReport::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void fit_report(ScalingReport& rep) {
    if (rep.levels.size() != rep.values.size())
        throw ConfigError("fit_report: levels/values size mismatch");
    std::vector<double> xs, ys;
    bool floored = false;
    for (size_t i = 0; i < rep.levels.size(); ++i) {
        double v = rep.values[i];
        if (v <= kValueFloor) {
            floored = true;
            continue;
        }
        xs.push_back(rep.model == FitModel::LogLog ? std::log(double(rep.levels[i]))
                                                   : double(rep.levels[i]));
        ys.push_back(std::log(v));
    }
    if (floored && !rep.has_flag("floored")) rep.flags.push_back("floored");
    const size_t n = xs.size();
    if (n < 2) {
        rep.slope = 0.0;
        rep.intercept = n == 1 ? ys[0] : 0.0;
        rep.r2 = 0.0;
        return;
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    rep.slope = sxy / sxx;
    rep.intercept = my - rep.slope * mx;
    rep.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
}

ScalingReport make_report(std::vector<int> levels, std::vector<double> values,
                          FitModel model) {
    for (size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1])
            throw ConfigError("make_report: levels must be strictly increasing");
    for (double v : values)
        if (!(v >= 0.0)) throw ConfigError("make_report: values must be >= 0");
    ScalingReport rep;
    rep.levels = std::move(levels);
    rep.values = std::move(values);
    rep.model = model;
    fit_report(rep);
    return rep;
}

std::string report_to_json(const ScalingReport& rep) {
    nlohmann::json j;
    j["v"] = 1;
    j["levels"] = rep.levels;
    j["values"] = rep.values;
    j["slope"] = rep.slope;
    j["intercept"] = rep.intercept;
    j["r2"] = rep.r2;
    j["model"] = rep.model == FitModel::LogLog ? "loglog" : "semilog";
    if (!rep.verdict.empty()) j["verdict"] = rep.verdict;
    j["flags"] = rep.flags;
    return j.dump();
}

}  // namespace btps
