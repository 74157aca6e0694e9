#pragma once

#include <string>
#include <vector>

#include "btps/common.hpp"

namespace btps {

enum class FitModel { LogLog, SemiLog };

// Levels with measured values and a least-squares fit of log(value) against
// log(level) (LogLog) or level (SemiLog). Values at or below the double
// precision floor (1e-13) are excluded from the fit and flagged.
struct ScalingReport {
    std::vector<int> levels;
    std::vector<double> values;
    double slope{0.0};
    double intercept{0.0};
    double r2{0.0};
    FitModel model{FitModel::LogLog};
    std::string verdict;              // "", "PASS", "FAIL"
    std::vector<std::string> flags;   // e.g. "floored", "interior"

    bool has_flag(const std::string& f) const;
};

inline constexpr double kValueFloor = 1e-13;

// Fit slope/intercept/r2 in place from levels/values, honoring the floor.
void fit_report(ScalingReport& rep);

ScalingReport make_report(std::vector<int> levels, std::vector<double> values,
                          FitModel model);

std::string report_to_json(const ScalingReport& rep);

}  // namespace btps
