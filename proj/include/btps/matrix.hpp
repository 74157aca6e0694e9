#pragma once

#include <string>

#include <Eigen/Dense>

#include "btps/common.hpp"

namespace btps {

enum class BuildMode { Exact, Leading };

inline const char* mode_name(BuildMode m) {
    return m == BuildMode::Exact ? "exact" : "leading";
}

// Dense complex matrix realizing a quantized operator at level N, with
// construction metadata. Torus/plane: n = N (resp. N+1 for the disk model);
// sphere: n = N+1.
struct BTMatrix {
    Eigen::MatrixXcd entries;
    Space space{Space::Torus};
    int level{0};
    std::string symbol_id;
    BuildMode mode{BuildMode::Exact};

    int n() const { return int(entries.rows()); }

    void validate() const {
        if (entries.rows() < 1 || entries.rows() != entries.cols())
            throw BadDimension("matrix must be square with n >= 1");
        if (!entries.allFinite()) throw NumericalFailure("matrix has non-finite entries");
    }
};

}  // namespace btps
