#pragma once

#include <filesystem>
#include <string>

#include "btps/matrix.hpp"
#include "btps/pseudomode.hpp"
#include "btps/report.hpp"
#include "btps/spectral.hpp"

namespace btps {

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

// Write content to path atomically (temp file in the same directory + rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Row-major "re,im" pair CSV of the matrix entries.
std::string matrix_to_csv(const BTMatrix& T);

// Header re,im,sigma_min; row-major with the imaginary axis as the outer loop.
std::string grid_to_csv(const PseudospectrumGrid& g);
std::string grid_to_json(const PseudospectrumGrid& g);

// Header theta,support,re,im.
std::string numrange_to_csv(const NumericalRangeBoundary& b);

std::string pseudomode_to_json(const Pseudomode& m);

}  // namespace btps
