#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace btps {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class Space { Torus, Sphere, PlaneDisk };

inline const char* space_name(Space s) {
    switch (s) {
        case Space::Torus: return "torus";
        case Space::Sphere: return "sphere";
        case Space::PlaneDisk: return "plane";
    }
    return "?";
}

// Phase-space point. Torus: {x, y, 0}; sphere: {x1, x2, x3}; plane: {Re z, Im z, 0}.
using Point = std::array<double, 3>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MixedSpaces : Error { using Error::Error; };
struct SphereOffShell : Error { using Error::Error; };
struct BadDimension : Error { using Error::Error; };
struct NotNormalizable : Error { using Error::Error; };
struct ConversionFailure : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };
struct BasisMismatch : Error { using Error::Error; };
struct OrderUnbounded : Error { using Error::Error; };
struct UnknownPreset : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace btps
