#pragma once

#include <array>
#include <functional>
#include <vector>

#include "btps/matrix.hpp"
#include "btps/report.hpp"
#include "btps/symbol.hpp"

namespace btps {

struct PseudospectrumGrid {
    double re_min{0.0}, re_max{0.0};
    double im_min{0.0}, im_max{0.0};
    int nx{0}, ny{0};
    std::vector<double> sigma_min_values;  // row-major, im outer loop (ny rows)
    std::string matrix_id;
    int N{0};

    double at(int iy, int ix) const { return sigma_min_values[size_t(iy) * nx + ix]; }
    cplx node(int iy, int ix) const {
        return {re_min + (re_max - re_min) * ix / (nx - 1),
                im_min + (im_max - im_min) * iy / (ny - 1)};
    }
};

struct NumericalRangeBoundary {
    std::vector<double> angles;
    std::vector<double> support_values;
    std::vector<cplx> boundary_points;
};

// Smallest singular value of (T - lambda I); NumericalFailure is surfaced.
double sigma_min(const BTMatrix& T, cplx lambda);
double sigma_min(const Eigen::MatrixXcd& A);

// Right singular vector of the smallest singular value, with the gap to the
// next singular value (for degeneracy detection).
struct SmallestSingular {
    double sigma{0.0};
    Eigen::VectorXcd vec;
    double gap{0.0};
};
SmallestSingular smallest_singular(const Eigen::MatrixXcd& A);

// Deterministic parallel sweep (BTPS_THREADS caps the worker count).
PseudospectrumGrid pseudospectrum_grid(const BTMatrix& T,
                                       const std::array<double, 4>& window, int nx, int ny);

std::vector<cplx> eigenvalues(const BTMatrix& T);

// Support-function sampling of the numerical range at M equispaced angles.
NumericalRangeBoundary numerical_range(const BTMatrix& T, int M);

// Normalized-trace comparison (1/dim) tr F(T^{(N)}) vs the phase-space average
// of F(f); F given by ascending polynomial coefficients, degree <= 6.
ScalingReport szego_trace(const std::function<BTMatrix(int)>& family,
                          const std::vector<cplx>& F, const Symbol& f,
                          const std::vector<int>& levels);

// 2D convex hull (monotone chain, 1e-12 collinearity tolerance), CCW order.
std::vector<cplx> convex_hull(std::vector<cplx> pts);

// Symmetric Hausdorff distance between two convex polygon boundaries.
double hausdorff_distance(const std::vector<cplx>& hull_a, const std::vector<cplx>& hull_b);

int thread_budget();

}  // namespace btps
