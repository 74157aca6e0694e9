#pragma once

#include <functional>
#include <vector>

#include "btps/matrix.hpp"
#include "btps/report.hpp"
#include "btps/spectral.hpp"
#include "btps/symbol.hpp"

namespace btps {

struct Pseudomode {
    int N{0};
    Space space{Space::Torus};
    Eigen::VectorXcd coeffs;
    Point center{0.0, 0.0, 0.0};
    double width_param{1.0};
    double residual{0.0};
    cplx lambda{0.0};
    bool degenerate{false};
};

// Periodized discrete Gaussian, unit norm:
// a_j = sum_{w in {-1,0,1}} e^{2 pi i x0 (j + wN)} e^{-pi (j + wN - N y0)^2 / (width N)}.
Eigen::VectorXcd torus_wavepacket(double x0, double y0, int N, double width);

// The basis label (j, k) of coefficient index j and Fourier index k corresponds
// to the phase-space point (x, y) = ((-k/N) mod 1, (-j/N) mod 1); this maps a
// target phase-space center to packet parameters.
std::pair<double, double> packet_parameters_for(double x_center, double y_center);

using MatrixFamily = std::function<BTMatrix(int)>;
using ModeFamily = std::function<Eigen::VectorXcd(int)>;

// Residuals ||(T - lambda) psi|| / ||psi|| across levels, log-log fit, and the
// superpolynomial verdict: PASS iff r_N N^p is decreasing over the top half of
// levels for p = 2, 3, 4 (floored residuals count as decreasing).
ScalingReport residual_decay(const MatrixFamily& family, const ModeFamily& mode_builder,
                             cplx lambda, const std::vector<int>& levels);

// Right singular vector of the smallest singular value of (T - lambda I);
// residual equals sigma_min. Flags degenerate when the singular gap < 1e-12.
Pseudomode optimal_pseudomode(const BTMatrix& T, cplx lambda);

struct Localization {
    std::vector<double> primary_profile;  // |a_j|^2 vs j/N (torus y) or j/(N+1) (sphere I)
    std::vector<double> dual_profile;     // |DFT(a)_k|^2 vs k/N (torus only)
    double mass_on_level_set{0.0};        // profile mass within 3/sqrt(N) of f^{-1}(lambda)
};

Localization localize(const Pseudomode& mode, const Symbol& f);

// sigma_min scaling at a boundary point of the symbol's image, with the
// admissible slope window derived from the bracket order on f^{-1}(lambda).
// Flags: "boundary" or "interior", "k=<order>", "window=[lo,hi]".
ScalingReport boundary_exponent(const MatrixFamily& family, const Symbol& f, cplx lambda,
                                const std::vector<int>& levels, int max_depth = 4);

// values = |sigma_min(T - lambda) - min distance from lambda to the image|.
ScalingReport part0_check(const MatrixFamily& family, const Symbol& f, cplx lambda,
                          const std::vector<int>& levels);

}  // namespace btps
