#pragma once

#include <vector>

#include "btps/matrix.hpp"

namespace btps {

// Gaussian-deformed coherent state expanded in the orthonormal basis
// |k> = (N^{(k+1)/2}/sqrt(k!)) z^k. Coefficients are stored through the
// adaptively chosen truncation K (tail below 1e-14 of the peak).
struct SqueezedState {
    int N{0};
    double mu{0.0};
    cplx z0{0.0};
    std::vector<cplx> coeffs;  // a_0 .. a_K

    double norm() const;
};

struct ThetaProjection {
    std::vector<cplx> head;  // a_0 .. a_N
    double tail_norm{0.0};   // sqrt(sum_{k>N} |a_k|^2)
};

struct ResidualIdentity {
    double direct{0.0};   // ||(T - lambda I) . truncated coeffs||
    double formula{0.0};  // |mu a_{N-1} - lambda a_N|
    cplx lambda{0.0};
};

// (N+1) x (N+1) tridiagonal model with zero diagonal: supra entry
// (row k-1, col k) = sqrt(k/N) and infra entry (row k, col k-1) = mu sqrt(k/N),
// k = 1..N. Symbol: mu z + conj(z) on the closed unit disk.
BTMatrix model_matrix(double mu, int N);

// Three-term recurrence in rescaled form; NotNormalizable if |mu| >= 1.
SqueezedState squeezed_coefficients(double mu, cplx z0, int N);

// Degree-<=N truncation plus the dropped tail norm.
ThetaProjection project_theta(const SqueezedState& state);

// Compares the residual of the truncated state under the model operator with
// the closed-form boundary term, lambda = mu z0 + conj(z0).
ResidualIdentity residual_identity_check(double mu, cplx z0, int N);

// Regularized upper incomplete gamma Q(N+1, x) = Gamma(N+1, x)/N!
// = e^{-x} sum_{k=0}^{N} x^k/k!, evaluated stably in log space.
double regularized_gamma_q(int N, double x);

// log of the squared coherent-state norm, log(N e^{N|w|^2}).
double coherent_log_norm_sq(int N, double absw);

// log of the squared tail norm of the truncated coherent state at center w:
// log( ||phi_w||^2 (1 - Q(N+1, N|w|^2)) ).
double coherent_log_tail_sq(int N, double absw);

// Coherent-state coefficients a_k = sqrt(N) (sqrt(N) conj(w))^k / sqrt(k!),
// k = 0..K.
std::vector<cplx> coherent_coefficients(cplx w, int N, int K);

}  // namespace btps
