#pragma once

#include <vector>

#include "btps/matrix.hpp"
#include "btps/symbol.hpp"

namespace btps {

enum class Ladder { Raising, Lowering };

// (N+1) x (N+1) ladder matrix in the basis |j>, j = 0..N. Lowering puts
// m_j = sqrt(j(N-j+1)) at (row j-1, col j), j = 1..N; raising is the transpose.
Eigen::MatrixXcd ladder_matrix(int N, Ladder direction);

// diag(g(j/(N+1)))_{j=0..N}; g given by ascending polynomial coefficients.
Eigen::MatrixXcd diagonal_calculus(const std::vector<cplx>& g, int N);

// Composite quantizer: sum over angular indices l of
// ((1/N) ladder)^{|l|} . diag(g_l(j/(N+1))), lowering for l > 0, raising for
// l < 0, with g_l from the action-angle decomposition of f.
BTMatrix build_sphere(const SphereSymbol& f, int N);

// Exact (N+1)-dimensional representation of (1/N)(i sinh(t) J1 + cosh(t) J3),
// the quantization of i sinh(t) x1 + cosh(t) x3 with spectrum
// {j/N - 1/2, j = 0..N}.
BTMatrix linear_hamiltonian(double t, int N);

// The symbol i sinh(t) x1 + cosh(t) x3 itself.
SphereSymbol linear_hamiltonian_symbol(double t);

}  // namespace btps
