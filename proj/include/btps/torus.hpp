#pragma once

#include <functional>
#include <map>

#include "btps/matrix.hpp"
#include "btps/symbol.hpp"

namespace btps {

// N x N matrix of the quantized symbol in the basis indexed j = 0..N-1. For
// each Fourier mode (l, m) of f the entry at (row (j+l) mod N, col j)
// accumulates
//   exact:   c_{l,m} e^{-pi l^2 / 2N} e^{-pi m^2 / 2N} e^{-i pi m (2j+l)/N}
//   leading: c_{l,m} e^{-i pi m (2j+l)/N}
BTMatrix build_torus(const TorusSymbol& f, int N, BuildMode mode);

// F[k][j] = e^{-2 pi i k j / N}; F / sqrt(N) is unitary.
Eigen::MatrixXcd dft_change_of_basis(int N);

// Banded matrix T[j][l] = f_{(l-j) mod N}(j/N) from finitely many 1-periodic
// coefficient functions, indices 0..N-1.
BTMatrix twisted_toeplitz(const std::map<int, std::function<cplx(double)>>& coeff_functions,
                          int N);

}  // namespace btps
