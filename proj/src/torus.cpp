#include "btps/torus.hpp"

#include <cmath>

namespace btps {

BTMatrix build_torus(const TorusSymbol& f, int N, BuildMode mode) {
    if (N < 1) throw BadDimension("build_torus: N must be >= 1");
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
    for (const auto& [k, c] : f.coeffs()) {
        const int l = k.first, m = k.second;
        double damp = 1.0;
        if (mode == BuildMode::Exact)
            damp = std::exp(-kPi * l * l / (2.0 * N)) * std::exp(-kPi * m * m / (2.0 * N));
        for (int j = 0; j < N; ++j) {
            int row = ((j + l) % N + N) % N;
            cplx phase = std::polar(1.0, -kPi * m * (2.0 * j + l) / N);
            T(row, j) += c * damp * phase;
        }
    }
    BTMatrix out{std::move(T), Space::Torus, N, symbol_hash(Symbol(f)), mode};
    out.validate();
    return out;
}

Eigen::MatrixXcd dft_change_of_basis(int N) {
    if (N < 1) throw BadDimension("dft_change_of_basis: N must be >= 1");
    Eigen::MatrixXcd F(N, N);
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j)
            F(k, j) = std::polar(1.0, -2.0 * kPi * double(k) * double(j) / N);
    return F;
}

BTMatrix twisted_toeplitz(const std::map<int, std::function<cplx(double)>>& coeff_functions,
                          int N) {
    if (N < 1) throw BadDimension("twisted_toeplitz: N must be >= 1");
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        for (int l = 0; l < N; ++l) {
            int d = ((l - j) % N + N) % N;
            auto it = coeff_functions.find(d);
            if (it == coeff_functions.end()) {
                // Negative band labels are also accepted (d - N aliases d).
                it = coeff_functions.find(d - N);
                if (it == coeff_functions.end()) continue;
            }
            T(j, l) += it->second(double(j) / N);
        }
    }
    BTMatrix out{std::move(T), Space::Torus, N, "twisted", BuildMode::Leading};
    out.validate();
    return out;
}

}  // namespace btps
