#include "btps/sphere.hpp"

#include <cmath>

namespace btps {

Eigen::MatrixXcd ladder_matrix(int N, Ladder direction) {
    if (N < 0) throw BadDimension("ladder_matrix: N must be >= 0");
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int j = 1; j <= N; ++j) {
        double m = std::sqrt(double(j) * double(N - j + 1));
        if (direction == Ladder::Lowering)
            J(j - 1, j) = m;
        else
            J(j, j - 1) = m;
    }
    return J;
}

Eigen::MatrixXcd diagonal_calculus(const std::vector<cplx>& g, int N) {
    if (N < 0) throw BadDimension("diagonal_calculus: N must be >= 0");
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int j = 0; j <= N; ++j) {
        double x = double(j) / double(N + 1);
        cplx v = 0.0;
        for (auto it = g.rbegin(); it != g.rend(); ++it) v = v * x + *it;  // Horner
        A(j, j) = v;
    }
    return A;
}

BTMatrix build_sphere(const SphereSymbol& f, int N) {
    if (N < 1) throw BadDimension("build_sphere: N must be >= 1");
    ActionAngleForm aa = to_action_angle(f);
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (const auto& [l, gl] : aa.g) {
        Eigen::MatrixXcd term = diagonal_calculus(gl, N);
        if (l != 0) {
            Eigen::MatrixXcd L =
                ladder_matrix(N, l > 0 ? Ladder::Lowering : Ladder::Raising) / double(N);
            for (int t = 0; t < std::abs(l); ++t) term = L * term;
        }
        T += term;
    }
    BTMatrix out{std::move(T), Space::Sphere, N, symbol_hash(Symbol(f)), BuildMode::Exact};
    out.validate();
    return out;
}

SphereSymbol linear_hamiltonian_symbol(double t) {
    return SphereSymbol::monomial(1, 0, 0, cplx(0.0, std::sinh(t))) +
           SphereSymbol::monomial(0, 0, 1, std::cosh(t));
}

BTMatrix linear_hamiltonian(double t, int N) {
    if (N < 1) throw BadDimension("linear_hamiltonian: N must be >= 1");
    Eigen::MatrixXcd J1 =
        0.5 * (ladder_matrix(N, Ladder::Raising) + ladder_matrix(N, Ladder::Lowering));
    Eigen::MatrixXcd J3 = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int j = 0; j <= N; ++j) J3(j, j) = double(j) - 0.5 * N;
    Eigen::MatrixXcd T =
        (cplx(0.0, std::sinh(t)) * J1 + std::cosh(t) * J3) / double(N);
    BTMatrix out{std::move(T), Space::Sphere, N,
                 symbol_hash(Symbol(linear_hamiltonian_symbol(t))), BuildMode::Exact};
    out.validate();
    return out;
}

}  // namespace btps
