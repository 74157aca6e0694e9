#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "btps/bargmann.hpp"
#include "btps/pseudomode.hpp"
#include "btps/runner.hpp"
#include "btps/sphere.hpp"
#include "btps/torus.hpp"

using namespace btps;

namespace {

int argmax_abs(const Eigen::VectorXcd& v) {
    int best = 0;
    for (int i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best))) best = i;
    return best;
}

int wrapped_index_dist(int a, int b, int N) {
    int d = std::abs(a - b) % N;
    return std::min(d, N - d);
}

}  // namespace

TEST_CASE("wavepacket shape") {
    const int N = 64;
    Eigen::VectorXcd a = torus_wavepacket(0.0, 0.25, N, 1.0);
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // x0 = 0: real positive coefficients, peaked at j = N y0
    for (int j = 0; j < N; ++j) {
        CHECK(a(j).imag() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(a(j).real() > 0.0);
    }
    CHECK(argmax_abs(a) == 16);

    // amplitude-weighted second moment matches the Gaussian width
    const int M = 256;
    Eigen::VectorXcd b = torus_wavepacket(0.0, 0.5, M, 1.0);
    double wsum = 0.0, m2 = 0.0;
    for (int j = 0; j < M; ++j) {
        double d = wrapped_index_dist(j, M / 2, M);
        wsum += std::abs(b(j));
        m2 += std::abs(b(j)) * d * d;
    }
    double measured = std::sqrt(m2 / wsum);
    double expected = std::sqrt(double(M) / (2.0 * kPi));
    CHECK(measured / expected >= 0.8);
    CHECK(measured / expected <= 1.2);
}

TEST_CASE("wavepacket dual peak sits at the Fourier center") {
    const int N = 128;
    const double x0 = 0.3, y0 = 0.6;
    Eigen::VectorXcd a = torus_wavepacket(x0, y0, N, 1.0);
    Eigen::VectorXcd ahat = dft_change_of_basis(N) * a;
    int peak = argmax_abs(ahat);
    CHECK(wrapped_index_dist(peak, int(std::lround(N * x0)), N) <= 2);
}

TEST_CASE("wavepacket periodicity in both packet parameters") {
    const int N = 32;
    Eigen::VectorXcd a = torus_wavepacket(0.37, 0.81, N, 1.0);
    Eigen::VectorXcd ax = torus_wavepacket(1.37, 0.81, N, 1.0);
    Eigen::VectorXcd ay = torus_wavepacket(0.37, 1.81, N, 1.0);
    CHECK((a - ax).norm() < 1e-12);
    CHECK((a - ay).norm() < 1e-12);
}

TEST_CASE("integer shifts of the packet center translate the profile exactly") {
    const int N = 48;
    const int s = 5;
    Eigen::VectorXcd a = torus_wavepacket(0.0, 0.25, N, 1.0);
    Eigen::VectorXcd b = torus_wavepacket(0.0, 0.25 + double(s) / N, N, 1.0);
    for (int j = 0; j < N; ++j)
        CHECK(std::abs(std::abs(b((j + s) % N)) - std::abs(a(j))) < 1e-12);
}

TEST_CASE("optimal pseudomode basics") {
    // diagonal matrix: the optimal mode at lambda near d_i is e_i
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(4, 4);
    D(0, 0) = 1.0;
    D(1, 1) = cplx(0.0, 2.0);
    D(2, 2) = -3.0;
    D(3, 3) = cplx(1.0, 1.0);
    BTMatrix T{D, Space::Torus, 4, "diag", BuildMode::Exact};
    Pseudomode m = optimal_pseudomode(T, cplx(0.0, 1.9));
    CHECK(std::abs(m.coeffs(1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.residual == doctest::Approx(0.1).epsilon(1e-10));

    // the residual is exactly the variational minimum
    BTMatrix S = model_matrix(0.5, 30);
    Pseudomode opt = optimal_pseudomode(S, cplx(0.2, 0.1));
    double direct = ((S.entries - cplx(0.2, 0.1) * Eigen::MatrixXcd::Identity(31, 31)) *
                     opt.coeffs)
                        .norm();
    CHECK(std::abs(direct - opt.residual) < 1e-10);
    CHECK(std::abs(direct - sigma_min(S, cplx(0.2, 0.1))) < 1e-10);
}

TEST_CASE("optimal mode of the non-normal model overlaps the deformed coherent state") {
    const int N = 60;
    const double mu = 0.5;
    BTMatrix T = model_matrix(mu, N);
    Pseudomode opt = optimal_pseudomode(T, 0.0);
    ThetaProjection pr = project_theta(squeezed_coefficients(mu, 0.0, N));
    Eigen::VectorXcd ref(N + 1);
    for (int k = 0; k <= N; ++k) ref(k) = pr.head[size_t(k)];
    ref.normalize();
    CHECK(std::abs(ref.dot(opt.coeffs)) >= 0.9);
}

TEST_CASE("residual decay verdicts on the twisted family") {
    PresetInfo p = preset_registry("torus-twisted");
    std::vector<int> levels{32, 64, 128, 256};

    // optimal modes at the distinguished boundary point: superpolynomial decay
    ModeFamily opt = [&p](int N) { return optimal_pseudomode(p.family(N), p.lambda).coeffs; };
    ScalingReport good = residual_decay(p.family, opt, p.lambda, levels);
    CHECK(good.verdict == "PASS");

    // a Gaussian packet centered away from the level set stalls at O(1/N)
    auto [x0, y0] = packet_parameters_for(0.875, 0.875);
    ModeFamily bad = [x0, y0](int N) { return torus_wavepacket(x0, y0, N, 1.0); };
    ScalingReport badrep = residual_decay(p.family, bad, p.lambda, levels);
    CHECK(badrep.verdict == "FAIL");
    for (size_t i = 1; i < badrep.values.size(); ++i)
        CHECK(badrep.values[i] * levels[i] > badrep.values[i - 1] * levels[i - 1]);
}

TEST_CASE("verdict is invariant under rescaling the family and lambda") {
    PresetInfo p = preset_registry("torus-twisted");
    std::vector<int> levels{32, 64, 128, 256};
    const cplx c(2.0, -1.0);
    MatrixFamily scaled = [&p, c](int N) {
        BTMatrix T = p.family(N);
        T.entries *= c;
        return T;
    };
    ModeFamily opt = [&p](int N) { return optimal_pseudomode(p.family(N), p.lambda).coeffs; };
    ScalingReport base = residual_decay(p.family, opt, p.lambda, levels);
    ScalingReport scal = residual_decay(scaled, opt, c * p.lambda, levels);
    CHECK(base.verdict == scal.verdict);
    for (size_t i = 0; i < base.values.size(); ++i)
        CHECK(scal.values[i] == doctest::Approx(std::abs(c) * base.values[i]).epsilon(1e-10));
}

TEST_CASE("localization of a good-center packet on the level set") {
    PresetInfo p = preset_registry("torus-twisted");
    const int N = 128;
    auto [x0, y0] = packet_parameters_for(0.375, 0.375);
    Pseudomode m;
    m.N = N;
    m.space = Space::Torus;
    m.coeffs = torus_wavepacket(x0, y0, N, 1.0);
    m.lambda = p.lambda;
    Localization loc = localize(m, p.symbol);

    double psum = 0.0, dsum = 0.0;
    for (double v : loc.primary_profile) psum += v;
    for (double v : loc.dual_profile) dsum += v;
    CHECK(psum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(dsum == doctest::Approx(1.0).epsilon(1e-10));

    int ppeak = 0, dpeak = 0;
    for (size_t i = 0; i < loc.primary_profile.size(); ++i)
        if (loc.primary_profile[i] > loc.primary_profile[size_t(ppeak)]) ppeak = int(i);
    for (size_t i = 0; i < loc.dual_profile.size(); ++i)
        if (loc.dual_profile[i] > loc.dual_profile[size_t(dpeak)]) dpeak = int(i);
    CHECK(wrapped_index_dist(ppeak, int(std::lround(N * y0)), N) <= 2);
    CHECK(wrapped_index_dist(dpeak, int(std::lround(N * x0)), N) <= 2);

    CHECK(loc.mass_on_level_set >= 0.8);
}

TEST_CASE("sphere pseudomode localizes on the latitude circle") {
    SphereSymbol x3 = SphereSymbol::monomial(0, 0, 1);
    const int N = 128;
    BTMatrix T = build_sphere(x3, N);
    // lambda = 0.2 corresponds to the latitude I = 0.7
    Pseudomode m = optimal_pseudomode(T, cplx(0.2, 0.0));
    Localization loc = localize(m, Symbol{x3});
    int peak = 0;
    for (size_t i = 0; i < loc.primary_profile.size(); ++i)
        if (loc.primary_profile[i] > loc.primary_profile[size_t(peak)]) peak = int(i);
    CHECK(double(peak) / (N + 1) == doctest::Approx(0.7).epsilon(0.02));
    CHECK(loc.mass_on_level_set >= 0.8);
    double psum = 0.0;
    for (double v : loc.primary_profile) psum += v;
    CHECK(psum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("boundary exponent at a second-order boundary point") {
    PresetInfo p = preset_registry("sphere-linear-t1");
    ScalingReport rep = boundary_exponent(p.family, p.symbol, p.lambda, p.levels);
    CHECK(rep.verdict == "PASS");
    CHECK(rep.has_flag("boundary"));
    CHECK(rep.has_flag("k=2"));
    CHECK(rep.r2 >= 0.95);
    CHECK(rep.slope <= -0.42);
    CHECK(rep.slope >= -2.0 / 3.0 - 0.08);
}

TEST_CASE("real symbols have no finite bracket order") {
    TorusSymbol f;
    f.set_coeff(1, 0, 0.5);
    f.set_coeff(-1, 0, 0.5);
    MatrixFamily fam = [f](int N) { return build_torus(f, N, BuildMode::Exact); };
    CHECK_THROWS_AS(boundary_exponent(fam, Symbol{f}, cplx(0.3, 0.0), {16, 24, 32, 48, 64}),
                    OrderUnbounded);
}

TEST_CASE("interior points are flagged") {
    PresetInfo p = preset_registry("torus-twisted");
    ScalingReport rep = boundary_exponent(p.family, p.symbol, p.lambda, {16, 32, 64, 128, 256});
    CHECK(rep.has_flag("interior"));
}

TEST_CASE("resolvent bound far from the image") {
    SphereSymbol x3 = SphereSymbol::monomial(0, 0, 1);
    MatrixFamily fam = [x3](int N) { return build_sphere(x3, N); };
    ScalingReport rep = part0_check(fam, Symbol{x3}, cplx(3.0, 3.0), {32, 64, 128, 256});
    CHECK(rep.slope <= -0.4);
}

TEST_CASE("peak amplitude of the unit packet decays like N^{-1/4}") {
    std::vector<int> levels{64, 128, 256, 512, 1024};
    std::vector<double> amps;
    for (int N : levels) {
        Eigen::VectorXcd a = torus_wavepacket(0.2, 0.7, N, 1.0);
        amps.push_back(a.cwiseAbs().maxCoeff());
    }
    ScalingReport rep = make_report(levels, amps, FitModel::LogLog);
    CHECK(rep.slope >= -0.35);
    CHECK(rep.slope <= -0.15);
}
