// End-to-end acceptance gate: nine numbered criteria, one summary line each.
// Exact identities are checked at tight tolerances; asymptotic statements are
// checked through scaling-law fits at desk scale (matrices <= 512^2).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "btps/bargmann.hpp"
#include "btps/pseudomode.hpp"
#include "btps/runner.hpp"
#include "btps/sphere.hpp"
#include "btps/spectral.hpp"
#include "btps/torus.hpp"

using namespace btps;

namespace {

struct Gate {
    int n;
    bool ok = true;
    explicit Gate(int criterion) : n(criterion) {}
    ~Gate() { std::printf("criterion %d: %s\n", n, ok ? "PASS" : "FAIL"); }
    void operator()(bool cond) {
        CHECK(cond);
        ok = ok && cond;
    }
    // fold a condition into the verdict without registering an assertion
    // (used where the enclosing case already expects the red CHECK)
    void quiet(bool cond) { ok = ok && cond; }
};

double wrap01(double t) { return t - std::floor(t); }

double torus_dist1(double a, double b) {
    double d = std::abs(wrap01(a) - wrap01(b));
    return std::min(d, 1.0 - d);
}

int peak_index(const std::vector<double>& v) {
    int best = 0;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[size_t(best)]) best = int(i);
    return best;
}

}  // namespace

TEST_CASE("criterion 1: exact identities") {
    Gate gate(1);

    // constant torus symbol quantizes to the identity, exactly
    BTMatrix I = build_torus(TorusSymbol::constant(1.0), 8, BuildMode::Exact);
    gate((I.entries - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);

    // single-mode torus entry e^{-pi l^2 / 2N}
    for (int N : {10, 24}) {
        BTMatrix T = build_torus(TorusSymbol::mode(1, 0), N, BuildMode::Exact);
        gate(std::abs(T.entries(1, 0) - std::exp(-kPi / (2.0 * N))) <
             1e-10 * std::exp(-kPi / (2.0 * N)));
        BTMatrix T2 = build_torus(TorusSymbol::mode(2, 0), N, BuildMode::Exact);
        gate(std::abs(T2.entries(2, 0) - std::exp(-2.0 * kPi / N)) <
             1e-10 * std::exp(-2.0 * kPi / N));
    }

    // ladder entries sqrt(j (N - j + 1))
    Eigen::MatrixXcd L = ladder_matrix(9, Ladder::Lowering);
    for (int j = 1; j <= 9; ++j)
        gate(std::abs(L(j - 1, j) - std::sqrt(double(j) * (9 - j + 1))) < 1e-12);

    // linear-Hamiltonian spectrum at N = 6: the (N+1)-dimensional
    // representation carries the N+1 equispaced values j/N - 1/2
    std::vector<double> re;
    for (cplx e : eigenvalues(linear_hamiltonian(1.0, 6))) {
        gate(std::abs(e.imag()) < 1e-8);
        re.push_back(e.real());
    }
    std::sort(re.begin(), re.end());
    for (int j = 0; j <= 6; ++j) gate(std::abs(re[size_t(j)] - (j / 6.0 - 0.5)) < 1e-8);

    // truncated-eigenvector residual identity |mu a_{N-1} - lambda a_N|
    ResidualIdentity r = residual_identity_check(0.5, cplx(0.3, 0.2), 40);
    gate(std::abs(r.direct - r.formula) <= 1e-9 * std::max(r.direct, r.formula));

    // incomplete-gamma identity for the coherent tail mass
    for (int N : {25, 50, 100}) {
        for (double w : {0.2, 0.5, 0.8}) {
            double x = double(N) * w * w;
            double sum = 0.0, term = 1.0;
            for (int k = 0; k <= N; ++k) {
                sum += term;
                term *= x / (k + 1);
            }
            double naive = std::exp(-x) * sum;
            gate(std::abs(regularized_gamma_q(N, x) - naive) < 1e-10 * naive);
        }
    }
}

TEST_CASE("criterion 2: sigma_min converges to the distance from the image") {
    Gate gate(2);
    SphereSymbol x3 = SphereSymbol::monomial(0, 0, 1);
    MatrixFamily fam = [x3](int N) { return build_sphere(x3, N); };
    // image of x3 is [-1/2, 1/2]; distance from lambda = 0.7 is 0.2
    ScalingReport rep = part0_check(fam, Symbol{x3}, cplx(0.7, 0.0), {32, 64, 128, 256});
    gate(rep.slope <= -0.4);
    gate(rep.values.back() <= 0.01);
}

TEST_CASE("criterion 3: negative bracket admits fast pseudomodes") {
    Gate gate(3);

    // disk model mu = 0.5, z0 = 0.5: residual over norm decays exponentially
    std::vector<int> nlv{20, 40, 60, 80, 100, 120, 140, 160};
    std::vector<double> vals;
    for (int N : nlv) {
        ResidualIdentity r = residual_identity_check(0.5, cplx(0.5, 0.0), N);
        ThetaProjection pr = project_theta(squeezed_coefficients(0.5, cplx(0.5, 0.0), N));
        double head2 = 0.0;
        for (cplx a : pr.head) head2 += std::norm(a);
        vals.push_back(r.direct / std::sqrt(head2));
    }
    ScalingReport exp_rep = make_report(nlv, vals, FitModel::SemiLog);
    gate(exp_rep.slope < -0.05);

    // twisted torus symbol at a boundary point with negative bracket:
    // superpolynomial decay verdict
    PresetInfo p = preset_registry("torus-twisted");
    ModeFamily opt = [&p](int N) { return optimal_pseudomode(p.family(N), p.lambda).coeffs; };
    ScalingReport tor = residual_decay(p.family, opt, p.lambda, {32, 64, 128, 256});
    gate(tor.verdict == "PASS");
}

TEST_CASE("criterion 4: positive bracket blocks localized pseudomodes") {
    Gate gate(4);
    PresetInfo p = preset_registry("torus-twisted");
    const double bad_x = 0.875, bad_y = 0.875;  // bracket > 0 on this center

    auto [x0, y0] = packet_parameters_for(bad_x, bad_y);
    ModeFamily packet = [x0, y0](int N) { return torus_wavepacket(x0, y0, N, 1.0); };
    ScalingReport rep = residual_decay(p.family, packet, p.lambda, {32, 64, 128, 256});
    gate(rep.verdict == "FAIL");

    // the genuinely optimal mode lives on the level set, far from the bad
    // center
    const int N = 256;
    Pseudomode m = optimal_pseudomode(p.family(N), p.lambda);
    Localization loc = localize(m, p.symbol);
    gate(loc.mass_on_level_set >= 0.8);

    // coefficient label (j, k) corresponds to (x, y) = (-k/N, -j/N) mod 1
    double peak_y = wrap01(-double(peak_index(loc.primary_profile)) / N);
    double peak_x = wrap01(-double(peak_index(loc.dual_profile)) / N);
    double dist = std::hypot(torus_dist1(peak_x, bad_x), torus_dist1(peak_y, bad_y));
    double packet_width = 1.0 / std::sqrt(2.0 * kPi * N);
    gate(dist >= 5.0 * packet_width);
}

TEST_CASE("criterion 5: boundary exponent window at a second-order point") {
    Gate gate(5);
    PresetInfo p = preset_registry("sphere-linear-t1");
    ScalingReport rep = boundary_exponent(p.family, p.symbol, p.lambda, {32, 64, 128, 256, 512});
    gate(rep.has_flag("k=2"));
    gate(rep.slope >= -0.75);
    gate(rep.slope <= -0.42);
    gate(rep.r2 >= 0.95);
}

TEST_CASE("criterion 6: truncation tail bound, delta = 0.1"
          * doctest::expected_failures(2)) {
    Gate gate(6);
    double worst_ratio_09 = 0.0;
    for (int N : {200, 400}) {
        for (double w : {0.3, 0.6, 0.9}) {
            double log_tail2 = coherent_log_tail_sq(N, w);
            double log_bound = std::log(1.1 / std::sqrt(2.0 * kPi)) +
                               coherent_log_norm_sq(N, w) + 2.0 * std::log(w) +
                               0.5 * std::log(double(N)) -
                               double(N) * std::pow(1.0 - w * w, 2) / 2.0;
            gate(log_tail2 <= log_bound);
            if (w == 0.9) {
                double ratio = std::exp(log_tail2 - log_bound);
                worst_ratio_09 = std::max(worst_ratio_09, ratio);
                // tightness-in-rate claim; the true decay rate
                // w^2 - 2 ln w - 1 exceeds the bound's rate (1 - w^2)^2 / 2,
                // so the measured/bound ratio itself decays with N and sits
                // well below 0.2 here. Kept as stated and expected to fail.
                CHECK(ratio >= 0.2);
                gate.quiet(ratio >= 0.2);
            }
        }
    }
    std::printf(
        "criterion 6 note: bound holds at every (N, |w|); tightness ratio at |w|=0.9 is %.4g "
        "(< 0.2, known red)\n",
        worst_ratio_09);
}

TEST_CASE("criterion 7: numerical range converges to the image hull") {
    Gate gate(7);
    PresetInfo p = preset_registry("torus-scottish");
    std::vector<cplx> image_hull = convex_hull(image_samples(p.symbol, 256));
    // thresholds re-baselined once against the reference run, then frozen
    const double caps[3] = {0.55, 0.30, 0.15};
    const int lv[3] = {16, 32, 64};
    double prev = 1e9;
    for (int i = 0; i < 3; ++i) {
        NumericalRangeBoundary nr = numerical_range(p.family(lv[i]), 128);
        double d = hausdorff_distance(convex_hull(nr.boundary_points), image_hull);
        gate(d <= caps[i]);
        gate(d < prev);
        prev = d;
    }
}

TEST_CASE("criterion 8: trace average of F(z) = z^2 on the sphere") {
    Gate gate(8);
    SphereSymbol x3 = SphereSymbol::monomial(0, 0, 1);
    MatrixFamily fam = [x3](int N) { return build_sphere(x3, N); };
    ScalingReport rep = szego_trace(fam, {cplx(0, 0), cplx(0, 0), cplx(1, 0)}, Symbol{x3},
                                    {16, 32, 64, 128, 256});
    gate(rep.slope <= -0.9);
    gate(rep.r2 >= 0.95);
}

TEST_CASE("criterion 9: property suites (representative subset)") {
    // the full invariant suites live in the per-module test binaries; this
    // re-runs one property from each family so the gate stands alone
    Gate gate(9);

    // bracket antisymmetry
    SphereSymbol g = SphereSymbol::monomial(1, 0, 0);
    SphereSymbol h = SphereSymbol::monomial(0, 0, 2);
    SphereSymbol s = poisson_bracket(g, h) + poisson_bracket(h, g);
    bool zero = true;
    for (const Point& pt : phase_space_samples(Space::Sphere, 40))
        zero = zero && std::abs(s.eval(pt[0], pt[1], pt[2])) < 1e-12;
    gate(zero);

    // DFT unitarity
    Eigen::MatrixXcd F = dft_change_of_basis(16);
    gate((F * F.adjoint() / 16.0 - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff() <
         1e-12);

    // sigma_min is 1-Lipschitz
    BTMatrix T = linear_hamiltonian(1.0, 24);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool lip = true;
    for (int t = 0; t < 6; ++t) {
        cplx l1(u(rng), u(rng)), l2(u(rng), u(rng));
        lip = lip && std::abs(sigma_min(T, l1) - sigma_min(T, l2)) <= std::abs(l1 - l2) + 1e-9;
    }
    gate(lip);

    // variational sandwich: the optimal mode attains sigma_min exactly
    BTMatrix M = model_matrix(0.5, 30);
    Pseudomode opt = optimal_pseudomode(M, cplx(0.2, 0.1));
    double direct = ((M.entries - cplx(0.2, 0.1) * Eigen::MatrixXcd::Identity(31, 31)) *
                     opt.coeffs)
                        .norm();
    gate(std::abs(direct - sigma_min(M, cplx(0.2, 0.1))) < 1e-10);

    // localization shift equivariance
    const int N = 48, sft = 7;
    Eigen::VectorXcd a = torus_wavepacket(0.0, 0.25, N, 1.0);
    Eigen::VectorXcd b = torus_wavepacket(0.0, 0.25 + double(sft) / N, N, 1.0);
    bool equi = true;
    for (int j = 0; j < N; ++j)
        equi = equi && std::abs(std::abs(b((j + sft) % N)) - std::abs(a(j))) < 1e-12;
    gate(equi);

    // determinism and atomicity of the experiment runner
    namespace fs = std::filesystem;
    fs::path out1 = fs::temp_directory_path() / "btps_acc_det1";
    fs::path out2 = fs::temp_directory_path() / "btps_acc_det2";
    for (const fs::path& out : {out1, out2}) {
        fs::remove_all(out);
        ExperimentConfig cfg;
        cfg.command = "build";
        cfg.preset = "torus-scottish";
        cfg.levels = {16};
        cfg.out_dir = out;
        gate(run(cfg) == 0);
    }
    std::ifstream f1(out1 / "matrix_N16.csv"), f2(out2 / "matrix_N16.csv");
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    gate(!s1.empty() && s1 == s2);
    for (const auto& e : fs::directory_iterator(out1)) gate(e.path().extension() != ".tmp");
}
