#include "btps/bargmann.hpp"

#include <cmath>

namespace btps {

namespace {

constexpr double kTailCut = 1e-14;
constexpr double kRescaleAt = 1e150;

}  // namespace

double SqueezedState::norm() const {
    double s = 0.0;
    for (cplx a : coeffs) s += std::norm(a);
    return std::sqrt(s);
}

BTMatrix model_matrix(double mu, int N) {
    if (N < 1) throw BadDimension("model_matrix: N must be >= 1");
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int k = 1; k <= N; ++k) {
        double r = std::sqrt(double(k) / N);
        T(k - 1, k) = r;
        T(k, k - 1) = mu * r;
    }
    BTMatrix out{std::move(T), Space::PlaneDisk, N, "model", BuildMode::Exact};
    out.validate();
    return out;
}

SqueezedState squeezed_coefficients(double mu, cplx z0, int N) {
    if (std::abs(mu) >= 1.0)
        throw NotNormalizable("squeezed state requires |mu| < 1");
    if (N < 1) throw BadDimension("squeezed_coefficients: N must be >= 1");

    // Rescaled recurrence for a_k = exp(pref) u_k e^{s_k}: u_0 = 1,
    // u_1 = b sqrt(N), u_k = b sqrt(N/k) u_{k-1} - mu sqrt((k-1)/k) u_{k-2},
    // with b = conj(z0) + mu z0; a running log scale s keeps u bounded.
    const cplx b = std::conj(z0) + mu * z0;
    const cplx pref = -0.5 * double(N) * std::norm(z0) - 0.5 * double(N) * mu * z0 * z0;

    SqueezedState st{N, mu, z0, {}};
    cplx prev = 1.0, cur = b * std::sqrt(double(N));
    double scale = 0.0;
    auto emit = [&](cplx u, double s) {
        st.coeffs.push_back(u * std::exp(pref + cplx(s, 0.0)));
    };
    emit(prev, scale);
    emit(cur, scale);

    double peak = std::abs(st.coeffs[0]);
    int quiet = 0;
    const int kmax = 64 * N + 4096;  // safety stop far past any |mu| < 1 tail
    for (int k = 2; k <= kmax; ++k) {
        cplx next = b * std::sqrt(double(N) / k) * cur -
                    mu * std::sqrt(double(k - 1) / k) * prev;
        prev = cur;
        cur = next;
        double mag = std::max(std::abs(cur), std::abs(prev));
        if (mag > kRescaleAt) {
            double d = std::log(mag);
            cur /= mag;
            prev /= mag;
            scale += d;
        }
        emit(cur, scale);
        double ak = std::abs(st.coeffs.back());
        peak = std::max(peak, ak);
        quiet = (ak < kTailCut * peak) ? quiet + 1 : 0;
        if (quiet >= 3 && int(st.coeffs.size()) >= N + 2) break;
    }
    if (quiet < 3)
        throw NumericalFailure("squeezed_coefficients: tail did not converge");
    return st;
}

ThetaProjection project_theta(const SqueezedState& state) {
    const int N = state.N;
    if (int(state.coeffs.size()) < N + 2)
        throw BadDimension("project_theta: state truncation below N+1");
    ThetaProjection out;
    out.head.assign(state.coeffs.begin(), state.coeffs.begin() + N + 1);
    double tail2 = 0.0;
    for (size_t k = N + 1; k < state.coeffs.size(); ++k) tail2 += std::norm(state.coeffs[k]);
    out.tail_norm = std::sqrt(tail2);
    return out;
}

ResidualIdentity residual_identity_check(double mu, cplx z0, int N) {
    SqueezedState st = squeezed_coefficients(mu, z0, N);
    ThetaProjection pr = project_theta(st);
    const cplx lambda = mu * z0 + std::conj(z0);

    BTMatrix T = model_matrix(mu, N);
    Eigen::VectorXcd v(N + 1);
    for (int k = 0; k <= N; ++k) v(k) = pr.head[size_t(k)];
    Eigen::VectorXcd r = T.entries * v - lambda * v;

    ResidualIdentity out;
    out.lambda = lambda;
    out.direct = r.norm();
    out.formula = std::abs(mu * st.coeffs[size_t(N - 1)] - lambda * st.coeffs[size_t(N)]);
    return out;
}

double regularized_gamma_q(int N, double x) {
    if (N < 0) throw BadDimension("regularized_gamma_q: N must be >= 0");
    if (x < 0.0) throw ConfigError("regularized_gamma_q: x must be >= 0");
    if (x == 0.0) return 1.0;
    // log-sum-exp of t_k = k ln x - ln k!, k = 0..N.
    double tmax = -std::numeric_limits<double>::infinity();
    std::vector<double> t(size_t(N) + 1);
    for (int k = 0; k <= N; ++k) {
        t[size_t(k)] = k * std::log(x) - std::lgamma(double(k) + 1.0);
        tmax = std::max(tmax, t[size_t(k)]);
    }
    double s = 0.0;
    for (double tk : t) s += std::exp(tk - tmax);
    return std::exp(-x + tmax + std::log(s));
}

double coherent_log_norm_sq(int N, double absw) {
    return std::log(double(N)) + N * absw * absw;
}

namespace {

// log(1 - Q(N+1, x)) through the convergent tail series over k > N
// (valid since x <= N implies decreasing terms).
double log_one_minus_q(int N, double x) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    const double t0 = (N + 1) * std::log(x) - std::lgamma(double(N) + 2.0);
    double s = 0.0, term = 1.0;
    for (int k = N + 2; ; ++k) {
        s += term;
        term *= x / k;
        if (term < 1e-18 * s) break;
    }
    return -x + t0 + std::log(s);
}

}  // namespace

double coherent_log_tail_sq(int N, double absw) {
    return coherent_log_norm_sq(N, absw) + log_one_minus_q(N, double(N) * absw * absw);
}

std::vector<cplx> coherent_coefficients(cplx w, int N, int K) {
    std::vector<cplx> a(size_t(K) + 1);
    const double lw = std::log(std::abs(w));
    const double arg = std::arg(std::conj(w));
    const double lN = 0.5 * std::log(double(N));
    for (int k = 0; k <= K; ++k) {
        if (std::abs(w) == 0.0 && k > 0) { a[size_t(k)] = 0.0; continue; }
        double lm = lN + k * (lN + lw) - 0.5 * std::lgamma(double(k) + 1.0);
        a[size_t(k)] = std::polar(std::exp(lm), k * arg);
    }
    return a;
}

}  // namespace btps
