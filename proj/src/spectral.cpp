#include "btps/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace btps {

int thread_budget() {
    if (const char* env = std::getenv("BTPS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

double sigma_min(const Eigen::MatrixXcd& A) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    if (svd.info() != Eigen::Success)
        throw NumericalFailure("sigma_min: SVD did not converge");
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double sigma_min(const BTMatrix& T, cplx lambda) {
    T.validate();
    Eigen::MatrixXcd A = T.entries;
    A.diagonal().array() -= lambda;
    return sigma_min(A);
}

SmallestSingular smallest_singular(const Eigen::MatrixXcd& A) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalFailure("smallest_singular: SVD did not converge");
    const auto& s = svd.singularValues();
    const Eigen::Index n = s.size();
    SmallestSingular out;
    out.sigma = s(n - 1);
    out.vec = svd.matrixV().col(n - 1);
    out.gap = (n >= 2) ? s(n - 2) - s(n - 1) : std::numeric_limits<double>::infinity();
    return out;
}

PseudospectrumGrid pseudospectrum_grid(const BTMatrix& T,
                                       const std::array<double, 4>& window, int nx,
                                       int ny) {
    T.validate();
    if (nx < 2 || ny < 2) throw ConfigError("pseudospectrum_grid: nx, ny must be >= 2");
    if (window[1] < window[0] || window[3] < window[2])
        throw ConfigError("pseudospectrum_grid: window must be well-ordered");

    PseudospectrumGrid g;
    g.re_min = window[0];
    g.re_max = window[1];
    g.im_min = window[2];
    g.im_max = window[3];
    g.nx = nx;
    g.ny = ny;
    g.matrix_id = T.symbol_id;
    g.N = T.level;
    g.sigma_min_values.assign(size_t(nx) * ny, 0.0);

    const int total = nx * ny;
    const int workers = std::min(thread_budget(), total);
    std::vector<std::string> errors(static_cast<size_t>(workers));
    auto work = [&](int w) {
        for (int idx = w; idx < total; idx += workers) {
            int iy = idx / nx, ix = idx % nx;
            try {
                g.sigma_min_values[size_t(idx)] = sigma_min(T, g.node(iy, ix));
            } catch (const std::exception& e) {
                errors[size_t(w)] = std::string(e.what()) + " at grid node (" +
                                    std::to_string(ix) + "," + std::to_string(iy) + ")";
                return;
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    for (const std::string& e : errors)
        if (!e.empty()) throw NumericalFailure(e);
    return g;
}

std::vector<cplx> eigenvalues(const BTMatrix& T) {
    T.validate();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(T.entries, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericalFailure("eigenvalues: eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

NumericalRangeBoundary numerical_range(const BTMatrix& T, int M) {
    T.validate();
    if (M < 8) throw ConfigError("numerical_range: M must be >= 8");
    NumericalRangeBoundary out;
    out.angles.reserve(size_t(M));
    out.support_values.reserve(size_t(M));
    out.boundary_points.reserve(size_t(M));
    for (int m = 0; m < M; ++m) {
        double theta = 2.0 * kPi * m / M;
        cplx rot = std::polar(1.0, -theta);
        Eigen::MatrixXcd R = rot * T.entries;
        Eigen::MatrixXcd H = 0.5 * (R + R.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
        if (es.info() != Eigen::Success)
            throw NumericalFailure("numerical_range: Hermitian eigensolve failed");
        const Eigen::Index top = es.eigenvalues().size() - 1;
        Eigen::VectorXcd psi = es.eigenvectors().col(top);
        out.angles.push_back(theta);
        out.support_values.push_back(es.eigenvalues()(top));
        out.boundary_points.push_back((psi.adjoint() * T.entries * psi)(0, 0));
    }
    return out;
}

namespace {

cplx poly_eval(const std::vector<cplx>& F, cplx z) {
    cplx v = 0.0;
    for (auto it = F.rbegin(); it != F.rend(); ++it) v = v * z + *it;
    return v;
}

}  // namespace

ScalingReport szego_trace(const std::function<BTMatrix(int)>& family,
                          const std::vector<cplx>& F, const Symbol& f,
                          const std::vector<int>& levels) {
    if (F.size() > 7) throw ConfigError("szego_trace: polynomial degree must be <= 6");
    const int resolution = space_of(f) == Space::Sphere ? 317 : 512;
    std::vector<cplx> samples = image_samples(f, resolution);
    cplx avg = 0.0;
    for (cplx v : samples) avg += poly_eval(F, v);
    avg /= double(samples.size());

    std::vector<double> values;
    values.reserve(levels.size());
    for (int N : levels) {
        BTMatrix T = family(N);
        std::vector<cplx> ev = eigenvalues(T);
        cplx tr = 0.0;
        for (cplx l : ev) tr += poly_eval(F, l);
        values.push_back(std::abs(tr / double(ev.size()) - avg));
    }
    return make_report(levels, values, FitModel::LogLog);
}

std::vector<cplx> convex_hull(std::vector<cplx> pts) {
    const double tol = 1e-12;
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](cplx o, cplx a, cplx b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) -
               (a.imag() - o.imag()) * (b.real() - o.real());
    };
    std::vector<cplx> hull(2 * pts.size());
    size_t k = 0;
    for (const cplx& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= tol) --k;
        hull[k++] = p;
    }
    for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= tol) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

namespace {

double point_segment_distance(cplx p, cplx a, cplx b) {
    cplx ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double point_polygon_distance(cplx p, const std::vector<cplx>& poly) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return std::abs(p - poly[0]);
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < poly.size(); ++i)
        best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
    return best;
}

}  // namespace

double hausdorff_distance(const std::vector<cplx>& hull_a, const std::vector<cplx>& hull_b) {
    double d = 0.0;
    for (cplx p : hull_a) d = std::max(d, point_polygon_distance(p, hull_b));
    for (cplx q : hull_b) d = std::max(d, point_polygon_distance(q, hull_a));
    return d;
}

}  // namespace btps
