#include "btps/pseudomode.hpp"

#include <algorithm>
#include <cmath>

#include "btps/torus.hpp"

namespace btps {

namespace {

double wrap01(double t) {
    double r = t - std::floor(t);
    return r >= 1.0 ? r - 1.0 : r;
}

double torus_dist(double ax, double ay, double bx, double by) {
    double dx = std::abs(wrap01(ax) - wrap01(bx));
    double dy = std::abs(wrap01(ay) - wrap01(by));
    dx = std::min(dx, 1.0 - dx);
    dy = std::min(dy, 1.0 - dy);
    return std::hypot(dx, dy);
}

// Samples of f^{-1}(lambda): grid points whose value is within one grid-cell
// variation of the best achievable |f - lambda|.
std::vector<Point> level_set_samples(const Symbol& f, cplx lambda, int resolution) {
    std::vector<Point> pts = phase_space_samples(space_of(f), resolution);
    std::vector<double> err(pts.size());
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i) {
        err[i] = std::abs(eval(f, pts[i]) - lambda);
        best = std::min(best, err[i]);
    }
    double band = 0.0;
    if (space_of(f) == Space::Torus) {
        // max |f| variation across adjacent lattice cells
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j) {
                size_t a = size_t(i) * resolution + j;
                size_t right = size_t(i) * resolution + (j + 1) % resolution;
                size_t up = size_t((i + 1) % resolution) * resolution + j;
                cplx va = eval(f, pts[a]);
                band = std::max({band, std::abs(va - eval(f, pts[right])),
                                 std::abs(va - eval(f, pts[up]))});
            }
    } else if (space_of(f) == Space::Sphere) {
        const auto& s = std::get<SphereSymbol>(f);
        SphereSymbol d0 = s.d(0), d1 = s.d(1), d2 = s.d(2);
        double L = 0.0;
        for (const Point& p : pts) {
            double g = std::sqrt(std::norm(d0.eval(p[0], p[1], p[2])) +
                                 std::norm(d1.eval(p[0], p[1], p[2])) +
                                 std::norm(d2.eval(p[0], p[1], p[2])));
            L = std::max(L, g);
        }
        double h = std::sqrt(4.0 * kPi * 0.25 / double(pts.size()));
        band = 2.0 * L * h;
    } else {
        const auto& s = std::get<PlaneSymbol>(f);
        band = 2.0 * (std::abs(s.mu) + std::abs(s.nu)) * (2.0 / resolution);
    }
    std::vector<Point> out;
    for (size_t i = 0; i < pts.size(); ++i)
        if (err[i] <= best + band) out.push_back(pts[i]);
    return out;
}

}  // namespace

Eigen::VectorXcd torus_wavepacket(double x0, double y0, int N, double width) {
    if (width <= 0.0) throw ConfigError("torus_wavepacket: width must be > 0");
    if (N < 1) throw BadDimension("torus_wavepacket: N must be >= 1");
    x0 = wrap01(x0);
    y0 = wrap01(y0);
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(N);
    for (int j = 0; j < N; ++j) {
        cplx v = 0.0;
        for (int w = -1; w <= 1; ++w) {
            double u = j + w * N - N * y0;
            v += std::polar(std::exp(-kPi * u * u / (width * N)),
                            2.0 * kPi * x0 * (j + w * N));
        }
        a(j) = v;
    }
    double nrm = a.norm();
    if (nrm == 0.0) throw NumericalFailure("torus_wavepacket: zero packet");
    return a / nrm;
}

std::pair<double, double> packet_parameters_for(double x_center, double y_center) {
    return {wrap01(-x_center), wrap01(-y_center)};
}

ScalingReport residual_decay(const MatrixFamily& family, const ModeFamily& mode_builder,
                             cplx lambda, const std::vector<int>& levels) {
    if (levels.size() < 4) throw ConfigError("residual_decay: need >= 4 levels");
    std::vector<double> values;
    values.reserve(levels.size());
    for (int N : levels) {
        BTMatrix T = family(N);
        Eigen::VectorXcd psi = mode_builder(N);
        if (psi.size() != T.n()) throw BasisMismatch("residual_decay: mode/matrix dimension");
        Eigen::VectorXcd r = T.entries * psi - lambda * psi;
        values.push_back(r.norm() / psi.norm());
    }
    ScalingReport rep = make_report(levels, values, FitModel::LogLog);

    // Superpolynomial verdict over the top half of the levels.
    size_t start = levels.size() / 2;
    bool pass = true;
    for (int p = 2; p <= 4 && pass; ++p) {
        for (size_t i = start + 1; i < levels.size(); ++i) {
            double prev = rep.values[i - 1] * std::pow(double(levels[i - 1]), p);
            double curr = rep.values[i] * std::pow(double(levels[i]), p);
            if (curr >= prev && rep.values[i] > kValueFloor) {
                pass = false;
                break;
            }
        }
    }
    rep.verdict = pass ? "PASS" : "FAIL";
    return rep;
}

Pseudomode optimal_pseudomode(const BTMatrix& T, cplx lambda) {
    T.validate();
    Eigen::MatrixXcd A = T.entries;
    A.diagonal().array() -= lambda;
    SmallestSingular sv = smallest_singular(A);
    Pseudomode m;
    m.N = T.level;
    m.space = T.space;
    m.coeffs = sv.vec;
    m.residual = sv.sigma;
    m.lambda = lambda;
    m.degenerate = sv.gap < 1e-12;
    return m;
}

Localization localize(const Pseudomode& mode, const Symbol& f) {
    if (space_of(f) != mode.space)
        throw BasisMismatch("localize: mode basis does not match symbol space");
    const int n = int(mode.coeffs.size());
    const int N = mode.N;
    Localization out;
    double total = mode.coeffs.squaredNorm();
    out.primary_profile.resize(size_t(n));
    for (int j = 0; j < n; ++j) out.primary_profile[size_t(j)] = std::norm(mode.coeffs(j)) / total;

    const double radius = 3.0 / std::sqrt(double(N));

    if (mode.space == Space::Torus) {
        Eigen::VectorXcd hat = dft_change_of_basis(N) * mode.coeffs;
        double dual_total = hat.squaredNorm();
        out.dual_profile.resize(size_t(n));
        for (int k = 0; k < n; ++k) out.dual_profile[size_t(k)] = std::norm(hat(k)) / dual_total;

        std::vector<Point> level = level_set_samples(f, mode.lambda, 256);
        // Product of the two marginals, mapped to phase space by
        // (x, y) = ((-k/N) mod 1, (-j/N) mod 1).
        double mass = 0.0;
        for (int j = 0; j < n; ++j) {
            if (out.primary_profile[size_t(j)] < 1e-14) continue;
            double y = wrap01(-double(j) / N);
            for (int k = 0; k < n; ++k) {
                double cell = out.primary_profile[size_t(j)] * out.dual_profile[size_t(k)];
                if (cell < 1e-14) continue;
                double x = wrap01(-double(k) / N);
                for (const Point& q : level) {
                    if (torus_dist(x, y, q[0], q[1]) <= radius) {
                        mass += cell;
                        break;
                    }
                }
            }
        }
        out.mass_on_level_set = mass;
    } else if (mode.space == Space::Sphere) {
        std::vector<Point> level = level_set_samples(f, mode.lambda, 200);
        double mass = 0.0;
        for (int j = 0; j < n; ++j) {
            if (out.primary_profile[size_t(j)] < 1e-14) continue;
            double I = double(j) / double(N + 1);
            double z = I - 0.5;
            double r = std::sqrt(std::max(0.0, 0.25 - z * z));
            bool close = false;
            for (const Point& q : level) {
                double rq = std::hypot(q[0], q[1]);
                // chordal distance from the latitude circle to q
                if (std::hypot(z - q[2], r - rq) <= radius) {
                    close = true;
                    break;
                }
            }
            if (close) mass += out.primary_profile[size_t(j)];
        }
        out.mass_on_level_set = mass;
    } else {
        // Disk model: coefficient index k concentrates at |z| ~ sqrt(k/N).
        std::vector<Point> level = level_set_samples(f, mode.lambda, 200);
        double mass = 0.0;
        for (int j = 0; j < n; ++j) {
            double r = std::sqrt(double(j) / double(N));
            bool close = false;
            for (const Point& q : level)
                if (std::abs(r - std::hypot(q[0], q[1])) <= radius) {
                    close = true;
                    break;
                }
            if (close) mass += out.primary_profile[size_t(j)];
        }
        out.mass_on_level_set = mass;
    }
    return out;
}

namespace {

// Newton refinement of a level-set sample: solves Re f = Re lambda,
// Im f = Im lambda (plus the radius constraint on the sphere) so that bracket
// orders are evaluated on f^{-1}(lambda) itself rather than on a nearby grid
// node. Uses a rank-revealing least-squares step, which keeps converging
// (linearly) at points where the Jacobian degenerates.
Point refine_level_point(const Symbol& f, cplx lambda, Point p) {
    const Space sp = space_of(f);
    const double h = 1e-7;
    for (int iter = 0; iter < 120; ++iter) {
        cplx r0 = eval(f, p) - lambda;
        int dim = sp == Space::Sphere ? 3 : 2;
        int neq = sp == Space::Sphere ? 3 : 2;
        Eigen::MatrixXd J(neq, dim);
        Eigen::VectorXd r(neq);
        r(0) = r0.real();
        r(1) = r0.imag();
        for (int a = 0; a < dim; ++a) {
            Point pp = p, pm = p;
            pp[size_t(a)] += h;
            pm[size_t(a)] -= h;
            cplx fp, fm;
            if (sp == Space::Sphere) {
                const auto& s = std::get<SphereSymbol>(f);
                fp = s.eval(pp[0], pp[1], pp[2]);
                fm = s.eval(pm[0], pm[1], pm[2]);
            } else {
                fp = eval(f, pp);
                fm = eval(f, pm);
            }
            cplx d = (fp - fm) / (2.0 * h);
            J(0, a) = d.real();
            J(1, a) = d.imag();
        }
        if (sp == Space::Sphere) {
            double n2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
            r(2) = n2 - 0.25;
            for (int a = 0; a < 3; ++a) J(2, a) = 2.0 * p[size_t(a)];
        }
        Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(r);
        double sn = step.norm();
        if (sn > 0.2) step *= 0.2 / sn;  // trust region
        for (int a = 0; a < dim; ++a) p[size_t(a)] -= step(a);
        if (sp == Space::Sphere) {
            double nr = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            if (nr > 0.0)
                for (double& c : p) c *= 0.5 / nr;
        }
        if (sn < 1e-14) break;
    }
    return p;
}

// Boundary vs interior of the symbol's image: lambda is interior when small
// circles around it are covered by image samples in every direction.
bool lambda_is_interior(const Symbol& f, cplx lambda) {
    std::vector<cplx> img = image_samples(f, 200);
    double diam = 0.0;
    for (cplx v : img) diam = std::max(diam, std::abs(v - img[0]));
    if (diam == 0.0) return false;
    double rho = 0.15 * diam;
    bool sector[8] = {};
    for (cplx v : img) {
        double d = std::abs(v - lambda);
        if (d < 0.02 * rho || d > rho) continue;
        int s = int(std::floor((std::arg(v - lambda) + kPi) / (2.0 * kPi) * 8.0));
        sector[std::clamp(s, 0, 7)] = true;
    }
    for (bool b : sector)
        if (!b) return false;
    return true;
}

}  // namespace

ScalingReport boundary_exponent(const MatrixFamily& family, const Symbol& f, cplx lambda,
                                const std::vector<int>& levels, int max_depth) {
    if (levels.size() < 5) throw ConfigError("boundary_exponent: need >= 5 levels");
    const int res = space_of(f) == Space::Sphere ? 200 : 256;
    std::vector<Point> level = level_set_samples(f, lambda, res);
    if (level.empty()) throw ConfigError("boundary_exponent: empty level set");

    // Refine a spread of tube samples onto f^{-1}(lambda) before measuring
    // bracket orders there.
    size_t stride = std::max<size_t>(1, level.size() / 64);
    int k = 0;
    for (size_t i = 0; i < level.size(); i += stride) {
        Point q = refine_level_point(f, lambda, level[i]);
        int kq = bracket_order(f, q, max_depth);
        if (kq > max_depth)
            throw OrderUnbounded(
                "boundary_exponent: bracket order exceeds max_depth at a level-set point");
        k = std::max(k, kq);
    }

    std::vector<double> values;
    values.reserve(levels.size());
    for (int N : levels) values.push_back(sigma_min(family(N), lambda));
    ScalingReport rep = make_report(levels, values, FitModel::LogLog);

    double lo = -double(k) / double(k + 1) - 0.08;
    double hi = -0.5 + 0.08;
    rep.flags.push_back(lambda_is_interior(f, lambda) ? "interior" : "boundary");
    rep.flags.push_back("k=" + std::to_string(k));
    rep.flags.push_back("window=[" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    rep.verdict = (rep.slope >= lo && rep.slope <= hi) ? "PASS" : "FAIL";
    return rep;
}

ScalingReport part0_check(const MatrixFamily& family, const Symbol& f, cplx lambda,
                          const std::vector<int>& levels) {
    if (levels.size() < 4) throw ConfigError("part0_check: need >= 4 levels");
    const int res = space_of(f) == Space::Sphere ? 317 : 512;
    double dist = min_distance_to(f, lambda, res);
    std::vector<double> values;
    values.reserve(levels.size());
    for (int N : levels) values.push_back(std::abs(sigma_min(family(N), lambda) - dist));
    return make_report(levels, values, FitModel::LogLog);
}

}  // namespace btps
