#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "btps/bargmann.hpp"
#include "btps/pseudomode.hpp"
#include "btps/runner.hpp"
#include "btps/sphere.hpp"
#include "btps/spectral.hpp"
#include "btps/torus.hpp"

namespace py = pybind11;
using namespace btps;

namespace {

BTMatrix matrix_from_symbol(const std::string& symbol_json, int N, const std::string& mode) {
    Symbol f = symbol_from_json(symbol_json);
    switch (space_of(f)) {
        case Space::Torus:
            return build_torus(std::get<TorusSymbol>(f), N,
                               mode == "leading" ? BuildMode::Leading : BuildMode::Exact);
        case Space::Sphere:
            return build_sphere(std::get<SphereSymbol>(f), N);
        case Space::PlaneDisk: {
            const auto& p = std::get<PlaneSymbol>(f);
            if (std::abs(p.nu - 1.0) > 1e-12 || std::abs(p.kappa) > 1e-12 ||
                std::abs(p.mu.imag()) > 1e-12)
                throw ConfigError("plane symbols must be mu z + conj(z) with real mu");
            return model_matrix(p.mu.real(), N);
        }
    }
    throw ConfigError("unreachable");
}

BTMatrix wrap_matrix(const Eigen::MatrixXcd& A, const std::string& space_str, int N) {
    Space sp = Space::Torus;
    if (space_str == "sphere") sp = Space::Sphere;
    else if (space_str == "plane") sp = Space::PlaneDisk;
    else if (space_str != "torus") throw ConfigError("space must be torus|sphere|plane");
    BTMatrix T{A, sp, N, "external", BuildMode::Exact};
    T.validate();
    return T;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "quantized matrix families, pseudospectra and pseudomodes";

    py::register_exception<Error>(m, "BtpsError");

    m.def("build_matrix",
          [](const std::string& symbol_json, int N, const std::string& mode) {
              return matrix_from_symbol(symbol_json, N, mode).entries;
          },
          py::arg("symbol_json"), py::arg("N"), py::arg("mode") = "exact",
          "Dense matrix of the quantized symbol at level N.");

    m.def("model_matrix",
          [](double mu, int N) { return model_matrix(mu, N).entries; },
          py::arg("mu"), py::arg("N"));

    m.def("linear_hamiltonian",
          [](double t, int N) { return linear_hamiltonian(t, N).entries; },
          py::arg("t"), py::arg("N"));

    m.def("dft_change_of_basis", &dft_change_of_basis, py::arg("N"));

    m.def("sigma_min",
          [](const Eigen::MatrixXcd& A, cplx lambda) {
              Eigen::MatrixXcd B = A;
              B.diagonal().array() -= lambda;
              return sigma_min(B);
          },
          py::arg("matrix"), py::arg("lam") = cplx(0.0, 0.0));

    m.def("eigenvalues",
          [](const Eigen::MatrixXcd& A, const std::string& space, int N) {
              return eigenvalues(wrap_matrix(A, space, N));
          },
          py::arg("matrix"), py::arg("space") = "torus", py::arg("N") = 0);

    m.def("pseudospectrum_grid",
          [](const Eigen::MatrixXcd& A, const std::array<double, 4>& window, int nx, int ny,
             const std::string& space, int N) {
              PseudospectrumGrid g =
                  pseudospectrum_grid(wrap_matrix(A, space, N), window, nx, ny);
              py::dict out;
              out["re_range"] = std::array<double, 2>{g.re_min, g.re_max};
              out["im_range"] = std::array<double, 2>{g.im_min, g.im_max};
              out["nx"] = g.nx;
              out["ny"] = g.ny;
              out["sigma_min"] = g.sigma_min_values;
              return out;
          },
          py::arg("matrix"), py::arg("window"), py::arg("nx"), py::arg("ny"),
          py::arg("space") = "torus", py::arg("N") = 0);

    m.def("optimal_pseudomode",
          [](const Eigen::MatrixXcd& A, cplx lambda, const std::string& space, int N) {
              Pseudomode p = optimal_pseudomode(wrap_matrix(A, space, N), lambda);
              py::dict out;
              out["residual"] = p.residual;
              out["coeffs"] = p.coeffs;
              out["degenerate"] = p.degenerate;
              return out;
          },
          py::arg("matrix"), py::arg("lam"), py::arg("space") = "torus", py::arg("N") = 0);

    m.def("torus_wavepacket", &torus_wavepacket, py::arg("x0"), py::arg("y0"), py::arg("N"),
          py::arg("width") = 1.0);

    m.def("squeezed_coefficients",
          [](double mu, cplx z0, int N) { return squeezed_coefficients(mu, z0, N).coeffs; },
          py::arg("mu"), py::arg("z0"), py::arg("N"));

    m.def("symbol_eval",
          [](const std::string& symbol_json, const Point& p) {
              return eval(symbol_from_json(symbol_json), p);
          },
          py::arg("symbol_json"), py::arg("point"));

    m.def("bracket_order",
          [](const std::string& symbol_json, const Point& p, int max_depth) {
              return bracket_order(symbol_from_json(symbol_json), p, max_depth);
          },
          py::arg("symbol_json"), py::arg("point"), py::arg("max_depth") = 4);

    m.def("preset_names", [] { return preset_names(); });
}
