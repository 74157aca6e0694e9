#pragma once

#include <map>
#include <variant>
#include <vector>

#include "btps/common.hpp"

namespace btps {

// Trigonometric polynomial f(x,y) = sum c_{l,m} e^{2 pi i (l x + m y)} on [0,1)^2.
class TorusSymbol {
  public:
    using Key = std::pair<int, int>;

    TorusSymbol() = default;
    explicit TorusSymbol(std::map<Key, cplx> coeffs);

    static TorusSymbol mode(int l, int m, cplx c = 1.0);
    static TorusSymbol constant(cplx c);

    const std::map<Key, cplx>& coeffs() const { return coeffs_; }
    cplx coeff(int l, int m) const;
    void set_coeff(int l, int m, cplx c);

    cplx eval(double x, double y) const;
    bool is_real(double tol = 1e-12) const;

    TorusSymbol conjugated() const;
    TorusSymbol real_part() const;
    TorusSymbol imag_part() const;

    TorusSymbol operator+(const TorusSymbol& o) const;
    TorusSymbol operator-(const TorusSymbol& o) const;
    TorusSymbol scaled(cplx s) const;

  private:
    std::map<Key, cplx> coeffs_;  // zero entries pruned
};

TorusSymbol poisson_bracket(const TorusSymbol& g, const TorusSymbol& h);

// Polynomial in the ambient coordinates x1, x2, x3 evaluated on the radius-1/2
// sphere x1^2 + x2^2 + x3^2 = 1/4.
class SphereSymbol {
  public:
    using Key = std::array<int, 3>;  // exponents (a, b, c)

    SphereSymbol() = default;
    explicit SphereSymbol(std::map<Key, cplx> poly);

    static SphereSymbol monomial(int a, int b, int c, cplx amp = 1.0);
    static SphereSymbol constant(cplx c);

    const std::map<Key, cplx>& poly() const { return poly_; }

    cplx eval(double x1, double x2, double x3) const;
    bool is_real(double tol = 1e-12) const;

    SphereSymbol conjugated() const;
    SphereSymbol real_part() const;
    SphereSymbol imag_part() const;

    SphereSymbol operator+(const SphereSymbol& o) const;
    SphereSymbol operator-(const SphereSymbol& o) const;
    SphereSymbol operator*(const SphereSymbol& o) const;
    SphereSymbol scaled(cplx s) const;
    SphereSymbol d(int axis) const;  // partial derivative w.r.t. x_{axis+1}

  private:
    std::map<Key, cplx> poly_;
};

SphereSymbol poisson_bracket(const SphereSymbol& g, const SphereSymbol& h);

// Fourier decomposition in action-angle coordinates: f = sum_l e^{i l theta}
// (I(1-I))^{|l|/2} g_l(I) with polynomial g_l; map l -> coefficients of g_l
// in ascending powers of I.
struct ActionAngleForm {
    std::map<int, std::vector<cplx>> g;
};

ActionAngleForm to_action_angle(const SphereSymbol& f);
SphereSymbol from_action_angle(const ActionAngleForm& aa);

// Affine symbol f(z, zbar) = mu z + nu zbar + kappa on the closed unit disk.
struct PlaneSymbol {
    cplx mu{0.0};
    cplx nu{0.0};
    cplx kappa{0.0};

    cplx eval(cplx z) const { return mu * z + nu * std::conj(z) + kappa; }
    bool is_real(double tol = 1e-12) const;

    PlaneSymbol conjugated() const;
    PlaneSymbol real_part() const;
    PlaneSymbol imag_part() const;

    PlaneSymbol operator+(const PlaneSymbol& o) const;
    PlaneSymbol operator-(const PlaneSymbol& o) const;
    PlaneSymbol scaled(cplx s) const;
};

PlaneSymbol poisson_bracket(const PlaneSymbol& g, const PlaneSymbol& h);

using Symbol = std::variant<TorusSymbol, SphereSymbol, PlaneSymbol>;

Space space_of(const Symbol& f);

// Evaluate at a phase-space point. Torus points wrap mod 1; sphere points must
// satisfy |x| = 1/2 within 1e-9 (SphereOffShell otherwise).
cplx eval(const Symbol& f, const Point& p);

// MixedSpaces if the operands live on different phase spaces.
Symbol poisson_bracket(const Symbol& g, const Symbol& h);

Symbol symbol_sub(const Symbol& g, const Symbol& h);
Symbol symbol_scale(const Symbol& g, cplx s);
Symbol symbol_conj(const Symbol& g);
Symbol symbol_real(const Symbol& g);
Symbol symbol_imag(const Symbol& g);
bool symbol_is_real(const Symbol& g, double tol = 1e-12);

// Order k(p) of the point: largest j <= max_depth such that every repeated
// Poisson bracket of Re(f - f(p)), Im(f - f(p)) of length <= j vanishes at p
// (tolerance 1e-9). Returns max_depth + 1 when all brackets through length
// max_depth + 1 vanish.
int bracket_order(const Symbol& f, const Point& p, int max_depth);

// Deterministic quasi-uniform sampling of the phase space. Torus: resolution^2
// lattice; sphere: resolution^2 Fibonacci points at radius 1/2; plane:
// resolution x resolution polar grid of the unit disk (center included).
std::vector<Point> phase_space_samples(Space space, int resolution);
std::vector<cplx> image_samples(const Symbol& f, int resolution);

double min_distance_to(const Symbol& f, cplx lambda, int resolution);

// JSON (de)serialization per the schema
// {"space": ..., "terms": [{"k": [...], "re": ..., "im": ...}]}.
Symbol symbol_from_json(const std::string& text);
std::string symbol_to_json(const Symbol& f);
std::string symbol_hash(const Symbol& f);

}  // namespace btps
