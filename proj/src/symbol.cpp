#include "btps/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <nlohmann/json.hpp>

namespace btps {

namespace {

constexpr double kPruneTol = 0.0;  // exact zeros only; arithmetic stays rational-exact

bool negligible(cplx c) { return c == cplx(0.0); }

double wrap01(double t) {
    double r = t - std::floor(t);
    if (r >= 1.0) r -= 1.0;
    return r;
}

}  // namespace

// ---------------------------------------------------------------- TorusSymbol

TorusSymbol::TorusSymbol(std::map<Key, cplx> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (negligible(it->second))
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

TorusSymbol TorusSymbol::mode(int l, int m, cplx c) {
    TorusSymbol s;
    s.set_coeff(l, m, c);
    return s;
}

TorusSymbol TorusSymbol::constant(cplx c) { return mode(0, 0, c); }

cplx TorusSymbol::coeff(int l, int m) const {
    auto it = coeffs_.find({l, m});
    return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void TorusSymbol::set_coeff(int l, int m, cplx c) {
    if (negligible(c))
        coeffs_.erase({l, m});
    else
        coeffs_[{l, m}] = c;
}

cplx TorusSymbol::eval(double x, double y) const {
    cplx acc = 0.0;
    for (const auto& [k, c] : coeffs_) {
        double ph = 2.0 * kPi * (k.first * x + k.second * y);
        acc += c * std::polar(1.0, ph);
    }
    return acc;
}

bool TorusSymbol::is_real(double tol) const {
    for (const auto& [k, c] : coeffs_) {
        cplx mirror = coeff(-k.first, -k.second);
        if (std::abs(mirror - std::conj(c)) > tol) return false;
    }
    return true;
}

TorusSymbol TorusSymbol::conjugated() const {
    std::map<Key, cplx> out;
    for (const auto& [k, c] : coeffs_) out[{-k.first, -k.second}] = std::conj(c);
    return TorusSymbol(std::move(out));
}

TorusSymbol TorusSymbol::real_part() const {
    return (*this + conjugated()).scaled(0.5);
}

TorusSymbol TorusSymbol::imag_part() const {
    return (*this - conjugated()).scaled(cplx(0.0, -0.5));
}

TorusSymbol TorusSymbol::operator+(const TorusSymbol& o) const {
    std::map<Key, cplx> out = coeffs_;
    for (const auto& [k, c] : o.coeffs_) out[k] += c;
    return TorusSymbol(std::move(out));
}

TorusSymbol TorusSymbol::operator-(const TorusSymbol& o) const {
    return *this + o.scaled(-1.0);
}

TorusSymbol TorusSymbol::scaled(cplx s) const {
    std::map<Key, cplx> out;
    for (const auto& [k, c] : coeffs_) out[k] = c * s;
    return TorusSymbol(std::move(out));
}

TorusSymbol poisson_bracket(const TorusSymbol& g, const TorusSymbol& h) {
    // {g,h} = dx g dy h - dy g dx h with the convention {x,y} = 1.
    std::map<TorusSymbol::Key, cplx> out;
    for (const auto& [kg, cg] : g.coeffs()) {
        for (const auto& [kh, ch] : h.coeffs()) {
            double cross = double(kg.first) * kh.second - double(kg.second) * kh.first;
            if (cross == 0.0) continue;
            cplx amp = -4.0 * kPi * kPi * cross * cg * ch;
            out[{kg.first + kh.first, kg.second + kh.second}] += amp;
        }
    }
    return TorusSymbol(std::move(out));
}

// --------------------------------------------------------------- SphereSymbol

SphereSymbol::SphereSymbol(std::map<Key, cplx> poly) : poly_(std::move(poly)) {
    for (auto it = poly_.begin(); it != poly_.end();) {
        if (negligible(it->second))
            it = poly_.erase(it);
        else
            ++it;
    }
}

SphereSymbol SphereSymbol::monomial(int a, int b, int c, cplx amp) {
    SphereSymbol s;
    if (!negligible(amp)) s.poly_[{a, b, c}] = amp;
    return s;
}

SphereSymbol SphereSymbol::constant(cplx c) { return monomial(0, 0, 0, c); }

cplx SphereSymbol::eval(double x1, double x2, double x3) const {
    cplx acc = 0.0;
    for (const auto& [k, c] : poly_)
        acc += c * std::pow(x1, k[0]) * std::pow(x2, k[1]) * std::pow(x3, k[2]);
    return acc;
}

bool SphereSymbol::is_real(double tol) const {
    for (const auto& [k, c] : poly_)
        if (std::abs(c.imag()) > tol) return false;
    return true;
}

SphereSymbol SphereSymbol::conjugated() const {
    std::map<Key, cplx> out;
    for (const auto& [k, c] : poly_) out[k] = std::conj(c);
    return SphereSymbol(std::move(out));
}

SphereSymbol SphereSymbol::real_part() const { return (*this + conjugated()).scaled(0.5); }

SphereSymbol SphereSymbol::imag_part() const {
    return (*this - conjugated()).scaled(cplx(0.0, -0.5));
}

SphereSymbol SphereSymbol::operator+(const SphereSymbol& o) const {
    std::map<Key, cplx> out = poly_;
    for (const auto& [k, c] : o.poly_) out[k] += c;
    return SphereSymbol(std::move(out));
}

SphereSymbol SphereSymbol::operator-(const SphereSymbol& o) const {
    return *this + o.scaled(-1.0);
}

SphereSymbol SphereSymbol::operator*(const SphereSymbol& o) const {
    std::map<Key, cplx> out;
    for (const auto& [ka, ca] : poly_)
        for (const auto& [kb, cb] : o.poly_)
            out[{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}] += ca * cb;
    return SphereSymbol(std::move(out));
}

SphereSymbol SphereSymbol::scaled(cplx s) const {
    std::map<Key, cplx> out;
    for (const auto& [k, c] : poly_) out[k] = c * s;
    return SphereSymbol(std::move(out));
}

SphereSymbol SphereSymbol::d(int axis) const {
    std::map<Key, cplx> out;
    for (const auto& [k, c] : poly_) {
        if (k[axis] == 0) continue;
        Key kk = k;
        kk[axis] -= 1;
        out[kk] += c * double(k[axis]);
    }
    return SphereSymbol(std::move(out));
}

SphereSymbol poisson_bracket(const SphereSymbol& g, const SphereSymbol& h) {
    // {g,h}(x) = x . (grad g x grad h); realizes {x1,x2} = x3 cyclically.
    SphereSymbol g0 = g.d(0), g1 = g.d(1), g2 = g.d(2);
    SphereSymbol h0 = h.d(0), h1 = h.d(1), h2 = h.d(2);
    SphereSymbol x1 = SphereSymbol::monomial(1, 0, 0);
    SphereSymbol x2 = SphereSymbol::monomial(0, 1, 0);
    SphereSymbol x3 = SphereSymbol::monomial(0, 0, 1);
    return x1 * (g1 * h2 - g2 * h1) + x2 * (g2 * h0 - g0 * h2) + x3 * (g0 * h1 - g1 * h0);
}

// ---------------------------------------------------------- action-angle form

namespace {

// One-variable polynomial helpers (coefficients ascending).
std::vector<cplx> poly_add(std::vector<cplx> a, const std::vector<cplx>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<cplx> poly_pow(const std::vector<cplx>& a, int n) {
    std::vector<cplx> out{1.0};
    for (int i = 0; i < n; ++i) out = poly_mul(out, a);
    return out;
}

void prune_aa(ActionAngleForm& aa) {
    for (auto it = aa.g.begin(); it != aa.g.end();) {
        auto& v = it->second;
        while (!v.empty() && negligible(v.back())) v.pop_back();
        if (v.empty())
            it = aa.g.erase(it);
        else
            ++it;
    }
}

}  // namespace

ActionAngleForm to_action_angle(const SphereSymbol& f) {
    // Substitute x1 = (u+v)/2, x2 = (u-v)/(2i), x3 = I - 1/2 with u = x1+ix2,
    // v = x1-ix2, and reduce uv = I(1-I) on shell; the leftover power of u or v
    // carries the angular index l.
    ActionAngleForm aa;
    const std::vector<cplx> Ipoly{-0.5, 1.0};            // x3 = I - 1/2
    const std::vector<cplx> uv{0.0, 1.0, -1.0};          // uv = I - I^2
    for (const auto& [k, amp] : f.poly()) {
        int a = k[0], b = k[1], c = k[2];
        // (u+v)^a expansion times ((u-v)/(2i))^b expansion.
        for (int i = 0; i <= a; ++i) {
            double binA = 1.0;
            {
                // C(a,i)
                double v1 = 1.0;
                for (int t = 0; t < i; ++t) v1 = v1 * double(a - t) / double(t + 1);
                binA = v1;
            }
            for (int j = 0; j <= b; ++j) {
                double binB = 1.0;
                for (int t = 0; t < j; ++t) binB = binB * double(b - t) / double(t + 1);
                // u^{i+j} v^{a-i + b-j} with sign (-1)^{b-j} from (u-v)^b
                int p = i + j, q = (a - i) + (b - j);
                cplx coef = amp * binA * binB * std::pow(cplx(0.5), a) *
                            std::pow(cplx(0.0, -0.5), b) * ((b - j) % 2 ? -1.0 : 1.0);
                int l = p - q;
                int r = std::min(p, q);
                std::vector<cplx> gpart = poly_mul(poly_pow(uv, r), poly_pow(Ipoly, c));
                for (auto& cc : gpart) cc *= coef;
                aa.g[l] = poly_add(aa.g.count(l) ? aa.g[l] : std::vector<cplx>{}, gpart);
            }
        }
    }
    prune_aa(aa);
    return aa;
}

SphereSymbol from_action_angle(const ActionAngleForm& aa) {
    SphereSymbol out;
    SphereSymbol u = SphereSymbol::monomial(1, 0, 0) + SphereSymbol::monomial(0, 1, 0).scaled(cplx(0, 1));
    SphereSymbol v = SphereSymbol::monomial(1, 0, 0) - SphereSymbol::monomial(0, 1, 0).scaled(cplx(0, 1));
    SphereSymbol I = SphereSymbol::monomial(0, 0, 1) + SphereSymbol::constant(0.5);
    for (const auto& [l, gpoly] : aa.g) {
        SphereSymbol gI = SphereSymbol::constant(0.0);
        SphereSymbol Ipow = SphereSymbol::constant(1.0);
        for (const cplx& c : gpoly) {
            gI = gI + Ipow.scaled(c);
            Ipow = Ipow * I;
        }
        SphereSymbol ang = SphereSymbol::constant(1.0);
        const SphereSymbol& base = (l >= 0) ? u : v;
        for (int t = 0; t < std::abs(l); ++t) ang = ang * base;
        out = out + ang * gI;
    }
    return out;
}

// ---------------------------------------------------------------- PlaneSymbol

bool PlaneSymbol::is_real(double tol) const {
    return std::abs(mu - std::conj(nu)) <= tol && std::abs(kappa.imag()) <= tol;
}

PlaneSymbol PlaneSymbol::conjugated() const {
    return {std::conj(nu), std::conj(mu), std::conj(kappa)};
}

PlaneSymbol PlaneSymbol::real_part() const {
    PlaneSymbol c = conjugated();
    return {(mu + c.mu) * 0.5, (nu + c.nu) * 0.5, (kappa + c.kappa) * 0.5};
}

PlaneSymbol PlaneSymbol::imag_part() const {
    PlaneSymbol c = conjugated();
    cplx s(0.0, -0.5);
    return {(mu - c.mu) * s, (nu - c.nu) * s, (kappa - c.kappa) * s};
}

PlaneSymbol PlaneSymbol::operator+(const PlaneSymbol& o) const {
    return {mu + o.mu, nu + o.nu, kappa + o.kappa};
}

PlaneSymbol PlaneSymbol::operator-(const PlaneSymbol& o) const {
    return {mu - o.mu, nu - o.nu, kappa - o.kappa};
}

PlaneSymbol PlaneSymbol::scaled(cplx s) const { return {mu * s, nu * s, kappa * s}; }

PlaneSymbol poisson_bracket(const PlaneSymbol& g, const PlaneSymbol& h) {
    // With z = x + iy and {x,y} = 1 the bracket of two affine symbols is the
    // constant 2i (nu_g mu_h - mu_g nu_h).
    return {0.0, 0.0, cplx(0.0, 2.0) * (g.nu * h.mu - g.mu * h.nu)};
}

// --------------------------------------------------------------- Symbol union

Space space_of(const Symbol& f) {
    return std::visit(
        [](const auto& s) -> Space {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TorusSymbol>) return Space::Torus;
            if constexpr (std::is_same_v<T, SphereSymbol>) return Space::Sphere;
            return Space::PlaneDisk;
        },
        f);
}

cplx eval(const Symbol& f, const Point& p) {
    if (const auto* t = std::get_if<TorusSymbol>(&f)) return t->eval(wrap01(p[0]), wrap01(p[1]));
    if (const auto* s = std::get_if<SphereSymbol>(&f)) {
        double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        if (std::abs(std::sqrt(r2) - 0.5) > 1e-9)
            throw SphereOffShell("sphere point violates |x| = 1/2");
        return s->eval(p[0], p[1], p[2]);
    }
    return std::get<PlaneSymbol>(f).eval(cplx(p[0], p[1]));
}

namespace {

template <class Op>
Symbol binary_same_space(const Symbol& g, const Symbol& h, Op op, const char* what) {
    if (g.index() != h.index())
        throw MixedSpaces(std::string(what) + ": operands on different phase spaces");
    if (const auto* a = std::get_if<TorusSymbol>(&g))
        return op(*a, std::get<TorusSymbol>(h));
    if (const auto* a = std::get_if<SphereSymbol>(&g))
        return op(*a, std::get<SphereSymbol>(h));
    return op(std::get<PlaneSymbol>(g), std::get<PlaneSymbol>(h));
}

}  // namespace

Symbol poisson_bracket(const Symbol& g, const Symbol& h) {
    return binary_same_space(
        g, h, [](const auto& a, const auto& b) -> Symbol { return poisson_bracket(a, b); },
        "poisson_bracket");
}

Symbol symbol_sub(const Symbol& g, const Symbol& h) {
    return binary_same_space(
        g, h, [](const auto& a, const auto& b) -> Symbol { return a - b; }, "symbol_sub");
}

Symbol symbol_scale(const Symbol& g, cplx s) {
    return std::visit([&](const auto& a) -> Symbol { return a.scaled(s); }, g);
}

Symbol symbol_conj(const Symbol& g) {
    return std::visit([](const auto& a) -> Symbol { return a.conjugated(); }, g);
}

Symbol symbol_real(const Symbol& g) {
    return std::visit([](const auto& a) -> Symbol { return a.real_part(); }, g);
}

Symbol symbol_imag(const Symbol& g) {
    return std::visit([](const auto& a) -> Symbol { return a.imag_part(); }, g);
}

bool symbol_is_real(const Symbol& g, double tol) {
    return std::visit([&](const auto& a) { return a.is_real(tol); }, g);
}

int bracket_order(const Symbol& f, const Point& p, int max_depth) {
    if (max_depth < 1) throw ConfigError("bracket_order: max_depth must be >= 1");
    const double tol = 1e-9;
    cplx f0 = eval(f, p);
    Symbol shifted = f;
    std::visit(
        [&](auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TorusSymbol>)
                s.set_coeff(0, 0, s.coeff(0, 0) - f0);
            else if constexpr (std::is_same_v<T, SphereSymbol>)
                s = s - SphereSymbol::constant(f0);
            else
                s.kappa -= f0;
        },
        shifted);
    std::array<Symbol, 2> parts{symbol_real(shifted), symbol_imag(shifted)};

    // Level m holds all repeated brackets f_I with |I| = m.
    std::vector<Symbol> level{parts[0], parts[1]};
    for (int m = 1; m <= max_depth + 1; ++m) {
        for (const Symbol& s : level)
            if (std::abs(eval(s, p)) > tol) return m - 1;
        if (m == max_depth + 1) break;
        std::vector<Symbol> next;
        next.reserve(level.size() * 2);
        for (const Symbol& s : level) {
            next.push_back(poisson_bracket(parts[0], s));
            next.push_back(poisson_bracket(parts[1], s));
        }
        level = std::move(next);
    }
    return max_depth + 1;
}

std::vector<Point> phase_space_samples(Space space, int resolution) {
    if (resolution < 2) throw ConfigError("phase_space_samples: resolution must be >= 2");
    std::vector<Point> pts;
    switch (space) {
        case Space::Torus: {
            pts.reserve(size_t(resolution) * resolution);
            for (int i = 0; i < resolution; ++i)
                for (int j = 0; j < resolution; ++j)
                    pts.push_back({double(i) / resolution, double(j) / resolution, 0.0});
            break;
        }
        case Space::Sphere: {
            // Fibonacci lattice at radius 1/2 (area-uniform, hence uniform in
            // the action I).
            const long n = long(resolution) * resolution;
            const double ga = kPi * (3.0 - std::sqrt(5.0));
            pts.reserve(n);
            for (long i = 0; i < n; ++i) {
                double z = 0.5 * (1.0 - 2.0 * (i + 0.5) / double(n));
                double r = std::sqrt(std::max(0.0, 0.25 - z * z));
                double th = ga * double(i);
                pts.push_back({r * std::cos(th), r * std::sin(th), z});
            }
            break;
        }
        case Space::PlaneDisk: {
            pts.reserve(size_t(resolution) * resolution);
            for (int a = 0; a < resolution; ++a) {
                double r = double(a) / double(resolution - 1);
                for (int b = 0; b < resolution; ++b) {
                    double th = 2.0 * kPi * b / resolution;
                    pts.push_back({r * std::cos(th), r * std::sin(th), 0.0});
                }
            }
            break;
        }
    }
    return pts;
}

std::vector<cplx> image_samples(const Symbol& f, int resolution) {
    std::vector<Point> pts = phase_space_samples(space_of(f), resolution);
    std::vector<cplx> out;
    out.reserve(pts.size());
    for (const Point& p : pts) out.push_back(eval(f, p));
    return out;
}

double min_distance_to(const Symbol& f, cplx lambda, int resolution) {
    double best = std::numeric_limits<double>::infinity();
    for (cplx v : image_samples(f, resolution)) best = std::min(best, std::abs(v - lambda));
    return best;
}

// ------------------------------------------------------------------ JSON I/O

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<const char*> keys,
                  const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known) throw ConfigError(std::string("unknown field '") + it.key() + "' in " + where);
    }
}

}  // namespace

Symbol symbol_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("symbol JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("symbol: expected object");
    require_keys(j, {"space", "terms"}, "symbol");
    if (!j.contains("space") || !j.contains("terms"))
        throw ConfigError("symbol: missing 'space' or 'terms'");
    std::string space = j["space"].get<std::string>();
    const json& terms = j["terms"];
    if (!terms.is_array()) throw ConfigError("symbol: 'terms' must be an array");

    auto term_fields = [](const json& t) {
        require_keys(t, {"k", "re", "im"}, "symbol term");
        if (!t.contains("k") || !t.contains("re") || !t.contains("im"))
            throw ConfigError("symbol term: need k, re, im");
    };

    if (space == "torus") {
        TorusSymbol s;
        for (const json& t : terms) {
            term_fields(t);
            auto k = t["k"].get<std::vector<int>>();
            if (k.size() != 2) throw ConfigError("torus term: k must be [l,m]");
            s.set_coeff(k[0], k[1], s.coeff(k[0], k[1]) + cplx(t["re"].get<double>(), t["im"].get<double>()));
        }
        return s;
    }
    if (space == "sphere") {
        std::map<SphereSymbol::Key, cplx> poly;
        for (const json& t : terms) {
            term_fields(t);
            auto k = t["k"].get<std::vector<int>>();
            if (k.size() != 3 || k[0] < 0 || k[1] < 0 || k[2] < 0)
                throw ConfigError("sphere term: k must be [a,b,c] with non-negative entries");
            poly[{k[0], k[1], k[2]}] += cplx(t["re"].get<double>(), t["im"].get<double>());
        }
        return SphereSymbol(std::move(poly));
    }
    if (space == "plane") {
        PlaneSymbol s;
        for (const json& t : terms) {
            term_fields(t);
            auto k = t["k"].get<std::vector<int>>();
            if (k.size() != 1 || k[0] < 0 || k[0] > 2)
                throw ConfigError("plane term: k must be [0] (mu), [1] (nu) or [2] (kappa)");
            cplx c(t["re"].get<double>(), t["im"].get<double>());
            if (k[0] == 0) s.mu += c;
            if (k[0] == 1) s.nu += c;
            if (k[0] == 2) s.kappa += c;
        }
        return s;
    }
    throw ConfigError("symbol: space must be torus|sphere|plane");
}

std::string symbol_to_json(const Symbol& f) {
    json j;
    j["space"] = space_name(space_of(f));
    json terms = json::array();
    auto push = [&](std::vector<int> k, cplx c) {
        terms.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    };
    if (const auto* t = std::get_if<TorusSymbol>(&f)) {
        for (const auto& [k, c] : t->coeffs()) push({k.first, k.second}, c);
    } else if (const auto* s = std::get_if<SphereSymbol>(&f)) {
        for (const auto& [k, c] : s->poly()) push({k[0], k[1], k[2]}, c);
    } else {
        const auto& p = std::get<PlaneSymbol>(f);
        if (p.mu != cplx(0.0)) push({0}, p.mu);
        if (p.nu != cplx(0.0)) push({1}, p.nu);
        if (p.kappa != cplx(0.0)) push({2}, p.kappa);
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

std::string symbol_hash(const Symbol& f) {
    // FNV-1a over the canonical JSON serialization.
    std::string s = symbol_to_json(f);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace btps
