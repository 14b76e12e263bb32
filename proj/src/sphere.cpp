#include "riesz/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace sf = specfun;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

RieszParameter RieszParameter::riesz(int d, double s) {
    if (d < 2) throw DomainError("dimension d must be >= 2 (got " + std::to_string(d) + ")");
    if (!(s > 0.0) || !std::isfinite(s))
        throw DomainError("Riesz exponent s must be a positive number");
    RieszParameter p;
    p.d = d;
    p.kind = KernelKind::riesz;
    p.s = s;
    return p;
}

RieszParameter RieszParameter::logarithmic(int d) {
    if (d < 2) throw DomainError("dimension d must be >= 2 (got " + std::to_string(d) + ")");
    RieszParameter p;
    p.d = d;
    p.kind = KernelKind::logarithmic;
    p.s = 0.0;
    return p;
}

double RieszParameter::kernel(double dist) const {
    if (is_log()) return -std::log(dist);
    return std::pow(dist, -s);
}

double RieszParameter::kernel_sq(double dist2) const {
    if (is_log()) return -0.5 * std::log(dist2);
    return std::pow(dist2, -0.5 * s);
}

std::string RieszParameter::s_label() const {
    if (is_log()) return "log";
    std::ostringstream os;
    os.precision(15);
    os << s;
    return os.str();
}

double AxialDensity::operator()(double u) const {
    if (u > t_max) return 0.0;
    const double dt = t_max - u;
    const double sing = (alpha == 0.0) ? 1.0 : std::pow(dt, alpha);
    return sing * g(u, dt);
}

AxialDensity AxialDensity::uniform() {
    AxialDensity a;
    a.t_max = 1.0;
    a.alpha = 0.0;
    a.g = [](double, double) { return 1.0; };
    return a;
}

namespace sphere {

double gamma_d(int d) {
    if (d < 2) throw DomainError("gamma_d: d must be >= 2");
    return std::exp(sf::lgamma_abs(0.5 * (d + 1)) - sf::lgamma_abs(0.5 * d)) / std::sqrt(kPi);
}

double sphere_energy(const RieszParameter& p) {
    if (p.is_log()) return 1.0;  // stand-in used by the separation constants
    const int d = p.d;
    const double s = p.s;
    if (!(s < d)) throw DomainError("sphere_energy: requires 0 < s < d");
    return std::exp((d - 1 - s) * std::log(2.0) + sf::lgamma_abs(0.5 * (d + 1)) +
                    sf::lgamma_abs(0.5 * (d - s)) - sf::lgamma_abs(d - 0.5 * s)) /
           std::sqrt(kPi);
}

double log_energy(int d) {
    if (d < 2) throw DomainError("log_energy: d must be >= 2");
    return 0.5 * (sf::digamma(d) - sf::digamma(0.5 * d)) - std::log(2.0);
}

double uniform_potential_exterior(const RieszParameter& p, double R) {
    if (!(R >= 1.0)) throw DomainError("uniform_potential_exterior: need R >= 1");
    if (p.is_log()) {
        if (p.d != 2) throw DomainError("logarithmic exterior potential is implemented for d = 2");
        if (R == 1.0) return log_energy(2);
        const double a = (R + 1.0) * (R + 1.0) * std::log(R + 1.0);
        const double b = (R - 1.0) * (R - 1.0) * std::log(R - 1.0);
        return 0.5 - (a - b) / (4.0 * R);
    }
    if (R == 1.0) {
        if (!(p.s < p.d)) throw DomainError("uniform potential on the sphere needs s < d");
        return sphere_energy(p);
    }
    const double z = std::min(1.0, 4.0 * R / ((R + 1.0) * (R + 1.0)));
    const double q = (R - 1.0) / (R + 1.0);
    return std::pow(R + 1.0, -p.s) * sf::hyp2f1_w(0.5 * p.s, 0.5 * p.d, p.d, z, q * q);
}

double cap_area(int d, double r) {
    if (d < 2) throw DomainError("cap_area: d must be >= 2");
    if (!(r > 0.0 && r <= 2.0)) throw DomainError("cap_area: radius must lie in (0, 2]");
    if (r == 2.0) return 1.0;
    return sf::inc_beta_regularized(0.25 * r * r, 0.5 * d, 0.5 * d);
}

double cap_area_bound(int d, double r) { return gamma_d(d) * std::pow(r, d) / d; }

double deleted_cap_integral(const RieszParameter& p, double r) {
    if (p.is_log()) throw DomainError("deleted_cap_integral: Riesz kernel only");
    if (!(r > 0.0 && r < 2.0)) throw DomainError("deleted_cap_integral: radius must lie in (0, 2)");
    const int d = p.d;
    const double s = p.s;
    if (s == d) throw DomainError("deleted_cap_integral: s = d is excluded");
    const double w = 0.25 * r * r;
    const double z = 1.0 - w;
    return gamma_d(d) / d * std::pow(2.0, d - s) * std::pow(z, 0.5 * d) *
           sf::hyp2f1_w(1.0 + 0.5 * (s - d), 0.5 * d, 1.0 + 0.5 * d, z, w);
}

double remainder_coeff(const RieszParameter& p) {
    if (p.is_log() || !(p.s > p.d)) throw DomainError("remainder_coeff: requires s > d");
    const double d = p.d, s = p.s;
    if (s <= 2 * d) return 0.0;
    if (s <= 2 * d + 2) return (0.5 * s - d) / ((s - d) * (s - d - 2));
    return (0.5 * s - d) / (d * (d + 2));
}

RemainderReport deleted_cap_remainder(const RieszParameter& p, double r) {
    const double beta = remainder_coeff(p);  // validates s > d
    const int d = p.d;
    const double s = p.s;
    const double g = gamma_d(d);
    RemainderReport rep;
    rep.integral = deleted_cap_integral(p, r);
    rep.leading = g * std::pow(r, d - s) / (s - d);
    rep.remainder = rep.integral - rep.leading;
    const double w = 0.25 * r * r;
    const double f = sf::hyp2f1_w(d - 0.5 * s, 1.0, 1.0 + 0.5 * d, 1.0 - w, w);
    rep.tilde = g / d * std::pow(r, d - s) * (f - d / (s - d));
    rep.bound = 0.5 * g * beta * std::pow(r, 2.0 + d - s);
    return rep;
}

double ring_kernel(const RieszParameter& p, const Altitude& x, const Altitude& y, double delta) {
    // A = 2 - 2 xi u, B = 2 sqrt((1-xi^2)(1-u^2)), A^2 - B^2 = 4 delta^2
    const double A = x.om * y.op + x.op * y.om;
    const double B = 2.0 * std::sqrt(std::max(0.0, x.om * x.op * y.om * y.op));
    const double S = A + B;
    if (p.is_log()) {
        if (p.d != 2) throw DomainError("logarithmic ring kernel is implemented for d = 2");
        const double arg = 0.5 * A + delta;
        if (arg <= 0.0) return kInf;
        return -0.5 * std::log(arg);
    }
    const int d = p.d;
    const double s = p.s;
    if (S <= 0.0) return kInf;
    const double r = 2.0 * delta / S;  // sqrt(1 - z)
    const double a = 0.5 * s, b = 0.5 * (d - 1), c = d - 1.0;
    const double m = c - a - b;
    if (r == 0.0 && !(m > 0.0)) return kInf;
    if (r < 1e-20 && r > 0.0) {
        // 1 - z below 1e-40: keep the two leading terms of the z -> 1 expansion
        const double lr = std::log(r);
        double f;
        if (m == 0.0) {
            f = std::exp(sf::lgamma_abs(c) - sf::lgamma_abs(a) - sf::lgamma_abs(b)) *
                (2.0 * sf::digamma(1.0) - sf::digamma(a) - sf::digamma(b) - 2.0 * lr);
        } else {
            const double t1 = (m > 0.0 || !sf::is_nonpositive_integer(m))
                                  ? sf::gamma_fn(c) * sf::gamma_fn(m) * sf::rgamma(c - a) * sf::rgamma(c - b)
                                  : 0.0;
            const double t2 = (m < 0.0) ? sf::gamma_fn(c) * sf::gamma_fn(-m) * sf::rgamma(a) *
                                              sf::rgamma(b) * std::exp(2.0 * m * lr)
                                        : 0.0;
            f = t1 + t2;
        }
        return std::pow(S, -0.5 * s) * f;
    }
    const double w = r * r;
    const double z = std::min(1.0, 2.0 * B / S);
    return std::pow(S, -0.5 * s) * sf::hyp2f1_w(a, b, c, z, w);
}

double sphere_weight(int d, double u, double one_minus_u, double one_plus_u) {
    (void)u;
    const double g = gamma_d(d);
    if (d == 2) return g;
    const double prod = one_minus_u * one_plus_u;
    if (d == 3) return g * std::sqrt(prod);
    if (d == 4) return g * prod;
    return g * std::pow(prod, 0.5 * d - 1.0);
}

namespace {

double kernel_exponent(const RieszParameter& p) {
    if (p.is_log()) return 0.0;
    const double k = p.d - 1 - p.s;
    return k < 0.0 ? k : 0.0;
}

void check(const quad::Result& r, const char* what) {
    if (!std::isfinite(r.value) ||
        (!r.converged && !(r.error <= 1e-7 * std::fabs(r.value) + 1e-14))) {
        std::ostringstream os;
        os << what << ": quadrature did not converge (value " << r.value << ", residual "
           << r.error << ")";
        throw NumericError(os.str());
    }
}

}  // namespace

double axial_potential(const RieszParameter& p, const AxialDensity& mu, double xi,
                       const PotentialOptions& opt) {
    if (!(xi >= -1.0 && xi <= 1.0)) throw DomainError("axial_potential: altitude outside [-1,1]");
    const int d = p.d;
    const double t = mu.t_max;
    const Altitude X = Altitude::of(xi);
    // at a pole the ring collapses and the singularity is (1-u)^{(d-2-s)/2}
    double kap = kernel_exponent(p);
    if (!p.is_log() && (xi == 1.0 || xi == -1.0)) kap = std::min(0.0, 0.5 * (d - 2 - p.s));
    auto dens = [&](double u, double dt) {
        const double sing = (mu.alpha == 0.0) ? 1.0 : std::pow(dt, mu.alpha);
        return sing * mu.g(u, dt);
    };
    double total = 0.0;

    if (xi < t) {
        // [-1, xi]: kernel singular at the right end
        if (xi > -1.0) {
            auto f = [&](double u, double da, double db) {
                const Altitude U{u, X.om + db, da};
                return dens(u, (t - xi) + db) * sphere_weight(d, u, U.om, U.op) *
                       ring_kernel(p, X, U, db);
            };
            const auto r = quad::graded(f, -1.0, xi, 0.0, kap, opt.rel_tol, opt.max_level);
            check(r, "axial_potential");
            total += r.value;
        }
        // [xi, t]: kernel at the left end, density edge at the right
        auto f = [&](double u, double da, double db) {
            const Altitude U{u, (1.0 - t) + db, X.op + da};
            return dens(u, db) * sphere_weight(d, u, U.om, U.op) * ring_kernel(p, X, U, da);
        };
        const auto r = quad::graded(f, xi, t, kap, mu.alpha, opt.rel_tol, opt.max_level);
        check(r, "axial_potential");
        total += r.value;
    } else {
        const double gap = xi - t;
        const double eb = (gap == 0.0) ? std::max(-0.999, mu.alpha + kap) : mu.alpha;
        auto f = [&](double u, double da, double db) {
            const Altitude U{u, (1.0 - t) + db, da};
            return dens(u, db) * sphere_weight(d, u, U.om, U.op) * ring_kernel(p, X, U, gap + db);
        };
        const auto r = quad::graded(f, -1.0, t, 0.0, eb, opt.rel_tol, opt.max_level);
        check(r, "axial_potential");
        total += r.value;
    }
    if (mu.atom != 0.0) total += mu.atom * ring_kernel(p, X, Altitude::of(t), std::fabs(xi - t));
    return total;
}

double axial_potential_axis(const RieszParameter& p, const AxialDensity& mu, double z,
                            const PotentialOptions& opt) {
    if (!(std::fabs(z) > 1.0)) throw DomainError("axial_potential_axis: need |z| > 1");
    const int d = p.d;
    const double t = mu.t_max;
    auto dist2 = [&](double u) { return 1.0 - 2.0 * z * u + z * z; };
    auto f = [&](double u, double da, double db) {
        const double sing = (mu.alpha == 0.0) ? 1.0 : std::pow(db, mu.alpha);
        return sing * mu.g(u, db) * sphere_weight(d, u, 1.0 - u, da) * p.kernel_sq(dist2(u));
    };
    const auto r = quad::graded(f, -1.0, t, 0.0, mu.alpha, opt.rel_tol, opt.max_level);
    check(r, "axial_potential_axis");
    double total = r.value;
    if (mu.atom != 0.0) total += mu.atom * p.kernel_sq(dist2(t));
    return total;
}

double axial_mass(int d, const AxialDensity& mu) {
    const double t = mu.t_max;
    const double beta = 0.5 * d - 1.0;
    const double g = gamma_d(d);
    auto h = [&](double u, double da, double db) {
        (void)da;
        const double om = (1.0 - t) + db;  // 1 - u
        const double w = (d == 2) ? 1.0 : std::pow(om, beta);
        return g * w * mu.g(u, db);
    };
    double prev = quad::jacobi_integrate(h, -1.0, t, mu.alpha, beta, 48);
    double diff = kInf;
    for (int n = 96; n <= 768; n *= 2) {
        const double cur = quad::jacobi_integrate(h, -1.0, t, mu.alpha, beta, n);
        diff = std::fabs(cur - prev);
        const double scale = std::max(1.0, std::fabs(cur));
        if (diff <= 2e-13 * scale) return cur + mu.atom;
        prev = cur;
    }
    // roundoff floor of the large rules; still far better than tanh-sinh near alpha=-1
    if (diff <= 1e-10 * std::max(1.0, std::fabs(prev))) return prev + mu.atom;
    // Rule refinement stalled (sharp features in g); fall back to adaptive.
    auto f = [&](double u, double da, double db) {
        const double sing = (mu.alpha == 0.0) ? 1.0 : std::pow(db, mu.alpha);
        return sing * mu.g(u, db) * sphere_weight(d, u, 1.0 - u, da);
    };
    const auto r = quad::graded(f, -1.0, t, 0.0, mu.alpha, 1e-13, 12);
    check(r, "axial_mass");
    return r.value + mu.atom;
}

}  // namespace sphere
}  // namespace riesz
