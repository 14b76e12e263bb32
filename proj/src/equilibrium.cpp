#include "riesz/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "riesz/errors.hpp"
#include "riesz/roots.hpp"
#include "riesz/specfun.hpp"

namespace riesz {

namespace sf = specfun;
using sphere::gamma_d;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |x - b|^2 for the canonical source at -R p, without cancellation near u = -1
double source_dist2(double R, double u) { return (R - 1.0) * (R - 1.0) + 2.0 * R * (1.0 + u); }

void require_classical(const AxialPointField& f, const char* op) {
    if (f.p.is_log())
        throw DomainError(std::string(op) + ": logarithmic kernel is not supported here");
    if (!(f.p.s < f.p.d))
        throw DomainError(std::string(op) + ": requires 0 < s < d");
    if (!(f.R > 1.0)) throw DomainError(std::string(op) + ": requires R > 1");
}

void require_cap_range(const AxialPointField& f, const char* op) {
    require_classical(f, op);
    if (!(f.p.s > f.p.d - 2))
        throw DomainError(std::string(op) +
                          ": requires d-2 < s < d (use the limiting operation for s = d-2)");
}

// Regular parts of the cap density, density = (t-u)^alpha (Phi gA - q gB).
struct CapParts {
    int d;
    double s, R, t, alpha, c, r2, K0, edge, qcoef;

    CapParts(const AxialPointField& f, double t_) : d(f.p.d), s(f.p.s), R(f.R), t(t_) {
        alpha = 0.5 * (s - d);
        c = 1.0 + alpha;
        r2 = source_dist2(R, t);
        K0 = std::exp(sf::lgamma_abs(0.5 * d) - sf::lgamma_abs(d - 0.5 * s)) /
             sphere::sphere_energy(f.p);
        edge = std::pow(1.0 - t, -alpha);
        qcoef = std::pow(R - 1.0, d - s) * std::pow(r2, -0.5 * d);
    }

    double pre(double dt) const {
        const double om = (1.0 - t) + dt;
        return K0 * edge * std::pow((1.0 - t) / om, 0.5 * d);
    }
    double gA(double u, double dt) const {
        (void)u;
        const double om = (1.0 - t) + dt;
        return pre(dt) * sf::hyp2f1_regularized_w(1.0, 0.5 * d, c, dt / om, (1.0 - t) / om);
    }
    double gB(double u, double dt) const {
        const double om = (1.0 - t) + dt;
        const double z = std::min(1.0, (R + 1.0) * (R + 1.0) * dt / (r2 * om));
        const double w = (1.0 - t) * source_dist2(R, u) / (r2 * om);
        return pre(dt) * qcoef * sf::hyp2f1_regularized_w(1.0, 0.5 * d, c, z, w);
    }
};

double min_density_on(const AxialDensity& mu, int n) {
    double mn = kInf;
    for (int k = 0; k < n; ++k) {
        const double u = -1.0 + (mu.t_max + 1.0) * k / n;
        mn = std::min(mn, mu(u));
    }
    return mn;
}

}  // namespace

AxialPointField AxialPointField::make(const RieszParameter& p, double q, double R, Pole pole) {
    if (!std::isfinite(q)) throw DomainError("field charge q must be finite");
    if (!(R >= 1.0) || !std::isfinite(R)) throw DomainError("source distance R must be >= 1");
    AxialPointField f;
    f.p = p;
    f.q = q;
    f.R = R;
    f.pole = pole;
    return f;
}

double AxialPointField::value_canonical(double u) const {
    if (q == 0.0) return 0.0;
    const double d2 = source_dist2(R, u);
    if (d2 <= 0.0) throw DomainError("external field evaluated at its source");
    return q * p.kernel_sq(d2);
}

double AxialPointField::value(double x) const { return value_canonical(canonical(x)); }

double AxialPointField::source_potential() const {
    return sphere::uniform_potential_exterior(p, R);
}

std::string to_string(Pole pole) { return pole == Pole::north ? "north" : "south"; }

Pole pole_from_string(const std::string& s) {
    if (s == "north" || s == "n") return Pole::north;
    if (s == "south" || s == "s") return Pole::south;
    throw DomainError("pole must be 'north' or 'south' (got '" + s + "')");
}

// ---------------------------------------------------------------- sphere

double SphereSignedEquilibrium::density_canonical(double u) const {
    const double q = field.q;
    if (q == 0.0) return 1.0;
    const int d = field.p.d;
    const double s = field.p.s;
    const double R = field.R;
    return 1.0 + q * U_b / W -
           q * std::pow(R * R - 1.0, d - s) / (W * std::pow(source_dist2(R, u), d - 0.5 * s));
}

double SphereSignedEquilibrium::density(double x) const {
    return density_canonical(field.canonical(x));
}

SphereSignedEquilibrium signed_eq_sphere(const AxialPointField& field) {
    require_classical(field, "signed_eq_sphere");
    SphereSignedEquilibrium eq;
    eq.field = field;
    eq.W = sphere::sphere_energy(field.p);
    eq.U_b = field.source_potential();
    eq.constant = eq.W + field.q * eq.U_b;
    return eq;
}

bool support_is_full_sphere(const AxialPointField& field) {
    require_classical(field, "support_is_full_sphere");
    if (field.q > 0.0)
        throw DomainError("support_is_full_sphere: the criterion is stated for a negative charge");
    if (field.q == 0.0) return true;
    const int d = field.p.d;
    const double s = field.p.s, R = field.R;
    const double W = sphere::sphere_energy(field.p);
    const double U = field.source_potential();
    return W / field.q <= std::pow(R - 1.0, d - s) / std::pow(R + 1.0, d) - U;
}

double balance_charge(const RieszParameter& p, double R, double q_plus) {
    if (p.is_log() || !(p.s < p.d)) throw DomainError("balance_charge: requires 0 < s < d");
    if (!(R > 1.0)) throw DomainError("balance_charge: requires R > 1");
    if (!(q_plus > 0.0)) throw DomainError("balance_charge: requires q_plus > 0");
    const int d = p.d;
    const double s = p.s;
    const double U = sphere::uniform_potential_exterior(p, R);
    const double lhs = std::pow(R * R - 1.0, 0.5 * s) * U;
    const double P = std::pow((R + 1.0) / (R - 1.0), d - 0.5 * s);
    const double M = std::pow((R - 1.0) / (R + 1.0), d - 0.5 * s);
    // lhs = P lambda + M (1 - lambda), lambda = q+/(q+ - q-)
    const double lambda = (lhs - M) / (P - M);
    if (!(lambda > 0.0 && lambda < 1.0))
        throw NoSolutionError("balance_charge: no negative q_minus balances this field");
    return q_plus * (1.0 - 1.0 / lambda);
}

double balance_distance_residual(const RieszParameter& p, double R_plus, double R_minus) {
    const int d = p.d;
    const double s = p.s;
    const double rhs = sphere::uniform_potential_exterior(p, R_plus) -
                       std::pow(R_plus + 1.0, d - s) / std::pow(R_plus - 1.0, d);
    const double lhs = -sphere::uniform_potential_exterior(p, R_minus) +
                       std::pow(R_minus - 1.0, d - s) / std::pow(R_minus + 1.0, d);
    return lhs - rhs;
}

double balance_distance(const RieszParameter& p, double R_plus) {
    if (p.is_log() || !(p.s < p.d)) throw DomainError("balance_distance: requires 0 < s < d");
    if (!(R_plus > 1.0)) throw DomainError("balance_distance: requires R_plus > 1");
    auto h = [&](double Rm) { return balance_distance_residual(p, R_plus, Rm); };
    const double scale = std::max(1.0, sphere::sphere_energy(p));
    // Geometric grid in R - 1 from 1e-8 to 1e4; first sign change wins.
    double prev_x = 1.0 + 1e-8;
    double prev = h(prev_x);
    for (int k = 1; k <= 240; ++k) {
        const double x = 1.0 + 1e-8 * std::pow(10.0, 12.0 * k / 240.0);
        const double cur = h(x);
        if (cur == 0.0) return x;
        if ((prev > 0) != (cur > 0)) {
            const auto r = roots::brent(h, prev_x, x, 1e-14);
            return r.x;
        }
        prev_x = x;
        prev = cur;
    }
    // The relation can be met only in the limit R_minus -> 1 (source on the sphere).
    if (std::fabs(h(1.0)) <= 1e-12 * scale) return 1.0;
    throw NoSolutionError("balance_distance: no R_minus >= 1 satisfies the balance relation");
}

// ---------------------------------------------------------------- caps

double phi_boundary_rhs(const AxialPointField& field, double t) {
    const int d = field.p.d;
    return field.q * std::pow(field.R - 1.0, d - field.p.s) *
           std::pow(source_dist2(field.R, t), -0.5 * d);
}

double phi_of_t(const AxialPointField& field, double t) {
    require_cap_range(field, "phi_of_t");
    if (!(t > -1.0 && t <= 1.0)) throw DomainError("phi_of_t: t must lie in (-1, 1]");
    if (t == 1.0) return sphere::sphere_energy(field.p) + field.q * field.source_potential();
    const CapParts cp(field, t);
    AxialDensity a;
    a.t_max = t;
    a.alpha = cp.alpha;
    a.g = [&cp](double u, double dt) { return cp.gA(u, dt); };
    const double IA = sphere::axial_mass(field.p.d, a);
    double IB = 0.0;
    if (field.q != 0.0) {
        a.g = [&cp](double u, double dt) { return cp.gB(u, dt); };
        IB = sphere::axial_mass(field.p.d, a);
    }
    return (1.0 + field.q * IB) / IA;
}

CapEquilibrium sphere_as_cap(const AxialPointField& field) {
    const auto se = signed_eq_sphere(field);
    CapEquilibrium eq;
    eq.field = field;
    eq.t = 1.0;
    eq.phi = se.constant;
    eq.density.t_max = 1.0;
    eq.density.alpha = 0.0;
    eq.density.g = [se](double u, double) { return se.density_canonical(u); };
    eq.is_positive = std::min(se.density_canonical(-1.0), se.density_canonical(1.0)) >= 0.0;
    return eq;
}

CapEquilibrium cap_signed_equilibrium(const AxialPointField& field, double t) {
    require_cap_range(field, "cap_signed_equilibrium");
    if (!(t > -1.0 && t <= 1.0)) throw DomainError("cap_signed_equilibrium: t must lie in (-1, 1]");
    if (t == 1.0) return sphere_as_cap(field);
    const double phi = phi_of_t(field, t);
    auto cp = std::make_shared<CapParts>(field, t);
    const double q = field.q;
    CapEquilibrium eq;
    eq.field = field;
    eq.t = t;
    eq.phi = phi;
    eq.density.t_max = t;
    eq.density.alpha = cp->alpha;
    eq.density.g = [cp, phi, q](double u, double dt) {
        return phi * cp->gA(u, dt) - (q == 0.0 ? 0.0 : q * cp->gB(u, dt));
    };
    // sign near the edge is that of Phi - rhs; elsewhere sample
    const double edge = phi - phi_boundary_rhs(field, t);
    // at the critical t the edge term is zero up to roundoff
    eq.is_positive = edge >= -1e-12 * std::max(1.0, std::fabs(phi)) && min_density_on(eq.density, 400) >= -1e-12;
    return eq;
}

bool CapEquilibrium::in_support(double x) const { return field.canonical(x) <= t; }

double CapEquilibrium::density_at(double x) const {
    const double u = field.canonical(x);
    if (u > t) return 0.0;
    return density(u);
}

double CapEquilibrium::mass() const { return sphere::axial_mass(field.p.d, density); }

double CapEquilibrium::potential(double x, const sphere::PotentialOptions& opt) const {
    return sphere::axial_potential(field.p, density, field.canonical(x), opt);
}

double CapEquilibrium::weighted_potential_quadrature(double x,
                                                     const sphere::PotentialOptions& opt) const {
    return potential(x, opt) + field.value(x);
}

double CapEquilibrium::weighted_potential(double x) const {
    const double u = field.canonical(x);
    if (u <= t) return phi;
    if (boundary_charge)
        throw DomainError("weighted_potential: no closed form off the cap in the limiting case");
    const int d = field.p.d;
    const double s = field.p.s, R = field.R;
    const double a = 0.5 * (d - s), b = 0.5 * s;
    const double r2 = source_dist2(R, t);
    const double rho2 = source_dist2(R, u);
    const double x2 = (u - t) / (1.0 + u);
    const double x1 = (R - 1.0) * (R - 1.0) * x2 / r2;
    return phi + field.q * std::pow(rho2, -0.5 * s) * sf::inc_beta_regularized(x1, a, b) -
           phi * sf::inc_beta_regularized(x2, a, b);
}

std::vector<std::pair<double, double>> CapEquilibrium::density_samples(int n) const {
    std::vector<std::pair<double, double>> out;
    if (n < 2) n = 2;
    const int last = full_sphere() ? n : n - 1;  // the cap edge itself is singular
    for (int k = 0; k <= last; ++k) {
        const double u = -1.0 + (t + 1.0) * k / n;
        const double x = field.pole == Pole::south ? u : -u;
        out.emplace_back(x, density(u));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExtremalResult critical_t(const AxialPointField& field) {
    require_cap_range(field, "critical_t");
    ExtremalResult res;
    res.field = field;
    if (field.q == 0.0) {
        res.measure = sphere_as_cap(field);
        res.F = res.measure.phi;
        return res;
    }
    auto h = [&](double t) { return phi_of_t(field, t) - phi_boundary_rhs(field, t); };
    const double h1 = h(1.0);
    if (h1 >= 0.0) {
        res.measure = sphere_as_cap(field);
        res.F = res.measure.phi;
        res.root_residual = 0.0;
        return res;
    }
    if (field.q > 0.0)
        throw DomainError(
            "critical_t: a repelling charge pushes the support onto a cap away from the source; "
            "that configuration is outside the cap formulas implemented here");

    constexpr int kGrid = 64;
    std::vector<double> ts, hs;
    for (int k = 1; k < kGrid; ++k) {
        ts.push_back(-1.0 + 2.0 * k / kGrid);
        hs.push_back(h(ts.back()));
    }
    ts.push_back(1.0);
    hs.push_back(h1);
    int first = -1;
    for (size_t k = 0; k + 1 < ts.size(); ++k) {
        if ((hs[k] > 0) != (hs[k + 1] > 0)) {
            ++res.sign_changes;
            if (first < 0) first = static_cast<int>(k);
        }
    }
    if (first < 0) {
        // every grid value is negative: the root sits below the first node
        double lo = -1.0 + 2.0 / kGrid;
        double step = (lo + 1.0) / 2.0;
        double hlo = hs.front();
        for (int i = 0; i < 40 && hlo <= 0.0; ++i) {
            lo -= step;
            step /= 2.0;
            hlo = h(lo);
        }
        if (hlo <= 0.0) throw NumericError("critical_t: could not bracket the critical intercept");
        ts.insert(ts.begin(), lo);
        hs.insert(hs.begin(), hlo);
        first = 0;
        res.sign_changes = 1;
    }
    if (res.sign_changes > 1) {
        std::ostringstream os;
        os << res.sign_changes << " sign changes of Phi - rhs on the scan grid; using the first";
        res.diagnostic = os.str();
    }
    const auto root = roots::brent(h, ts[first], ts[first + 1], 1e-13);
    res.t_c = root.x;
    res.root_residual = std::fabs(root.fx);
    res.measure = cap_signed_equilibrium(field, res.t_c);
    res.F = res.measure.phi;
    return res;
}

// ---------------------------------------------------------------- s = d - 2

namespace {

struct LimitingParts {
    int d;
    double R, t, W, q, ring, rhs, m0, m1;
};

LimitingParts limiting_parts(const AxialPointField& field, double t) {
    const int d = field.p.d;
    if (field.p.is_log() || d < 3 || std::fabs(field.p.s - (d - 2)) > 1e-12)
        throw DomainError("limiting_cap_equilibrium: requires s = d - 2 with d >= 3");
    if (!(field.R > 1.0)) throw DomainError("limiting_cap_equilibrium: requires R > 1");
    if (!(t > -1.0 && t <= 1.0)) throw DomainError("limiting_cap_equilibrium: t must lie in (-1, 1]");
    LimitingParts lp;
    lp.d = d;
    lp.R = field.R;
    lp.t = t;
    lp.q = field.q;
    lp.W = sphere::sphere_energy(field.p);
    lp.ring = 0.5 * (1.0 - t) * std::pow((1.0 - t) * (1.0 + t), 0.5 * d - 1.0);
    lp.rhs = phi_boundary_rhs(field, t);
    const double R = lp.R, q = lp.q, W = lp.W;
    AxialDensity a;
    a.t_max = t;
    a.g = [W](double, double) { return 1.0 / W; };
    const double i0 = sphere::axial_mass(d, a);
    a.g = [R, q, W, d](double u, double) {
        return -q / W * std::pow(R * R - 1.0, 2.0) * std::pow(source_dist2(R, u), -0.5 * d - 1.0);
    };
    const double i1 = (q == 0.0) ? 0.0 : sphere::axial_mass(d, a);
    // mass(Phi) = Phi (i0 + ring) + i1 - ring * rhs
    lp.m1 = i0 + lp.ring;
    lp.m0 = i1 - lp.ring * lp.rhs;
    return lp;
}

}  // namespace

CapEquilibrium limiting_cap_equilibrium(const AxialPointField& field, double t) {
    const LimitingParts lp = limiting_parts(field, t);
    const double phi = (1.0 - lp.m0) / lp.m1;
    const double R = lp.R, q = lp.q, W = lp.W;
    const int d = lp.d;
    CapEquilibrium eq;
    eq.field = field;
    eq.t = t;
    eq.phi = phi;
    eq.boundary_charge = lp.ring * (phi - lp.rhs);
    eq.density.t_max = t;
    eq.density.alpha = 0.0;
    eq.density.g = [phi, R, q, W, d](double u, double) {
        return phi / W -
               q / W * std::pow(R * R - 1.0, 2.0) * std::pow(source_dist2(R, u), -0.5 * d - 1.0);
    };
    eq.density.atom = *eq.boundary_charge;
    eq.is_positive = *eq.boundary_charge >= 0.0 &&
                     std::min(eq.density(-1.0), eq.density(t)) >= 0.0;
    return eq;
}

double limiting_critical_t(const AxialPointField& field) {
    auto h = [&](double t) {
        const LimitingParts lp = limiting_parts(field, t);
        return (1.0 - lp.m0) / lp.m1 - lp.rhs;
    };
    (void)limiting_parts(field, 0.0);  // validation
    const double W = sphere::sphere_energy(field.p);
    const double full = W + field.q * field.source_potential() - phi_boundary_rhs(field, 1.0);
    if (full >= 0.0) return 1.0;
    double prev_t = -1.0 + 1.0 / 64, prev = h(prev_t);
    for (int k = 2; k <= 128; ++k) {
        const double t = (k == 128) ? 1.0 : -1.0 + 2.0 * k / 128.0;
        const double cur = (k == 128) ? full : h(t);
        if ((prev > 0) != (cur > 0)) return roots::brent(h, prev_t, t, 1e-13).x;
        prev_t = t;
        prev = cur;
    }
    throw NumericError("limiting_critical_t: no sign change of the boundary charge found");
}

// ---------------------------------------------------------------- checks

std::vector<double> altitude_grid(int n) {
    std::vector<double> out;
    if (n < 2) n = 2;
    for (int k = 0; k < n; ++k) out.push_back(-1.0 + 2.0 * k / (n - 1));
    return out;
}

VariationalReport verify_variational(const CapEquilibrium& eq, double F,
                                     const std::vector<double>& altitudes) {
    VariationalReport rep;
    rep.off_support_min = kInf;
    rep.min_density = kInf;
    sphere::PotentialOptions opt;
    opt.rel_tol = 1e-10;
    for (double x : altitudes) {
        const double v = eq.weighted_potential_quadrature(x, opt) - F;
        if (eq.in_support(x)) {
            ++rep.n_support;
            rep.support_max_abs = std::max(rep.support_max_abs, std::fabs(v));
            const double u = eq.field.canonical(x);
            if (u < eq.t) rep.min_density = std::min(rep.min_density, eq.density(u));
        } else {
            ++rep.n_off;
            rep.off_support_min = std::min(rep.off_support_min, v);
        }
    }
    if (eq.boundary_charge) rep.min_density = std::min(rep.min_density, *eq.boundary_charge);
    rep.pass = rep.support_max_abs <= 1e-5 && (rep.n_off == 0 || rep.off_support_min >= -1e-5) &&
               rep.min_density >= -1e-10;
    return rep;
}

}  // namespace riesz
