#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riesz/sphere.hpp"

namespace riesz {

enum class Pole { north, south };

// Q(x) = q |x - b|^{-s} with b = R p (north) or b = -R p (south).
// Internally everything is computed in the frame where the source sits below
// the south pole; a north source is handled by the reflection x.p -> -x.p.
// Public altitudes are always the actual x.p.
struct AxialPointField {
    RieszParameter p;
    double q = 0.0;
    double R = 2.0;
    Pole pole = Pole::south;

    static AxialPointField make(const RieszParameter& p, double q, double R, Pole pole = Pole::south);

    // actual altitude -> canonical altitude (source below the canonical south pole)
    double canonical(double x) const { return pole == Pole::south ? x : -x; }
    double value(double x) const;             // Q at actual altitude x
    double value_canonical(double u) const;   // Q at canonical altitude u
    double source_potential() const;          // U^{sigma_d}(b)
};

std::string to_string(Pole pole);
Pole pole_from_string(const std::string& s);

struct SphereSignedEquilibrium {
    AxialPointField field;
    double W = 0.0;         // W_s(S^d)
    double U_b = 0.0;       // U^{sigma_d}(b)
    double constant = 0.0;  // W + q U_b

    double density(double x) const;            // actual altitude
    double density_canonical(double u) const;
};

SphereSignedEquilibrium signed_eq_sphere(const AxialPointField& field);
bool support_is_full_sphere(const AxialPointField& field);
double balance_charge(const RieszParameter& p, double R, double q_plus);
double balance_distance(const RieszParameter& p, double R_plus);
// residual of the defining relation of balance_distance at R_minus
double balance_distance_residual(const RieszParameter& p, double R_plus, double R_minus);

// Signed equilibrium on the cap {canonical altitude <= t}.
struct CapEquilibrium {
    AxialPointField field;
    double t = 1.0;
    double phi = 0.0;
    std::optional<double> boundary_charge;  // limiting case s = d-2 only
    bool is_positive = false;
    AxialDensity density;                   // canonical frame, includes the ring atom

    bool full_sphere() const { return t >= 1.0; }
    bool in_support(double x) const;         // actual altitude
    double density_at(double x) const;       // actual altitude, 0 off the cap
    double mass() const;
    // closed form of U + Q (valid for the non-limiting cap and the sphere)
    double weighted_potential(double x) const;
    // U + Q by quadrature
    double weighted_potential_quadrature(double x, const sphere::PotentialOptions& opt = {}) const;
    double potential(double x, const sphere::PotentialOptions& opt = {}) const;
    // (actual altitude, density) pairs on the support
    std::vector<std::pair<double, double>> density_samples(int n) const;
};

double phi_of_t(const AxialPointField& field, double t);
// q (R-1)^{d-s} / (R^2 + 2Rt + 1)^{d/2}, the edge value Phi is compared with
double phi_boundary_rhs(const AxialPointField& field, double t);
CapEquilibrium cap_signed_equilibrium(const AxialPointField& field, double t);
CapEquilibrium sphere_as_cap(const AxialPointField& field);

struct ExtremalResult {
    AxialPointField field;
    double t_c = 1.0;
    CapEquilibrium measure;
    double F = 0.0;
    double root_residual = 0.0;
    int sign_changes = 0;
    std::string diagnostic;
};

ExtremalResult critical_t(const AxialPointField& field);

CapEquilibrium limiting_cap_equilibrium(const AxialPointField& field, double t);
// t where the boundary charge vanishes (1 if it never does)
double limiting_critical_t(const AxialPointField& field);

struct VariationalReport {
    double support_max_abs = 0.0;     // max |U+Q-F| on support samples
    double off_support_min = 0.0;     // min (U+Q-F) off support (+inf if none)
    double min_density = 0.0;         // min density over support samples
    int n_support = 0;
    int n_off = 0;
    bool pass = false;
};

VariationalReport verify_variational(const CapEquilibrium& eq, double F,
                                     const std::vector<double>& altitudes);
inline VariationalReport verify_variational(const ExtremalResult& r,
                                            const std::vector<double>& altitudes) {
    return verify_variational(r.measure, r.F, altitudes);
}

// evenly spaced altitudes in [-1, 1] (endpoints included)
std::vector<double> altitude_grid(int n);

}  // namespace riesz
