#pragma once

#include <functional>
#include <optional>
#include <string>

namespace riesz {

enum class KernelKind { riesz, logarithmic };

struct RieszParameter {
    int d = 2;
    KernelKind kind = KernelKind::riesz;
    double s = 1.0;  // ignored for the log kernel

    static RieszParameter riesz(int d, double s);
    static RieszParameter logarithmic(int d);

    bool is_log() const { return kind == KernelKind::logarithmic; }
    // |x-y|^{-s}, or log(1/|x-y|)
    double kernel(double dist) const;
    // same, from the squared distance
    double kernel_sq(double dist2) const;
    std::string s_label() const;  // "log" or the number
};

// Axially symmetric measure on S^d, described in the altitude u = x.p of a
// canonical pole p: density(u) = (t_max-u)^alpha g(u, t_max-u) w.r.t. sigma_d
// on [-1, t_max], plus an optional ring of total charge `atom` at u = t_max.
struct AxialDensity {
    double t_max = 1.0;
    double alpha = 0.0;
    std::function<double(double u, double dt)> g;
    double atom = 0.0;

    double operator()(double u) const;
    static AxialDensity uniform();
};

namespace sphere {

double gamma_d(int d);
double sphere_energy(const RieszParameter& p);
// true log energy of sigma_d, (psi(d) - psi(d/2))/2 - log 2
double log_energy(int d);
// potential of sigma_d at a point at distance R >= 1 from the origin
double uniform_potential_exterior(const RieszParameter& p, double R);
double cap_area(int d, double r);
double cap_area_bound(int d, double r);
double deleted_cap_integral(const RieszParameter& p, double r);
double remainder_coeff(const RieszParameter& p);

struct RemainderReport {
    double integral = 0.0;   // deleted-cap integral
    double leading = 0.0;    // gamma_d r^{d-s} / (s-d)
    double remainder = 0.0;  // integral - leading
    double tilde = 0.0;      // (gamma_d/d) r^{d-s} (F(1-r^2/4) - F(1))
    double bound = 0.0;      // (gamma_d/2) beta r^{2+d-s}
};
RemainderReport deleted_cap_remainder(const RieszParameter& p, double r);

// An altitude together with 1-u and 1+u, each carried at full precision.
struct Altitude {
    double u, om, op;
    static Altitude of(double u) { return {u, 1.0 - u, 1.0 + u}; }
};

// Kernel averaged over the (d-1)-sphere of points at altitude u, seen from a
// point at altitude xi; delta = |xi - u| supplied exactly by the caller.
double ring_kernel(const RieszParameter& p, const Altitude& xi, const Altitude& u, double delta);
inline double ring_kernel(const RieszParameter& p, double xi, double u) {
    return ring_kernel(p, Altitude::of(xi), Altitude::of(u), xi > u ? xi - u : u - xi);
}

// Funk-Hecke: int f d sigma_d = gamma_d int_{-1}^{1} f(u) (1-u^2)^{d/2-1} du
double sphere_weight(int d, double u, double one_minus_u, double one_plus_u);

struct PotentialOptions {
    double rel_tol = 1e-11;
    int max_level = 10;
};

// U of the axial measure at a sphere point of altitude xi.
double axial_potential(const RieszParameter& p, const AxialDensity& mu, double xi,
                       const PotentialOptions& opt = {});
// U at the axis point z*p, |z| > 1.
double axial_potential_axis(const RieszParameter& p, const AxialDensity& mu, double z,
                            const PotentialOptions& opt = {});
// total mass, gamma_d int density (1-u^2)^{d/2-1} du + atom
double axial_mass(int d, const AxialDensity& mu);

}  // namespace sphere
}  // namespace riesz
