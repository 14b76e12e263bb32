// Acceptance checks C1..C10. Usage: acceptance C<k> | all
// Prints one PASS/FAIL line per criterion; exit status 1 if any failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "riesz/equilibrium.hpp"
#include "riesz/errors.hpp"
#include "riesz/fekete.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/sphere.hpp"

using namespace riesz;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string failed;

    // records a sub-check; failing ones are listed after the detail
    void need(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        failed += (failed.empty() ? "" : "; ") + what;
    }
};

RieszParameter P(int d, double s) { return RieszParameter::riesz(d, s); }
AxialPointField F(int d, double s, double q, double R, Pole pole = Pole::south) {
    return AxialPointField::make(P(d, s), q, R, pole);
}
double rel(double got, double want) { return std::fabs(got - want) / std::max(1.0, std::fabs(want)); }

// U^{sigma_d} at distance R by direct Funk-Hecke quadrature
double exterior_by_quadrature(int d, double s, double R) {
    const auto r = quad::tanh_sinh(
        [&](double u, double da, double db) {
            const double dist2 = (R - 1.0) * (R - 1.0) + 2.0 * R * db;  // R^2 - 2Ru + 1
            return std::pow(da * db, 0.5 * d - 1.0) * std::pow(dist2, -0.5 * s);
        },
        -1.0, 1.0, 1e-14, 12);
    return sphere::gamma_d(d) * r.value;
}

// ---------------------------------------------------------------- C1
void c1(Outcome& o) {
    const double pi = M_PI;
    struct Row {
        const char* name;
        double got, want;
    };
    const Row rows[] = {
        {"W_1(S^2)", sphere::sphere_energy(P(2, 1)), 1.0},
        {"W_1(S^3)", sphere::sphere_energy(P(3, 1)), 8.0 / (3.0 * pi)},
        {"gamma_2", sphere::gamma_d(2), 0.5},
        {"kappa_2", kappa(2), 2.0},
        {"kappa_3", kappa(3), std::cbrt(1.5 * pi)},
        {"kappa_4", kappa(4), 2.0 / std::pow(3.0, 0.25)},
    };
    double worst = 0.0;
    for (const auto& r : rows) {
        const double e = std::fabs(r.got - r.want);
        worst = std::max(worst, e);
        o.need(e <= 1e-12, r.name);
    }
    o.detail << "max_abs_err=" << worst;
}

// ---------------------------------------------------------------- C2
void c2(Outcome& o) {
    double worst_exact = 0.0, worst_grid = 0.0;
    for (double R : {1.5, 2.0, 5.0}) {
        const double e = std::fabs(sphere::uniform_potential_exterior(P(2, 1), R) - 1.0 / R);
        worst_exact = std::max(worst_exact, e);
    }
    o.need(worst_exact <= 1e-10, "U_1(R p) = 1/R");
    int cases = 0;
    for (int d : {2, 3, 4}) {
        for (double s : {0.5, 1.0, 1.5, 2.5, 3.5, 5.0}) {
            for (double R : {1.1, 1.5, 2.0, 4.0}) {
                const double a = sphere::uniform_potential_exterior(P(d, s), R);
                const double b = exterior_by_quadrature(d, s, R);
                worst_grid = std::max(worst_grid, rel(a, b));
                ++cases;
            }
        }
    }
    o.need(worst_grid <= 1e-8, "grid vs quadrature");
    o.detail << "exact_err=" << worst_exact << " grid_cases=" << cases << " grid_rel_err=" << worst_grid;
}

// ---------------------------------------------------------------- C3
void c3(Outcome& o) {
    double worst = 0.0;
    for (double r : {0.1, 0.5, 1.0, 1.5, 1.9})
        worst = std::max(worst, std::fabs(sphere::deleted_cap_integral(P(2, 1), r) - (1.0 - 0.5 * r)));
    o.need(worst <= 1e-10, "d=2 s=1 closed form");
    bool upper = true, lower = true;
    double min_R = INFINITY;
    for (auto [d, s] : {std::pair{2, 5.0}, {2, 7.0}, {3, 7.0}}) {
        for (double r : {0.05, 0.1, 0.2}) {
            const auto rep = sphere::deleted_cap_remainder(P(d, s), r);
            upper = upper && rep.remainder <= rep.bound;
            lower = lower && rep.remainder >= 0.0;
            min_R = std::min(min_R, rep.remainder);
        }
    }
    o.need(upper, "R <= (gamma_d/2) beta r^{2+d-s}");
    o.need(lower, "0 <= R");
    o.detail << "closed_form_err=" << worst << " min_remainder=" << min_R;
}

// ---------------------------------------------------------------- C4
void c4(Outcome& o) {
    const auto f = F(2, 1, -1, 2);
    const auto eq = signed_eq_sphere(f);
    const double south = eq.density(-1.0), north = eq.density(1.0);
    o.need(std::fabs(south - 3.5) <= 1e-12, "south density 3.5");
    o.need(std::fabs(north - 11.0 / 18.0) <= 1e-12, "north density 0.611111");
    AxialDensity mu;
    mu.g = [&eq](double u, double) { return eq.density(u); };
    const double mass = sphere::axial_mass(2, mu);
    o.need(std::fabs(mass - 1.0) <= 1e-8, "mass");
    const bool g1 = support_is_full_sphere(f);
    const bool g5 = support_is_full_sphere(F(2, 1, -5, 2));
    o.need(g1, "Gonchar q=-1 true");
    o.need(!g5, "Gonchar q=-5 false");
    o.detail << "south=" << south << " north=" << north << " mass-1=" << mass - 1.0 << " gonchar(-1)=" << g1
             << " gonchar(-5)=" << g5;
}

// ---------------------------------------------------------------- C5
void c5(Outcome& o) {
    const auto f = F(2, 1, -5, 2);
    const auto ex = critical_t(f);
    double inside = 0.0, outside = 0.0;
    for (double t : {ex.t_c, 0.0, ex.t_c - 0.2}) {
        const auto eq = cap_signed_equilibrium(f, t);
        for (int k = 1; k <= 50; ++k) {
            const double xi = -1.0 + (t + 1.0) * k / 51.0;
            inside = std::max(inside, rel(eq.weighted_potential_quadrature(xi), eq.phi));
        }
        for (int k = 1; k <= 10; ++k) {
            const double xi = t + (1.0 - t) * k / 10.0;
            outside = std::max(outside, std::fabs(eq.weighted_potential(xi) - eq.weighted_potential_quadrature(xi)));
        }
    }
    o.need(inside <= 1e-6, "U+Q constant on the cap");
    o.need(outside <= 1e-6, "closed form off the cap");
    const double endpoint = phi_of_t(f, 1.0);
    const double direct = sphere::sphere_energy(f.p) + f.q * exterior_by_quadrature(2, 1.0, 2.0);
    o.need(std::fabs(endpoint - direct) <= 1e-8, "Phi(1) = W + qU");
    o.detail << "inside_rel=" << inside << " outside_abs=" << outside << " endpoint_err=" << endpoint - direct;
}

// ---------------------------------------------------------------- C6
void c6(Outcome& o) {
    const auto f = F(2, 1, -5, 2);
    const auto ex = critical_t(f);
    o.need(ex.t_c > -1.0 && ex.t_c < 1.0, "t_c inside (-1,1)");
    o.need(ex.root_residual <= 1e-10, "root residual");
    double gap = INFINITY;
    for (int k = 1; k <= 100; ++k) {
        const double t = -1.0 + 2.0 * k / 100.0;
        gap = std::min(gap, phi_of_t(f, t) - ex.F);
    }
    o.need(gap >= -1e-12, "Phi(t_c) minimal on the grid");
    double min_density = INFINITY;
    for (int k = 0; k < 2000; ++k) {
        const double u = -1.0 + (ex.t_c + 1.0) * k / 2000.0;
        min_density = std::min(min_density, ex.measure.density_at(u));
    }
    o.need(min_density >= -1e-10, "density >= 0");
    const auto rep = verify_variational(ex, altitude_grid(200));
    o.need(rep.pass, "Frostman inequalities");
    o.detail << "t_c=" << ex.t_c << " residual=" << ex.root_residual << " min_phi_gap=" << gap
             << " min_density=" << min_density << " support_max=" << rep.support_max_abs
             << " off_support_min=" << rep.off_support_min;
}

// ---------------------------------------------------------------- C7
void c7(Outcome& o) {
    double worst_t0 = 0.0, worst_res = 0.0, worst_spread = 0.0, worst_alt = 0.0;
    for (double s : {0.5, 1.0, 2.0}) {
        const auto p = P(2, s);
        const auto r = three_point_intercept(0.5, p, 1.0);
        worst_t0 = std::max(worst_t0, std::fabs(r.t0 + 1.0 / 3.0));
        worst_res = std::max(worst_res, std::fabs(r.residual));
        const auto m = minimize_fekete(2, 3, ExternalFieldSpec::point(2, 0.5, 1.0, Pole::north), p);
        const double d01 = m.config.distance(0, 1), d02 = m.config.distance(0, 2), d12 = m.config.distance(1, 2);
        worst_spread = std::max(worst_spread, std::max({d01, d02, d12}) - std::min({d01, d02, d12}));
        for (int i = 0; i < 3; ++i) worst_alt = std::max(worst_alt, std::fabs(m.config.altitude(i) - r.t0));
    }
    o.need(worst_t0 <= 1e-12 && worst_res <= 1e-12, "t0 = -1/3");
    o.need(worst_spread <= 1e-8, "equilateral");
    o.need(worst_alt <= 1e-6, "optimizer altitude");
    o.detail << "t0_err=" << worst_t0 << " residual=" << worst_res << " spread=" << worst_spread
             << " altitude_err=" << worst_alt;
}

// ---------------------------------------------------------------- C8
void c8(Outcome& o) {
    const auto p = P(2, 1);
    double merge = 0.0;
    for (double q : {0.0, 1.0 / 3.0, 1.0})
        for (double R : {1.0, 1.5, 3.0})
            for (int k = -19; k <= 19; ++k) {
                const double t = k / 20.0;
                merge = std::max(merge, rel(f22(t, t, q, R, p), f04(t, q, R, p)));
            }
    o.need(merge <= 1e-12, "f22(t,t) = f04(t)");

    double worst_free = 0.0;
    bool all_a = true;
    std::string seq13, seq1;
    for (int k = 1; k <= 20; ++k) {
        const double R = 1.0 + k / 10.0;
        const auto a = four_point_best(1.0 / 3.0, R, p, true);
        all_a = all_a && a.winner == FourPointKind::A_pyramid_13;
        seq13 += letter(a.winner);
        worst_free = std::max(worst_free, std::fabs(a.free_energy - a.best_family));
        o.need(a.agrees, "free optimum q=1/3 R=" + std::to_string(R));
    }
    o.need(all_a, "A wins for q=1/3");
    // q = 1, decreasing R
    for (int k = 20; k >= 1; --k) {
        const double R = 1.0 + k / 10.0;
        const auto b = four_point_best(1.0, R, p, true);
        seq1 += letter(b.winner);
        worst_free = std::max(worst_free, std::fabs(b.free_energy - b.best_family));
        o.need(b.agrees, "free optimum q=1 R=" + std::to_string(R));
    }
    // collapse runs: must read exactly "ABC"
    std::string runs;
    for (char c : seq1)
        if (runs.empty() || runs.back() != c) runs += c;
    o.need(runs == "ABC", "A then B then C for q=1");
    o.detail << "merge_err=" << merge << " q=1/3:" << seq13 << " q=1(R=3..1.1):" << seq1
             << " free_vs_family=" << worst_free;
}

// ---------------------------------------------------------------- C9
void c9(Outcome& o) {
    const double root2 = std::sqrt(2.0);
    double min_riesz = INFINITY, min_log = INFINITY;
    for (int n : {10, 20, 50, 100, 200}) {
        const auto r = minimize_fekete(2, n, ExternalFieldSpec::none(), P(2, 1));
        const double v = r.config.delta() * std::sqrt(static_cast<double>(n));
        min_riesz = std::min(min_riesz, v);
        o.need(v >= root2, "s=1 n=" + std::to_string(n));
        const auto l = minimize_fekete(2, n, ExternalFieldSpec::none(), RieszParameter::logarithmic(2));
        const double w = l.config.delta() * std::sqrt(n - 1.0);
        min_log = std::min(min_log, w);
        o.need(w >= kappa(2), "log n=" + std::to_string(n));
    }
    const auto p4 = P(2, 4);
    const auto h = minimize_fekete(2, 100, ExternalFieldSpec::none(), p4);
    const double bound = hyper_singular_bound(100, 0.0, 2.0, p4);
    o.need(h.config.delta() >= bound, "s=4 n=100 bound");
    o.detail << "min delta*sqrt(n)=" << min_riesz << " (>= " << root2 << ") min log delta*sqrt(n-1)=" << min_log
             << " (>= 2) s=4 delta=" << h.config.delta() << " bound=" << bound;
}

// ---------------------------------------------------------------- C10
void c10(Outcome& o) {
    // mass normalization
    double mass_err = 0.0;
    for (const auto& f : {F(2, 1, -5, 2), F(3, 1.5, -2, 1.5), F(2, 0.5, 1, 3, Pole::north), F(4, 2.5, -1, 2)}) {
        mass_err = std::max(mass_err, std::fabs(critical_t(f).measure.mass() - 1.0));
        mass_err = std::max(mass_err, std::fabs(cap_signed_equilibrium(f, -0.2).mass() - 1.0));
        mass_err = std::max(mass_err, std::fabs(sphere_as_cap(f).mass() - 1.0));
    }
    for (double t : {-0.5, 0.0, 0.5})
        mass_err = std::max(mass_err, std::fabs(limiting_cap_equilibrium(F(3, 1, -5, 2), t).mass() - 1.0));
    o.need(mass_err <= 1e-8, "mass normalization");

    // orthogonal invariance
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> N;
    double orth = 0.0;
    for (int d : {2, 3, 4}) {
        const int m = d + 1;
        const auto p = P(d, 1.0 + 0.5 * d);
        const auto X = minimize_fekete(d, 9, ExternalFieldSpec::none(), p).config;
        std::vector<double> b(m, 0.0);
        b[d] = 1.7;
        ExternalFieldSpec Q;
        Q.terms = {{0.6, b}};
        std::vector<double> O(m * m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) O[i * m + j] = N(rng);
            for (int k = 0; k < i; ++k) {
                double dot = 0;
                for (int j = 0; j < m; ++j) dot += O[i * m + j] * O[k * m + j];
                for (int j = 0; j < m; ++j) O[i * m + j] -= dot * O[k * m + j];
            }
            double nrm = 0;
            for (int j = 0; j < m; ++j) nrm += O[i * m + j] * O[i * m + j];
            for (int j = 0; j < m; ++j) O[i * m + j] /= std::sqrt(nrm);
        }
        auto rot = [&](const double* x) {
            std::vector<double> y(m, 0.0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) y[i] += O[i * m + j] * x[j];
            return y;
        };
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < X.size(); ++i) pts.push_back(rot(X.point(i)));
        ExternalFieldSpec QO;
        QO.terms = {{0.6, rot(b.data())}};
        const double e0 = discrete_energy(X, Q, p);
        const double e1 = discrete_energy(Configuration::from_points(d, pts, true), QO, p);
        orth = std::max(orth, rel(e1, e0));
    }
    o.need(orth <= 1e-12, "orthogonal invariance");

    // complement symmetry
    double comp = 0.0;
    for (int d : {2, 3})
        for (double s : {0.5, 1.0, 1.5})
            for (double R : {1.5, 3.0}) {
                const auto a = signed_eq_sphere(F(d, s, 1.0, R, Pole::north));
                const auto b = signed_eq_sphere(F(d, s, -1.0, R, Pole::south));
                for (double u : altitude_grid(101)) comp = std::max(comp, std::fabs(a.density(u) + b.density(-u) - 2.0));
            }
    o.need(comp <= 1e-9, "complement symmetry");

    // sphere maximum principle on positive measures
    double maxp = 0.0;
    for (const auto& f : {F(2, 1, -5, 2), F(3, 1.5, -2, 1.5), F(2, 1.5, -3, 1.5), F(3, 1.2, 2, 1.3, Pole::north),
                          F(2, 1, -1, 2)}) {
        const auto ex = critical_t(f);
        double all = -INFINITY, sup = -INFINITY;
        for (int k = 0; k < 2000; ++k) {
            const double x = -1.0 + 2.0 * k / 1999.0;
            const double U = ex.measure.weighted_potential(x) - f.value(x);
            all = std::max(all, U);
            if (ex.measure.in_support(x)) sup = std::max(sup, U);
        }
        maxp = std::max(maxp, all - sup);
    }
    o.need(maxp <= 1e-5, "maximum principle");

    // energy sequence monotonicity
    std::map<int, double> E;
    for (int n = 2; n <= 6; ++n) E[n] = minimize_fekete(2, n, ExternalFieldSpec::none(), P(2, 1)).energy;
    const bool mono = monotonicity_check(E);
    o.need(mono, "energy monotonicity");
    o.detail << "mass_err=" << mass_err << " orth_rel=" << orth << " complement=" << comp << " max_principle_gap=" << maxp
             << " monotone=" << mono;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> all = {
        {"C1", c1}, {"C2", c2}, {"C3", c3}, {"C4", c4}, {"C5", c5},
        {"C6", c6}, {"C7", c7}, {"C8", c8}, {"C9", c9}, {"C10", c10}};
    const std::string which = argc > 1 ? argv[1] : "all";
    bool ok = true, ran = false;
    for (const auto& [name, fn] : all) {
        if (which != "all" && which != name) continue;
        ran = true;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string detail = o.detail.str();
        if (!o.failed.empty()) detail += " failed: " + o.failed;
        std::printf("%s %s %s [%.2fs]\n", name.c_str(), o.pass ? "PASS" : "FAIL", detail.c_str(), secs);
        std::fflush(stdout);
        ok = ok && o.pass;
    }
    if (!ran) {
        std::fprintf(stderr, "usage: acceptance C1..C10 | all\n");
        return 2;
    }
    return ok ? 0 : 1;
}
