#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "riesz/equilibrium.hpp"
#include "riesz/sphere.hpp"

namespace riesz {

// n unit vectors in R^{d+1}, stored row-major. The last coordinate is the
// altitude x.p with respect to the north pole p.
class Configuration {
public:
    Configuration() = default;
    // throws DomainError on non-unit or coincident points
    Configuration(int d, std::vector<double> coords);
    static Configuration from_points(int d, const std::vector<std::vector<double>>& pts,
                                     bool normalize = false);

    int dim() const { return d_; }
    int ambient() const { return d_ + 1; }
    int size() const { return n_; }
    const double* point(int i) const { return coords_.data() + static_cast<std::size_t>(i) * ambient(); }
    double altitude(int i) const { return point(i)[d_]; }
    double distance(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
    double delta() const { return delta_; }
    const std::vector<double>& coords() const { return coords_; }
    std::vector<std::vector<double>> points() const;
    std::vector<double> sorted_altitudes() const;

private:
    int d_ = 2;
    int n_ = 0;
    std::vector<double> coords_;
    std::vector<double> dist_;
    double delta_ = 0.0;
};

struct PointCharge {
    double q = 0.0;
    std::vector<double> pos;  // |pos| >= 1, same ambient dimension as the points
};

// Q(x) = sum q_i k(|x - pos_i|) + axial(x.p). The kernel k is the one of the
// energy being minimized.
struct ExternalFieldSpec {
    std::vector<PointCharge> terms;
    std::function<double(double)> axial;        // optional, function of x.p
    std::function<double(double)> axial_deriv;  // its derivative

    bool empty() const { return terms.empty() && !axial; }
    static ExternalFieldSpec none() { return {}; }
    // one charge q at R p (north) or -R p (south) on S^d
    static ExternalFieldSpec point(int d, double q, double R, Pole pole = Pole::north);
    static ExternalFieldSpec from_axial(const AxialPointField& f);

    double value(const RieszParameter& p, const double* x) const;
    // Euclidean gradient added into g
    void add_gradient(const RieszParameter& p, const double* x, double scale, double* g) const;
};

double discrete_energy(const Configuration& X, const ExternalFieldSpec& Q, const RieszParameter& p);

struct OptimizerOptions {
    int multistarts = 64;
    std::uint64_t seed = 1;
    int max_iter = 20000;
    double gtol = 1e-10;       // on the Riemannian gradient of the normalized energy
    int memory = 10;           // L-BFGS pairs
    double armijo_c = 1e-4;
    double shrink = 0.5;
    double kick = 1e-6;        // tangent perturbation when a start stalls
    int max_kicks = 6;
    int threads = 0;           // 0: hardware concurrency
    bool structured_seeds = true;
    std::vector<Configuration> seeds;  // extra starting configurations
};

struct FeketeResult {
    Configuration config;
    double energy = 0.0;
    double grad_norm = 0.0;  // of E / (n(n-1)), Riemannian, Euclidean norm
    int iterations = 0;
    int kicks = 0;
    bool converged = false;
    int best_start = -1;
    int starts = 0;
    int converged_starts = 0;
};

FeketeResult minimize_fekete(int d, int n, const ExternalFieldSpec& Q, const RieszParameter& p,
                             const OptimizerOptions& opt = {});
// single local run from X
FeketeResult local_minimize(const Configuration& X, const ExternalFieldSpec& Q,
                            const RieszParameter& p, const OptimizerOptions& opt = {});

// ---- 3 points ----

// f as a function of the squared distance to the source R p
struct AxialFieldFn {
    std::function<double(double)> f;
    std::function<double(double)> df;
    static AxialFieldFn point_charge(const RieszParameter& p, double q);
};

struct ThreePointResult {
    double t0 = 0.0;
    double energy = 0.0;
    double residual = 0.0;
};

ThreePointResult three_point_intercept(const AxialFieldFn& f, const RieszParameter& p, double R);
ThreePointResult three_point_intercept(double q, const RieszParameter& p, double R);

// ---- 4 points (source q at R p) ----

enum class FourPointKind { A_pyramid_13, B_pairs_22, C_square_04 };
std::string to_string(FourPointKind k);
char letter(FourPointKind k);

double four_point_family_energy(FourPointKind kind, double t, double tau, double q, double R,
                                const RieszParameter& p);
inline double f13(double t, double q, double R, const RieszParameter& p) {
    return four_point_family_energy(FourPointKind::A_pyramid_13, t, 0.0, q, R, p);
}
inline double f22(double t, double tau, double q, double R, const RieszParameter& p) {
    return four_point_family_energy(FourPointKind::B_pairs_22, t, tau, q, R, p);
}
inline double f04(double t, double q, double R, const RieszParameter& p) {
    return four_point_family_energy(FourPointKind::C_square_04, t, 0.0, q, R, p);
}
Configuration four_point_configuration(int d, FourPointKind kind, double t, double tau = 0.0);

struct FamilyOptimum {
    FourPointKind kind;
    double t = 0.0;
    double tau = 0.0;
    double energy = 0.0;
};

struct FourPointReport {
    double q = 0.0, R = 1.0;
    FamilyOptimum A, B, C;
    FourPointKind winner = FourPointKind::A_pyramid_13;
    double best_family = 0.0;
    bool has_free = false;
    double free_energy = 0.0;   // unconstrained 4-point optimum
    std::string free_kind;      // classification of the unconstrained optimum
    bool agrees = true;         // |free - best_family| <= tol
    bool mismatch = false;      // free beats every family by more than tol
};

FourPointReport four_point_best(double q, double R, const RieszParameter& p,
                                bool with_free = true, const OptimizerOptions& opt = {},
                                double tol = 1e-6);
// "A", "B", "C" or "other"
std::string classify_four(const Configuration& X, double tol = 1e-5);

// ---- separation ----

struct SignedMeasureSpec {
    double plus_mass = 0.0;
    double minus_mass = 0.0;
    double r = 2.0;  // sigma^- lives in |x| >= r
};

struct SeparationConstant {
    double K = 0.0;
    double c_sigma = 1.0;
    double n_threshold = 1.0;  // valid for n > 2 c_sigma - 1
};

SeparationConstant separation_constant(const SignedMeasureSpec& spec, const RieszParameter& p);
double kappa(int d);
double hyper_singular_g(int n, double q, double R, const RieszParameter& p);
double hyper_singular_bound(int n, double q, double R, const RieszParameter& p);
bool monotonicity_check(const std::map<int, double>& energies, double tol = 1e-9);

struct SupportReport {
    std::vector<double> altitudes;
    std::vector<double> margin;  // U + Q - F at each point
    std::vector<bool> inside;
    bool pass = true;
};

// the configuration must be expressed with the field's own pole convention
SupportReport fekete_in_extended_support(const Configuration& X, const ExtremalResult& result,
                                         double tol = 1e-4);

}  // namespace riesz
