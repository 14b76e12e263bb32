#include "riesz/fekete.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "riesz/errors.hpp"
#include "riesz/roots.hpp"

namespace riesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// K(rho) and K'(rho) for the squared distance rho
struct Kern {
    bool log = false;
    double s = 1.0;
    explicit Kern(const RieszParameter& p) : log(p.is_log()), s(p.s) {}

    double value(double rho) const {
        if (log) return -0.5 * std::log(rho);
        if (s == 1.0) return 1.0 / std::sqrt(rho);
        return std::pow(rho, -0.5 * s);
    }
    // returns K, writes K'
    double both(double rho, double& dk) const {
        if (log) {
            dk = -0.5 / rho;
            return -0.5 * std::log(rho);
        }
        const double k = (s == 1.0) ? 1.0 / std::sqrt(rho) : std::pow(rho, -0.5 * s);
        dk = -0.5 * s * k / rho;
        return k;
    }
};

double dist2(const double* a, const double* b, int m) {
    double r = 0.0;
    for (int k = 0; k < m; ++k) {
        const double t = a[k] - b[k];
        r += t * t;
    }
    return r;
}

void normalize(double* x, int m) {
    double r = 0.0;
    for (int k = 0; k < m; ++k) r += x[k] * x[k];
    r = std::sqrt(r);
    for (int k = 0; k < m; ++k) x[k] /= r;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void validate_field(const ExternalFieldSpec& Q, int m) {
    for (const auto& t : Q.terms) {
        if (static_cast<int>(t.pos.size()) != m)
            throw DomainError("field source dimension does not match the sphere");
        if (!std::isfinite(t.q)) throw DomainError("field charge must be finite");
        double r = 0.0;
        for (double v : t.pos) r += v * v;
        if (std::sqrt(r) < 1.0 - 1e-12) throw DomainError("field sources must satisfy |pos| >= 1");
    }
    if (Q.axial && !Q.axial_deriv) throw DomainError("axial field needs its derivative");
}

// Normalized energy E / (n(n-1)) and its Riemannian gradient.
class Objective {
public:
    Objective(int d, int n, const ExternalFieldSpec& Q, const RieszParameter& p)
        : m_(d + 1), n_(n), Q_(Q), p_(p), k_(p), scale_(1.0 / (double(n) * (n - 1))) {}

    int dim() const { return m_ * n_; }

    // returns +inf for coincident points
    double eval(const std::vector<double>& x, std::vector<double>& g) const {
        std::fill(g.begin(), g.end(), 0.0);
        double e = 0.0;
        for (int i = 0; i < n_; ++i) {
            const double* xi = &x[i * m_];
            double* gi = &g[i * m_];
            for (int j = i + 1; j < n_; ++j) {
                const double* xj = &x[j * m_];
                double* gj = &g[j * m_];
                const double rho = dist2(xi, xj, m_);
                if (!(rho > 0.0)) return kInf;
                double dk;
                e += 2.0 * k_.both(rho, dk);
                for (int k = 0; k < m_; ++k) {
                    const double c = 4.0 * dk * (xi[k] - xj[k]);
                    gi[k] += c;
                    gj[k] -= c;
                }
            }
        }
        if (!Q_.empty()) {
            const double w = 2.0 * (n_ - 1);
            for (int i = 0; i < n_; ++i) {
                const double qv = Q_.value(p_, &x[i * m_]);
                if (!std::isfinite(qv)) return kInf;
                e += w * qv;
                Q_.add_gradient(p_, &x[i * m_], w, &g[i * m_]);
            }
        }
        for (int i = 0; i < n_; ++i) {
            const double* xi = &x[i * m_];
            double* gi = &g[i * m_];
            double c = 0.0;
            for (int k = 0; k < m_; ++k) c += gi[k] * xi[k];
            for (int k = 0; k < m_; ++k) gi[k] = (gi[k] - c * xi[k]) * scale_;
        }
        return e * scale_;
    }

    double unscale(double e) const { return e / scale_; }
    void project(const std::vector<double>& x, std::vector<double>& v) const {
        for (int i = 0; i < n_; ++i) {
            double c = 0.0;
            for (int k = 0; k < m_; ++k) c += v[i * m_ + k] * x[i * m_ + k];
            for (int k = 0; k < m_; ++k) v[i * m_ + k] -= c * x[i * m_ + k];
        }
    }
    double max_point_norm(const std::vector<double>& v) const {
        double mx = 0.0;
        for (int i = 0; i < n_; ++i) {
            double r = 0.0;
            for (int k = 0; k < m_; ++k) r += v[i * m_ + k] * v[i * m_ + k];
            mx = std::max(mx, r);
        }
        return std::sqrt(mx);
    }
    void retract(const std::vector<double>& x, const std::vector<double>& d, double a,
                 std::vector<double>& out) const {
        for (int i = 0; i < dim(); ++i) out[i] = x[i] + a * d[i];
        for (int i = 0; i < n_; ++i) normalize(&out[i * m_], m_);
    }
    int m() const { return m_; }
    int n() const { return n_; }

private:
    int m_, n_;
    const ExternalFieldSpec& Q_;
    const RieszParameter& p_;
    Kern k_;
    double scale_;
};

void random_tangent(const Objective& obj, const std::vector<double>& x, double size,
                    std::mt19937_64& rng, std::vector<double>& out) {
    std::normal_distribution<double> nd(0.0, 1.0);
    for (double& v : out) v = nd(rng);
    obj.project(x, out);
    const int m = obj.m();
    for (int i = 0; i < obj.n(); ++i) {
        double r = 0.0;
        for (int k = 0; k < m; ++k) r += out[i * m + k] * out[i * m + k];
        r = std::sqrt(r);
        if (r > 0.0)
            for (int k = 0; k < m; ++k) out[i * m + k] *= size / r;
    }
}

struct RunResult {
    std::vector<double> x;
    double energy = kInf;  // normalized
    double gnorm = kInf;
    int iterations = 0;
    int kicks = 0;
    bool converged = false;
};

// Riemannian L-BFGS with Armijo backtracking; retraction by renormalization.
RunResult lbfgs(const Objective& obj, std::vector<double> x, const OptimizerOptions& opt,
                std::mt19937_64& rng) {
    const int N = obj.dim();
    std::vector<double> g(N), gn(N), xn(N), dir(N), q(N);
    std::vector<std::vector<double>> S, Y;
    std::vector<double> rho;
    double e = obj.eval(x, g);
    if (!std::isfinite(e)) throw DomainError("minimize_fekete: starting configuration is singular");
    RunResult rr;
    double gnorm = std::sqrt(dot(g, g));
    const double max_step = 0.25;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        if (gnorm <= opt.gtol) {
            rr.converged = true;
            break;
        }
        // two-loop recursion
        q = g;
        const int k = static_cast<int>(S.size());
        std::vector<double> al(k);
        for (int i = k - 1; i >= 0; --i) {
            al[i] = rho[i] * dot(S[i], q);
            for (int j = 0; j < N; ++j) q[j] -= al[i] * Y[i][j];
        }
        double h0 = 1.0;
        if (k > 0) h0 = dot(S[k - 1], Y[k - 1]) / dot(Y[k - 1], Y[k - 1]);
        for (int j = 0; j < N; ++j) q[j] *= h0;
        for (int i = 0; i < k; ++i) {
            const double b = rho[i] * dot(Y[i], q);
            for (int j = 0; j < N; ++j) q[j] += (al[i] - b) * S[i][j];
        }
        for (int j = 0; j < N; ++j) dir[j] = -q[j];
        obj.project(x, dir);
        double slope = dot(g, dir);
        if (!(slope < 0.0)) {
            S.clear(); Y.clear(); rho.clear();
            dir = g;
            for (double& v : dir) v = -v;
            slope = -gnorm * gnorm;
        }
        double a = 1.0;
        const double big = obj.max_point_norm(dir);
        if (S.empty()) a = std::min(1.0, 0.05 / std::max(big, 1e-300));
        else if (big * a > max_step) a = max_step / big;

        const double noise = 1e-14 * std::max(1.0, std::fabs(e));
        bool accepted = false;
        double en = kInf;
        for (int ls = 0; ls < 60; ++ls) {
            obj.retract(x, dir, a, xn);
            en = obj.eval(xn, gn);
            if (std::isfinite(en)) {
                if (en <= e + opt.armijo_c * a * slope) { accepted = true; break; }
                // below roundoff the energy cannot tell; let the gradient decide
                if (std::fabs(en - e) <= noise && dot(gn, gn) < gnorm * gnorm) { accepted = true; break; }
            }
            a *= opt.shrink;
            if (a * big < 1e-16) break;
        }
        if (!accepted) {
            if (rr.kicks >= opt.max_kicks) break;
            ++rr.kicks;
            std::vector<double> kick(N);
            random_tangent(obj, x, opt.kick, rng, kick);
            obj.retract(x, kick, 1.0, xn);
            const double ek = obj.eval(xn, gn);
            if (!std::isfinite(ek)) break;
            x.swap(xn);
            g.swap(gn);
            e = ek;
            gnorm = std::sqrt(dot(g, g));
            S.clear(); Y.clear(); rho.clear();
            continue;
        }
        std::vector<double> sv(N), yv(N);
        for (int j = 0; j < N; ++j) {
            sv[j] = xn[j] - x[j];
            yv[j] = gn[j] - g[j];
        }
        x.swap(xn);
        g.swap(gn);
        e = en;
        gnorm = std::sqrt(dot(g, g));
        obj.project(x, sv);
        obj.project(x, yv);
        const double sy = dot(sv, yv);
        if (sy > 1e-12 * std::sqrt(dot(sv, sv) * dot(yv, yv)) && sy > 0.0) {
            S.push_back(std::move(sv));
            Y.push_back(std::move(yv));
            rho.push_back(1.0 / sy);
            if (static_cast<int>(S.size()) > opt.memory) {
                S.erase(S.begin());
                Y.erase(Y.begin());
                rho.erase(rho.begin());
            }
        }
    }
    if (gnorm <= opt.gtol) rr.converged = true;
    rr.x = std::move(x);
    rr.energy = e;
    rr.gnorm = gnorm;
    rr.iterations = it;
    return rr;
}

std::vector<double> random_points(int d, int n, std::mt19937_64& rng) {
    const int m = d + 1;
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        do {
            r = 0.0;
            for (int k = 0; k < m; ++k) {
                x[i * m + k] = nd(rng);
                r += x[i * m + k] * x[i * m + k];
            }
        } while (r < 1e-20);
        normalize(&x[i * m], m);
    }
    return x;
}

// regular simplex with d+2 vertices in R^{d+1}
std::vector<double> simplex(int d) {
    const int m = d + 1, n = d + 2;
    // centered standard basis of R^{n}, then an orthonormal basis of the hyperplane
    std::vector<std::vector<double>> basis;
    for (int k = 0; k < n - 1; ++k) {
        std::vector<double> v(n, 0.0);
        v[k] = 1.0;
        v[k + 1] = -1.0;
        for (const auto& b : basis) {
            const double c = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
            for (int j = 0; j < n; ++j) v[j] -= c * b[j];
        }
        const double r = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        for (double& t : v) t /= r;
        basis.push_back(v);
    }
    std::vector<double> x(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) x[i * m + k] = basis[k][i];
        normalize(&x[i * m], m);
    }
    return x;
}

std::vector<double> spiral(int n) {
    std::vector<double> x(3 * static_cast<std::size_t>(n));
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        x[3 * i] = r * std::cos(ga * i);
        x[3 * i + 1] = r * std::sin(ga * i);
        x[3 * i + 2] = z;
    }
    return x;
}

std::vector<double> ring(int d, int n, double t) {
    const int m = d + 1;
    std::vector<double> x(static_cast<std::size_t>(n) * m, 0.0);
    const double r = std::sqrt(1.0 - t * t);
    for (int i = 0; i < n; ++i) {
        x[i * m] = r * std::cos(2.0 * kPi * i / n);
        x[i * m + 1] = r * std::sin(2.0 * kPi * i / n);
        x[i * m + d] = t;
    }
    return x;
}

std::vector<std::vector<double>> structured(int d, int n) {
    std::vector<std::vector<double>> out;
    const int m = d + 1;
    if (n == 2) {
        std::vector<double> x(2 * m, 0.0);
        x[d] = 1.0;
        x[m + d] = -1.0;
        out.push_back(x);
    }
    if (n == d + 2) out.push_back(simplex(d));
    if (n == 3) {
        out.push_back(ring(d, 3, 0.0));
        out.push_back(ring(d, 3, -0.5));
    }
    if (n == 4) {
        out.push_back(four_point_configuration(d, FourPointKind::B_pairs_22, 0.5, -0.5).coords());
        out.push_back(four_point_configuration(d, FourPointKind::C_square_04, -0.3).coords());
    }
    if (d == 2 && n >= 5) out.push_back(spiral(n));
    return out;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

// ---------------------------------------------------------------- Configuration

Configuration::Configuration(int d, std::vector<double> coords) : d_(d), coords_(std::move(coords)) {
    if (d < 1) throw DomainError("Configuration: d must be >= 1");
    const int m = d + 1;
    if (coords_.size() % m != 0) throw DomainError("Configuration: coordinate count mismatch");
    n_ = static_cast<int>(coords_.size() / m);
    for (int i = 0; i < n_; ++i) {
        double r = 0.0;
        for (int k = 0; k < m; ++k) r += coords_[i * m + k] * coords_[i * m + k];
        if (std::fabs(std::sqrt(r) - 1.0) > 1e-12)
            throw DomainError("Configuration: point " + std::to_string(i) + " is not a unit vector");
    }
    dist_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    delta_ = n_ > 1 ? kInf : 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            const double r = std::sqrt(dist2(point(i), point(j), m));
            dist_[i * n_ + j] = dist_[j * n_ + i] = r;
            delta_ = std::min(delta_, r);
        }
    if (n_ > 1 && !(delta_ > 0.0)) throw DomainError("Configuration: coincident points");
}

Configuration Configuration::from_points(int d, const std::vector<std::vector<double>>& pts,
                                         bool normalize_points) {
    std::vector<double> c;
    for (const auto& p : pts) {
        if (static_cast<int>(p.size()) != d + 1)
            throw DomainError("Configuration: point has wrong dimension");
        const std::size_t at = c.size();
        c.insert(c.end(), p.begin(), p.end());
        if (normalize_points) normalize(&c[at], d + 1);
    }
    return Configuration(d, std::move(c));
}

std::vector<std::vector<double>> Configuration::points() const {
    std::vector<std::vector<double>> out;
    for (int i = 0; i < n_; ++i) out.emplace_back(point(i), point(i) + ambient());
    return out;
}

std::vector<double> Configuration::sorted_altitudes() const {
    std::vector<double> a(n_);
    for (int i = 0; i < n_; ++i) a[i] = altitude(i);
    std::sort(a.begin(), a.end());
    return a;
}

// ---------------------------------------------------------------- field

ExternalFieldSpec ExternalFieldSpec::point(int d, double q, double R, Pole pole) {
    if (!(R >= 1.0)) throw DomainError("point field: R must be >= 1");
    ExternalFieldSpec f;
    PointCharge c;
    c.q = q;
    c.pos.assign(d + 1, 0.0);
    c.pos[d] = pole == Pole::north ? R : -R;
    f.terms.push_back(c);
    return f;
}

ExternalFieldSpec ExternalFieldSpec::from_axial(const AxialPointField& f) {
    if (f.q == 0.0) return {};
    return point(f.p.d, f.q, f.R, f.pole);
}

double ExternalFieldSpec::value(const RieszParameter& p, const double* x) const {
    const Kern k(p);
    double v = 0.0;
    for (const auto& t : terms) {
        const double rho = dist2(x, t.pos.data(), static_cast<int>(t.pos.size()));
        if (!(rho > 0.0)) throw DomainError("external field evaluated at its source");
        v += t.q * k.value(rho);
    }
    if (axial) v += axial(x[p.d]);
    return v;
}

void ExternalFieldSpec::add_gradient(const RieszParameter& p, const double* x, double scale,
                                     double* g) const {
    const Kern k(p);
    for (const auto& t : terms) {
        const int m = static_cast<int>(t.pos.size());
        const double rho = dist2(x, t.pos.data(), m);
        double dk;
        k.both(rho, dk);
        for (int j = 0; j < m; ++j) g[j] += scale * t.q * 2.0 * dk * (x[j] - t.pos[j]);
    }
    if (axial_deriv) g[p.d] += scale * axial_deriv(x[p.d]);
}

double discrete_energy(const Configuration& X, const ExternalFieldSpec& Q, const RieszParameter& p) {
    if (X.dim() != p.d) throw DomainError("discrete_energy: configuration lives on another sphere");
    validate_field(Q, X.ambient());
    const int n = X.size();
    const Kern k(p);
    double e = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double r = X.distance(i, j);
            e += 2.0 * k.value(r * r);
        }
    if (!Q.empty() && n > 1) {
        double qs = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = Q.value(p, X.point(i));
            if (!std::isfinite(v)) throw DomainError("discrete_energy: infinite external field");
            qs += v;
        }
        e += 2.0 * (n - 1) * qs;
    }
    return e;
}

// ---------------------------------------------------------------- optimizer

FeketeResult local_minimize(const Configuration& X, const ExternalFieldSpec& Q,
                            const RieszParameter& p, const OptimizerOptions& opt) {
    if (X.dim() != p.d) throw DomainError("local_minimize: configuration lives on another sphere");
    if (X.size() < 2) throw DomainError("local_minimize: needs n >= 2");
    validate_field(Q, X.ambient());
    Objective obj(p.d, X.size(), Q, p);
    std::mt19937_64 rng(opt.seed);
    RunResult rr = lbfgs(obj, X.coords(), opt, rng);
    FeketeResult out;
    out.config = Configuration(p.d, rr.x);
    out.energy = discrete_energy(out.config, Q, p);
    out.grad_norm = rr.gnorm;
    out.iterations = rr.iterations;
    out.kicks = rr.kicks;
    out.converged = rr.converged;
    out.best_start = 0;
    out.starts = 1;
    out.converged_starts = rr.converged ? 1 : 0;
    return out;
}

FeketeResult minimize_fekete(int d, int n, const ExternalFieldSpec& Q, const RieszParameter& p,
                             const OptimizerOptions& opt) {
    if (d != p.d) throw DomainError("minimize_fekete: dimension mismatch");
    if (n < 2) throw DomainError("minimize_fekete: needs n >= 2");
    validate_field(Q, d + 1);
    for (const auto& t : Q.terms) {
        double r = 0.0;
        for (double v : t.pos) r += v * v;
        if (t.q < 0.0 && std::sqrt(r) <= 1.0 + 1e-12)
            throw DomainError("minimize_fekete: attracting source on the sphere gives no minimizer");
    }
    for (const auto& c : opt.seeds)
        if (c.dim() != d || c.size() != n) throw DomainError("minimize_fekete: seed has wrong shape");

    std::vector<std::vector<double>> starts;
    if (opt.structured_seeds)
        for (auto& s : structured(d, n)) starts.push_back(std::move(s));
    for (const auto& c : opt.seeds) starts.push_back(c.coords());
    const int fixed = static_cast<int>(starts.size());
    const int total = std::max(fixed, opt.multistarts);

    Objective obj(d, n, Q, p);
    std::vector<RunResult> runs(total);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= total) return;
            std::seed_seq ss{static_cast<std::uint64_t>(opt.seed), static_cast<std::uint64_t>(k),
                             static_cast<std::uint64_t>(n)};
            std::mt19937_64 rng(ss);
            std::vector<double> x0 = k < fixed ? starts[k] : random_points(d, n, rng);
            try {
                runs[k] = lbfgs(obj, std::move(x0), opt, rng);
            } catch (const DomainError&) {
                runs[k] = RunResult{};  // singular start, skipped
            }
        }
    };
    int nt = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
    nt = std::max(1, std::min(nt, total));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    int best = -1;
    std::vector<double> best_alt;
    int conv = 0;
    for (int k = 0; k < total; ++k) {
        const auto& r = runs[k];
        if (!std::isfinite(r.energy)) continue;
        if (r.converged) ++conv;
        std::vector<double> alt(n);
        for (int i = 0; i < n; ++i) alt[i] = r.x[i * (d + 1) + d];
        std::sort(alt.begin(), alt.end());
        if (best < 0) {
            best = k;
            best_alt = alt;
            continue;
        }
        const double eb = runs[best].energy;
        const double tol = 1e-12 * std::max(1.0, std::fabs(eb));
        if (r.energy < eb - tol || (std::fabs(r.energy - eb) <= tol && lex_less(alt, best_alt))) {
            best = k;
            best_alt = alt;
        }
    }
    if (best < 0) throw NumericError("minimize_fekete: every start failed");
    FeketeResult out;
    out.config = Configuration(d, runs[best].x);
    out.energy = discrete_energy(out.config, Q, p);
    out.grad_norm = runs[best].gnorm;
    out.iterations = runs[best].iterations;
    out.kicks = runs[best].kicks;
    out.converged = runs[best].converged;
    out.best_start = best;
    out.starts = total;
    out.converged_starts = conv;
    return out;
}

// ---------------------------------------------------------------- three points

AxialFieldFn AxialFieldFn::point_charge(const RieszParameter& p, double q) {
    const Kern k(p);
    AxialFieldFn f;
    f.f = [k, q](double rho) { return q * k.value(rho); };
    f.df = [k, q](double rho) {
        double dk;
        k.both(rho, dk);
        return q * dk;
    };
    return f;
}

ThreePointResult three_point_intercept(const AxialFieldFn& f, const RieszParameter& p, double R) {
    if (!(R >= 1.0)) throw DomainError("three_point_intercept: R must be >= 1");
    const Kern k(p);
    auto rho = [](double t) { return 3.0 * (1.0 - t) * (1.0 + t); };
    auto src = [R](double t) { return (R - 1.0) * (R - 1.0) + 2.0 * R * (1.0 - t); };
    // dE/dt divided by -6
    auto h = [&](double t) {
        double dk;
        k.both(rho(t), dk);
        return 6.0 * t * dk + 4.0 * R * f.df(src(t));
    };
    ThreePointResult out;
    const double h0 = h(0.0);
    if (h0 == 0.0) {
        out.t0 = 0.0;
    } else {
        if (h0 > 0.0) throw DomainError("three_point_intercept: field must be decreasing in distance (q > 0)");
        double lo = -0.5;
        while (h(lo) < 0.0) {
            lo = -1.0 + 0.5 * (1.0 + lo) * 0.5;
            if (1.0 + lo < 1e-15) throw NumericError("three_point_intercept: root not bracketed");
        }
        out.t0 = roots::brent(h, lo, 0.0, 1e-16, 300).x;
    }
    out.residual = std::fabs(h(out.t0));
    out.energy = 6.0 * k.value(rho(out.t0)) + 12.0 * f.f(src(out.t0));
    return out;
}

ThreePointResult three_point_intercept(double q, const RieszParameter& p, double R) {
    if (q < 0.0) throw DomainError("three_point_intercept: needs q >= 0");
    return three_point_intercept(AxialFieldFn::point_charge(p, q), p, R);
}

// ---------------------------------------------------------------- four points

std::string to_string(FourPointKind k) {
    switch (k) {
        case FourPointKind::A_pyramid_13: return "A_pyramid_13";
        case FourPointKind::B_pairs_22: return "B_pairs_22";
        default: return "C_square_04";
    }
}

char letter(FourPointKind k) {
    return k == FourPointKind::A_pyramid_13 ? 'A' : k == FourPointKind::B_pairs_22 ? 'B' : 'C';
}

double four_point_family_energy(FourPointKind kind, double t, double tau, double q, double R,
                                const RieszParameter& p) {
    const Kern k(p);
    auto src = [R](double u) { return (R - 1.0) * (R - 1.0) + 2.0 * R * (1.0 - u); };
    auto field = [&](double u) { return q == 0.0 ? 0.0 : q * k.value(src(u)); };
    const double ct = (1.0 - t) * (1.0 + t);
    switch (kind) {
        case FourPointKind::A_pyramid_13:
            return 6.0 * k.value(2.0 * (1.0 + t)) + 6.0 * k.value(3.0 * ct) +
                   6.0 * ((q == 0.0 ? 0.0 : q * k.value((1.0 + R) * (1.0 + R))) + 3.0 * field(t));
        case FourPointKind::B_pairs_22: {
            const double cu = (1.0 - tau) * (1.0 + tau);
            return 2.0 * k.value(4.0 * ct) + 2.0 * k.value(4.0 * cu) +
                   8.0 * k.value(2.0 * (1.0 - t * tau)) + 12.0 * (field(t) + field(tau));
        }
        default:
            return 8.0 * k.value(2.0 * ct) + 4.0 * k.value(4.0 * ct) + 24.0 * field(t);
    }
}

Configuration four_point_configuration(int d, FourPointKind kind, double t, double tau) {
    const int m = d + 1;
    std::vector<double> x(4 * static_cast<std::size_t>(m), 0.0);
    auto put = [&](int i, double a, double b, double z) {
        x[i * m] = a;
        x[i * m + 1] = b;
        x[i * m + d] = z;
    };
    const double r = std::sqrt((1.0 - t) * (1.0 + t));
    switch (kind) {
        case FourPointKind::A_pyramid_13:
            put(0, 0.0, 0.0, -1.0);
            for (int i = 0; i < 3; ++i)
                put(i + 1, r * std::cos(2.0 * kPi * i / 3), r * std::sin(2.0 * kPi * i / 3), t);
            break;
        case FourPointKind::B_pairs_22: {
            const double ru = std::sqrt((1.0 - tau) * (1.0 + tau));
            put(0, r, 0.0, t);
            put(1, -r, 0.0, t);
            put(2, 0.0, ru, tau);
            put(3, 0.0, -ru, tau);
            break;
        }
        default:
            put(0, r, 0.0, t);
            put(1, 0.0, r, t);
            put(2, -r, 0.0, t);
            put(3, 0.0, -r, t);
    }
    for (int i = 0; i < 4; ++i) normalize(&x[i * m], m);
    return Configuration(d, std::move(x));
}

namespace {

// small Nelder-Mead, enough for the smooth 2-D f22 problem
std::pair<std::array<double, 2>, double> nelder_mead(
    const std::function<double(double, double)>& f, std::array<double, 2> x0, double step) {
    std::array<std::array<double, 2>, 3> v{x0, x0, x0};
    v[1][0] += step;
    v[2][1] += step;
    std::array<double, 3> fv{f(v[0][0], v[0][1]), f(v[1][0], v[1][1]), f(v[2][0], v[2][1])};
    for (int it = 0; it < 4000; ++it) {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int b = idx[0], m = idx[1], w = idx[2];
        const double size = std::max(std::fabs(v[w][0] - v[b][0]) + std::fabs(v[w][1] - v[b][1]),
                                     std::fabs(v[m][0] - v[b][0]) + std::fabs(v[m][1] - v[b][1]));
        if (size < 1e-13 && std::fabs(fv[w] - fv[b]) <= 1e-15 * std::max(1.0, std::fabs(fv[b]))) break;
        const std::array<double, 2> c{0.5 * (v[b][0] + v[m][0]), 0.5 * (v[b][1] + v[m][1])};
        auto along = [&](double a) {
            return std::array<double, 2>{c[0] + a * (v[w][0] - c[0]), c[1] + a * (v[w][1] - c[1])};
        };
        const auto xr = along(-1.0);
        const double fr = f(xr[0], xr[1]);
        if (fr < fv[b]) {
            const auto xe = along(-2.0);
            const double fe = f(xe[0], xe[1]);
            if (fe < fr) { v[w] = xe; fv[w] = fe; }
            else { v[w] = xr; fv[w] = fr; }
        } else if (fr < fv[m]) {
            v[w] = xr;
            fv[w] = fr;
        } else {
            const auto xc = fr < fv[w] ? along(-0.5) : along(0.5);
            const double fc = f(xc[0], xc[1]);
            if (fc < std::min(fr, fv[w])) {
                v[w] = xc;
                fv[w] = fc;
            } else {
                for (int i : {m, w}) {
                    v[i] = {0.5 * (v[i][0] + v[b][0]), 0.5 * (v[i][1] + v[b][1])};
                    fv[i] = f(v[i][0], v[i][1]);
                }
            }
        }
    }
    const int b = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    return {v[b], fv[b]};
}

FamilyOptimum min_1d(FourPointKind kind, double q, double R, const RieszParameter& p) {
    auto f = [&](double t) { return four_point_family_energy(kind, t, 0.0, q, R, p); };
    const double lo = -1.0 + 1e-9, hi = 1.0 - 1e-9;
    const auto r = roots::brent_min(f, lo, hi, 1e-12);
    return {kind, r.x, 0.0, r.fx};
}

}  // namespace

std::string classify_four(const Configuration& X, double tol) {
    if (X.size() != 4) return "other";
    const auto a = X.sorted_altitudes();
    std::vector<int> sizes{1};
    for (int i = 1; i < 4; ++i) {
        if (a[i] - a[i - 1] > tol) sizes.push_back(1);
        else ++sizes.back();
    }
    if (sizes == std::vector<int>{1, 3} && a[0] < -1.0 + tol) return "A";
    if (sizes == std::vector<int>{2, 2}) return "B";
    if (sizes == std::vector<int>{4}) return "C";
    return "other";
}

FourPointReport four_point_best(double q, double R, const RieszParameter& p, bool with_free,
                                const OptimizerOptions& opt, double tol) {
    if (!(q > 0.0)) throw DomainError("four_point_best: needs q > 0");
    if (!(R >= 1.0)) throw DomainError("four_point_best: R must be >= 1");
    FourPointReport rep;
    rep.q = q;
    rep.R = R;
    rep.A = min_1d(FourPointKind::A_pyramid_13, q, R, p);
    rep.C = min_1d(FourPointKind::C_square_04, q, R, p);

    auto f = [&](double t, double u) {
        if (!(std::fabs(t) < 1.0 && std::fabs(u) < 1.0)) return kInf;
        return four_point_family_energy(FourPointKind::B_pairs_22, t, u, q, R, p);
    };
    rep.B = {FourPointKind::B_pairs_22, rep.C.t, rep.C.t, rep.C.energy};
    const std::array<std::array<double, 2>, 6> starts{{{0.3, -0.7}, {0.8, -0.2}, {-0.1, -0.5},
                                                       {0.5, -0.5}, {0.0, -0.9}, {0.9, 0.4}}};
    bool found = false;
    for (const auto& s0 : starts) {
        auto [x, fx] = nelder_mead(f, s0, 0.1);
        auto [x2, fx2] = nelder_mead(f, x, 0.01);  // restart against premature collapse
        if (!found || fx2 < rep.B.energy) {
            rep.B = {FourPointKind::B_pairs_22, std::max(x2[0], x2[1]), std::min(x2[0], x2[1]), fx2};
            found = true;
        }
    }
    // merged planes are the square; keep the C label for them
    const bool b_genuine = std::fabs(rep.B.t - rep.B.tau) >= 1e-5;

    // tie order A, C, B
    rep.winner = FourPointKind::A_pyramid_13;
    rep.best_family = rep.A.energy;
    const double etol = 1e-12 * std::max(1.0, std::fabs(rep.A.energy));
    if (rep.C.energy < rep.best_family - etol) {
        rep.winner = FourPointKind::C_square_04;
        rep.best_family = rep.C.energy;
    }
    if (b_genuine && rep.B.energy < rep.best_family - etol) {
        rep.winner = FourPointKind::B_pairs_22;
        rep.best_family = rep.B.energy;
    }

    if (with_free) {
        const int d = p.d;
        OptimizerOptions o = opt;
        o.seeds.push_back(four_point_configuration(d, FourPointKind::A_pyramid_13, rep.A.t));
        o.seeds.push_back(four_point_configuration(d, FourPointKind::C_square_04, rep.C.t));
        if (b_genuine)
            o.seeds.push_back(four_point_configuration(d, FourPointKind::B_pairs_22, rep.B.t, rep.B.tau));
        const auto fr = minimize_fekete(d, 4, ExternalFieldSpec::point(d, q, R, Pole::north), p, o);
        rep.has_free = true;
        rep.free_energy = fr.energy;
        rep.free_kind = classify_four(fr.config);
        rep.agrees = std::fabs(fr.energy - rep.best_family) <= tol;
        rep.mismatch = fr.energy < rep.best_family - tol;
    }
    return rep;
}

// ---------------------------------------------------------------- separation

SeparationConstant separation_constant(const SignedMeasureSpec& spec, const RieszParameter& p) {
    if (!(spec.plus_mass >= 0.0 && spec.minus_mass >= 0.0))
        throw DomainError("separation_constant: masses must be >= 0");
    if (!(spec.r > 1.0)) throw DomainError("separation_constant: requires r > 1");
    const int d = p.d;
    double s, W;
    if (p.is_log()) {
        if (d != 2) throw DomainError("separation_constant: logarithmic case needs d = 2");
        s = 0.0;
        W = 1.0;
    } else {
        s = p.s;
        if (!(s >= d - 2 && s < d)) throw DomainError("separation_constant: requires d-2 <= s < d");
        W = sphere::sphere_energy(p);
    }
    SeparationConstant out;
    out.c_sigma = 1.0 + spec.plus_mass +
                  (std::pow(spec.r + 1.0, d - s) / (W * std::pow(spec.r - 1.0, d)) - 1.0) * spec.minus_mass;
    if (!(out.c_sigma >= 0.5))
        throw DomainError("separation_constant: c_sigma < 1/2, separation condition violated");
    out.K = std::pow(std::pow(2.0, d - s) / (W * out.c_sigma), 1.0 / d);
    out.n_threshold = 2.0 * out.c_sigma - 1.0;
    return out;
}

double kappa(int d) {
    if (d < 2) throw DomainError("kappa: d must be >= 2");
    return std::pow(sphere::gamma_d(d) / d, -1.0 / d);
}

double hyper_singular_g(int n, double q, double R, const RieszParameter& p) {
    if (p.is_log() || !(p.s > p.d)) throw DomainError("hyper_singular_bound: requires s > d");
    if (n < 2) throw DomainError("hyper_singular_bound: requires n >= 2");
    if (!(R > 1.0)) throw DomainError("hyper_singular_bound: requires R > 1");
    const double d = p.d, s = p.s;
    const double beta = sphere::remainder_coeff(p);
    double field = 0.0;
    if (q != 0.0)
        field = std::fabs(q) * sphere::uniform_potential_exterior(p, R) -
                std::min(0.0, q / std::pow(R - 1.0, s));
    const double brace = 1.0 / (s - d) + 0.5 * beta * std::pow(n, -2.0 / d) +
                         2.0 * std::pow(n, 1.0 - s / d) * field;
    if (!(brace > 0.0)) throw NumericError("hyper_singular_bound: non-positive brace");
    return std::pow(brace, -1.0 / s);
}

double hyper_singular_bound(int n, double q, double R, const RieszParameter& p) {
    const double g = hyper_singular_g(n, q, R, p);
    const double gd = sphere::gamma_d(p.d);
    return std::pow(gd / (1.0 - gd / p.d), -1.0 / p.s) * g / std::pow(n, 1.0 / p.d);
}

bool monotonicity_check(const std::map<int, double>& energies, double tol) {
    if (energies.size() < 2) return true;
    auto it = energies.begin();
    auto prev = it++;
    for (; it != energies.end(); prev = it++) {
        const double a = prev->second / (double(prev->first) * (prev->first - 1));
        const double b = it->second / (double(it->first) * (it->first - 1));
        if (!(a <= b + tol)) return false;
    }
    return true;
}

SupportReport fekete_in_extended_support(const Configuration& X, const ExtremalResult& result,
                                         double tol) {
    SupportReport rep;
    for (int i = 0; i < X.size(); ++i) {
        const double x = X.altitude(i);
        double m = 0.0;
        if (result.field.q != 0.0) m = result.measure.weighted_potential(x) - result.F;
        rep.altitudes.push_back(x);
        rep.margin.push_back(m);
        const bool ok = m <= tol;
        rep.inside.push_back(ok);
        rep.pass = rep.pass && ok;
    }
    return rep;
}

}  // namespace riesz
