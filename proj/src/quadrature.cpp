#include "riesz/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "riesz/errors.hpp"
#include "riesz/specfun.hpp"

namespace riesz::quad {

namespace {

// Implicit QL on a symmetric tridiagonal matrix. Only the first row of the
// eigenvector matrix is carried along, which is all Golub-Welsch needs.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-17 * dd) break;
            }
            if (m != l) {
                if (iter++ == 100) throw NumericError("gauss_jacobi: QL iteration stalled");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

std::shared_ptr<const Rule> build(int n, double alpha, double beta) {
    const double ab = alpha + beta;
    std::vector<double> d(n), e(n, 0.0), z(n, 0.0);
    d[0] = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        d[k] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        double b2;
        if (k == 1)
            b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
        e[k - 1] = std::sqrt(b2);
    }
    z[0] = 1.0;
    tridiagonal_ql(d, e, z);

    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + specfun::lgamma_abs(alpha + 1.0) +
                                specfun::lgamma_abs(beta + 1.0) - specfun::lgamma_abs(ab + 2.0));
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });

    auto rule = std::make_shared<Rule>();
    rule->x.resize(n);
    rule->one_minus.resize(n);
    rule->one_plus.resize(n);
    rule->w.resize(n);
    for (int k = 0; k < n; ++k) {
        const int i = idx[k];
        rule->x[k] = d[i];
        rule->one_minus[k] = 1.0 - d[i];
        rule->one_plus[k] = 1.0 + d[i];
        rule->w[k] = mu0 * z[i] * z[i];
    }
    // One Newton polish per node on the Jacobi polynomial keeps the
    // endpoint clusters accurate for larger n.
    for (int k = 0; k < n; ++k) {
        double x = rule->x[k];
        for (int it = 0; it < 2; ++it) {
            // P_n^{(alpha,beta)} and derivative by the three-term recurrence
            double p0 = 1.0, p1 = 0.5 * (alpha - beta + (ab + 2.0) * x);
            if (n == 0) break;
            double pn = p1, pnm1 = p0;
            for (int j = 2; j <= n; ++j) {
                const double a1 = 2.0 * j * (j + ab) * (2.0 * j + ab - 2.0);
                const double a2 = (2.0 * j + ab - 1.0) * (alpha * alpha - beta * beta);
                const double a3 = (2.0 * j + ab - 2.0) * (2.0 * j + ab - 1.0) * (2.0 * j + ab);
                const double a4 = 2.0 * (j + alpha - 1.0) * (j + beta - 1.0) * (2.0 * j + ab);
                const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
                p0 = p1;
                p1 = p2;
            }
            pn = p1;
            pnm1 = p0;
            const double t = 2.0 * n + ab;
            const double dp = (n * (alpha - beta - t * x) * pn +
                               2.0 * (n + alpha) * (n + beta) * pnm1) /
                              (t * (1.0 - x * x));
            if (dp == 0.0 || !std::isfinite(dp)) break;
            const double dx = pn / dp;
            if (!std::isfinite(dx) || std::fabs(dx) > 1e-10) break;
            x -= dx;
        }
        if (x > -1.0 && x < 1.0) {
            rule->x[k] = x;
            rule->one_minus[k] = 1.0 - x;
            rule->one_plus[k] = 1.0 + x;
        }
    }
    return rule;
}

}  // namespace

std::shared_ptr<const Rule> gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw DomainError("gauss_jacobi: need n >= 1");
    if (!(alpha > -1.0 && beta > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, std::shared_ptr<const Rule>> cache;
    const auto key = std::make_tuple(n, alpha, beta);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto rule = build(n, alpha, beta);
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 256) cache.clear();
    cache.emplace(key, rule);
    return rule;
}

}  // namespace riesz::quad
