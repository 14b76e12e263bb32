#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace riesz::quad {

// Nodes on [-1,1] with weight (1-x)^alpha (1+x)^beta. one_minus holds 1-x
// computed from the eigenproblem so endpoint distances keep their digits.
struct Rule {
    std::vector<double> x, one_minus, one_plus, w;
    int size() const { return static_cast<int>(x.size()); }
};

// Golub-Welsch, cached per (n, alpha, beta). Thread-safe.
std::shared_ptr<const Rule> gauss_jacobi(int n, double alpha, double beta);
inline std::shared_ptr<const Rule> gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

// int_a^b (b-x)^alpha (x-a)^beta h(x, x-a, b-x) dx with an n-point rule
template <class H>
double jacobi_integrate(H&& h, double a, double b, double alpha, double beta, int n) {
    auto rule = gauss_jacobi(n, alpha, beta);
    const double half = 0.5 * (b - a);
    const double scale = std::pow(half, 1.0 + alpha + beta);
    double sum = 0.0;
    for (int i = 0; i < rule->size(); ++i) {
        const double da = half * rule->one_plus[i];
        const double db = half * rule->one_minus[i];
        const double x = (da < db) ? a + da : b - db;
        sum += rule->w[i] * h(x, da, db);
    }
    return scale * sum;
}

struct Result {
    double value = 0.0;
    double error = 0.0;     // |last - previous level|
    int evaluations = 0;
    bool converged = false;
};

// Double-exponential rule on [a,b]. f(x, x-a, b-x); the distances are exact
// even where x itself rounds onto an endpoint.
template <class F>
Result tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-12, int max_level = 10) {
    constexpr double half_pi = 1.57079632679489661923;
    Result res;
    if (!(b > a)) return res;
    const double half = 0.5 * (b - a);
    const double len = b - a;

    // contribution of all nodes tau = k*h, k odd (or all k when first)
    auto level_sum = [&](double h, bool first) {
        double s = 0.0;
        if (first) {
            s += half_pi * f(a + half, half, half);
            ++res.evaluations;
        }
        const int step = first ? 1 : 2;
        int quiet = 0;
        for (int k = 1;; k += step) {
            const double tau = k * h;
            const double y = half_pi * std::sinh(tau);
            if (y > 700.0) break;
            const double cy = std::cosh(y);
            const double comp = 1.0 / (std::exp(y) * cy);  // 1 - tanh(y)
            const double d = half * comp;
            if (d == 0.0) break;
            const double wgt = half_pi * std::cosh(tau) / (cy * cy);
            const double fl = f(a + d, d, len - d);
            const double fr = f(b - d, len - d, d);
            res.evaluations += 2;
            const double term = wgt * (fl + fr);
            s += term;
            if (std::fabs(term) <= 1e-18 * std::fabs(s) && tau > 3.0) {
                if (++quiet >= 2) break;
            } else {
                quiet = 0;
            }
        }
        return s;
    };

    double h = 1.0;
    double raw = level_sum(h, true);
    double est = half * h * raw;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        raw += level_sum(h, false);
        const double next = half * h * raw;
        res.error = std::fabs(next - est);
        est = next;
        if (level >= 3 && res.error <= rel_tol * std::fabs(est)) {
            res.converged = true;
            break;
        }
        if (level >= 3 && est == 0.0 && res.error == 0.0) {
            res.converged = true;
            break;
        }
    }
    res.value = est;
    return res;
}

// int_a^b f over an interval whose endpoints carry integrable power
// singularities (x-a)^ea, (b-x)^eb (only used to pick the grading; f must
// include them). Each half is mapped by x = end +- L v^p, p = 1/(1+e).
template <class F>
Result graded(F&& f, double a, double b, double ea, double eb, double rel_tol = 1e-12,
              int max_level = 10) {
    Result out;
    if (!(b > a)) {
        out.converged = true;
        return out;
    }
    const double L = 0.5 * (b - a);
    const double len = b - a;
    auto power = [](double e) { return e < 0.0 ? std::min(1.0 / (1.0 + e), 16.0) : 1.0; };
    const double pa = power(ea), pb = power(eb);

    auto left = [&](double, double dv0, double) {
        const double da = L * std::pow(dv0, pa);
        if (da == 0.0) return 0.0;
        const double jac = pa * L * std::pow(dv0, pa - 1.0);
        return jac * f(a + da, da, len - da);
    };
    auto right = [&](double, double dv0, double) {
        const double db = L * std::pow(dv0, pb);
        if (db == 0.0) return 0.0;
        const double jac = pb * L * std::pow(dv0, pb - 1.0);
        return jac * f(b - db, len - db, db);
    };
    const Result r1 = tanh_sinh(left, 0.0, 1.0, rel_tol, max_level);
    const Result r2 = tanh_sinh(right, 0.0, 1.0, rel_tol, max_level);
    out.value = r1.value + r2.value;
    out.error = r1.error + r2.error;
    out.evaluations = r1.evaluations + r2.evaluations;
    out.converged = r1.converged && r2.converged;
    if (!out.converged && out.error <= rel_tol * std::fabs(out.value)) out.converged = true;
    return out;
}

}  // namespace riesz::quad
