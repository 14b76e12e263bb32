#include <cmath>

#include "doctest.h"
#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/roots.hpp"
#include "riesz/specfun.hpp"

using namespace riesz;
namespace sf = riesz::specfun;

namespace {
// relative closeness
bool close(double got, double want, double tol) {
    return std::fabs(got - want) <= tol * std::max(1.0, std::fabs(want));
}
}  // namespace

TEST_CASE("gamma and friends against mpmath") {
    const double spi = std::sqrt(M_PI);
    CHECK(close(sf::gamma_fn(0.5), spi, 1e-15));
    CHECK(close(sf::gamma_fn(-1.5), 4.0 * spi / 3.0, 1e-14));
    CHECK(sf::gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(close(sf::gamma_fn(0.1), 9.5135076986687318363, 1e-14));
    CHECK(close(sf::gamma_fn(-2.5), -0.94530872048294188123, 1e-14));
    CHECK(close(sf::gamma_fn(20.3) / 297246107523556593.7, 1.0, 1e-13));
    CHECK(close(sf::digamma(0.3), -3.502524222200132989, 1e-14));
    CHECK(close(sf::digamma(7.5), 1.9467574842460867881, 1e-14));
    CHECK_THROWS_AS(sf::gamma_fn(-3.0), DomainError);
    CHECK(sf::rgamma(-3.0) == 0.0);
}

TEST_CASE("pochhammer") {
    CHECK(sf::pochhammer(0.5, 3) == doctest::Approx(1.875).epsilon(1e-15));
    CHECK(sf::pochhammer(2.0, 0) == 1.0);
    CHECK(sf::pochhammer(-2.0, 3) == 0.0);
    CHECK(sf::pochhammer(-2.5, 2) == doctest::Approx(3.75));
}

TEST_CASE("hyp2f1 over its regimes") {
    struct Case {
        double a, b, c, z, want;
    };
    const Case cases[] = {
        {1, 1, 2, 0.5, 1.3862943611198906188},           // 2 log 2
        {0.5, 0.5, 1, 0.9, 1.6412644143423707998},       // log case, m = 0
        {1.5, 2, 3.5, -3, 0.26149947019518154216},       // Pfaff
        {1, 1.5, 2.5, 0.99, 6.0857640904691459418},      // c-a-b = 0
        {0.25, 1.5, 1.75, 0.999999, 4.8202740857455700688},
        {0.3, 0.7, 1.5, -20, 0.55896996565119500517},
        {-3, 2.5, 1.5, 0.7, -0.099},                     // polynomial
        {2, 1, 3.5, 1, 5.0},                             // Gauss sum
        {1, 1.5, 0.5, 0.75, 28.0},                       // c-a-b = -2
        {0.5, 1, 3.00001, 0.95, 1.2888045091185636947},   // near-integer c-a-b
    };
    for (const auto& k : cases) {
        INFO("a=" << k.a << " b=" << k.b << " c=" << k.c << " z=" << k.z);
        CHECK(close(sf::hyp2f1(k.a, k.b, k.c, k.z), k.want, 1e-12));
    }
    CHECK(close(sf::hyp2f1_regularized(1.5, 2.5, -2, 0.3), 20.87060874153990345, 1e-12));
    CHECK(close(sf::hyp2f1_regularized(1, 1.5, 5e-5, 0.9), 426.84560005876510448, 1e-11));
    CHECK(close(sf::hyp2f1_regularized(1, 1, -1, 0.6), 11.25, 1e-13));
    CHECK_THROWS_AS(sf::hyp2f1(1, 1, 1.5, 1.0), DomainError);  // divergent Gauss sum
    CHECK_THROWS_AS(sf::hyp2f1(1, 1, 2, 1.5), DomainError);
}

TEST_CASE("hyp2f1 with exact complement") {
    // z = 1 - w with w tiny: both routes must agree where they overlap
    const double w = 1e-7;
    CHECK(close(sf::hyp2f1_w(0.5, 1.5, 2.0, 1.0 - w, w), sf::hyp2f1(0.5, 1.5, 2.0, 1.0 - w), 1e-9));
}

TEST_CASE("regularized incomplete beta") {
    CHECK(close(sf::inc_beta_regularized(0.3, 2, 3), 0.3483, 1e-14));
    CHECK(close(sf::inc_beta_regularized(0.9, 0.5, 0.5), 0.79516723530086654835, 1e-13));
    CHECK(close(sf::inc_beta_regularized(0.01, 1.5, 1.5), 0.0016925506380167316495, 1e-12));
    CHECK(close(sf::inc_beta_regularized(0.7, 10, 0.5), 0.0083225048624642117002, 1e-12));
    CHECK(sf::inc_beta_regularized(0.0, 2, 3) == 0.0);
    CHECK(sf::inc_beta_regularized(1.0, 2, 3) == 1.0);
    // symmetry I(x;a,b) + I(1-x;b,a) = 1
    CHECK(close(sf::inc_beta_regularized(0.37, 2.5, 1.25) + sf::inc_beta_regularized(0.63, 1.25, 2.5), 1.0, 1e-14));
}

TEST_CASE("Gauss-Jacobi integrates the weight's moments") {
    // int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
    for (double a : {-0.5, -0.9, 0.0, 1.5}) {
        for (double b : {-0.25, 0.5}) {
            const auto r = quad::gauss_jacobi(20, a, b);
            double s = 0.0;
            for (std::size_t i = 0; i < r->w.size(); ++i) s += r->w[i];
            CHECK(close(s, std::pow(2.0, a + b + 1) * sf::beta_fn(a + 1, b + 1), 1e-13));
            // degree 2n-1 exactness on x^3
            double m3 = 0.0;
            for (std::size_t i = 0; i < r->w.size(); ++i) m3 += r->w[i] * std::pow(r->x[i], 3);
            const auto ref = quad::tanh_sinh(
                [&](double x, double da, double db) { return std::pow(db, a) * std::pow(da, b) * x * x * x; },
                -1.0, 1.0, 1e-13, 12);
            CHECK(std::fabs(m3 - ref.value) <= 1e-10);
        }
    }
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
    const auto r = quad::tanh_sinh([](double, double da, double) { return 1.0 / std::sqrt(da); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("brent root and minimum") {
    const auto r = roots::brent([](double x) { return std::cos(x) - x; }, 0.0, 1.0, 1e-15);
    CHECK(r.x == doctest::Approx(0.7390851332151607).epsilon(1e-15));
    CHECK_THROWS_AS(roots::brent([](double x) { return x * x + 1; }, -1.0, 1.0), NumericError);
    const auto m = roots::brent_min([](double x) { return (x - 0.3) * (x - 0.3) + 2; }, -1.0, 1.0, 1e-12);
    CHECK(m.x == doctest::Approx(0.3).epsilon(1e-8));
}
