#pragma once

// Gamma, Pochhammer, Gauss 2F1 (plain and regularized), incomplete Beta.
// Everything here is pure and reentrant.

namespace riesz::specfun {

bool is_nonpositive_integer(double x);

double gamma_fn(double x);   // throws DomainError at poles
double rgamma(double x);     // 1/Gamma(x), zero at poles
double lgamma_abs(double x); // log|Gamma(x)|
double digamma(double x);
double pochhammer(double a, int n);
double beta_fn(double a, double b);

// 2F1(a,b;c;z) for z <= 1.
double hyp2f1(double a, double b, double c, double z);
// 2F1(a,b;c;z)/Gamma(c), entire in c. z < 1, or z == 1 with c-a-b > 0.
double hyp2f1_regularized(double a, double b, double c, double z);

// Same, but the caller also passes w = 1 - z computed without cancellation.
// Matters for z -> 1 where the interesting information lives in w.
double hyp2f1_w(double a, double b, double c, double z, double w);
double hyp2f1_regularized_w(double a, double b, double c, double z, double w);

// I(x; a, b) = B(x; a, b) / B(a, b)
double inc_beta_regularized(double x, double a, double b);

}  // namespace riesz::specfun
