#pragma once

#include <utility>

namespace expg {

// log Gamma(a) + log Gamma(b) - log Gamma(a+b)
double lbeta(double a, double b);

double digamma(double x);
double trigamma(double x);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double inc_beta(double x, double a, double b);

// (dI/da, dI/db) by central differences, step 1e-6 * max(1,|param|).
std::pair<double, double> inc_beta_partials(double x, double a, double b);

// Regularized incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

}  // namespace expg
