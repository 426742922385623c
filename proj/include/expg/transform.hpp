#pragma once

namespace expg {

// Truncated-exponential transform on [0,1] with concentration parameter
// lambda, extended continuously to lambda = 0.
//
// F_lambda(x) = (1 - e^{-lambda x}) / (1 - e^{-lambda})   (lambda != 0)
//             = x                                          (lambda == 0)

// Validates a unit-interval argument: values within 1e-12 of [0,1] are
// clamped, anything further out throws std::domain_error.
double check_unit(double v, const char* what);

double texp_cdf(double lambda, double x);

// Analytic inverse of texp_cdf.
double texp_quantile(double lambda, double u);

// lambda / (1 - e^{-lambda}), extended to 1 at lambda = 0. Strictly positive.
double rate_constant(double lambda);

// log of rate_constant, evaluated without forming the ratio.
double log_rate_constant(double lambda);

// d/dlambda log rate_constant = 1/lambda - 1/(e^lambda - 1), -> 1/2 at 0.
// Also the closed form of E{G(X)} under the exp-G model (constraint C2).
double dlog_rate(double lambda);

// -d^2/dlambda^2 log rate_constant = 1/lambda^2 - e^lambda/(e^lambda-1)^2.
// The per-observation (lambda,lambda) Fisher information entry; -> 1/12 at 0.
double texp_curvature(double lambda);

}  // namespace expg
