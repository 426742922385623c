#include "expg/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace expg {

double check_unit(double v, const char* what) {
  if (std::isnan(v)) throw std::domain_error(std::string(what) + " is NaN");
  if (v < 0.0) {
    if (v >= -1e-12) return 0.0;
    throw std::domain_error(std::string(what) + " below [0,1]");
  }
  if (v > 1.0) {
    if (v <= 1.0 + 1e-12) return 1.0;
    throw std::domain_error(std::string(what) + " above [0,1]");
  }
  return v;
}

static void check_lambda(double lambda) {
  if (!std::isfinite(lambda)) throw std::domain_error("lambda must be finite");
}

double texp_cdf(double lambda, double x) {
  check_lambda(lambda);
  x = check_unit(x, "x");
  if (lambda == 0.0) return x;
  if (lambda < -700.0) {
    // (1-e^{-lx})/(1-e^{-l}) = e^{l(1-x)} (1-e^{lx})/(1-e^{l})
    return std::exp(lambda * (1.0 - x)) * std::expm1(lambda * x) /
           std::expm1(lambda);
  }
  double v = std::expm1(-lambda * x) / std::expm1(-lambda);
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return v;
}

double texp_quantile(double lambda, double u) {
  check_lambda(lambda);
  u = check_unit(u, "u");
  if (lambda == 0.0) return u;
  if (lambda < 0.0) return 1.0 - texp_quantile(-lambda, 1.0 - u);
  // lambda > 0: -log(1 + u (e^{-lambda}-1)) / lambda
  double x = -std::log1p(u * std::expm1(-lambda)) / lambda;
  if (x < 0.0) x = 0.0;
  if (x > 1.0) x = 1.0;
  return x;
}

double rate_constant(double lambda) {
  check_lambda(lambda);
  if (lambda == 0.0) return 1.0;
  if (lambda > 0.0) return lambda / -std::expm1(-lambda);
  // lambda e^lambda / (e^lambda - 1), no overflow for lambda < 0
  return lambda * std::exp(lambda) / std::expm1(lambda);
}

double log_rate_constant(double lambda) {
  check_lambda(lambda);
  if (std::fabs(lambda) < 1e-5) {
    return lambda / 2.0 - lambda * lambda / 24.0;
  }
  if (lambda > 0.0) return std::log(lambda) - std::log(-std::expm1(-lambda));
  return std::log(-lambda) + lambda - std::log(-std::expm1(lambda));
}

double dlog_rate(double lambda) {
  check_lambda(lambda);
  if (std::fabs(lambda) < 1e-4) {
    return 0.5 - lambda / 12.0 + lambda * lambda * lambda / 720.0;
  }
  if (lambda > 700.0) return 1.0 / lambda;
  return 1.0 / lambda - 1.0 / std::expm1(lambda);
}

double texp_curvature(double lambda) {
  check_lambda(lambda);
  double l2 = lambda * lambda;
  if (std::fabs(lambda) < 1e-3) {
    return 1.0 / 12.0 - l2 / 240.0 + l2 * l2 / 1512.0;
  }
  // e^l/(e^l-1)^2 is symmetric in l -> -l; evaluate with t = e^{-|l|}
  double t = std::exp(-std::fabs(lambda));
  double d = -std::expm1(-std::fabs(lambda));  // 1 - t
  return 1.0 / l2 - t / (d * d);
}

}  // namespace expg
