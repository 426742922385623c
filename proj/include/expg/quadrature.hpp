#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace expg {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b]. b may be
// +infinity; the tail is mapped to [0,1) via x = a + scale*t/(1-t).
// Subdivision stops when the summed error estimate drops below
// max(abs_tol, rel_tol*|I|) or max_intervals is reached (converged=false).
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double abs_tol = 1e-10, double rel_tol = 1e-12,
                     double scale = 1.0, int max_intervals = 4000);

// Central-difference gradient, h_i = tol^{1/3} * max(1,|x_i|).
std::vector<double> fd_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double tol = 1e-12);

// Central-difference Hessian.
std::vector<std::vector<double>> fd_hessian(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h_scale = 1e-5);

// Upper tail of chi^2 with q degrees of freedom.
double chi2_sf(double x, int q);

double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace expg
