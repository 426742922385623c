#pragma once

#include <functional>
#include <vector>

namespace expg {

struct OptimResult {
  std::vector<double> x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// BFGS minimization with Armijo backtracking. If grad is empty, a central
// finite-difference gradient is used. Non-finite objective values are
// treated as +infinity by the line search.
OptimResult bfgs_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    const std::function<std::vector<double>(const std::vector<double>&)>&
        grad,
    std::vector<double> x0, double grad_tol = 1e-8, int max_iter = 500);

}  // namespace expg
