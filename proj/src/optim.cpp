#include "expg/optim.hpp"

#include <cmath>
#include <limits>

#include "expg/quadrature.hpp"

namespace expg {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::fabs(e));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

OptimResult bfgs_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    const std::function<std::vector<double>(const std::vector<double>&)>&
        grad,
    std::vector<double> x0, double grad_tol, int max_iter) {
  const std::size_t d = x0.size();
  auto safe_f = [&](const std::vector<double>& x) {
    double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  auto eval_grad = [&](const std::vector<double>& x) {
    if (grad) return grad(x);
    return fd_gradient(f, x, 1e-12);
  };

  OptimResult res;
  res.x = x0;
  res.f = safe_f(x0);
  std::vector<double> g = eval_grad(x0);
  // inverse-Hessian approximation, identity start
  std::vector<std::vector<double>> H(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) H[i][i] = 1.0;

  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it;
    res.grad_norm = inf_norm(g);
    if (res.grad_norm < grad_tol) {
      res.converged = true;
      return res;
    }
    std::vector<double> dir(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) dir[i] -= H[i][j] * g[j];
    double slope = dot(dir, g);
    if (!(slope < 0.0)) {  // reset on a non-descent direction
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) H[i][j] = 0.0;
        H[i][i] = 1.0;
        dir[i] = -g[i];
      }
      slope = dot(dir, g);
      if (!(slope < 0.0)) break;
    }
    // Armijo backtracking
    double step = 1.0, fnew = 0.0;
    std::vector<double> xnew(d);
    bool ok = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < d; ++i) xnew[i] = res.x[i] + step * dir[i];
      fnew = safe_f(xnew);
      if (fnew <= res.f + 1e-4 * step * slope) {
        ok = true;
        break;
      }
      step *= 0.5;
    }
    if (!ok) break;  // no progress possible along this direction
    std::vector<double> gnew = eval_grad(xnew);
    std::vector<double> s(d), y(d);
    for (std::size_t i = 0; i < d; ++i) {
      s[i] = xnew[i] - res.x[i];
      y[i] = gnew[i] - g[i];
    }
    double sy = dot(s, y);
    double snorm = std::sqrt(dot(s, s)), ynorm = std::sqrt(dot(y, y));
    if (sy > 1e-10 * snorm * ynorm && std::isfinite(sy)) {
      // BFGS inverse update: H <- (I - rho s y^T) H (I - rho y s^T)
      //                           + rho s s^T
      double rho = 1.0 / sy;
      std::vector<double> Hy(d, 0.0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) Hy[i] += H[i][j] * y[j];
      double yHy = dot(y, Hy);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          H[i][j] += (1.0 + rho * yHy) * rho * s[i] * s[j] -
                     rho * (s[i] * Hy[j] + Hy[i] * s[j]);
    }
    res.x = xnew;
    res.f = fnew;
    g = gnew;
  }
  res.grad_norm = inf_norm(g);
  res.converged = res.grad_norm < grad_tol;
  return res;
}

}  // namespace expg
