#include "expg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "expg/special.hpp"

namespace expg {

namespace {

// 15-point Kronrod abscissae (positive half) and weights; first 4 abscissae
// with even index are the embedded 7-point Gauss nodes.
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b,
              std::size_t* evals) {
  double center = 0.5 * (a + b), half = 0.5 * (b - a);
  double fc = f(center);
  double result_g = fc * kWg[3];
  double result_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double x = half * kXgk[j];
    double f1 = f(center - x), f2 = f(center + x);
    result_k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
  }
  *evals += 15;
  double value = result_k * half;
  double err = std::fabs((result_k - result_g) * half);
  // sharpen the raw |K-G| estimate as quadpack does
  if (err > 1e-300) err = std::min(err, 200.0 * err * std::sqrt(err));
  return {a, b, value, std::max(err, 1e-300)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double abs_tol, double rel_tol, double scale,
                     int max_intervals) {
  if (std::isnan(a) || std::isnan(b) || !(a <= b))
    throw std::domain_error("integrate: bad interval");
  QuadResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::function<double(double)> g;
  double lo, hi;
  if (std::isinf(b)) {
    if (scale <= 0.0 || !std::isfinite(scale)) scale = 1.0;
    double s = scale;
    g = [f, a, s](double t) {
      double om = 1.0 - t;
      double x = a + s * t / om;
      double fx = f(x);
      if (!std::isfinite(fx)) return 0.0;
      return fx * s / (om * om);
    };
    lo = 0.0;
    hi = 1.0;
  } else {
    g = [f](double x) {
      double fx = f(x);
      return std::isfinite(fx) ? fx : 0.0;
    };
    lo = a;
    hi = b;
  }

  std::priority_queue<Interval> heap;
  std::size_t evals = 0;
  heap.push(gk15(g, lo, hi, &evals));
  double total = heap.top().value, toterr = heap.top().error;
  int n = 1;
  while (toterr > std::max(abs_tol, rel_tol * std::fabs(total)) &&
         n < max_intervals) {
    Interval worst = heap.top();
    heap.pop();
    total -= worst.value;
    toterr -= worst.error;
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval exhausted at machine precision
      total += worst.value;
      toterr += worst.error;
      heap.push(worst);
      break;
    }
    Interval left = gk15(g, worst.a, mid, &evals);
    Interval right = gk15(g, mid, worst.b, &evals);
    total += left.value + right.value;
    toterr += left.error + right.error;
    heap.push(left);
    heap.push(right);
    ++n;
  }
  res.value = total;
  res.abs_error_estimate = toterr;
  res.evaluations = evals;
  res.converged = toterr <= std::max(abs_tol, rel_tol * std::fabs(total));
  return res;
}

std::vector<double> fd_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double tol) {
  double hbase = std::cbrt(tol);
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double h = hbase * std::max(1.0, std::fabs(x[i]));
    double orig = x[i];
    x[i] = orig + h;
    double fp = f(x);
    x[i] = orig - h;
    double fm = f(x);
    x[i] = orig;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

std::vector<std::vector<double>> fd_hessian(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h_scale) {
  std::size_t d = x.size();
  std::vector<double> h(d);
  for (std::size_t i = 0; i < d; ++i)
    h[i] = h_scale * std::max(1.0, std::fabs(x[i]));
  std::vector<std::vector<double>> hess(d, std::vector<double>(d, 0.0));
  double f0 = f(x);
  for (std::size_t i = 0; i < d; ++i) {
    double oi = x[i];
    x[i] = oi + h[i];
    double fp = f(x);
    x[i] = oi - h[i];
    double fm = f(x);
    x[i] = oi;
    hess[i][i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
    for (std::size_t j = i + 1; j < d; ++j) {
      double oj = x[j];
      x[i] = oi + h[i]; x[j] = oj + h[j];
      double fpp = f(x);
      x[j] = oj - h[j];
      double fpm = f(x);
      x[i] = oi - h[i]; x[j] = oj + h[j];
      double fmp = f(x);
      x[j] = oj - h[j];
      double fmm = f(x);
      x[i] = oi; x[j] = oj;
      hess[i][j] = hess[j][i] =
          (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
    }
  }
  return hess;
}

double chi2_sf(double x, int q) {
  if (q < 1) throw std::domain_error("chi2_sf: q >= 1");
  if (x < 0.0) throw std::domain_error("chi2_sf: x >= 0");
  return gamma_q(0.5 * q, 0.5 * x);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Acklam's rational approximation with one Halley refinement step.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("normal_quantile: p in (0,1)");
  static const double A[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double B[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double C[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double D[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  } else if (p <= phigh) {
    double q = p - 0.5, r = q * q;
    x = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) *
        q /
        (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  }
  double e = normal_cdf(x) - p;
  double u = e * std::sqrt(2.0 * 3.141592653589793) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace expg
