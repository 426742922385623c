#pragma once

#include <utility>
#include <vector>

#include "expg/distributions.hpp"
#include "expg/model.hpp"

namespace expg {

// Truncation control shared by all series evaluations.
struct TruncationPolicy {
  double rel_tol = 1e-12;
  int max_terms = 500;
};

enum class MomentRoute { Series, ClosedForm, Quadrature, Discrete };

const char* route_name(MomentRoute r);

struct MomentResult {
  double value = 0.0;
  MomentRoute route = MomentRoute::Series;
  int terms = 0;            // outer terms consumed (series routes)
  bool converged = true;    // tolerance reached within max_terms
  double roundoff = 0.0;    // estimated relative roundoff of the summation
};

// Coefficients of (sum_k a_k x^{k+c})^n, truncated to the input length.
// The leading coefficient must be nonzero (the recurrence divides by it).
PowerSeries power_coeffs(const PowerSeries& s, int n);

// Probability-weighted-moment series: E(X^r) as a lambda-power series whose
// terms are base expectations E{Y^r G(Y)^j} evaluated by quadrature.
// Closed-form-cdf bases only (Weibull, Frechet). Falls back to direct
// quadrature (recorded in the route) when |lambda| > 30 or the alternating
// sum loses too many digits.
MomentResult moment_pwm_series(const ExpGModel& m, int r,
                               TruncationPolicy pol = {});

// Beta-base moment via the powered cdf power series: E(X^r) =
// rate * sum_j (-lambda)^j/j! sum_k c_{j,k} E(Y^{r+k+j a}), with
// E(Y^v) = B(v+a,b)/B(a,b). Summation is carried in extended precision
// with a running roundoff estimate; when the estimate exceeds what the
// target tolerance allows the value is recomputed by quadrature and the
// route records the fallback.
MomentResult moment_powerseries(const ExpGModel& m, int r,
                                TruncationPolicy pol = {});

// Closed-form exp-Weibull moment (real order r permitted):
// E(X^r) = beta^r Gamma(r/alpha+1) * lambda/(e^lambda-1) *
//          sum_k lambda^k / (k! (k+1)^{r/alpha+1}).
// lambda = 0 returns the Weibull moment. Stable for all lambda: the
// alternating sum for lambda < -10 uses the integral representation
// sum = 1/Gamma(p) \int_0^inf t^{p-1} e^{-t} e^{lambda e^{-t}} dt, and
// lambda > 700 is summed in the log domain.
double expweibull_moment(double lambda, double beta, double alpha, double r);

// exp-Frechet moment for r < alpha, via the reciprocal property:
// equals expweibull_moment(-lambda, 1/beta, alpha, -r).
double expfrechet_moment(double lambda, double beta, double alpha, double r);

// Direct quadrature of \int x^r f(x) dx over the support.
double quadrature_moment(const ExpGModel& m, double r);

// Best-route dispatch: closed form for Weibull/Frechet bases, power series
// (with fallback) for beta, exact sum for discrete bases.
MomentResult moment(const ExpGModel& m, int r, TruncationPolicy pol = {});

// The i:n order-statistic density as a finite mixture of exp-G densities
// with rescaled concentration lambda*(j+1). Weights sum to 1.
struct OrderStatComponent {
  double lambda = 0.0;  // concentration of the component exp-G law
  double weight = 0.0;
};

std::vector<OrderStatComponent> order_stat_weights(double lambda, int i,
                                                   int n);

enum class OrderStatRoute { Direct, Expansion };

// Density of the i-th order statistic of an n-sample. Direct route:
// f F^{i-1} (1-F)^{n-i} / B(i, n-i+1). Expansion route: the mixture above
// (lambda = 0 degenerates to the direct form).
double order_stat_pdf(const ExpGModel& m, int i, int n, double x,
                      OrderStatRoute route = OrderStatRoute::Direct);

// E(X_{i:n}^r) via the mixture weights and the per-component moment
// dispatch.
MomentResult order_stat_moment(const ExpGModel& m, int i, int n, int r,
                               TruncationPolicy pol = {});

// Standardized third and fourth central moments from raw moments r=1..4.
std::pair<double, double> skewness_kurtosis(const ExpGModel& m,
                                            TruncationPolicy pol = {});

}  // namespace expg
