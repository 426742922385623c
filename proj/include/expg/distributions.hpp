#pragma once

#include <string>
#include <vector>

namespace expg {

enum class Family { Weibull, Beta, Frechet, Bernoulli };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Coefficients {a_k} of sum_k a_k x^{k+offset}, truncated at K terms.
struct PowerSeries {
  std::vector<double> coeffs;
  double offset = 0.0;
  bool complete = true;  // false when truncation did not reach tolerance
};

// Descriptor of a base family G(.;theta). Immutable value type.
//
// Parameter order: Weibull (alpha shape, beta scale), Beta (a, b),
// Frechet (alpha shape, beta scale), Bernoulli (p).
//
// Frechet(alpha,beta) is the law of 1/W for W ~ Weibull(alpha, 1/beta),
// i.e. cdf = exp{-(beta/x)^alpha}.
class BaseDistribution {
 public:
  static BaseDistribution weibull(double alpha, double beta);
  static BaseDistribution beta(double a, double b);
  static BaseDistribution frechet(double alpha, double beta);
  static BaseDistribution bernoulli(double p);

  Family family() const { return family_; }
  const std::vector<double>& theta() const { return theta_; }
  int dim() const { return static_cast<int>(theta_.size()); }
  bool discrete() const { return family_ == Family::Bernoulli; }
  double support_lo() const;
  double support_hi() const;
  bool in_support(double x) const;
  std::vector<std::string> param_names() const;

  BaseDistribution with_theta(const std::vector<double>& theta) const;

  double cdf(double x) const;
  double pdf(double x) const;
  double logpdf(double x) const;
  double quantile(double u) const;

  // discrete branch
  const std::vector<double>& support_points() const;
  double pmf_point(double x) const;

  // d log g / d theta (the base score U*)
  std::vector<double> score(double x) const;
  // d G / d theta
  std::vector<double> cdf_grad(double x) const;
  // full d^2 G / dtheta dtheta^T (numeric for Beta/Frechet)
  std::vector<std::vector<double>> cdf_hess(double x) const;
  // full Jacobian of U* (numeric where no closed form)
  std::vector<std::vector<double>> score_jac(double x) const;

 private:
  BaseDistribution(Family f, std::vector<double> theta);
  Family family_;
  std::vector<double> theta_;
  std::vector<double> points_;  // Bernoulli support
};

// Coefficients of the power-series expansion of the Beta(a,b) cdf,
// I_x(a,b) = sum_{k} a_k x^{k+a}. For integer b the series terminates at
// k = b-1.
PowerSeries beta_series_coeffs(double a, double b, int K);

}  // namespace expg
