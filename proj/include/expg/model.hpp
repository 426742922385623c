#pragma once

#include <cstdint>
#include <vector>

#include "expg/distributions.hpp"

namespace expg {

// The exp-G distribution: composition of the truncated-exponential
// transform with a base cdf. lambda = 0 recovers the base distribution and
// is an ordinary parameter value throughout.
class ExpGModel {
 public:
  ExpGModel(double lambda, BaseDistribution base);

  double lambda() const { return lambda_; }
  const BaseDistribution& base() const { return base_; }

  double cdf(double x) const;
  double pdf(double x) const;
  double logpdf(double x) const;
  double survival(double x) const;
  double hazard(double x) const;
  double quantile(double u) const;

  // inverse-transform sampling, deterministic for a given seed
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  // discrete branch (Eq. over support points, telescoping)
  double pmf(double x) const;

 private:
  double lambda_;
  BaseDistribution base_;
};

}  // namespace expg
