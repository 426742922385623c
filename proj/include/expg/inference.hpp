#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expg/model.hpp"

namespace expg {

struct Dataset {
  std::vector<double> values;
  std::size_t n() const { return values.size(); }
};

// Throws std::invalid_argument naming the offending index when a value is
// non-finite or outside the base support.
void validate_dataset(const Dataset& data, const BaseDistribution& base);

using Matrix = std::vector<std::vector<double>>;

struct FitReport {
  Family family = Family::Weibull;
  std::size_t n = 0;
  bool lambda_fixed = false;
  // full estimate vector, lambda first, then the base parameters
  std::vector<std::string> param_names;
  std::vector<double> estimates;
  double loglik = 0.0;
  // per-observation (unit) information over the free parameters
  Matrix info_matrix;
  Matrix covariance;  // [n * info]^{-1}
  std::vector<double> std_errors;
  std::vector<std::pair<double, double>> ci;
  double level = 0.95;
  bool ci_valid = false;
  bool converged = false;
  int iterations = 0;
  double grad_norm = 0.0;
};

enum class TestKind { LR, Wald, Score };

struct TestReport {
  TestKind kind = TestKind::LR;
  double statistic = 0.0;
  int df = 1;
  double p_value = 1.0;
};

const char* test_name(TestKind k);

// Sum over observations of log f(x_i; lambda, theta); continuous in lambda
// at 0. Discrete bases use the pmf.
double loglik(const ExpGModel& m, const Dataset& data);

// Analytic score, lambda component first:
//   d/dlambda  = sum_i [dlog_rate(lambda) - G(x_i)]
//   d/dtheta_j = sum_i [U*_j(x_i) - lambda dG_j(x_i)]
std::vector<double> score_vec(const ExpGModel& m, const Dataset& data);

// Per-observation Fisher information E[u u^T], (k+1)x(k+1) with the lambda
// row/column first. The (lambda,lambda) entry is the closed form
// 1/lambda^2 - e^lambda/(e^lambda-1)^2 (1/12 at 0); the remaining entries
// are evaluated by adaptive quadrature under the model density.
Matrix fisher_info(const ExpGModel& m);

// Maximum likelihood over (lambda, theta), quasi-Newton on
// (lambda, log theta) with analytic gradient and multistart over lambda
// seeds {-10,-1,0,1,10}. fix_lambda pins lambda (0 fits the base model
// through the same path). level sets the confidence-interval coverage.
FitReport mle_fit(const BaseDistribution& seed_family, const Dataset& data,
                  std::optional<double> fix_lambda = std::nullopt,
                  double level = 0.95);

// Tests of H0: lambda = 0 against the two-sided alternative, df = 1.
TestReport lr_test(const BaseDistribution& family, const Dataset& data);
TestReport wald_test(const BaseDistribution& family, const Dataset& data);
TestReport score_test(const BaseDistribution& family, const Dataset& data);

// Modified profile likelihood: per-observation plug-in
// lambda_i(theta) = (dG^T dG)^{-1} dG^T U*, estimating equation
// V_n(theta) = 0 solved over theta. diagonal_hessian drops the
// off-diagonal second derivatives of G (a common simplification).
FitReport modified_profile_fit(const BaseDistribution& seed_family,
                               const Dataset& data,
                               bool diagonal_hessian = false);

// Gauss-Jordan inverse; returns false (and leaves out unspecified) when
// the matrix is numerically singular.
bool invert_matrix(const Matrix& in, Matrix& out);

}  // namespace expg
